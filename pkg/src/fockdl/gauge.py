"""Solenoid vector potentials in the plane, path phases and loop holonomy.

Each flux defect is an idealized infinitely thin solenoid. Its vector
potential ``flux/(2 pi) * (-y, x)/r^2`` (relative to the defect) is curl-free
away from the defect, so the line integral along a straight segment equals
``flux/(2 pi)`` times the angle the segment subtends at the defect. Paths are
polylines; polygonize curves with at least 32 vertices per turn.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import integrate

from fockdl.car_algebra import (
    Monomial,
    apply,
    expand_product,
    sum_monomials,
    transition_projector_monomials,
)
from fockdl.fock import StateVector, basis_state, inner_product, ray_equal
from fockdl.semantics import executability_analysis, full_model

DEFECT_CLEARANCE = 1e-12


class GaugeError(ValueError):
    pass


@dataclass(frozen=True)
class FluxDefect:
    position: tuple[float, float]
    flux: float

    def __post_init__(self):
        x, y = self.position
        if not all(math.isfinite(c) for c in (x, y, self.flux)):
            raise GaugeError("defect position and flux must be finite")
        object.__setattr__(self, "position", (float(x), float(y)))


@dataclass(frozen=True)
class GaugeField:
    defects: tuple[FluxDefect, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "defects", tuple(self.defects))
        pos = [d.position for d in self.defects]
        if len(set(pos)) != len(pos):
            raise GaugeError("defect positions must be pairwise distinct")

    def potential(self, x: float, y: float) -> np.ndarray:
        out = np.zeros(2)
        for d in self.defects:
            dx, dy = x - d.position[0], y - d.position[1]
            r2 = dx * dx + dy * dy
            out += d.flux / (2 * math.pi) * np.array([-dy, dx]) / r2
        return out


@dataclass(frozen=True)
class PathPolyline:
    vertices: tuple[tuple[float, float], ...]

    def __post_init__(self):
        verts = tuple((float(x), float(y)) for x, y in self.vertices)
        if len(verts) < 2:
            raise GaugeError("a path needs at least two vertices")
        for p, q in zip(verts, verts[1:]):
            if p == q:
                raise GaugeError(f"consecutive vertices coincide at {p}")
        object.__setattr__(self, "vertices", verts)

    @property
    def start(self):
        return self.vertices[0]

    @property
    def end(self):
        return self.vertices[-1]

    def reversed(self) -> PathPolyline:
        return PathPolyline(self.vertices[::-1])

    def then(self, other: PathPolyline) -> PathPolyline:
        if not _same_point(self.end, other.start):
            raise GaugeError("paths do not join")
        return PathPolyline(self.vertices + other.vertices[1:])


def _same_point(p, q, tol=1e-12) -> bool:
    return abs(p[0] - q[0]) <= tol and abs(p[1] - q[1]) <= tol


def arc(center, radius, theta0, theta1, n_vertices=64) -> PathPolyline:
    """Polygonized circular arc from angle ``theta0`` to ``theta1``."""
    ts = np.linspace(theta0, theta1, n_vertices)
    cx, cy = center
    return PathPolyline(tuple((cx + radius * math.cos(t), cy + radius * math.sin(t)) for t in ts))


def subtended_angle(defect_pos, path: PathPolyline) -> float:
    """Signed total angle swept by the path as seen from ``defect_pos``."""
    dx0, dy0 = defect_pos
    total = 0.0
    for (px, py), (qx, qy) in zip(path.vertices, path.vertices[1:]):
        ax, ay = px - dx0, py - dy0
        bx, by = qx - dx0, qy - dy0
        cross = ax * by - ay * bx
        dot = ax * bx + ay * by
        seg2 = (qx - px) ** 2 + (qy - py) ** 2
        # distance from the defect to the segment
        t = min(1.0, max(0.0, -(ax * (qx - px) + ay * (qy - py)) / seg2))
        cx, cy = ax + t * (qx - px), ay + t * (qy - py)
        if math.hypot(cx, cy) <= DEFECT_CLEARANCE:
            raise GaugeError(f"path passes through the defect at {defect_pos}")
        total += math.atan2(cross, dot)
    return total


def line_integral(f: GaugeField, path: PathPolyline) -> float:
    """Integral of the vector potential along ``path`` (angle method)."""
    return sum(d.flux / (2 * math.pi) * subtended_angle(d.position, path) for d in f.defects)


def line_integral_quadrature(f: GaugeField, path: PathPolyline, tol: float = 1e-10) -> float:
    """Same integral by adaptive quadrature of the explicit potential."""
    total = 0.0
    for p, q in zip(path.vertices, path.vertices[1:]):
        p, q = np.asarray(p), np.asarray(q)
        dp = q - p
        for d in f.defects:
            g = GaugeField((d,))
            val, _ = integrate.quad(
                lambda t: float(g.potential(*(p + t * dp)) @ dp),
                0.0,
                1.0,
                epsabs=tol,
                epsrel=tol,
                limit=500,
            )
            total += val
    return total


def phase_factor(f: GaugeField, path: PathPolyline) -> complex:
    """``exp(i * line_integral)``."""
    return cmath.exp(1j * line_integral(f, path))


def winding_numbers(f: GaugeField, loop: PathPolyline) -> list[int]:
    if not _same_point(loop.start, loop.end):
        raise GaugeError("winding numbers need a closed loop")
    return [round(subtended_angle(d.position, loop) / (2 * math.pi)) for d in f.defects]


def _cjson(c: complex, digits: int = 12) -> list[float]:
    return [float(f"{c.real:.{digits}g}") + 0.0, float(f"{c.imag:.{digits}g}") + 0.0]


@dataclass
class HolonomyReport:
    u_ji: complex
    u_ij: complex
    windings: list[int]
    flux_sum: float

    @property
    def product(self) -> complex:
        return self.u_ij * self.u_ji

    @property
    def deviation(self) -> float:
        return abs(1 - self.product)

    @property
    def expected_product(self) -> complex:
        return cmath.exp(1j * self.flux_sum)

    def to_json(self) -> dict:
        return {
            "U_ji": _cjson(self.u_ji),
            "U_ij": _cjson(self.u_ij),
            "U_ij_U_ji": _cjson(self.product),
            "windings": self.windings,
            "enclosed_flux": float(f"{self.flux_sum:.12g}"),
            "deviation_from_1": float(f"{self.deviation:.12g}"),
        }


def holonomy(f: GaugeField, outbound: PathPolyline, return_path: PathPolyline) -> HolonomyReport:
    """Phases of an out-and-back trip and the winding of the closed loop."""
    if not (_same_point(outbound.end, return_path.start) and _same_point(return_path.end, outbound.start)):
        raise GaugeError("return path must start where outbound ends and end where it starts")
    u_ji = phase_factor(f, outbound)
    u_ij = phase_factor(f, return_path)
    loop = PathPolyline(outbound.vertices + return_path.vertices[1:])
    w = winding_numbers(f, loop)
    return HolonomyReport(u_ji, u_ij, w, sum(d.flux * k for d, k in zip(f.defects, w)))


@dataclass
class ABReport:
    holonomy: HolonomyReport
    n_modes: int
    i_mode: int
    j_mode: int
    terms: list[dict]
    surviving_term: str
    surviving_executable: bool
    whole_executable: bool
    surviving_amplitude: complex
    whole_amplitude: complex
    image_ray_equal_to_i: bool
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def loop_is_trivial(self) -> bool:
        return self.holonomy.deviation < 1e-9

    def to_json(self) -> dict:
        return {
            "holonomy": self.holonomy.to_json(),
            "modes": {"n_modes": self.n_modes, "i": self.i_mode, "j": self.j_mode},
            "terms": self.terms,
            "surviving_term": self.surviving_term,
            "surviving_term_executable": self.surviving_executable,
            "whole_executable": self.whole_executable,
            "surviving_amplitude": _cjson(self.surviving_amplitude),
            "overall_phase": _cjson(self.whole_amplitude),
            "U_ij_U_ji_equals_U_ii": self.loop_is_trivial,
            "checks": self.checks,
        }


def ab_scenario(
    f: GaugeField,
    i_point,
    j_point,
    outbound: PathPolyline,
    return_path: PathPolyline,
    n_modes: int = 2,
) -> ABReport:
    """Executability of ``P_ij P_ji`` on ``|i>`` with gauge-derived phases.

    Mode 0 sits at ``i_point`` and mode 1 at ``j_point``.
    """
    if not (_same_point(outbound.start, i_point) and _same_point(outbound.end, j_point)):
        raise GaugeError("outbound path must run from i to j")
    hol = holonomy(f, outbound, return_path)
    i, j = 0, 1
    factors = [
        transition_projector_monomials(i, j, hol.u_ij, n_modes),
        transition_projector_monomials(j, i, hol.u_ji, n_modes),
    ]
    written = expand_product(factors, keep_zero=True)
    surviving = [m for m in written if not m.canonical().is_zero]
    whole_op = sum_monomials(written, n_modes)

    model = full_model(n_modes)
    ket_i = StateVector.basis(basis_state({i}, n_modes))
    report = executability_analysis(model, ket_i, whole_op, terms=surviving)
    terms = [
        {"term": str(m), "vanishes": m.canonical().is_zero} for m in written
    ]
    for entry in terms:
        entry["executable"] = (not entry["vanishes"]) and entry["term"] in report.executable_terms
    # the chain term adag_i U_ij a_j adag_j U_ji a_i
    last: Monomial = written[-1]
    surviving_image = apply(last.canonical(), ket_i)
    surviving_amp = inner_product(ket_i, surviving_image)
    whole_amp = inner_product(ket_i, report.image)
    survivors_exec = [t.executable for t in report.terms]
    checks = {
        "chain term executable": bool(survivors_exec and survivors_exec[-1]),
        "only chain term executable": survivors_exec.count(True) == 1 and survivors_exec[-1],
        "whole sum executable": report.whole_executable,
        "disjunction matches whole": report.disjunction_matches,
        "phase equals U_ij U_ji": abs(whole_amp - hol.product) < 1e-12,
        "surviving amplitude equals U_ij U_ji": abs(surviving_amp - hol.product) < 1e-12,
    }
    return ABReport(
        holonomy=hol,
        n_modes=n_modes,
        i_mode=i,
        j_mode=j,
        terms=terms,
        surviving_term=str(last),
        surviving_executable=bool(survivors_exec[-1]),
        whole_executable=report.whole_executable,
        surviving_amplitude=surviving_amp,
        whole_amplitude=whole_amp,
        image_ray_equal_to_i=ray_equal(report.image, ket_i) if not report.image.is_zero else False,
        checks=checks,
    )


def default_ab_geometry(flux: float, radius: float = 1.0, n_vertices: int = 64):
    """Defect at the origin; ``i=(r,0)``, ``j=(-r,0)``; out above, back below (one CCW turn)."""
    f = GaugeField((FluxDefect((0.0, 0.0), flux),))
    outbound = arc((0.0, 0.0), radius, 0.0, math.pi, n_vertices)
    back = arc((0.0, 0.0), radius, math.pi, 2 * math.pi, n_vertices)
    # pin the endpoints exactly so the two halves join
    i_pt, j_pt = (radius, 0.0), (-radius, 0.0)
    outbound = PathPolyline((i_pt,) + outbound.vertices[1:-1] + (j_pt,))
    back = PathPolyline((j_pt,) + back.vertices[1:-1] + (i_pt,))
    return f, i_pt, j_pt, outbound, back


def scenario_from_json(obj: dict):
    f = GaugeField(tuple(FluxDefect(tuple(d["pos"]), float(d["flux"])) for d in obj.get("defects", [])))
    outbound = PathPolyline(tuple(tuple(p) for p in obj["outbound"]))
    back = PathPolyline(tuple(tuple(p) for p in obj["return"]))
    return f, tuple(obj["i"]), tuple(obj["j"]), outbound, back


def paths_from_points(points: Sequence[Sequence[float]]) -> PathPolyline:
    return PathPolyline(tuple(tuple(p) for p in points))
