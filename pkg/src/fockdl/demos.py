"""Built-in reproduction scenarios run by ``fockdl demo``.

Each demo returns a :class:`DemoResult` holding named pass/fail assertions
plus informational values. Defaults use modes ``i=0, j=1, k=2``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from fockdl import car_algebra as car
from fockdl import gauge
from fockdl.fock import StateVector, basis_state, inner_product, ray_equal
from fockdl.logic_syntax import Basic, Inverse, Seq, Union, executable
from fockdl.semantics import (
    executability_analysis,
    full_model,
    seriality_equivalence_report,
    vacuum_formula,
    zero_formula,
)


@dataclass
class DemoResult:
    name: str
    assertions: list[tuple[str, bool]] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    def check(self, label: str, ok) -> bool:
        self.assertions.append((label, bool(ok)))
        return bool(ok)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.assertions)

    def to_json(self) -> dict:
        return {
            "demo": self.name,
            "passed": self.passed,
            "assertions": [{"assertion": a, "pass": ok} for a, ok in self.assertions],
            "info": self.info,
        }

    def to_text(self) -> str:
        lines = [f"demo {self.name}"]
        lines += [f"  {'PASS' if ok else 'FAIL'}  {a}" for a, ok in self.assertions]
        for k, v in self.info.items():
            lines.append(f"  info  {k}: {v}")
        return "\n".join(lines)


def _c(z: complex) -> list[float]:
    return [float(f"{z.real:.12g}") + 0.0, float(f"{z.imag:.12g}") + 0.0]


def demo_vacuum(n_modes: int = 2, **_) -> DemoResult:
    r = DemoResult("vacuum")
    m = full_model(n_modes)
    den = m.named_denotation(vacuum_formula(n_modes))
    r.info["denotation"] = den
    r.check("vacuum formula satisfied only by the empty occupancy", den == ["0" * n_modes])
    return r


def demo_zero(n_modes: int = 2, **_) -> DemoResult:
    r = DemoResult("zero")
    m = full_model(n_modes)
    for i in range(n_modes):
        den = m.named_denotation(zero_formula(i, n_modes))
        r.info[f"denotation(i={i})"] = den
        r.check(f"neither-found-nor-unfound formula for mode {i} holds only at zero", den == ["zero"])
    return r


def demo_projective(n_modes: int = 3, seed: int = 0, **_) -> DemoResult:
    r = DemoResult("projective")
    rng = np.random.default_rng(seed)
    us = [0j, 10 + 0j] + [complex(*rng.normal(size=2)) for _ in range(8)]
    worst = max(
        float(np.max(np.abs((lambda M: M @ M - M)(car.to_matrix(car.transition_projector(1, 0, u, n_modes))))))
        for u in us
    )
    r.info["max |P^2 - P|"] = worst
    r.check("P_ji projective for sampled complex U (incl. 0 and 10)", worst < 1e-12)
    r.check(
        "P_ii with U=1 is the identity",
        all(car.transition_projector(i, i, 1, n_modes) == car.identity(n_modes) for i in range(n_modes)),
    )
    r.check(
        "propagators Hermitian and projective",
        all(
            car.is_projective(p) and car.is_hermitian(p)
            for i in range(n_modes)
            for p in (car.propagator(i, n_modes), car.propagator_perp(i, n_modes))
        ),
    )
    r.check("P_10 with U=1 is not Hermitian", not car.is_hermitian(car.transition_projector(1, 0, 1, n_modes)))
    return r


def demo_lagrangian(n_modes: int = 3, seed: int = 0, **_) -> DemoResult:
    r = DemoResult("lagrangian")
    rng = np.random.default_rng(seed)
    ok = True
    for i in range(n_modes):
        for j in range(n_modes):
            u = complex(*rng.normal(size=2))
            lhs = car.identity(n_modes) + car.local_lagrangian(j, i, u, n_modes).scaled(1j)
            ok &= lhs == car.transition_projector(j, i, u, n_modes)
    r.check("1 + iL equals P_ji as canonical forms for all (i, j)", ok)
    r.check("L_ii with U=1 is the zero operator", car.local_lagrangian(0, 0, 1, n_modes).is_zero)
    for theta in (0.0, 0.1, 1.0):
        r.info[f"|exp(iL) - P_10|_max at U=exp(i*{theta})"] = car.lagrangian_diagnostic(
            1, 0, cmath.exp(1j * theta), n_modes
        )
    return r


def demo_seriality(n_modes: int = 2, **_) -> DemoResult:
    r = DemoResult("seriality")
    m = full_model(n_modes)
    a0, ad0 = car.annihilation(0, n_modes), car.creation(0, n_modes)
    actions = {
        "h(a(0))": (Basic(a0), False),
        "h(a(0)) U h(adag(0))": (Union(Basic(a0), Basic(ad0)), True),
        "h(a(0))^-1": (Inverse(Basic(a0)), False),
        "h(id)": (Basic(car.identity(n_modes)), True),
        "h(adag(0)); h(a(0))": (Seq(Basic(ad0), Basic(a0)), False),
    }
    for label, (act, expected) in actions.items():
        rep = seriality_equivalence_report(m, act)
        r.info[label] = rep.to_json()
        r.check(f"(S1)-(S3) agree for {label}", rep.agree)
        r.check(f"{label} is {'serial' if expected else 'not serial'}", rep.serial == expected)
    return r


def demo_transition_chain(n_modes: int = 3, seed: int = 0, **_) -> DemoResult:
    r = DemoResult("transition-chain")
    rng = np.random.default_rng(seed)
    i, j, k = 0, 1, 2
    u_kj, u_ji = (cmath.exp(1j * t) for t in rng.uniform(0, 2 * math.pi, size=2))
    written = car.expand_product(
        [
            car.transition_projector_monomials(k, j, u_kj, n_modes),
            car.transition_projector_monomials(j, i, u_ji, n_modes),
        ],
        keep_zero=True,
    )
    vanishing = [str(mono) for mono in written if mono.canonical().is_zero]
    surviving = [mono for mono in written if not mono.canonical().is_zero]
    r.info["monomials"] = [str(mono) for mono in written]
    r.check("exactly one monomial of the expansion vanishes", len(vanishing) == 1)
    r.check(
        "the vanishing monomial contains adag(j) adag(j)",
        len(vanishing) == 1 and "adag(1) adag(1)" in vanishing[0],
    )
    whole = car.product(
        car.transition_projector(k, j, u_kj, n_modes), car.transition_projector(j, i, u_ji, n_modes)
    )
    r.check("surviving monomials sum to P_kj P_ji", car.sum_monomials(surviving, n_modes) == whole)

    m = full_model(n_modes)
    ket_i = StateVector.basis(basis_state({i}, n_modes))
    ket_k = StateVector.basis(basis_state({k}, n_modes))
    rep = executability_analysis(m, ket_i, whole, terms=surviving)
    r.info["executable terms"] = rep.executable_terms
    chain = written[-1]
    r.check("only the adag(k) U_kj U_ji a(i) chain term is executable on |i>", rep.executable_terms == [str(chain)])
    reduced = car.product(car.creation(k, n_modes), car.annihilation(i, n_modes)).scaled(u_kj * u_ji)
    r.check("reduced term adag(k) U_kj U_ji a(i) executable on |i>", m.satisfies(ket_i, executable(reduced)))
    r.check("whole sum executable on |i>", rep.whole_executable)
    r.check("whole executability equals the disjunction", rep.disjunction_matches)
    amp = inner_product(ket_k, rep.image)
    r.info["amplitude on |k>"] = _c(amp)
    r.info["U_kj U_ji"] = _c(u_kj * u_ji)
    r.check("image ray-equal to |k>", ray_equal(rep.image, ket_k))
    r.check("image phase equals U_kj U_ji", abs(amp - u_kj * u_ji) < 1e-12)
    return r


def demo_ab(flux: float = math.pi, **_) -> DemoResult:
    r = DemoResult("ab")
    f, i_pt, j_pt, out, back = gauge.default_ab_geometry(flux)
    rep = gauge.ab_scenario(f, i_pt, j_pt, out, back)
    hol = rep.holonomy
    r.info.update(rep.to_json())
    expect = cmath.exp(1j * flux)
    r.check("loop winds once around the defect", hol.windings == [1])
    r.check("U_ij U_ji equals exp(i flux)", abs(hol.product - expect) < 1e-9)
    r.check("deviation equals |1 - exp(i flux)|", abs(hol.deviation - abs(1 - expect)) < 1e-9)
    loop = out.then(back)
    quad = gauge.line_integral_quadrature(f, loop)
    r.check("angle method agrees with quadrature", abs(gauge.line_integral(f, loop) - quad) < 1e-6)
    r.check("chain term executable on |i> regardless of flux", rep.surviving_executable)
    r.check("whole P_ij P_ji executable on |i>", rep.whole_executable)
    r.check("overall phase on |i> equals U_ij U_ji", abs(rep.whole_amplitude - hol.product) < 1e-12)
    null = gauge.holonomy(f, out, out.reversed())
    r.check("exact-reversal return path gives U_ij U_ji = 1", abs(null.product - 1) < 1e-9)
    return r


DEMOS = {
    "vacuum": demo_vacuum,
    "zero": demo_zero,
    "projective": demo_projective,
    "lagrangian": demo_lagrangian,
    "seriality": demo_seriality,
    "transition-chain": demo_transition_chain,
    "ab": demo_ab,
}


def run_demo(name: str, **kwargs) -> DemoResult:
    try:
        fn = DEMOS[name]
    except KeyError:
        raise ValueError(f"unknown demo {name!r}; choose from {', '.join(DEMOS)}") from None
    return fn(**{k: v for k, v in kwargs.items() if v is not None})
