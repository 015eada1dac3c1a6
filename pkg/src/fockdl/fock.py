"""Finite-mode fermionic Fock space.

Basis states are occupation bitstrings. Internally a basis state is an int
whose bit ``i`` is the occupation of mode ``i``; the serialized bitstring
puts mode 0 leftmost, so ``"10"`` is the state with only mode 0 occupied.
Dense vectors are indexed by that int.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

MAX_MODES = 12
NORM_TOL = 1e-12
PRUNE_TOL = 1e-14
RAY_TOL = 1e-9


class FockSpaceError(ValueError):
    """Invalid mode index, mode count or mismatched spaces."""


def check_modes(n_modes: int) -> int:
    if not isinstance(n_modes, (int, np.integer)) or n_modes < 1:
        raise FockSpaceError(f"n_modes must be a positive integer, got {n_modes!r}")
    if n_modes > MAX_MODES:
        raise FockSpaceError(f"n_modes={n_modes} exceeds the cap of {MAX_MODES} modes")
    return int(n_modes)


def check_mode(i: int, n_modes: int) -> int:
    if not isinstance(i, (int, np.integer)) or not 0 <= i < n_modes:
        raise FockSpaceError(f"mode index {i!r} out of range for {n_modes} modes")
    return int(i)


@dataclass(frozen=True, order=True)
class BasisState:
    """Occupation-number basis state."""

    n_modes: int
    bits: int

    def __post_init__(self):
        check_modes(self.n_modes)
        if not 0 <= self.bits < (1 << self.n_modes):
            raise FockSpaceError(f"occupancy {self.bits} does not fit {self.n_modes} modes")

    @classmethod
    def from_bitstring(cls, text: str) -> BasisState:
        if not text or set(text) - {"0", "1"}:
            raise FockSpaceError(f"not a bitstring: {text!r}")
        return cls(len(text), sum(1 << i for i, c in enumerate(text) if c == "1"))

    @property
    def bitstring(self) -> str:
        return "".join("1" if self.bits >> i & 1 else "0" for i in range(self.n_modes))

    @property
    def occupied(self) -> frozenset[int]:
        return frozenset(i for i in range(self.n_modes) if self.bits >> i & 1)

    def __str__(self):
        return self.bitstring


def basis_state(occupied: Iterable[int], n_modes: int) -> BasisState:
    n_modes = check_modes(n_modes)
    bits = 0
    for i in occupied:
        bits |= 1 << check_mode(i, n_modes)
    return BasisState(n_modes, bits)


def bitstring_to_int(text: str) -> int:
    return BasisState.from_bitstring(text).bits


def int_to_bitstring(bits: int, n_modes: int) -> str:
    return BasisState(n_modes, bits).bitstring


class StateVector:
    """Sparse complex superposition of basis states.

    Amplitudes with modulus below ``PRUNE_TOL`` are dropped on construction.
    An empty amplitude map is the zero vector. Instances are immutable.
    """

    __slots__ = ("_n_modes", "_amps")

    def __init__(self, n_modes: int, amplitudes: Mapping[int, complex] | None = None):
        self._n_modes = check_modes(n_modes)
        amps = {}
        for bits, amp in (amplitudes or {}).items():
            if isinstance(bits, BasisState):
                bits = bits.bits
            elif isinstance(bits, str):
                bits = bitstring_to_int(bits)
            if not 0 <= bits < (1 << self._n_modes):
                raise FockSpaceError(f"basis index {bits} does not fit {n_modes} modes")
            amp = complex(amp)
            if not (math.isfinite(amp.real) and math.isfinite(amp.imag)):
                raise FockSpaceError("amplitudes must be finite")
            if abs(amp) >= PRUNE_TOL:
                amps[int(bits)] = amp
        self._amps = dict(sorted(amps.items()))

    @property
    def n_modes(self) -> int:
        return self._n_modes

    @property
    def amplitudes(self) -> dict[int, complex]:
        """Copy of the amplitude map keyed by basis int."""
        return dict(self._amps)

    def items(self):
        return self._amps.items()

    def amplitude(self, basis) -> complex:
        if isinstance(basis, str):
            basis = bitstring_to_int(basis)
        elif isinstance(basis, BasisState):
            basis = basis.bits
        return self._amps.get(basis, 0j)

    @property
    def is_zero(self) -> bool:
        return not self._amps

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(self._amps)

    def norm(self) -> float:
        return math.sqrt(sum(abs(a) ** 2 for a in self._amps.values()))

    def is_basis(self) -> bool:
        return len(self._amps) == 1

    def to_dense(self) -> np.ndarray:
        out = np.zeros(1 << self._n_modes, dtype=complex)
        for bits, amp in self._amps.items():
            out[bits] = amp
        return out

    @classmethod
    def from_dense(cls, vec: np.ndarray, n_modes: int) -> StateVector:
        vec = np.asarray(vec)
        if vec.shape != (1 << n_modes,):
            raise FockSpaceError(f"dense vector of shape {vec.shape} is not a {n_modes}-mode state")
        idx = np.flatnonzero(np.abs(vec) >= PRUNE_TOL)
        return cls(n_modes, {int(k): complex(vec[k]) for k in idx})

    @classmethod
    def basis(cls, state: BasisState | str) -> StateVector:
        if isinstance(state, str):
            state = BasisState.from_bitstring(state)
        return cls(state.n_modes, {state.bits: 1.0})

    @classmethod
    def zero(cls, n_modes: int) -> StateVector:
        return cls(n_modes)

    def scaled(self, c: complex) -> StateVector:
        return StateVector(self._n_modes, {k: c * a for k, a in self._amps.items()})

    def __add__(self, other: StateVector) -> StateVector:
        _check_same(self, other)
        out = dict(self._amps)
        for k, a in other._amps.items():
            out[k] = out.get(k, 0j) + a
        return StateVector(self._n_modes, out)

    def __sub__(self, other: StateVector) -> StateVector:
        return self + other.scaled(-1)

    def __rmul__(self, c: complex) -> StateVector:
        return self.scaled(c)

    def __eq__(self, other):
        if not isinstance(other, StateVector):
            return NotImplemented
        return self._n_modes == other._n_modes and self._amps == other._amps

    def __hash__(self):
        return hash((self._n_modes, tuple(self._amps.items())))

    def __repr__(self):
        if self.is_zero:
            return f"StateVector.zero({self._n_modes})"
        parts = [f"{a:.6g}|{int_to_bitstring(k, self._n_modes)}>" for k, a in self._amps.items()]
        return "StateVector(" + " + ".join(parts) + ")"

    # JSON: {"bitstring": [re, im], ...}
    def to_json(self, digits: int | None = None) -> dict[str, list[float]]:
        def rnd(x):
            return float(f"{x:.{digits}g}") if digits else float(x)

        return {
            int_to_bitstring(k, self._n_modes): [rnd(a.real) + 0.0, rnd(a.imag) + 0.0]
            for k, a in self._amps.items()
        }

    @classmethod
    def from_json(cls, obj: Mapping[str, list[float]], n_modes: int | None = None) -> StateVector:
        if not obj:
            if n_modes is None:
                raise FockSpaceError("cannot infer mode count of an empty state object")
            return cls.zero(n_modes)
        lengths = {len(k) for k in obj}
        if len(lengths) != 1 or (n_modes is not None and lengths != {n_modes}):
            raise FockSpaceError(f"inconsistent bitstring lengths in state object: {sorted(obj)}")
        n = lengths.pop()
        amps = {}
        for key, val in obj.items():
            re, im = (val, 0.0) if isinstance(val, (int, float)) else val
            amps[bitstring_to_int(key)] = complex(re, im)
        return cls(n, amps)


def _check_same(u: StateVector, v: StateVector):
    if u.n_modes != v.n_modes:
        raise FockSpaceError(f"mode-count mismatch: {u.n_modes} vs {v.n_modes}")


def normalize(v: StateVector) -> StateVector:
    """Unit vector along ``v``, or the zero vector when ``|v| < NORM_TOL``.

    Vectors already normalized to within ``NORM_TOL`` are returned unchanged,
    which makes the operation idempotent bit for bit.
    """
    nrm = v.norm()
    if nrm < NORM_TOL:
        return StateVector.zero(v.n_modes)
    if abs(nrm - 1.0) <= NORM_TOL:
        return v
    return v.scaled(1.0 / nrm)


def inner_product(u: StateVector, v: StateVector) -> complex:
    """<u|v>, conjugate-linear in ``u``."""
    _check_same(u, v)
    if len(u._amps) > len(v._amps):
        return sum((u._amps[k].conjugate() * a for k, a in v._amps.items() if k in u._amps), 0j)
    return sum((a.conjugate() * v._amps[k] for k, a in u._amps.items() if k in v._amps), 0j)


def ray_equal(u: StateVector, v: StateVector, tol: float = RAY_TOL) -> bool:
    """True iff ``u`` and ``v`` are the same ray (equal up to global phase)."""
    if u.is_zero or v.is_zero:
        return u.is_zero and v.is_zero
    return abs(inner_product(u, v)) > 1.0 - tol


def state(*bitstrings: str, amplitudes: Iterable[complex] | None = None) -> StateVector:
    """Normalized superposition of the given basis bitstrings.

    >>> state("10").amplitude("10")
    (1+0j)
    """
    if not bitstrings:
        raise FockSpaceError("state() needs at least one bitstring")
    amps = list(amplitudes) if amplitudes is not None else [1.0] * len(bitstrings)
    n = len(bitstrings[0])
    v = StateVector(n)
    for b, a in zip(bitstrings, amps, strict=True):
        v = v + StateVector(n, {bitstring_to_int(b): a})
    return normalize(v)


def all_basis_states(n_modes: int) -> list[BasisState]:
    n_modes = check_modes(n_modes)
    return [BasisState(n_modes, b) for b in range(1 << n_modes)]
