"""Algebra of fermionic creation and annihilation operators.

Operator expressions are kept in a canonical normal-ordered form: every term
is a coefficient times creators (ascending mode) followed by annihilators
(descending mode). Two expressions are equal iff their term tuples are equal,
so algebraic identities become syntactic comparisons.

Besides the canonical :class:`OperatorExpr`, :class:`Monomial` keeps a product
of atoms exactly as written (``a(0) adag(0)`` stays that word instead of
becoming ``id - adag(0) a(0)``). Distributing products of sums at the word
level is what the executability analysis of transition chains inspects.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as cartesian
from typing import Iterable, Sequence

import numpy as np
import scipy.linalg

from fockdl import kernels
from fockdl.fock import (
    PRUNE_TOL,
    FockSpaceError,
    StateVector,
    check_mode,
    check_modes,
)

CREATE = 1
ANNIHILATE = 0

Atom = tuple  # (kind, mode)
Signature = tuple  # (creators, annihilators)


@dataclass(frozen=True, order=True)
class OperatorAtom:
    kind: int
    mode: int

    def __post_init__(self):
        if self.kind not in (CREATE, ANNIHILATE):
            raise ValueError(f"unknown atom kind {self.kind!r}")

    def dagger(self) -> OperatorAtom:
        return OperatorAtom(1 - self.kind, self.mode)

    def __str__(self):
        return f"{'adag' if self.kind == CREATE else 'a'}({self.mode})"


@dataclass(frozen=True)
class NormalTerm:
    coefficient: complex
    creators: tuple[int, ...]
    annihilators: tuple[int, ...]

    @property
    def signature(self) -> Signature:
        return (self.creators, self.annihilators)

    @property
    def atoms(self) -> tuple[Atom, ...]:
        return tuple((CREATE, m) for m in self.creators) + tuple(
            (ANNIHILATE, m) for m in self.annihilators
        )

    @property
    def degree(self) -> int:
        return len(self.creators) + len(self.annihilators)


def _sort_key(term: NormalTerm):
    return (term.degree, term.creators, tuple(-m for m in term.annihilators))


def _clean(c: complex) -> complex:
    # drop signed zeros so canonical forms compare and print uniformly
    return complex(c.real + 0.0, c.imag + 0.0)


def _order_key(atom: Atom):
    kind, mode = atom
    return (0, mode) if kind == CREATE else (1, -mode)


@lru_cache(maxsize=65536)
def _normal_form(word: tuple[Atom, ...]) -> tuple[tuple[Signature, int], ...]:
    """Normal-ordered expansion of a word of atoms, with integer weights."""
    for p in range(len(word) - 1):
        x, y = word[p], word[p + 1]
        if _order_key(x) < _order_key(y):
            continue
        if x == y:  # a_i a_i = adag_i adag_i = 0
            return ()
        acc: dict[Signature, int] = {}
        swapped = word[:p] + (y, x) + word[p + 2 :]
        for sig, w in _normal_form(swapped):
            acc[sig] = acc.get(sig, 0) - w
        if x[1] == y[1]:  # a_i adag_i = 1 - adag_i a_i
            for sig, w in _normal_form(word[:p] + word[p + 2 :]):
                acc[sig] = acc.get(sig, 0) + w
        return tuple((sig, w) for sig, w in acc.items() if w != 0)
    creators = tuple(m for k, m in word if k == CREATE)
    annihilators = tuple(m for k, m in word if k == ANNIHILATE)
    return (((creators, annihilators), 1),)


class OperatorExpr:
    """Canonical normal-ordered polynomial in fermionic atoms over ``n_modes``."""

    __slots__ = ("_n_modes", "_terms")

    def __init__(self, n_modes: int, terms: Iterable[NormalTerm] = ()):
        self._n_modes = check_modes(n_modes)
        acc: dict[Signature, complex] = {}
        for t in terms:
            for m in t.creators + t.annihilators:
                check_mode(m, self._n_modes)
            acc[t.signature] = acc.get(t.signature, 0j) + complex(t.coefficient)
        self._terms = tuple(
            sorted(
                (
                    NormalTerm(_clean(c), cre, ann)
                    for (cre, ann), c in acc.items()
                    if abs(c) >= PRUNE_TOL
                ),
                key=_sort_key,
            )
        )
        for t in self._terms:
            if list(t.creators) != sorted(set(t.creators)) or list(t.annihilators) != sorted(
                set(t.annihilators), reverse=True
            ):
                raise ValueError(f"term {t} is not normal ordered")

    @classmethod
    def _from_weights(cls, n_modes, weights: dict[Signature, complex]) -> OperatorExpr:
        return cls(n_modes, (NormalTerm(c, cre, ann) for (cre, ann), c in weights.items()))

    @classmethod
    def from_word(cls, n_modes: int, word: Sequence[Atom], coefficient: complex = 1.0):
        """Canonical form of ``coefficient * word[0] word[1] ...``."""
        word = tuple((int(k), check_mode(m, n_modes)) for k, m in word)
        return cls._from_weights(
            n_modes, {sig: coefficient * w for sig, w in _normal_form(word)}
        )

    @property
    def n_modes(self) -> int:
        return self._n_modes

    @property
    def terms(self) -> tuple[NormalTerm, ...]:
        return self._terms

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if not isinstance(other, OperatorExpr):
            return NotImplemented
        return self._n_modes == other._n_modes and self._terms == other._terms

    def __hash__(self):
        return hash((self._n_modes, self._terms))

    def __repr__(self):
        from fockdl.logic_syntax import format_operator

        return f"OperatorExpr({format_operator(self)!r}, n_modes={self._n_modes})"

    def _check(self, other: OperatorExpr):
        if not isinstance(other, OperatorExpr):
            raise TypeError(f"expected OperatorExpr, got {type(other).__name__}")
        if other._n_modes != self._n_modes:
            raise FockSpaceError(
                f"mode-count mismatch: {self._n_modes} vs {other._n_modes}"
            )

    def __add__(self, other):
        if isinstance(other, (int, float, complex)):
            other = identity(self._n_modes).scaled(other)
        self._check(other)
        return OperatorExpr(self._n_modes, self._terms + other._terms)

    __radd__ = __add__

    def __neg__(self):
        return self.scaled(-1)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.scaled(other)
        return product(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.scaled(other)
        return NotImplemented

    def __matmul__(self, other):
        return product(self, other)

    def scaled(self, c: complex) -> OperatorExpr:
        return OperatorExpr(
            self._n_modes,
            (NormalTerm(c * t.coefficient, t.creators, t.annihilators) for t in self._terms),
        )

    def dagger(self) -> OperatorExpr:
        return adjoint(self)


# constructors


def identity(n_modes: int) -> OperatorExpr:
    return OperatorExpr(n_modes, [NormalTerm(1.0, (), ())])


def zero_operator(n_modes: int) -> OperatorExpr:
    return OperatorExpr(n_modes)


def creation(i: int, n_modes: int) -> OperatorExpr:
    check_modes(n_modes)
    return OperatorExpr(n_modes, [NormalTerm(1.0, (check_mode(i, n_modes),), ())])


def annihilation(i: int, n_modes: int) -> OperatorExpr:
    check_modes(n_modes)
    return OperatorExpr(n_modes, [NormalTerm(1.0, (), (check_mode(i, n_modes),))])


def atom_operator(atom: Atom | OperatorAtom, n_modes: int) -> OperatorExpr:
    if isinstance(atom, OperatorAtom):
        atom = (atom.kind, atom.mode)
    kind, mode = atom
    return creation(mode, n_modes) if kind == CREATE else annihilation(mode, n_modes)


# arithmetic


def add(a: OperatorExpr, b: OperatorExpr) -> OperatorExpr:
    return a + b


def scale(a: OperatorExpr, c: complex) -> OperatorExpr:
    return a.scaled(c)


def product(a: OperatorExpr, b: OperatorExpr) -> OperatorExpr:
    """Canonical form of the operator product ``a b``."""
    a._check(b)
    acc: dict[Signature, complex] = {}
    for s in a.terms:
        for t in b.terms:
            c = s.coefficient * t.coefficient
            for sig, w in _normal_form(s.atoms + t.atoms):
                acc[sig] = acc.get(sig, 0j) + c * w
    return OperatorExpr._from_weights(a.n_modes, acc)


def product_of(factors: Sequence[OperatorExpr]) -> OperatorExpr:
    if not factors:
        raise ValueError("empty product")
    out = factors[0]
    for f in factors[1:]:
        out = product(out, f)
    return out


def adjoint(a: OperatorExpr) -> OperatorExpr:
    # (c adag_C a_A)^dagger = conj(c) adag_{reversed A} a_{reversed C}; still normal ordered
    return OperatorExpr(
        a.n_modes,
        (
            NormalTerm(t.coefficient.conjugate(), t.annihilators[::-1], t.creators[::-1])
            for t in a.terms
        ),
    )


def anticommutator(a: OperatorExpr, b: OperatorExpr) -> OperatorExpr:
    return product(a, b) + product(b, a)


def commutator(a: OperatorExpr, b: OperatorExpr) -> OperatorExpr:
    return product(a, b) - product(b, a)


def expand_terms(a: OperatorExpr) -> list[OperatorExpr]:
    """Split ``a`` into one single-term expression per normal-ordered term."""
    if a.is_zero:
        return []
    return [OperatorExpr(a.n_modes, [t]) for t in a.terms]


# word-level products


@dataclass(frozen=True)
class Monomial:
    """A coefficient times a product of atoms, kept as written."""

    n_modes: int
    atoms: tuple[Atom, ...]
    coefficient: complex = 1.0

    def __post_init__(self):
        check_modes(self.n_modes)
        for k, m in self.atoms:
            if k not in (CREATE, ANNIHILATE):
                raise ValueError(f"unknown atom kind {k!r}")
            check_mode(m, self.n_modes)

    def canonical(self) -> OperatorExpr:
        return OperatorExpr.from_word(self.n_modes, self.atoms, self.coefficient)

    def times(self, other: Monomial) -> Monomial:
        if other.n_modes != self.n_modes:
            raise FockSpaceError("mode-count mismatch")
        return Monomial(
            self.n_modes, self.atoms + other.atoms, self.coefficient * other.coefficient
        )

    def __str__(self):
        from fockdl.logic_syntax import format_monomial

        return format_monomial(self)


def monomial(n_modes: int, *atoms: Atom, coefficient: complex = 1.0) -> Monomial:
    return Monomial(n_modes, tuple(atoms), coefficient)


def expand_product(
    factors: Sequence[Sequence[Monomial]], keep_zero: bool = False
) -> list[Monomial]:
    """Distribute a product of sums of monomials, factor order preserved.

    Monomials whose canonical form is the zero operator are dropped unless
    ``keep_zero`` is set.
    """
    out = []
    for combo in cartesian(*factors):
        m = combo[0]
        for nxt in combo[1:]:
            m = m.times(nxt)
        if keep_zero or not m.canonical().is_zero:
            out.append(m)
    return out


def sum_monomials(monomials: Sequence[Monomial], n_modes: int) -> OperatorExpr:
    out = zero_operator(n_modes)
    for m in monomials:
        out = out + m.canonical()
    return out


# physics constructors


def propagator(i: int, n_modes: int) -> OperatorExpr:
    """Number operator ``adag_i a_i``."""
    return product(creation(i, n_modes), annihilation(i, n_modes))


def propagator_perp(i: int, n_modes: int) -> OperatorExpr:
    """Hole projector ``a_i adag_i``."""
    return product(annihilation(i, n_modes), creation(i, n_modes))


def transition_projector_monomials(j: int, i: int, u: complex, n_modes: int) -> list[Monomial]:
    """``a_i adag_i + adag_j u a_i`` as two written monomials."""
    check_modes(n_modes)
    check_mode(i, n_modes)
    check_mode(j, n_modes)
    return [
        Monomial(n_modes, ((ANNIHILATE, i), (CREATE, i))),
        Monomial(n_modes, ((CREATE, j), (ANNIHILATE, i)), complex(u)),
    ]


def transition_projector(j: int, i: int, u: complex, n_modes: int) -> OperatorExpr:
    """Projector moving a particle from mode ``i`` to mode ``j`` with phase ``u``."""
    return sum_monomials(transition_projector_monomials(j, i, u, n_modes), n_modes)


def local_lagrangian(j: int, i: int, u: complex, n_modes: int) -> OperatorExpr:
    """``1j * (adag_i a_i - adag_j u a_i)``."""
    hop = product(creation(j, n_modes), annihilation(i, n_modes)).scaled(complex(u))
    return (propagator(i, n_modes) - hop).scaled(1j)


# action on states and dense matrices


def apply(op: OperatorExpr, v: StateVector) -> StateVector:
    """Linear action of ``op`` on ``v`` (Jordan-Wigner signs, not normalized)."""
    if op.n_modes != v.n_modes:
        raise FockSpaceError(f"mode-count mismatch: {op.n_modes} vs {v.n_modes}")
    if v.is_zero or op.is_zero:
        return StateVector.zero(v.n_modes)
    src = np.fromiter(v.support, dtype=np.int64)
    amps = np.array([v.amplitude(int(b)) for b in src], dtype=complex)
    out: dict[int, complex] = {}
    for t in op.terms:
        kinds, modes = _word_arrays(t.atoms)
        targets, signs = kernels.word_images(kinds, modes, src)
        for k in np.flatnonzero(signs):
            tgt = int(targets[k])
            out[tgt] = out.get(tgt, 0j) + t.coefficient * signs[k] * amps[k]
    return StateVector(v.n_modes, out)


def apply_word(word: Sequence[Atom], v: StateVector, coefficient: complex = 1.0) -> StateVector:
    """Apply a raw product of atoms (rightmost first) without normal ordering."""
    kinds, modes = _word_arrays(word)
    src = np.fromiter(v.support, dtype=np.int64)
    targets, signs = kernels.word_images(kinds, modes, src)
    out: dict[int, complex] = {}
    for k in np.flatnonzero(signs):
        tgt = int(targets[k])
        out[tgt] = out.get(tgt, 0j) + coefficient * signs[k] * v.amplitude(int(src[k]))
    return StateVector(v.n_modes, out)


def _word_arrays(word):
    if not word:
        return np.zeros(0, dtype=np.uint8), np.zeros(0, dtype=np.int64)
    kinds, modes = zip(*word)
    return np.array(kinds, dtype=np.uint8), np.array(modes, dtype=np.int64)


def word_matrix(word: Sequence[Atom], n_modes: int) -> np.ndarray:
    """Dense matrix of a raw product of atoms."""
    check_modes(n_modes)
    dim = 1 << n_modes
    src = np.arange(dim, dtype=np.int64)
    kinds, modes = _word_arrays(word)
    targets, signs = kernels.word_images(kinds, modes, src)
    out = np.zeros((dim, dim), dtype=complex)
    alive = signs != 0
    out[targets[alive], src[alive]] = signs[alive]
    return out


def to_matrix(op: OperatorExpr) -> np.ndarray:
    """Dense ``2^n x 2^n`` matrix; column ``b`` is the image of basis int ``b``."""
    dim = 1 << op.n_modes
    src = np.arange(dim, dtype=np.int64)
    out = np.zeros((dim, dim), dtype=complex)
    for t in op.terms:
        kinds, modes = _word_arrays(t.atoms)
        targets, signs = kernels.word_images(kinds, modes, src)
        alive = signs != 0
        # a single term is injective on its support, so plain fancy-index add is safe
        out[targets[alive], src[alive]] += t.coefficient * signs[alive]
    return out


def is_projective(op: OperatorExpr, tol: float = 1e-12) -> bool:
    m = to_matrix(op)
    return float(np.max(np.abs(m @ m - m), initial=0.0)) < tol


def is_hermitian(op: OperatorExpr, tol: float = 1e-12) -> bool:
    m = to_matrix(op)
    return float(np.max(np.abs(m - m.conj().T), initial=0.0)) < tol


def exp_i(op: OperatorExpr) -> np.ndarray:
    """Matrix exponential of ``1j * to_matrix(op)``."""
    return scipy.linalg.expm(1j * to_matrix(op))


def lagrangian_diagnostic(j: int, i: int, u: complex, n_modes: int) -> float:
    """Max-norm distance between ``exp(iL)`` and the transition projector."""
    lag = local_lagrangian(j, i, u, n_modes)
    return float(
        np.max(np.abs(exp_i(lag) - to_matrix(transition_projector(j, i, u, n_modes))))
    )


def unit_phase(theta: float) -> complex:
    return cmath.exp(1j * theta)


def is_unit(c: complex, tol: float = 1e-12) -> bool:
    return math.isfinite(abs(c)) and abs(abs(c) - 1.0) < tol
