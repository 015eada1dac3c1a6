"""Finite Kripke models over Fock states and the satisfaction checker.

A model is a finite set of rays (normalized state vectors, pairwise not
ray-equal) plus an optional zero pseudo-state standing for the zero vector.
The zero pseudo-state is an evaluation point but never the source or target
of a transition.

Basic and quantum-test actions can produce a vector that is not a member of
the model (a state just beyond the closure depth, or a projection landing
on a new superposition). Such successors are kept as *escapes* next to the
in-model relation returned by :meth:`Model.transitions`. ``[a]A`` inspects
escapes too, evaluating ``A`` at the escaped vector itself: modalities apply
their action to the vector and quantum tests project it onto the span of
the in-model denotation. Sequential composition continues from escaped
intermediate vectors by applying the second action to the vector itself;
inverse actions are purely relational.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.linalg
import scipy.sparse as sp

from fockdl.car_algebra import (
    OperatorExpr,
    adjoint,
    annihilation,
    apply,
    creation,
    expand_terms,
    product,
)
from fockdl.fock import (
    MAX_MODES,
    PRUNE_TOL,
    RAY_TOL,
    StateVector,
    basis_state,
    check_modes,
    inner_product,
    int_to_bitstring,
    normalize,
    ray_equal,
)
from fockdl.logic_syntax import (
    BOT,
    TOP,
    Action,
    And,
    Basic,
    Bot,
    Box,
    ClassicalNot,
    ClassicalOr,
    ClassicalTest,
    Diamond,
    Formula,
    Implies,
    Inverse,
    QuantumNot,
    QuantumOr,
    QuantumTest,
    SasakiHook,
    Seq,
    Top,
    Union,
    conj,
    diamond_expanded,
    executable,
    format_monomial,
    format_operator,
    iff,
    pretty_print,
    random_formula,
    subformulas,
)

MAX_STATES = 4096
ZERO = "zero"


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class TransitionRelation:
    """In-model pairs of an action, as a sparse 0/1 matrix (row = source)."""

    matrix: sp.csr_array
    names: tuple[str, ...] = ()

    @property
    def pairs(self) -> frozenset[tuple[int, int]]:
        coo = self.matrix.tocoo()
        return frozenset(zip(coo.row.tolist(), coo.col.tolist()))

    def named_pairs(self) -> list[tuple[str, str]]:
        return sorted((self.names[a], self.names[b]) for a, b in self.pairs)

    def successors(self, s: int) -> list[int]:
        return self.matrix.indices[self.matrix.indptr[s] : self.matrix.indptr[s + 1]].tolist()

    def __len__(self):
        return int(self.matrix.nnz)


def _binary(m) -> sp.csr_array:
    m = sp.csr_array(m)
    m.data = np.ones_like(m.data, dtype=np.int64)
    m.eliminate_zeros()
    m.sort_indices()
    return m


class Model:
    """Finite model. Build it with :func:`build_model`."""

    def __init__(
        self,
        n_modes: int,
        states: Sequence[StateVector],
        alphabet: Sequence[OperatorExpr] = (),
        depth: int = 0,
        include_zero: bool = True,
        tol: float = RAY_TOL,
        seeds: Sequence[StateVector] = (),
    ):
        self.n_modes = check_modes(n_modes)
        self.alphabet = tuple(alphabet)
        self.depth = depth
        self.has_zero = include_zero
        self.tol = tol
        self.seeds = tuple(seeds)
        self._states: list[StateVector] = []
        self._index: dict[int, list[int]] = {}
        for v in states:
            if self.lookup(v) is None:
                self._add(v)
        self._rel_cache: dict = {}
        self._eval_cache: dict = {}
        self._proj_cache: dict = {}

    # membership

    def _add(self, v: StateVector) -> int:
        if v.n_modes != self.n_modes:
            raise ModelError("state has the wrong number of modes")
        if v.is_zero:
            raise ModelError("the zero vector is not a genuine model state")
        if len(self._states) >= MAX_STATES:
            raise ModelError(f"model exceeds {MAX_STATES} states")
        idx = len(self._states)
        self._states.append(v)
        for b, a in v.items():
            if abs(a) > 0.0075:
                self._index.setdefault(b, []).append(idx)
        return idx

    def lookup(self, v: StateVector) -> int | None:
        """Index of the member ray-equal to ``v``, if any."""
        if v.is_zero:
            return None
        if self.tol > 1e-6:
            candidates = range(len(self._states))
        else:
            # any ray-equal member carries weight > 0.0075 on v's dominant basis state
            dominant = max(v.items(), key=lambda kv: abs(kv[1]))[0]
            candidates = self._index.get(dominant, ())
        for idx in candidates:
            if ray_equal(self._states[idx], v, self.tol):
                return idx
        return None

    @property
    def states(self) -> tuple[StateVector, ...]:
        return tuple(self._states)

    @property
    def n_states(self) -> int:
        """Number of genuine (nonzero) states."""
        return len(self._states)

    @property
    def n_points(self) -> int:
        return len(self._states) + int(self.has_zero)

    @property
    def zero_index(self) -> int | None:
        return len(self._states) if self.has_zero else None

    @property
    def names(self) -> tuple[str, ...]:
        out = []
        for k, v in enumerate(self._states):
            out.append(int_to_bitstring(v.support[0], self.n_modes) if v.is_basis() else f"psi{k}")
        if self.has_zero:
            out.append(ZERO)
        return tuple(out)

    def resolve(self, s) -> int:
        """Point index from an index, a state name, a bitstring or a vector."""
        if isinstance(s, (int, np.integer)):
            if not 0 <= s < self.n_points:
                raise ModelError(f"no model point {s}")
            return int(s)
        if isinstance(s, StateVector):
            idx = self.lookup(s)
            if idx is None:
                if s.is_zero and self.has_zero:
                    return self.zero_index
                raise ModelError("state is not a member of the model")
            return idx
        names = self.names
        if s in names:
            return names.index(s)
        raise ModelError(f"no model state named {s!r}")

    def basis_index(self, occupied) -> int:
        return self.resolve(StateVector.basis(basis_state(occupied, self.n_modes)))

    # relations

    def transitions(self, action: Action) -> TransitionRelation:
        rel, _ = self._relation(action)
        return TransitionRelation(rel, self.names)

    def escapes(self, action: Action) -> dict[int, list[StateVector]]:
        """Successors of ``action`` that fall outside the model, per source state."""
        return dict(self._relation(action)[1])

    def successors(self, action: Action, s) -> list[int]:
        s = self.resolve(s)
        if s == self.zero_index:
            return []
        return self.transitions(action).successors(s)

    def _relation(self, a: Action):
        if a in self._rel_cache:
            return self._rel_cache[a]
        n = self.n_states
        esc: dict[int, list[StateVector]] = {}
        if isinstance(a, Basic):
            if a.op.n_modes != self.n_modes:
                raise ModelError("action operator has the wrong number of modes")
            rows, cols = [], []
            for s, v in enumerate(self._states):
                w = normalize(apply(a.op, v))
                if w.is_zero:
                    continue
                t = self.lookup(w)
                if t is None:
                    esc.setdefault(s, []).append(w)
                else:
                    rows.append(s)
                    cols.append(t)
            rel = _pairs_matrix(rows, cols, n)
        elif isinstance(a, Seq):
            r2, e2 = self._relation(a.second)
            r1, e1 = self._relation(a.first)
            rows, cols = [], []
            for s in range(n):
                for t in r1.indices[r1.indptr[s] : r1.indptr[s + 1]]:
                    if int(t) in e2:
                        esc.setdefault(s, []).extend(e2[int(t)])
                # continue from intermediates that left the model
                for w in e1.get(s, ()):
                    for x in self._vector_successors(a.second, w):
                        t = self.lookup(x)
                        if t is None:
                            esc.setdefault(s, []).append(x)
                        else:
                            rows.append(s)
                            cols.append(t)
            rel = _binary(r1 @ r2 + _pairs_matrix(rows, cols, n))
        elif isinstance(a, Inverse):
            r, _ = self._relation(a.body)
            rel = _binary(r.T)
        elif isinstance(a, ClassicalTest):
            sat = np.flatnonzero(self.evaluate(a.formula)[:n])
            rel = _pairs_matrix(sat, sat, n)
        elif isinstance(a, QuantumTest):
            rows, cols = [], []
            for s, v in enumerate(self._states):
                w = normalize(self._project(a.formula, v))
                if w.is_zero:
                    continue
                t = self.lookup(w)
                if t is None:
                    esc.setdefault(s, []).append(w)
                else:
                    rows.append(s)
                    cols.append(t)
            rel = _pairs_matrix(rows, cols, n)
        elif isinstance(a, Union):
            r1, e1 = self._relation(a.left)
            r2, e2 = self._relation(a.right)
            rel = _binary(r1 + r2)
            for e in (e1, e2):
                for s, ws in e.items():
                    esc.setdefault(s, []).extend(ws)
        else:
            raise TypeError(f"not an action: {a!r}")
        self._rel_cache[a] = (rel, esc)
        return rel, esc

    def _vector_successors(self, a: Action, w: StateVector) -> list[StateVector]:
        """Successors of an arbitrary unit vector ``w`` (in-model or not)."""
        idx = self.lookup(w)
        if idx is not None:
            rel, esc = self._relation(a)
            own = [self._states[int(t)] for t in rel.indices[rel.indptr[idx] : rel.indptr[idx + 1]]]
            return own + list(esc.get(idx, ()))
        if isinstance(a, Basic):
            x = normalize(apply(a.op, w))
            return [] if x.is_zero else [x]
        if isinstance(a, QuantumTest):
            x = normalize(self._project(a.formula, w))
            return [] if x.is_zero else [x]
        if isinstance(a, ClassicalTest):
            return [w] if self.holds_at_vector(w, a.formula) else []
        if isinstance(a, Seq):
            return [y for x in self._vector_successors(a.first, w) for y in self._vector_successors(a.second, x)]
        if isinstance(a, Union):
            return self._vector_successors(a.left, w) + self._vector_successors(a.right, w)
        # inverse actions are relational: an out-of-model vector has no recorded predecessors
        return []

    # projectors

    def _projector_data(self, f: Formula):
        if f in self._proj_cache:
            return self._proj_cache[f]
        sat = [self._states[k] for k in np.flatnonzero(self.evaluate(f)[: self.n_states])]
        dim = 1 << self.n_modes
        if all(v.is_basis() for v in sat):
            mask = np.zeros(dim, dtype=bool)
            for v in sat:
                mask[v.support[0]] = True
            data = ("diag", mask)
        else:
            cols = np.stack([v.to_dense() for v in sat], axis=1)
            q = scipy.linalg.orth(cols, rcond=1e-10)
            data = ("dense", q @ q.conj().T)
        self._proj_cache[f] = data
        return data

    def subspace_projector(self, f: Formula) -> np.ndarray:
        """Orthogonal projector onto the span of the genuine states satisfying ``f``."""
        kind, data = self._projector_data(f)
        if kind == "diag":
            return np.diag(data.astype(complex))
        return data

    def _project(self, f: Formula, v: StateVector) -> StateVector:
        kind, data = self._projector_data(f)
        if kind == "diag":
            return StateVector(self.n_modes, {b: a for b, a in v.items() if data[b]})
        return StateVector.from_dense(data @ v.to_dense(), self.n_modes)

    # satisfaction

    def evaluate(self, f: Formula) -> np.ndarray:
        """Truth value of ``f`` at every model point (zero pseudo-state last)."""
        if f in self._eval_cache:
            return self._eval_cache[f]
        out = self._evaluate(f)
        out.setflags(write=False)
        self._eval_cache[f] = out
        return out

    def _evaluate(self, f: Formula) -> np.ndarray:
        n = self.n_points
        if isinstance(f, Top):
            return np.ones(n, dtype=bool)
        if isinstance(f, Bot):
            return np.zeros(n, dtype=bool)
        if isinstance(f, ClassicalNot):
            return ~self.evaluate(f.body)
        if isinstance(f, And):
            return self.evaluate(f.left) & self.evaluate(f.right)
        if isinstance(f, ClassicalOr):
            return self.evaluate(f.left) | self.evaluate(f.right)
        if isinstance(f, Implies):
            return ~self.evaluate(f.left) | self.evaluate(f.right)
        if isinstance(f, QuantumNot):
            return self.evaluate(Box(QuantumTest(f.body), BOT))
        if isinstance(f, QuantumOr):
            return self.evaluate(QuantumNot(And(QuantumNot(f.left), QuantumNot(f.right))))
        if isinstance(f, SasakiHook):
            return self.evaluate(Box(QuantumTest(f.left), f.right))
        if isinstance(f, Diamond):
            return self.evaluate(diamond_expanded(f))
        if isinstance(f, Box):
            rel, esc = self._relation(f.action)
            body = self.evaluate(f.body)
            out = np.ones(n, dtype=bool)
            bad = rel @ (~body[: self.n_states]).astype(np.int64)
            out[: self.n_states] = bad == 0
            for s, ws in esc.items():
                if out[s] and not all(self.holds_at_vector(w, f.body) for w in ws):
                    out[s] = False
            return out
        raise TypeError(f"not a formula: {f!r}")

    def holds_at_vector(self, w: StateVector, f: Formula) -> bool:
        """Truth of ``f`` at an arbitrary unit vector (used for escaped successors)."""
        idx = self.lookup(w)
        if idx is not None:
            return bool(self.evaluate(f)[idx])
        if w.is_zero:
            return bool(self.evaluate(f)[self.zero_index]) if self.has_zero else False
        if isinstance(f, Top):
            return True
        if isinstance(f, Bot):
            return False
        if isinstance(f, ClassicalNot):
            return not self.holds_at_vector(w, f.body)
        if isinstance(f, And):
            return self.holds_at_vector(w, f.left) and self.holds_at_vector(w, f.right)
        if isinstance(f, ClassicalOr):
            return self.holds_at_vector(w, f.left) or self.holds_at_vector(w, f.right)
        if isinstance(f, Implies):
            return (not self.holds_at_vector(w, f.left)) or self.holds_at_vector(w, f.right)
        if isinstance(f, QuantumNot):
            return self.holds_at_vector(w, Box(QuantumTest(f.body), BOT))
        if isinstance(f, QuantumOr):
            return self.holds_at_vector(w, QuantumNot(And(QuantumNot(f.left), QuantumNot(f.right))))
        if isinstance(f, SasakiHook):
            return self.holds_at_vector(w, Box(QuantumTest(f.left), f.right))
        if isinstance(f, Diamond):
            return self.holds_at_vector(w, diamond_expanded(f))
        if isinstance(f, Box):
            return all(self.holds_at_vector(x, f.body) for x in self._vector_successors(f.action, w))
        raise TypeError(f"not a formula: {f!r}")

    def satisfies(self, s, f: Formula) -> bool:
        return bool(self.evaluate(f)[self.resolve(s)])

    def denotation(self, f: Formula) -> set[int]:
        return set(np.flatnonzero(self.evaluate(f)).tolist())

    def named_denotation(self, f: Formula) -> list[str]:
        names = self.names
        return [names[k] for k in sorted(self.denotation(f))]

    def is_valid(self, f: Formula, include_zero: bool = False) -> bool:
        vals = self.evaluate(f)
        return bool(vals.all() if include_zero else vals[: self.n_states].all())

    # serialization

    def to_json(self) -> dict:
        names = self.names
        return {
            "n_modes": self.n_modes,
            "depth": self.depth,
            "include_zero": self.has_zero,
            "alphabet": [format_operator(op) for op in self.alphabet],
            "seeds": [v.to_json() for v in self.seeds],
            "states": [
                {"name": names[k], "amplitudes": v.to_json()} for k, v in enumerate(self._states)
            ],
            "relations": {
                format_operator(op): [list(p) for p in self.transitions(Basic(op)).named_pairs()]
                for op in self.alphabet
            },
        }


def _pairs_matrix(rows, cols, n) -> sp.csr_array:
    data = np.ones(len(rows), dtype=np.int64)
    return _binary(sp.coo_array((data, (np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64))), shape=(n, n)))


def build_model(
    n_modes: int,
    seeds: Sequence[StateVector],
    alphabet: Sequence[OperatorExpr],
    depth: int,
    include_zero: bool = True,
    tol: float = RAY_TOL,
) -> Model:
    """Breadth-first closure of ``seeds`` under ``alphabet`` up to ``depth`` steps.

    Seeds are normalized; duplicates (by ray equality) keep the first
    representative found.
    """
    check_modes(n_modes)
    if depth < 1:
        raise ModelError("closure depth must be at least 1")
    if not seeds:
        raise ModelError("at least one seed state is required")
    for op in alphabet:
        if op.n_modes != n_modes:
            raise ModelError("alphabet operator has the wrong number of modes")
    normed = []
    for v in seeds:
        if v.n_modes != n_modes:
            raise ModelError("seed has the wrong number of modes")
        w = normalize(v)
        if w.is_zero:
            raise ModelError("seed states must be nonzero")
        normed.append(w)
    m = Model(n_modes, [], alphabet, depth, include_zero, tol, seeds=normed)
    frontier = []
    for w in normed:
        if m.lookup(w) is None:
            frontier.append(m._add(w))
    for _ in range(depth):
        nxt = []
        for idx in frontier:
            v = m._states[idx]
            for op in alphabet:
                w = normalize(apply(op, v))
                if not w.is_zero and m.lookup(w) is None:
                    nxt.append(m._add(w))
        if not nxt:
            break
        frontier = nxt
    return m


def atom_alphabet(n_modes: int) -> list[OperatorExpr]:
    """All creation then all annihilation operators."""
    return [creation(i, n_modes) for i in range(n_modes)] + [
        annihilation(i, n_modes) for i in range(n_modes)
    ]


def full_model(n_modes: int, include_zero: bool = True, tol: float = RAY_TOL) -> Model:
    """Closure of the vacuum under all atoms: every occupation basis state."""
    vac = StateVector.basis(basis_state((), n_modes))
    return build_model(n_modes, [vac], atom_alphabet(n_modes), n_modes + 1, include_zero, tol)


# characteristic formulas


def can_find(i: int, n_modes: int) -> Formula:
    """``<h(a(i))>T``: particle ``i`` can be found."""
    return executable(annihilation(i, n_modes))


def cannot_find(i: int, n_modes: int) -> Formula:
    """``<h(adag(i))>T``: particle ``i`` cannot be found."""
    return executable(creation(i, n_modes))


def vacuum_formula(n_modes: int) -> Formula:
    return conj([cannot_find(i, n_modes) for i in range(n_modes)])


def zero_formula(i: int, n_modes: int) -> Formula:
    return And(ClassicalNot(can_find(i, n_modes)), ClassicalNot(cannot_find(i, n_modes)))


def idempotence_formula(op: OperatorExpr) -> Formula:
    """``<h(op^dagger op)>T <-> <h(op)>T``."""
    return iff(executable(product(adjoint(op), op)), executable(op))


def quantum_conjunction(m: Model, a: Formula, b: Formula) -> np.ndarray:
    """``[(~a)?q U (~b)?q]F`` evaluated at every model point."""
    return m.evaluate(Box(Union(QuantumTest(QuantumNot(a)), QuantumTest(QuantumNot(b))), BOT))


def scenario_formulas(n_modes: int) -> list[Formula]:
    """Executability, vacuum, zero and idempotence formulas for every mode."""
    out: list[Formula] = [TOP, BOT, vacuum_formula(n_modes)]
    for i in range(n_modes):
        a, ad = annihilation(i, n_modes), creation(i, n_modes)
        out += [
            can_find(i, n_modes),
            cannot_find(i, n_modes),
            zero_formula(i, n_modes),
            idempotence_formula(a),
            idempotence_formula(ad),
            QuantumNot(can_find(i, n_modes)),
        ]
    return out


def formula_sample(n_modes: int, n_random: int = 200, depth: int = 4, seed: int = 0) -> list[Formula]:
    """Subformulas of :func:`scenario_formulas` plus random formulas."""
    rng = np.random.default_rng(seed)
    seen: dict[Formula, None] = {}
    for f in scenario_formulas(n_modes):
        for g in subformulas(f):
            seen.setdefault(g, None)
    added = 0
    for _ in range(100 * n_random):
        if added == n_random:
            break
        f = random_formula(rng, n_modes, depth)
        if f not in seen:
            seen[f] = None
            added += 1
    return list(seen)


# seriality


def is_serial(m: Model, a: Action, include_zero: bool = False) -> bool:
    """Every state has an ``a``-successor (escaped successors count)."""
    if include_zero and m.has_zero:
        return False
    rel, esc = m._relation(a)
    has = np.diff(rel.indptr) > 0
    for s in esc:
        has[s] = True
    return bool(has.all())


@dataclass
class SerialityReport:
    serial: bool
    diamond_top_valid: bool
    d_axiom_valid: bool
    n_formulas: int
    non_serial_states: list[str]
    d_axiom_counterexamples: list[str] = field(default_factory=list)
    include_zero: bool = False

    @property
    def agree(self) -> bool:
        return self.serial == self.diamond_top_valid == self.d_axiom_valid

    def to_json(self) -> dict:
        return {
            "S1_serial": self.serial,
            "S2_box_implies_diamond_valid": self.d_axiom_valid,
            "S3_diamond_top_valid": self.diamond_top_valid,
            "agree": self.agree,
            "n_formulas": self.n_formulas,
            "non_serial_states": self.non_serial_states,
            "S2_counterexamples": self.d_axiom_counterexamples,
            "zero_state": "included" if self.include_zero else "excluded from quantification",
        }


def seriality_equivalence_report(
    m: Model,
    a: Action,
    formulas: Sequence[Formula] | None = None,
    include_zero: bool = False,
) -> SerialityReport:
    if formulas is None:
        formulas = formula_sample(m.n_modes)
    upto = m.n_points if include_zero else m.n_states
    names = m.names
    serial = is_serial(m, a, include_zero)
    dtop = m.evaluate(Diamond(a, TOP))[:upto]
    non_serial = [names[k] for k in np.flatnonzero(~dtop)]
    counter = []
    for f in formulas:
        vals = m.evaluate(Implies(Box(a, f), Diamond(a, f)))[:upto]
        if not vals.all():
            counter.append(format_formula_short(f))
    return SerialityReport(
        serial=serial,
        diamond_top_valid=bool(dtop.all()),
        d_axiom_valid=not counter,
        n_formulas=len(formulas),
        non_serial_states=non_serial,
        d_axiom_counterexamples=counter[:5],
        include_zero=include_zero,
    )


def format_formula_short(f: Formula, limit: int = 120) -> str:
    text = pretty_print(f)
    return text if len(text) <= limit else text[: limit - 3] + "..."


# executability


@dataclass
class TermVerdict:
    label: str
    op: OperatorExpr
    executable: bool


@dataclass
class ExecutabilityReport:
    state: str
    operator: str
    whole_executable: bool
    terms: list[TermVerdict]
    image: StateVector
    idempotence: dict | None = None

    @property
    def disjunction(self) -> bool:
        return any(t.executable for t in self.terms)

    @property
    def disjunction_matches(self) -> bool:
        return self.whole_executable == self.disjunction

    @property
    def executable_terms(self) -> list[str]:
        return [t.label for t in self.terms if t.executable]

    def to_json(self, digits: int = 12) -> dict:
        return {
            "state": self.state,
            "operator": self.operator,
            "whole_executable": self.whole_executable,
            "terms": [{"term": t.label, "executable": t.executable} for t in self.terms],
            "disjunction": self.disjunction,
            "disjunction_matches_whole": self.disjunction_matches,
            "image": self.image.to_json(digits),
            "idempotence": self.idempotence,
        }


def executability_analysis(
    m: Model,
    s,
    op: OperatorExpr,
    terms=None,
    factor: OperatorExpr | None = None,
) -> ExecutabilityReport:
    """Whole-operator versus per-term executability of ``op`` at state ``s``.

    ``terms`` defaults to the normal-ordered terms of ``op``; a list of
    :class:`~fockdl.car_algebra.Monomial` gives the written, un-reordered
    expansion instead. With ``factor`` given, ``op`` must equal
    ``factor^dagger factor`` and the report also compares
    ``<h(op)>T`` with ``<h(factor)>T``.
    """
    idx = m.resolve(s)
    if terms is None:
        terms = expand_terms(op)
    verdicts = []
    for t in terms:
        if isinstance(t, OperatorExpr):
            label, t_op = format_operator(t), t
        else:
            label, t_op = format_monomial(t), t.canonical()
        verdicts.append(TermVerdict(label, t_op, m.satisfies(idx, executable(t_op))))
    whole = m.satisfies(idx, executable(op))
    if idx == m.zero_index:
        image = StateVector.zero(m.n_modes)
    else:
        image = apply(op, m.states[idx])
    idem = None
    if factor is not None:
        if product(adjoint(factor), factor) != op:
            raise ValueError("operator is not factor^dagger factor")
        factor_exec = m.satisfies(idx, executable(factor))
        idem = {
            "factor": format_operator(factor),
            "factor_executable": factor_exec,
            "equivalent": factor_exec == whole,
        }
    return ExecutabilityReport(m.names[idx], format_operator(op), whole, verdicts, image, idem)


def ray_phase(v: StateVector, reference: StateVector) -> complex:
    """Amplitude ``<reference|v>`` (the phase when ``v`` is ray-equal to ``reference``)."""
    return inner_product(reference, v)


__all__ = [
    "MAX_MODES",
    "PRUNE_TOL",
    "Model",
    "ModelError",
    "TransitionRelation",
    "build_model",
    "full_model",
    "atom_alphabet",
    "is_serial",
    "seriality_equivalence_report",
    "executability_analysis",
    "vacuum_formula",
    "zero_formula",
    "can_find",
    "cannot_find",
    "idempotence_formula",
    "quantum_conjunction",
    "formula_sample",
    "scenario_formulas",
]
