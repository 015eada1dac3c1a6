"""Formulas and actions of the dynamic logic, with a parser and printer.

Concrete syntax (ASCII)::

    formula := impl
    impl    := orf (("->" | "~>") impl)?
    orf     := andf (("|" | "(+)") andf)*
    andf    := unary ("&" unary)*
    unary   := "T" | "F" | "!" unary | "~" unary
             | "[" action "]" unary | "<" action ">" unary | "(" formula ")"
    action  := seqact ("U" seqact)*
    seqact  := postact (";" postact)*
    postact := prim ("^-1")*
    prim    := "h(" opexpr ")" | formula "?" | formula "?q" | "(" action ")"
    opexpr  := "-"? prodop (("+" | "-") prodop)*
    prodop  := factor ("*"? factor)*
    factor  := "a(" nat ")" | "adag(" nat ")" | "id" | "zero" | "(" opexpr ")"
             | number | number "i" | "i" | "exp(i*" real ")" | "U(" nat "," nat ")"

Precedence, tightest first: unary, ``&``, ``|`` and ``(+)``, then the
right-associative arrows ``->`` and ``~>``. In actions ``^-1`` binds tightest,
then ``;``, then ``U``.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from typing import Mapping, Sequence

from fockdl.car_algebra import (
    CREATE,
    Monomial,
    OperatorExpr,
    annihilation,
    atom_operator,
    creation,
    identity,
    product_of,
    zero_operator,
)
from fockdl.fock import check_modes


# formulas


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class ClassicalNot(Formula):
    body: Formula


@dataclass(frozen=True)
class QuantumNot(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class ClassicalOr(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class QuantumOr(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class SasakiHook(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Box(Formula):
    action: Action
    body: Formula


@dataclass(frozen=True)
class Diamond(Formula):
    """Sugar for ``!([action] !body)``."""

    action: Action
    body: Formula


# actions


class Action:
    __slots__ = ()


@dataclass(frozen=True)
class Basic(Action):
    op: OperatorExpr


@dataclass(frozen=True)
class Seq(Action):
    first: Action
    second: Action


@dataclass(frozen=True)
class Inverse(Action):
    body: Action


@dataclass(frozen=True)
class ClassicalTest(Action):
    formula: Formula


@dataclass(frozen=True)
class QuantumTest(Action):
    formula: Formula


@dataclass(frozen=True)
class Union(Action):
    left: Action
    right: Action


Node = Formula | Action

TOP = Top()
BOT = Bot()


def diamond_expanded(f: Diamond) -> Formula:
    return ClassicalNot(Box(f.action, ClassicalNot(f.body)))


def iff(a: Formula, b: Formula) -> Formula:
    return And(Implies(a, b), Implies(b, a))


def conj(parts: Sequence[Formula]) -> Formula:
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disj(parts: Sequence[Formula]) -> Formula:
    out = parts[0]
    for p in parts[1:]:
        out = ClassicalOr(out, p)
    return out


def executable(op: OperatorExpr) -> Formula:
    """``<h(op)>T``."""
    return Diamond(Basic(op), TOP)


def subformulas(f: Node) -> list[Formula]:
    """All formula nodes of ``f`` (including those inside actions), deduplicated."""
    seen: dict[Formula, None] = {}

    def walk(n):
        if isinstance(n, Formula):
            seen.setdefault(n, None)
        for child in _children(n):
            walk(child)

    walk(f)
    return list(seen)


def _children(n: Node):
    if isinstance(n, (ClassicalNot, QuantumNot)):
        return (n.body,)
    if isinstance(n, (And, ClassicalOr, QuantumOr, Implies, SasakiHook, Union)):
        return (n.left, n.right)
    if isinstance(n, (Box, Diamond)):
        return (n.action, n.body)
    if isinstance(n, Seq):
        return (n.first, n.second)
    if isinstance(n, Inverse):
        return (n.body,)
    if isinstance(n, (ClassicalTest, QuantumTest)):
        return (n.formula,)
    return ()


# h compilation


def compile_h(
    op: OperatorExpr | Monomial | Sequence[OperatorExpr],
    mode: str = "atomic",
) -> Action:
    """Action for an operator.

    ``mode="atomic"`` wraps the whole operator as one basic action.
    ``mode="sequence"`` splits a product into consecutive basic actions with
    the rightmost factor executed first. A product may be given as a
    single-term :class:`OperatorExpr`, a :class:`Monomial`, or an explicit
    list of factors.
    """
    if mode == "atomic":
        if isinstance(op, Monomial):
            return Basic(op.canonical())
        if isinstance(op, OperatorExpr):
            return Basic(op)
        return Basic(product_of(list(op)))
    if mode != "sequence":
        raise ValueError(f"unknown compile mode {mode!r}")

    if isinstance(op, OperatorExpr):
        if len(op.terms) != 1:
            raise ValueError("sequence mode needs a single product of atoms, got a sum")
        (term,) = op.terms
        factors = [atom_operator(a, op.n_modes) for a in term.atoms]
        coefficient = term.coefficient
        n = op.n_modes
    elif isinstance(op, Monomial):
        factors = [atom_operator(a, op.n_modes) for a in op.atoms]
        coefficient = op.coefficient
        n = op.n_modes
    else:
        factors = list(op)
        coefficient = 1.0
        n = factors[0].n_modes if factors else None
    if not factors:
        return Basic(identity(n).scaled(coefficient))
    steps = factors[::-1]
    if coefficient != 1:
        steps[0] = steps[0].scaled(coefficient)
    out: Action = Basic(steps[0])
    for f in steps[1:]:
        out = Seq(out, Basic(f))
    return out


# printing


def _fmt_real(x: float) -> str:
    x = x + 0.0
    if x.is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def format_scalar(c: complex) -> str:
    c = complex(c)
    if c.imag == 0:
        return _fmt_real(c.real)
    if c.real == 0:
        return f"{_fmt_real(c.imag)}i"
    im = _fmt_real(c.imag)
    sign = "" if im.startswith("-") else "+"
    return f"{_fmt_real(c.real)}{sign}{im}i"


def _format_atoms(atoms) -> str:
    return " ".join(f"adag({m})" if k == CREATE else f"a({m})" for k, m in atoms)


def format_operator(op: OperatorExpr) -> str:
    """Canonical text of an operator, e.g. ``id + (-1) adag(0) a(0)``."""
    if op.is_zero:
        return "zero"
    parts = []
    for t in op.terms:
        body = _format_atoms(t.atoms) or "id"
        if t.coefficient == 1:
            parts.append(body)
        else:
            parts.append(f"({format_scalar(t.coefficient)}) {body}")
    return " + ".join(parts)


def format_monomial(m: Monomial) -> str:
    body = _format_atoms(m.atoms) or "id"
    if m.coefficient == 1:
        return body
    return f"({format_scalar(m.coefficient)}) {body}"


_F_PREC = {
    Implies: 1,
    SasakiHook: 1,
    ClassicalOr: 2,
    QuantumOr: 2,
    And: 3,
}
_F_OPS = {Implies: "->", SasakiHook: "~>", ClassicalOr: "|", QuantumOr: "(+)", And: "&"}


def pretty_print(node: Node) -> str:
    if isinstance(node, Formula):
        return _pf(node, 0)
    return _pa(node, 0)


def _pf(f: Formula, ctx: int) -> str:
    if isinstance(f, Top):
        return "T"
    if isinstance(f, Bot):
        return "F"
    if isinstance(f, ClassicalNot):
        return "!" + _pf(f.body, 4)
    if isinstance(f, QuantumNot):
        return "~" + _pf(f.body, 4)
    if isinstance(f, Box):
        return f"[{_pa(f.action, 0)}]" + _pf(f.body, 4)
    if isinstance(f, Diamond):
        return f"<{_pa(f.action, 0)}>" + _pf(f.body, 4)
    prec = _F_PREC[type(f)]
    if prec == 1:  # right associative
        text = f"{_pf(f.left, prec + 1)} {_F_OPS[type(f)]} {_pf(f.right, prec)}"
    else:
        text = f"{_pf(f.left, prec)} {_F_OPS[type(f)]} {_pf(f.right, prec + 1)}"
    return f"({text})" if prec < ctx else text


def _pa(a: Action, ctx: int) -> str:
    if isinstance(a, Basic):
        return f"h({format_operator(a.op)})"
    if isinstance(a, ClassicalTest):
        return _test_body(a.formula) + "?"
    if isinstance(a, QuantumTest):
        return _test_body(a.formula) + "?q"
    if isinstance(a, Inverse):
        return _pa(a.body, 3) + "^-1"
    if isinstance(a, Seq):
        text = f"{_pa(a.first, 2)}; {_pa(a.second, 3)}"
        return f"({text})" if ctx > 2 else text
    if isinstance(a, Union):
        text = f"{_pa(a.left, 1)} U {_pa(a.right, 2)}"
        return f"({text})" if ctx > 1 else text
    raise TypeError(f"not an action: {a!r}")


def _test_body(f: Formula) -> str:
    text = _pf(f, 4)
    if isinstance(f, (Top, Bot)) or text.startswith("("):
        return text
    return f"({text})"


# lexing


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.message = message
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")

    def render(self) -> str:
        if not self.text:
            return str(self)
        return f"{self}\n  {self.text}\n  {' ' * self.position}^"


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?i?)
  | (?P<sym>\(\+\)|\^-1|->|~>|\?q|[()\[\]<>!~&|;?*+,\-])
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "sym", "ident", "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        if m.lastgroup != "ws":
            out.append(Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


# parsing


class _Fail(Exception):
    def __init__(self, message, pos):
        self.message = message
        self.pos = pos


class _Parser:
    def __init__(self, text, n_modes, phases):
        self.text = text
        self.toks = tokenize(text)
        self.n_modes = n_modes if n_modes is not None else _infer_modes(self.toks)
        self.phases = dict(phases or {})
        self.i = 0
        self.memo = {}
        self.furthest = (-1, "")

    # helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def fail(self, message, tok=None):
        tok = tok or self.tok
        if tok.pos > self.furthest[0]:
            self.furthest = (tok.pos, message)
        raise _Fail(message, tok.pos)

    def at(self, *texts) -> bool:
        return self.tok.kind in ("sym", "ident") and self.tok.text in texts

    def at_call(self, name) -> bool:
        nxt = self.toks[self.i + 1] if self.i + 1 < len(self.toks) else None
        return self.at(name) and nxt is not None and nxt.text == "("

    def expect(self, text):
        if not self.at(text):
            found = self.tok.text or "end of input"
            self.fail(f"expected {text!r}, found {found!r}")
        self.i += 1

    def memoized(self, rule, fn):
        key = (rule, self.i)
        if key in self.memo:
            result, end = self.memo[key]
            if isinstance(result, _Fail):
                raise result
            self.i = end
            return result
        start = self.i
        try:
            result = fn()
        except _Fail as exc:
            self.memo[key] = (exc, start)
            self.i = start
            raise
        self.memo[key] = (result, self.i)
        return result

    def finish(self, node):
        if self.tok.kind != "end":
            self.fail(f"unexpected {self.tok.text!r}")
        return node

    # formulas
    def formula(self):
        return self.memoized("formula", self._impl)

    def _impl(self):
        left = self._orf()
        if self.at("->", "~>"):
            op = self.tok.text
            self.i += 1
            right = self._impl()
            return Implies(left, right) if op == "->" else SasakiHook(left, right)
        return left

    def _orf(self):
        left = self._andf()
        while self.at("|", "(+)"):
            op = self.tok.text
            self.i += 1
            right = self._andf()
            left = ClassicalOr(left, right) if op == "|" else QuantumOr(left, right)
        return left

    def _andf(self):
        left = self._unary()
        while self.at("&"):
            self.i += 1
            left = And(left, self._unary())
        return left

    def _unary(self):
        t = self.tok
        if self.at("T"):
            self.i += 1
            return TOP
        if self.at("F"):
            self.i += 1
            return BOT
        if self.at("!"):
            self.i += 1
            return ClassicalNot(self._unary())
        if self.at("~"):
            self.i += 1
            return QuantumNot(self._unary())
        if self.at("["):
            self.i += 1
            act = self.action()
            self.expect("]")
            return Box(act, self._unary())
        if self.at("<"):
            self.i += 1
            act = self.action()
            self.expect(">")
            return Diamond(act, self._unary())
        if self.at("("):
            self.i += 1
            f = self.formula()
            self.expect(")")
            return f
        self.fail(f"expected a formula, found {t.text or 'end of input'!r}")

    # actions
    def action(self):
        return self.memoized("action", self._union)

    def _union(self):
        left = self._seq()
        while self.at("U"):
            self.i += 1
            left = Union(left, self._seq())
        return left

    def _seq(self):
        left = self._post()
        while self.at(";"):
            self.i += 1
            left = Seq(left, self._post())
        return left

    def _post(self):
        a = self._prim()
        while self.at("^-1"):
            self.i += 1
            a = Inverse(a)
        return a

    def _prim(self):
        if self.at_call("h"):
            self.i += 2
            op = self.opexpr()
            self.expect(")")
            return Basic(op)
        start = self.i
        try:
            f = self.formula()
            if self.at("?q"):
                self.i += 1
                return QuantumTest(f)
            if self.at("?"):
                self.i += 1
                return ClassicalTest(f)
            self.fail("expected '?' or '?q' after test formula")
        except _Fail:
            self.i = start
            if not self.at("("):
                raise
        self.i += 1
        a = self.action()
        self.expect(")")
        return a

    # operator expressions
    def opexpr(self):
        negate = False
        if self.at("-"):
            self.i += 1
            negate = True
        out = self._prodop()
        if negate:
            out = -out
        while self.at("+", "-"):
            op = self.tok.text
            self.i += 1
            term = self._prodop()
            out = out + term if op == "+" else out - term
        return out

    def _prodop(self):
        out = self._factor()
        while True:
            if self.at("*"):
                self.i += 1
                out = out @ self._factor()
            elif self._factor_start():
                out = out @ self._factor()
            else:
                return out

    def _factor_start(self):
        t = self.tok
        if t.kind == "num":
            return True
        return self.at("(", "id", "zero", "i") or any(self.at_call(n) for n in ("a", "adag", "exp", "U"))

    def _nat(self):
        t = self.tok
        if t.kind != "num" or not t.text.isdigit():
            self.fail(f"expected a mode index, found {t.text or 'end of input'!r}")
        self.i += 1
        return int(t.text), t

    def _mode(self):
        m, t = self._nat()
        if m >= self.n_modes:
            self.fail(f"mode index {m} out of range for {self.n_modes} modes", t)
        return m

    def _scalar_op(self, c):
        return identity(self.n_modes).scaled(c)

    def _factor(self):
        t = self.tok
        if self.at_call("a") or self.at_call("adag"):
            name = t.text
            self.i += 2
            m = self._mode()
            self.expect(")")
            return annihilation(m, self.n_modes) if name == "a" else creation(m, self.n_modes)
        if self.at("id"):
            self.i += 1
            return identity(self.n_modes)
        if self.at("zero"):
            self.i += 1
            return zero_operator(self.n_modes)
        if self.at("i") and not self.at_call("i"):
            self.i += 1
            return self._scalar_op(1j)
        if t.kind == "num":
            self.i += 1
            return self._scalar_op(_number(t.text))
        if self.at_call("exp"):
            self.i += 2
            self.expect("i")
            self.expect("*")
            sign = 1.0
            if self.at("-"):
                self.i += 1
                sign = -1.0
            num = self.tok
            if num.kind != "num" or num.text.endswith("i"):
                self.fail("expected a real phase angle")
            self.i += 1
            self.expect(")")
            return self._scalar_op(cmath.exp(1j * sign * float(num.text)))
        if self.at_call("U"):
            self.i += 2
            j, _ = self._nat()
            self.expect(",")
            i, _ = self._nat()
            self.expect(")")
            if (j, i) not in self.phases:
                self.fail(f"unbound phase U({j},{i})", t)
            return self._scalar_op(complex(self.phases[(j, i)]))
        if self.at("("):
            self.i += 1
            inner = self.opexpr()
            self.expect(")")
            return inner
        self.fail(f"expected an operator factor, found {t.text or 'end of input'!r}")


def _number(text: str) -> complex:
    if text.endswith("i"):
        return complex(0.0, float(text[:-1]))
    return complex(float(text), 0.0)


def _infer_modes(toks: list[Token]) -> int:
    top = 0
    for k in range(len(toks) - 2):
        if toks[k].text in ("a", "adag") and toks[k + 1].text == "(" and toks[k + 2].text.isdigit():
            top = max(top, int(toks[k + 2].text) + 1)
    return check_modes(max(top, 1))


def _run(text, n_modes, phases, rule):
    p = _Parser(text, n_modes, phases)
    try:
        node = getattr(p, rule)()
        return p.finish(node)
    except _Fail as exc:
        pos, message = max(p.furthest, (exc.pos, exc.message))
        raise ParseError(message, pos, text) from None


def parse_formula(
    text: str, n_modes: int | None = None, phases: Mapping[tuple[int, int], complex] | None = None
) -> Formula:
    """Parse a formula. ``n_modes`` defaults to one past the largest mode used."""
    return _run(text, n_modes, phases, "formula")


def parse_action(
    text: str, n_modes: int | None = None, phases: Mapping[tuple[int, int], complex] | None = None
) -> Action:
    return _run(text, n_modes, phases, "action")


def parse_operator(
    text: str, n_modes: int | None = None, phases: Mapping[tuple[int, int], complex] | None = None
) -> OperatorExpr:
    return _run(text, n_modes, phases, "opexpr")


# random trees, used by property tests and by the seriality formula sample


def random_operator(rng, n_modes: int, max_terms: int = 2, max_atoms: int = 3) -> OperatorExpr:
    check_modes(n_modes)
    out = zero_operator(n_modes)
    for _ in range(int(rng.integers(1, max_terms + 1))):
        term = identity(n_modes)
        for _ in range(int(rng.integers(0, max_atoms + 1))):
            m = int(rng.integers(n_modes))
            term = term @ (creation(m, n_modes) if rng.random() < 0.5 else annihilation(m, n_modes))
        if rng.random() < 0.5:
            c = complex(round(float(rng.normal()), 3), round(float(rng.normal()), 3))
            term = term.scaled(c)
        out = out + term
    return out


def random_atom_operator(rng, n_modes: int) -> OperatorExpr:
    m = int(rng.integers(n_modes))
    return creation(m, n_modes) if rng.random() < 0.5 else annihilation(m, n_modes)


def random_action(rng, n_modes: int, depth: int, atoms_only: bool = False) -> Action:
    if depth <= 0 or rng.random() < 0.3:
        if atoms_only or rng.random() < 0.7:
            return Basic(random_atom_operator(rng, n_modes))
        return Basic(random_operator(rng, n_modes))
    choice = int(rng.integers(6))
    d = depth - 1
    if choice == 0:
        return Seq(random_action(rng, n_modes, d, atoms_only), random_action(rng, n_modes, d, atoms_only))
    if choice == 1:
        return Inverse(random_action(rng, n_modes, d, atoms_only))
    if choice == 2:
        return ClassicalTest(random_formula(rng, n_modes, d, atoms_only))
    if choice == 3:
        return QuantumTest(random_formula(rng, n_modes, d, atoms_only))
    return Union(random_action(rng, n_modes, d, atoms_only), random_action(rng, n_modes, d, atoms_only))


def random_formula(rng, n_modes: int, depth: int, atoms_only: bool = False) -> Formula:
    """Random formula tree of depth at most ``depth``."""
    if depth <= 0 or rng.random() < 0.2:
        return TOP if rng.random() < 0.5 else BOT
    d = depth - 1
    choice = int(rng.integers(11))
    if choice == 0:
        return ClassicalNot(random_formula(rng, n_modes, d, atoms_only))
    if choice == 1:
        return QuantumNot(random_formula(rng, n_modes, d, atoms_only))
    if choice in (2, 3, 4, 5, 6):
        cls = (And, ClassicalOr, QuantumOr, Implies, SasakiHook)[choice - 2]
        return cls(random_formula(rng, n_modes, d, atoms_only), random_formula(rng, n_modes, d, atoms_only))
    cls = Box if choice in (7, 8) else Diamond
    return cls(random_action(rng, n_modes, d, atoms_only), random_formula(rng, n_modes, d, atoms_only))


def is_finite_scalar(c: complex) -> bool:
    return math.isfinite(c.real) and math.isfinite(c.imag)
