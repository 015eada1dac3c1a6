import cmath

import pytest

from fockdl import car_algebra as car
from fockdl.car_algebra import annihilation, creation, identity, product_of, transition_projector
from fockdl.logic_syntax import (
    BOT,
    TOP,
    And,
    Basic,
    Box,
    ClassicalNot,
    ClassicalOr,
    ClassicalTest,
    Diamond,
    Implies,
    Inverse,
    ParseError,
    QuantumNot,
    QuantumOr,
    Seq,
    Union,
    compile_h,
    diamond_expanded,
    parse_action,
    parse_formula,
    parse_operator,
    pretty_print,
    random_action,
    random_formula,
)
from fockdl.semantics import atom_alphabet, build_model, full_model
from golden_formulas import GOLDEN, U


def a(i, n=3):
    return annihilation(i, n)


def ad(i, n=3):
    return creation(i, n)


def can(i, n):
    return Diamond(Basic(annihilation(i, n)), TOP)


def co(i, n):
    return Diamond(Basic(creation(i, n)), TOP)


class TestSpecExamples:
    def test_diamond(self):
        assert parse_formula("<h(a(0))>T") == Diamond(Basic(annihilation(0, 1)), TOP)

    def test_box_sequence(self):
        f = parse_formula("[h(adag(1)); h(a(0))]F")
        assert f == Box(Seq(Basic(creation(1, 2)), Basic(annihilation(0, 2))), BOT)

    def test_if_then_else(self):
        cond = "<h(a(0))>T"
        act = parse_action(f"({cond}? ; h(a(0))) U ((!{cond})? ; h(a(1)))")
        c = Diamond(Basic(a(0, 2)), TOP)
        assert act == Union(
            Seq(ClassicalTest(c), Basic(a(0, 2))),
            Seq(ClassicalTest(ClassicalNot(c)), Basic(a(1, 2))),
        )

    def test_printing(self):
        assert pretty_print(Diamond(Basic(annihilation(0, 1)), TOP)) == "<h(a(0))>T"
        assert pretty_print(QuantumNot(TOP)) == "~T"


@pytest.mark.parametrize("text, expected", GOLDEN, ids=[g[0][:50] for g in GOLDEN])
def test_golden_formulas(text, expected):
    f = parse_formula(text, 3, U)
    assert f == expected()
    assert parse_formula(pretty_print(f), 3) == f


def test_diamond_is_sugar():
    d = parse_formula("<h(a(0))>F")
    assert diamond_expanded(d) == ClassicalNot(Box(Basic(annihilation(0, 1)), ClassicalNot(BOT)))


def test_precedence():
    assert parse_formula("T & F | T") == ClassicalOr(And(TOP, BOT), TOP)
    assert parse_formula("T -> F -> T") == Implies(TOP, Implies(BOT, TOP))
    assert parse_formula("!T & F") == And(ClassicalNot(TOP), BOT)
    assert parse_formula("T | F -> T (+) F") == Implies(ClassicalOr(TOP, BOT), QuantumOr(TOP, BOT))
    x, y, z = (Basic(annihilation(k, 3)) for k in range(3))
    assert parse_action("h(a(0)); h(a(1)) U h(a(2))") == Union(Seq(x, y), z)
    assert parse_action("h(a(0)); h(a(1))^-1", 3) == Seq(x, Inverse(y))
    assert parse_action("(h(a(0)); h(a(1)))^-1^-1", 3) == Inverse(Inverse(Seq(x, y)))


def test_operator_literals():
    assert parse_operator("2i a(0)", 1) == annihilation(0, 1).scaled(2j)
    assert parse_operator("(0.5+0.5i) * adag(0)", 1) == creation(0, 1).scaled(0.5 + 0.5j)
    assert parse_operator("exp(i*1.5) a(0)", 1) == annihilation(0, 1).scaled(cmath.exp(1.5j))
    assert parse_operator("i id", 1) == identity(1).scaled(1j)
    assert parse_operator("a(0) - a(0)", 1).is_zero
    assert parse_operator("a(0) a(0)").is_zero


@pytest.mark.parametrize(
    "text, pos",
    [("<h(a(0)>T", 7), ("[h(a(0))]", 9), ("T &", 3), ("<h(b(0))>T", 3), ("T $ F", 2)],
)
def test_error_positions(text, pos):
    with pytest.raises(ParseError) as info:
        parse_formula(text)
    assert info.value.position == pos
    assert "^" in info.value.render()


def test_mode_range_errors():
    with pytest.raises(ParseError, match="out of range"):
        parse_formula("<h(a(3))>T", 2)
    with pytest.raises(ParseError, match="unbound phase"):
        parse_operator("U(1,0) a(0)", 2)


def test_round_trip_random_asts(rng):
    for _ in range(1000):
        n = int(rng.integers(1, 4))
        f = random_formula(rng, n, 6)
        text = pretty_print(f)
        assert parse_formula(text, n) == f, text
        assert pretty_print(parse_formula(text, n)) == text


def test_round_trip_random_actions(rng):
    for _ in range(300):
        act = random_action(rng, 3, 4)
        assert parse_action(pretty_print(act), 3) == act


def test_respacing_is_canonical():
    assert pretty_print(parse_formula("  < h( a (0) ) >T&T")) == "<h(a(0))>T & T"


class TestCompileH:
    def test_spec_examples(self):
        op = creation(1, 2) @ annihilation(0, 2)
        assert compile_h(op, "sequence") == Seq(Basic(annihilation(0, 2)), Basic(creation(1, 2)))
        for mode in ("atomic", "sequence"):
            assert compile_h(annihilation(0, 2), mode) == Basic(annihilation(0, 2))
        assert compile_h(op) == Basic(op)

    def test_sum_rejected(self):
        with pytest.raises(ValueError):
            compile_h(transition_projector(1, 0, 1, 2), "sequence")

    def test_monomial_keeps_written_order(self):
        m = car.monomial(2, (car.ANNIHILATE, 0), (car.CREATE, 0))
        assert compile_h(m, "sequence") == Seq(Basic(creation(0, 2)), Basic(annihilation(0, 2)))

    @pytest.mark.parametrize("n", range(1, 6))
    def test_modes_agree_on_basis_states(self, n, rng):
        models = [full_model(n), build_model(n, [car.StateVector.basis("1" * n)], atom_alphabet(n), 2)]
        for _ in range(25):
            length = int(rng.integers(1, 5))
            factors = [creation(m, n) if rng.random() < 0.5 else annihilation(m, n) for m in rng.integers(0, n, length)]
            c = cmath.exp(1j * rng.uniform(0, 6.3))
            factors[0] = factors[0].scaled(c)
            op = product_of(factors)
            if op.is_zero:
                continue
            atomic = compile_h(op, "atomic")
            seq = compile_h(factors, "sequence")
            for m in models:
                ra, rs = m.transitions(atomic), m.transitions(seq)
                for s in range(m.n_states):
                    if m.states[s].is_basis():
                        assert ra.successors(s) == rs.successors(s)
