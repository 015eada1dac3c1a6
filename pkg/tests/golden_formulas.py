"""Formulas of the logical part, in the ASCII grammar, with the trees they denote."""

import cmath

from fockdl import car_algebra as car
from fockdl.car_algebra import annihilation, creation, product_of, transition_projector
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
    QuantumNot,
    QuantumOr,
    QuantumTest,
    SasakiHook,
    Seq,
    Union,
    executable,
    iff,
)


def a(i, n=3):
    return annihilation(i, n)


def ad(i, n=3):
    return creation(i, n)


def can(i, n):
    return Diamond(Basic(annihilation(i, n)), TOP)


def co(i, n):
    return Diamond(Basic(creation(i, n)), TOP)


U = {(2, 1): cmath.exp(0.7j), (1, 0): cmath.exp(-1.9j), (0, 1): cmath.exp(2.5j)}
A_ = Diamond(Basic(a(0, 3)), TOP)
B_ = Box(Basic(ad(1, 3)), BOT)
GOLDEN = [
    # box truth condition and the four composite actions
    ("[h(a(0))]T", lambda: Box(Basic(a(0)), TOP)),
    ("[h(a(0)); h(adag(1))]T", lambda: Box(Seq(Basic(a(0)), Basic(ad(1))), TOP)),
    ("[h(a(0))^-1]T", lambda: Box(Inverse(Basic(a(0))), TOP)),
    ("[(<h(a(0))>T)?]F", lambda: Box(ClassicalTest(A_), BOT)),
    ("[h(a(0)) U h(a(1))]T", lambda: Box(Union(Basic(a(0)), Basic(a(1))), TOP)),
    (
        "[(<h(a(0))>T? ; h(a(1))) U ((!<h(a(0))>T)? ; h(a(2)))]T",
        lambda: Box(
            Union(Seq(ClassicalTest(A_), Basic(a(1))), Seq(ClassicalTest(ClassicalNot(A_)), Basic(a(2)))), TOP
        ),
    ),
    # classical connectives
    ("!<h(a(0))>T", lambda: ClassicalNot(A_)),
    ("<h(a(0))>T & [h(adag(1))]F", lambda: And(A_, B_)),
    ("<h(a(0))>T | [h(adag(1))]F", lambda: ClassicalOr(A_, B_)),
    ("<h(a(0))>T -> [h(adag(1))]F", lambda: Implies(A_, B_)),
    # seriality conditions
    ("[h(a(0))]<h(a(0))>T -> <h(a(0))><h(a(0))>T", lambda: Implies(Box(Basic(a(0)), A_), Diamond(Basic(a(0)), A_))),
    ("<h(a(0))>T", lambda: A_),
    ("![h(a(0))]F", lambda: ClassicalNot(Box(Basic(a(0)), BOT))),
    ("!([h(a(0))]!T)", lambda: ClassicalNot(Box(Basic(a(0)), ClassicalNot(TOP)))),
    # quantum connectives and their defining translations
    ("[(<h(a(0))>T)?q]T", lambda: Box(QuantumTest(A_), TOP)),
    ("~<h(a(0))>T", lambda: QuantumNot(A_)),
    ("[(<h(a(0))>T)?q]F", lambda: Box(QuantumTest(A_), BOT)),
    ("[(~<h(a(0))>T)?q U (~[h(adag(1))]F)?q]F", lambda: Box(Union(QuantumTest(QuantumNot(A_)), QuantumTest(QuantumNot(B_))), BOT)),
    ("<h(a(0))>T (+) [h(adag(1))]F", lambda: QuantumOr(A_, B_)),
    ("~(~<h(a(0))>T & ~[h(adag(1))]F)", lambda: QuantumNot(And(QuantumNot(A_), QuantumNot(B_)))),
    ("<h(a(0))>T ~> [h(adag(1))]F", lambda: SasakiHook(A_, B_)),
    # executability and its dual
    ("<h(adag(0))>T", lambda: Diamond(Basic(ad(0)), TOP)),
    ("[h(a(0)); h(a(0))]F", lambda: Box(Seq(Basic(a(0)), Basic(a(0))), BOT)),
    ("[h(adag(2)); h(adag(2))]F", lambda: Box(Seq(Basic(ad(2)), Basic(ad(2))), BOT)),
    # vacuum and zero characterizations
    ("<h(adag(0))>T & <h(adag(1))>T & <h(adag(2))>T", lambda: And(And(co(0, 3), co(1, 3)), co(2, 3))),
    ("!<h(a(1))>T & !<h(adag(1))>T", lambda: And(ClassicalNot(can(1, 3)), ClassicalNot(co(1, 3)))),
    # idempotence, as a biconditional
    (
        "(<h(adag(0) a(0))>T -> <h(a(0))>T) & (<h(a(0))>T -> <h(adag(0) a(0))>T)",
        lambda: iff(Diamond(Basic(ad(0) @ a(0)), TOP), A_),
    ),
    (
        "(<h(a(0) adag(0))>T -> <h(adag(0))>T) & (<h(adag(0))>T -> <h(a(0) adag(0))>T)",
        lambda: iff(Diamond(Basic(a(0) @ ad(0)), TOP), Diamond(Basic(ad(0)), TOP)),
    ),
    # the transition chain, term by term and as a whole
    ("<h(adag(2) U(2,1) U(1,0) a(0))>T", lambda: executable((ad(2) @ a(0)).scaled(U[2, 1] * U[1, 0]))),
    (
        "<h(a(1) adag(1) a(0) adag(0))>T | <h(adag(2) U(2,1) a(1) a(0) adag(0))>T"
        " | <h(a(1) adag(1) adag(1) U(1,0) a(0))>T | <h(adag(2) U(2,1) U(1,0) a(0))>T",
        lambda: ClassicalOr(
            ClassicalOr(
                ClassicalOr(
                    executable(product_of([a(1), ad(1), a(0), ad(0)])),
                    executable(product_of([ad(2), a(1), a(0), ad(0)]).scaled(U[2, 1])),
                ),
                executable(car.zero_operator(3)),
            ),
            executable((ad(2) @ a(0)).scaled(U[2, 1] * U[1, 0])),
        ),
    ),
    (
        "<h(a(1) adag(1) a(0) adag(0) + adag(2) U(2,1) a(1) a(0) adag(0)"
        " + a(1) adag(1) adag(1) U(1,0) a(0) + adag(2) U(2,1) a(1) adag(1) U(1,0) a(0))>T",
        lambda: executable(transition_projector(2, 1, U[2, 1], 3) @ transition_projector(1, 0, U[1, 0], 3)),
    ),
    (
        "<h((a(1) adag(1) + U(2,1) adag(2) a(1)) (a(0) adag(0) + U(1,0) adag(1) a(0)))>T",
        lambda: executable(transition_projector(2, 1, U[2, 1], 3) @ transition_projector(1, 0, U[1, 0], 3)),
    ),
    # the loop case k = i
    ("<h(adag(0) U(0,1) U(1,0) a(0))>T", lambda: executable((ad(0) @ a(0)).scaled(U[0, 1] * U[1, 0]))),
    ("<h(adag(0) a(0))>T", lambda: executable(ad(0) @ a(0))),
]


