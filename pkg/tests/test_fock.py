import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fockdl.fock import (
    MAX_MODES,
    BasisState,
    FockSpaceError,
    StateVector,
    all_basis_states,
    basis_state,
    inner_product,
    normalize,
    ray_equal,
    state,
)


@pytest.mark.parametrize(
    "occupied, n, expected",
    [(set(), 2, "00"), ({0}, 2, "10"), ({0, 1}, 2, "11"), ({2}, 4, "0010")],
)
def test_basis_state_bitstrings(occupied, n, expected):
    assert basis_state(occupied, n).bitstring == expected
    assert BasisState.from_bitstring(expected) == basis_state(occupied, n)


def test_basis_state_errors():
    with pytest.raises(FockSpaceError):
        basis_state({2}, 2)
    with pytest.raises(FockSpaceError):
        basis_state(set(), MAX_MODES + 1)
    with pytest.raises(FockSpaceError):
        BasisState.from_bitstring("012")


def test_normalize_examples():
    v = StateVector(2, {"10": 2.0})
    assert normalize(v) == StateVector.basis("10")
    assert normalize(StateVector.zero(2)).is_zero
    s = normalize(StateVector(2, {"10": 1, "01": 1}))
    assert s.amplitude("10") == pytest.approx(1 / math.sqrt(2))
    assert s.amplitude("01") == pytest.approx(1 / math.sqrt(2))
    assert StateVector(2, {"10": 1e-13}).norm() < 1e-12
    assert normalize(StateVector(2, {"10": 1e-13})).is_zero


def test_pruning():
    v = StateVector(2, {"10": 1.0, "01": 1e-15})
    assert v.support == (1,)


def test_ray_equal_examples():
    assert ray_equal(state("10"), state("10").scaled(cmath.exp(1j * math.pi / 3)))
    assert not ray_equal(state("10"), state("01"))
    assert ray_equal(StateVector.zero(2), StateVector.zero(2))
    assert not ray_equal(StateVector.zero(2), state("01"))


def test_inner_product_examples():
    assert inner_product(state("10"), state("10")) == 1
    assert inner_product(state("10"), state("01")) == 0
    plus = state("10", "01")
    assert inner_product(plus, state("01")) == pytest.approx(1 / math.sqrt(2))
    # conjugate-linear in the first argument
    assert inner_product(state("10").scaled(1j), state("10")) == pytest.approx(-1j)
    with pytest.raises(FockSpaceError):
        inner_product(state("10"), state("100"))


@pytest.mark.parametrize("n", range(1, 7))
def test_basis_spans_full_dimension(n):
    gram = np.stack([StateVector.basis(b).to_dense() for b in all_basis_states(n)])
    assert np.linalg.matrix_rank(gram) == 2**n


def test_json_round_trip():
    v = state("10", "01", amplitudes=[1, 1j])
    obj = v.to_json()
    assert set(obj) == {"10", "01"}
    assert StateVector.from_json(obj) == v
    assert StateVector.from_json({}, 3).is_zero


amplitude = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


@st.composite
def vectors(draw, n=3):
    amps = draw(st.dictionaries(st.integers(0, 2**n - 1), amplitude, max_size=4))
    return StateVector(n, amps)


@settings(max_examples=200, deadline=None)
@given(vectors())
def test_normalize_idempotent(v):
    once = normalize(v)
    assert normalize(once) == once
    if not once.is_zero:
        assert abs(once.norm() - 1) < 1e-12


@settings(max_examples=200, deadline=None)
@given(vectors(), vectors(), st.floats(0, 2 * math.pi))
def test_ray_equal_reflexive_symmetric(u, v, phase):
    u, v = normalize(u), normalize(v)
    assert ray_equal(u, u)
    assert ray_equal(u, u.scaled(cmath.exp(1j * phase)))
    assert ray_equal(u, v) == ray_equal(v, u)


def test_ray_equal_transitive_on_clusters(rng):
    for _ in range(50):
        base = rng.normal(size=8) + 1j * rng.normal(size=8)
        cluster = []
        for _ in range(5):
            noise = 1e-7 * (rng.normal(size=8) + 1j * rng.normal(size=8))
            vec = (base + noise) * cmath.exp(1j * rng.uniform(0, 6.3))
            cluster.append(normalize(StateVector.from_dense(vec, 3)))
        far = normalize(StateVector.from_dense(rng.normal(size=8) + 0j, 3))
        for a in cluster:
            for b in cluster:
                assert ray_equal(a, b)
            assert ray_equal(a, far) == ray_equal(cluster[0], far)
