import numpy as np
import pytest

from fockdl import _pykernels, kernels
from fockdl.car_algebra import ANNIHILATE, CREATE, word_matrix

BACKENDS = [_pykernels]
try:
    from fockdl import _ckernels

    BACKENDS.append(_ckernels)
except ImportError:  # extension not built
    pass


def brute_force_images(word, states):
    """Per-state loop with the sign rule written out directly."""
    targets, signs = [], []
    for s in states:
        sign = 1
        for kind, mode in reversed(word):
            occ = (s >> mode) & 1
            if occ == kind:  # create on occupied, or annihilate on empty
                sign = 0
                break
            if bin(s & ((1 << mode) - 1)).count("1") % 2:
                sign = -sign
            s ^= 1 << mode
        targets.append(s if sign else 0)
        signs.append(sign)
    return np.array(targets), np.array(signs)


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def test_backends_match_brute_force(impl, rng):
    for n in range(1, 7):
        states = np.arange(2**n)
        for _ in range(30):
            length = int(rng.integers(0, 6))
            word = [(int(rng.integers(2)), int(rng.integers(n))) for _ in range(length)]
            kinds = [k for k, _ in word]
            modes = [m for _, m in word]
            t, s = kernels.word_images(kinds, modes, states, impl=impl)
            bt, bs = brute_force_images(word, states)
            np.testing.assert_array_equal(s, bs)
            np.testing.assert_array_equal(t, bt)


def test_selected_backend_is_reported():
    assert kernels.BACKEND in ("cython", "python")
    if len(BACKENDS) == 2:
        assert kernels.BACKEND == "cython" or kernels._impl is _pykernels


@pytest.mark.parametrize("n", range(1, 7))
def test_atoms_match_kronecker_construction(n, jw):
    for i in range(n):
        ann = jw(i, n)
        np.testing.assert_array_equal(word_matrix([(ANNIHILATE, i)], n), ann)
        np.testing.assert_array_equal(word_matrix([(CREATE, i)], n), ann.conj().T)


def test_fallback_forced_by_environment():
    import os
    import subprocess
    import sys

    env = dict(os.environ, FOCKDL_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import fockdl; print(fockdl.BACKEND)"], env=env, capture_output=True, text=True
    )
    assert out.stdout.strip() == "python"
