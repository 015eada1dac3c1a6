"""Backend selection for the hot Jordan-Wigner kernel.

The compiled extension is used when it was built; otherwise the numpy
implementation is used. Set ``FOCKDL_PURE_PYTHON=1`` to force the fallback.
"""

import os

import numpy as np

from fockdl import _pykernels

try:
    if os.environ.get("FOCKDL_PURE_PYTHON"):
        raise ImportError("pure-Python backend forced")
    from fockdl import _ckernels as _impl

    BACKEND = "cython"
except ImportError:
    _impl = _pykernels
    BACKEND = "python"


def word_images(kinds, modes, states, impl=None):
    """Images of basis ``states`` under the atom word ``(kinds, modes)``.

    See :func:`fockdl._pykernels.word_images` for the contract. ``impl``
    selects a specific backend module (used by tests and benchmarks).
    """
    impl = _impl if impl is None else impl
    kinds = np.ascontiguousarray(kinds, dtype=np.uint8)
    modes = np.ascontiguousarray(modes, dtype=np.int64)
    states = np.ascontiguousarray(states, dtype=np.int64)
    return impl.word_images(kinds, modes, states)
