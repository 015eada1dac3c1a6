"""Pure-Python (numpy) implementation of the Jordan-Wigner word kernel."""

import numpy as np

_PARITY = np.array([bin(x).count("1") & 1 for x in range(1 << 12)], dtype=np.int8)


def word_images(kinds, modes, states):
    """Apply a product of fermionic atoms to many occupation-basis states.

    ``kinds[a]`` is 1 for a creation atom and 0 for an annihilation atom on
    mode ``modes[a]``; the word is applied right to left. Returns
    ``(targets, signs)`` where ``signs[k]`` is 0 if the word annihilates
    ``states[k]`` and the Jordan-Wigner sign otherwise.
    """
    s = np.array(states, dtype=np.int64, copy=True)
    signs = np.ones(s.shape[0], dtype=np.int8)
    for kind, mode in zip(kinds[::-1], modes[::-1]):
        bit = 1 << int(mode)
        occupied = (s & bit) != 0
        signs[occupied if kind else ~occupied] = 0
        flip = _PARITY[s & (bit - 1)].astype(bool)
        signs[flip] = -signs[flip]
        s ^= bit
    targets = np.where(signs != 0, s, 0)
    return targets, signs
