# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Jordan-Wigner word kernel."""
import numpy as np

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


def word_images(const unsigned char[::1] kinds,
                const long long[::1] modes,
                const long long[::1] states):
    cdef Py_ssize_t n = states.shape[0]
    cdef Py_ssize_t m = kinds.shape[0]
    cdef Py_ssize_t k, a
    cdef unsigned long long s, bit
    cdef signed char sign

    targets_arr = np.zeros(n, dtype=np.int64)
    signs_arr = np.zeros(n, dtype=np.int8)
    cdef long long[::1] targets = targets_arr
    cdef signed char[::1] signs = signs_arr

    with nogil:
        for k in range(n):
            s = <unsigned long long>states[k]
            sign = 1
            for a in range(m - 1, -1, -1):
                bit = (<unsigned long long>1) << modes[a]
                if kinds[a]:
                    if s & bit:
                        sign = 0
                        break
                else:
                    if not (s & bit):
                        sign = 0
                        break
                if __builtin_popcountll(s & (bit - 1)) & 1:
                    sign = -sign
                s ^= bit
            if sign != 0:
                targets[k] = <long long>s
                signs[k] = sign
    return targets_arr, signs_arr
