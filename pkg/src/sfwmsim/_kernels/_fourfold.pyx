# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled evaluation of the four-fold purity contraction.

Walks the literal four-index sum
    F = sum_{a,b,c,d} v[a] conj(v[b]) v[c] conj(v[d])
        * os[b,a] * os[d,c] * oi[b,c] * oi[d,a]
so the cross-check keeps the quadruple-integral structure instead of an
algebraically reduced form. O(N^4) work, no allocation.
"""


def fourfold_sum(double complex[::1] v, double[:, ::1] os, double[:, ::1] oi):
    cdef Py_ssize_t n = v.shape[0]
    cdef Py_ssize_t a, b, c, d
    cdef double complex acc = 0.0
    cdef double complex va, vab, vabc

    if os.shape[0] != n or os.shape[1] != n or oi.shape[0] != n or oi.shape[1] != n:
        raise ValueError("kernel matrices must be n x n for an n-vector")

    for a in range(n):
        va = v[a]
        for b in range(n):
            vab = va * v[b].conjugate() * os[b, a]
            for c in range(n):
                vabc = vab * v[c] * oi[b, c]
                for d in range(n):
                    acc = acc + vabc * v[d].conjugate() * os[d, c] * oi[d, a]
    return complex(acc)
