"""Pure-numpy evaluation of the four-fold purity contraction.

Uses the exact factorization F = v . (G * G^T) . v with
G = (os * conj(v)[:, None])^T @ oi, an O(N^3) reorganization of the same
four-index sum the compiled kernel walks literally (the two agree to
rounding; see the kernel tests).
"""

from __future__ import annotations

import numpy as np


def fourfold_sum(v: np.ndarray, os: np.ndarray, oi: np.ndarray) -> complex:
    v = np.asarray(v, dtype=complex)
    g = (os * np.conj(v)[:, None]).T @ oi
    return complex(v @ (g * g.T) @ v)
