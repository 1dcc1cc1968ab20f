"""Backend selection for the four-fold purity kernel.

The compiled extension is optional; when it is missing (no C toolchain or
Cython at install time) the numpy contraction is used. ``fourfold_sum``
accepts an explicit ``backend`` for benchmarking and cross-validation.
"""

from __future__ import annotations

import numpy as np

from .fourfold_np import fourfold_sum as _fourfold_numpy

try:
    from ._fourfold import fourfold_sum as _fourfold_compiled

    HAVE_COMPILED = True
except ImportError:  # pragma: no cover - depends on build environment
    _fourfold_compiled = None
    HAVE_COMPILED = False

DEFAULT_BACKEND = "compiled" if HAVE_COMPILED else "numpy"


def fourfold_sum(v, os, oi, backend: str = "auto") -> complex:
    """Four-index contraction behind the purity quadrature.

    backend: "auto" (compiled when available), "compiled", or "numpy".
    """
    if backend == "auto":
        backend = DEFAULT_BACKEND
    if backend == "compiled":
        if not HAVE_COMPILED:
            raise RuntimeError("compiled four-fold kernel is not available")
        return _fourfold_compiled(
            np.ascontiguousarray(v, dtype=complex),
            np.ascontiguousarray(os, dtype=float),
            np.ascontiguousarray(oi, dtype=float),
        )
    if backend == "numpy":
        return _fourfold_numpy(np.asarray(v, dtype=complex),
                               np.asarray(os, dtype=float),
                               np.asarray(oi, dtype=float))
    raise ValueError(f"unknown backend {backend!r}")
