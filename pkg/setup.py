"""Build script: compiles the optional four-fold quadrature kernel when Cython
and a C toolchain are available, and falls back to a pure-Python install
otherwise (the package selects a numpy implementation at import time)."""

import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/sfwmsim/_kernels/_fourfold.pyx"],
        language_level=3,
    )
except ImportError:
    print(
        "sfwmsim: Cython not available; installing without the compiled "
        "four-fold kernel (numpy fallback will be used).",
        file=sys.stderr,
    )

setup(ext_modules=ext_modules)
