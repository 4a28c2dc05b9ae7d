"""Build script.

The compiled extension `schurmult._core` holds the hot kernels (cyclic Jacobi
eigensolver and the projection feasibility loop).  It is optional: when Cython
or a C compiler is unavailable the package installs without it and selects the
numpy fallback at import time.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("SCHURMULT_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/schurmult/_core.pyx"],
            compiler_directives={
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
                "language_level": "3",
            },
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
