"""Build script: compiles the Metropolis kernel extension when Cython and a C
compiler are available.  The package works without it (pure-Python fallback),
so a failed extension build is not fatal: install with FREEBOUND_PURE=1 to
skip compilation entirely.
"""

import os

from setuptools import Extension, setup


def extensions():
    if os.environ.get("FREEBOUND_PURE"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [
            Extension(
                "freebound._mcmc",
                ["src/freebound/_mcmc.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )


setup(ext_modules=extensions())
