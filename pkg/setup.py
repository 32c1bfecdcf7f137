"""Build script: compiles the optional Cython kernel extension.

The package is fully functional without the extension (a pure-Python twin is
selected at import time); compilation is attempted and skipped on failure so
`pip install` never hard-fails on a missing toolchain.
"""

import os

from setuptools import setup

ext_modules = []
_PYX = os.path.join(os.path.dirname(__file__), "src", "besslab", "_kernels.pyx")
if os.path.exists(_PYX):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [_PYX],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
