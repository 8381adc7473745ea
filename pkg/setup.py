"""Build shim: compiles the optional walk-step extension when Cython is available.

The package is pure Python; `jackwalk._stepkernel` only accelerates the hot
inner loop of transition-row construction.  If Cython (or a C compiler) is
missing the build silently proceeds without it and the pure-Python twin is
used at runtime.
"""

import os

from setuptools import setup

PYX = os.path.join("src", "jackwalk", "_stepkernel.pyx")

ext_modules = []
if os.path.exists(PYX):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("jackwalk._stepkernel", [PYX], optional=True)],
            compiler_directives={"language_level": 3},
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
