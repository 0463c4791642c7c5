"""Build script with an optional compiled kernel extension.

The package is fully functional without the extension: the integer linear
algebra kernels have a pure-Python implementation selected at import time.
If Cython or a C compiler is missing, the build silently degrades to the
pure build instead of failing.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/ambigal/_kernels/fastint.pyx"],
        language_level=3,
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
