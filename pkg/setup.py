"""Build hook for the optional compiled row-reduction kernels.

The package is pure Python; the extension only speeds up the two hot
kernels (rational RREF and matrix product).  If Cython or a C compiler
is unavailable the build silently falls back to the pure implementation,
which `odirac.exactla` selects at import time.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("odirac.exactla._speedups", ["src/odirac/exactla/_speedups.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
