"""Build script: compiles the optional search-kernel extension when Cython is present.

The package works without the extension (a pure-Python twin of every kernel
ships in ordramsey._fallback), so a failed extension build is not fatal.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("ordramsey._speedups", ["src/ordramsey/_speedups.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
