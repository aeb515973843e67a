"""Build script for the optional compiled elimination kernel.

The package is fully functional without the extension; `catcohom.homalg.kernel`
falls back to the pure-Python routines when the import fails or when
CATCOHOM_PURE=1 is set.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("catcohom._speedups", ["src/catcohom/_speedups.pyx"])],
        compiler_directives={
            "language_level": "3",
            "overflowcheck": True,
            "cdivision": False,
            "boundscheck": False,
            "wraparound": False,
        },
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
