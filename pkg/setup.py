"""Build script for the optional compiled kernels.

The package is pure Python plus one Cython extension holding the hot loops
(zero-group counting for line censuses, multi-point form evaluation).  If the
extension cannot be built the package still installs and falls back to the
numpy implementations in fanolines._kernels.ref.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "fanolines._kernels.speed",
                ["src/fanolines/_kernels/speed.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
