"""Build script for the optional compiled kernels.

The package works without the extension (a pure-Python backend is selected at
import time); building it just makes the hot loops fast.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "lroof._kernels._cykernels",
                ["src/lroof/_kernels/_cykernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    print("warning: Cython not available, installing with pure-Python kernels only")
    ext_modules = []

setup(ext_modules=ext_modules)
