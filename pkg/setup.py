"""Build hooks for the optional compiled kernel extension.

The package works without the extension: `paulitherm._backend` falls back to
the pure-Python kernels when `paulitherm._kernels_c` is not importable.
Set PAULITHERM_SKIP_EXT=1 to skip compilation entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("PAULITHERM_SKIP_EXT", "") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "paulitherm._kernels_c",
                    ["src/paulitherm/_kernels_c.pyx"],
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
        ext_modules = []

setup(ext_modules=ext_modules)
