"""Build script: compiles the walk kernel extension when Cython is available.

The package works without the extension (a numpy fallback is selected at
import time), so the extension is marked optional and any build failure is
non-fatal.  Set WALKCHECK_NO_EXT=1 to skip the compiled core entirely.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("WALKCHECK_NO_EXT") != "1":
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "walkcheck._walk_kernel",
                    ["src/walkcheck/_walk_kernel.pyx"],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3"],
                    optional=True,
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
