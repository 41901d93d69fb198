"""Build script for the optional compiled stepper core.

The package works without the extension (a pure-numpy stepper is selected at
import time); building it just makes long simulations and sweeps much faster.
"""

import os

import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    if not os.path.exists("src/proxops/_core.pyx"):
        cythonize = None
    if cythonize is None:
        ext_modules = []
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "proxops._core",
                    ["src/proxops/_core.pyx"],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            language_level=3,
        )

setup(ext_modules=ext_modules)
