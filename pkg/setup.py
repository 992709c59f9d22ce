"""Build script for the compiled fitting kernel.

The package works without the extension (a pure-numpy fallback is selected
at import time), so a failed compile only costs speed, not correctness.
"""

import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "modalfit._kernel._native",
        ["src/modalfit/_kernel/_native.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
    )
]

setup(ext_modules=cythonize(extensions, language_level=3))
