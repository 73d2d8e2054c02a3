import numpy
from setuptools import setup, Extension

try:
    from Cython.Build import cythonize
    extensions = cythonize(
        [
            Extension(
                "drinlog._kernels",
                sources=["src/drinlog/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except ImportError:
    # no Cython: the package falls back to the numpy kernels at import time
    extensions = []

setup(ext_modules=extensions)
