import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "vacnoise._kernels._modesum",
                ["src/vacnoise/_kernels/_modesum.pyx"],
                extra_compile_args=["-O3"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except ImportError:
    # the package runs on the pure-numpy kernel if Cython is unavailable
    ext_modules = []

setup(ext_modules=ext_modules)
