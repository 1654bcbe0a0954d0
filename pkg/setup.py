"""Build the optional compiled kernels; the package runs without them."""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("CARCASS_NO_EXTENSION", "") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "carcass.kernels._ckernels",
                    ["src/carcass/kernels/_ckernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:  # no Cython: pure-Python kernels only
        ext_modules = []

setup(ext_modules=ext_modules)
