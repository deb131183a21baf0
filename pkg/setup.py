import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("JETCHECK_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "jetcheck.jetcas._polycore",
                    ["src/jetcheck/jetcas/_polycore.pyx"],
                    extra_compile_args=["-O2"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython available: the pure-Python backend is picked up at import.
        ext_modules = []

setup(ext_modules=ext_modules)
