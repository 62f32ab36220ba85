"""Build the compiled peel kernel.

The extension is optional: if it fails to build, ``quadrec.miner`` falls back
to the pure-Python kernel at import time.
"""

from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "quadrec._peel",
        ["src/quadrec/_peel.pyx"],
        extra_compile_args=["-O3"],
        optional=True,
    )
]

setup(ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"}))
