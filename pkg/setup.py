"""Build script for the optional compiled kernel backend.

The package is fully functional without the extension: qnetdet.backend
falls back to the pure-Python kernels when qnetdet._kernels_c is not
importable.  The extension only accelerates the small dense linear
algebra used in the Monte Carlo verification loops.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension

    extensions = cythonize(
        [
            Extension(
                "qnetdet._kernels_c",
                ["src/qnetdet/_kernels_c.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
