"""Build the optional compiled kernels; the package works without them."""

import os

from setuptools import setup


def _extensions():
    if os.environ.get("PNDERIVED_NO_EXT", "") not in ("", "0"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        ["src/pnderived/_kernels.pyx"],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )


setup(ext_modules=_extensions())
