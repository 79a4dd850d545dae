import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("VCEW_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("vcew._search", ["src/vcew/_search.pyx"])],
            language_level=3,
        )
    except ImportError:
        # No Cython at build time: install the pure-Python fallback only.
        ext_modules = []

setup(ext_modules=ext_modules)
