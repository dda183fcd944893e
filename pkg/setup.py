"""Build script: compiles the optional Cython speedup module.

The package is fully functional without the extension (pure-Python
fallbacks are selected at import time), so any build failure here is
non-fatal.  Set DEGCOUNT_NO_EXT=1 to skip the extension entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("DEGCOUNT_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("degcount._speedups", ["src/degcount/_speedups.pyx"])],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
