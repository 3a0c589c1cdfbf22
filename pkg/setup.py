"""Build hook: compiles the optional C kernel when Cython is available.

The package is fully functional without it; `treebed.kernel` falls back to
the pure-Python twins at import time.  Set TREEBED_NO_EXT=1 to skip the
extension build entirely.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("TREEBED_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("treebed._kernel_c", ["src/treebed/_kernel_c.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
