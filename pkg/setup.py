import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("DLFOREST_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "dlforest._evalcore",
                    ["src/dlforest/_evalcore.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython at build time: install the pure-Python package; the
        # reasoner falls back to the interpreted kernel at import.
        ext_modules = []

setup(ext_modules=ext_modules)
