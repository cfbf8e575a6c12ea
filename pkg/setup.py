"""Build the optional compiled orbit kernels.

The package works without them: ``cohinv.rootdata`` falls back to the
pure-Python kernels when ``cohinv._ckernels`` cannot be imported.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("COHINV_NO_EXT") != "1":
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "cohinv._ckernels",
                    ["src/cohinv/_ckernels.pyx"],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
