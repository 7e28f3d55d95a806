"""Build script for the optional compiled row-reduction core.

The package works without the extension: ``chainring.linalg`` falls back to a
NumPy implementation of the same kernels when ``chainring._gfcore`` is absent.
"""

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "chainring._gfcore",
                ["src/chainring/_gfcore.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
