import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = []
if cythonize is not None and not os.environ.get("JIGSAWHG_PURE"):
    extensions = cythonize(
        [
            Extension(
                "jigsawhg._speedups",
                ["src/jigsawhg/_speedups.pyx"],
                language="c++",
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=extensions)
