from setuptools import Extension, setup

# The compiled reduction kernel is optional: persent._kernels falls back to
# the pure-Python implementation when the extension is unavailable.
try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "persent._kernels.reduction",
                ["src/persent/_kernels/reduction.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
