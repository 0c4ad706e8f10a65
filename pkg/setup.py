from setuptools import setup

try:
    from Cython.Build import cythonize
except ImportError:
    # Without Cython the package installs with the NumPy kernel backend only.
    ext_modules = []
else:
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "bregsim._kernels._ckernels",
                ["src/bregsim/_kernels/_ckernels.pyx"],
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

setup(ext_modules=ext_modules)
