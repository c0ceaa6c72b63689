import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("QUTRITSYNTH_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        # -ffp-contract=off: no fused multiply-add, so the compiled predicates
        # round exactly like the Python fallback
        ext_modules = cythonize(
            [
                Extension(
                    "qutritsynth._kernels",
                    ["src/qutritsynth/_kernels.pyx"],
                    extra_compile_args=["-O3", "-ffp-contract=off"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
