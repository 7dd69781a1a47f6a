"""Build script: compiles the optional simplex pivot kernel when Cython is available.

The package is pure Python by default; `robustflow.lp` falls back to the
interpreted kernel when the extension is missing, so a failed compile is never
fatal.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "robustflow._speedups",
                ["src/robustflow/_speedups.pyx"],
                extra_compile_args=["-O2"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
