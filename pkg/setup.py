"""Build script: compiles the optional polynomial kernel extension.

The package works without the extension (a pure-Python kernel with the
same interface is selected at import time), so any failure here should
not block installation: we simply skip the extension.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "krtorus.field._speedups",
                ["src/krtorus/field/_speedups.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # noqa: BLE001 - extension is strictly optional
    print(f"krtorus: building without compiled kernel ({exc})")

setup(ext_modules=ext_modules)
