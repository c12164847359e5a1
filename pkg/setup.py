"""Build hook: compile the optional Cython kernel extension.

The package works without it (kernels.py falls back to the pure-Python
implementation), so a failed compile only costs speed, not functionality.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "closetlab._kernels_cy",
                ["src/closetlab/_kernels_cy.pyx"],
            )
        ],
        language_level=3,
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
