"""Build the optional compiled integrator kernel.

The package works without it (a pure-Python twin is selected at import
time), so a failed extension build only costs speed.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("mlosc._kernel", ["src/mlosc/_kernel.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
