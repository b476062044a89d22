"""Build script for the optional compiled kernel.

The package is fully functional without the extension (the pure-Python
kernel lane is selected at import time when duorth._kernel is missing),
so any compilation failure downgrades to a warning instead of aborting
the install.
"""
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, etc.
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(f"warning: compiled kernel not built ({exc}); "
              "falling back to the pure-Python lane", file=sys.stderr)


try:
    from Cython.Build import cythonize
    extensions = cythonize(
        [Extension("duorth._kernel", ["src/duorth/_kernel.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": optional_build_ext})
