"""Build script: compiles the optional fast eigenvalue kernel.

The package is fully functional without the compiled extension (a NumPy
fallback is selected at import time), so any failure to build it is reported
as a warning rather than aborting the install.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the extension if possible; degrade to the pure-Python fallback."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            "WARNING: building the compiled kernel failed; the package will "
            f"use the NumPy fallback backend.\n  reason: {exc}",
            file=sys.stderr,
        )


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print(
            "WARNING: Cython not available; skipping the compiled kernel.",
            file=sys.stderr,
        )
        return []
    ext = Extension(
        "betafreeze._core._speedups",
        ["src/betafreeze/_core/_speedups.pyx"],
    )
    return cythonize([ext], language_level="3")


setup(
    ext_modules=_extensions(),
    cmdclass={"build_ext": OptionalBuildExt},
)
