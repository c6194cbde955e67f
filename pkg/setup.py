"""Build script for the optional compiled kernels.

The package is pure Python apart from jcover._kernels, a Cython extension
holding the hot inner loops (greedy code scans, annealing moves, cover
counting).  If Cython or a C compiler is unavailable the build proceeds
anyway and jcover falls back to the pure-Python kernels at import time.
Set JCOVER_NO_EXT=1 to skip the extension build entirely.
"""

import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """build_ext that downgrades compiler failures to a warning."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001 - any build failure is non-fatal
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"warning: building jcover._kernels failed ({exc}); "
            "the pure-Python kernels will be used",
            file=sys.stderr,
        )


ext_modules = []
cmdclass = {}
if os.environ.get("JCOVER_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "jcover._kernels",
                    ["src/jcover/_kernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level="3",
        )
        cmdclass = {"build_ext": OptionalBuildExt}
    except ImportError:
        print("warning: Cython not available; skipping compiled kernels", file=sys.stderr)

setup(ext_modules=ext_modules, cmdclass=cmdclass)
