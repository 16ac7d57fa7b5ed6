import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the compiled kernels when a toolchain is available.

    The package is fully functional on the pure-Python kernels, so a missing
    compiler only costs speed. Set TWISTEDRS_REQUIRE_EXT=1 to turn a build
    failure into a hard error.
    """

    def run(self):
        try:
            super().run()
        except Exception as exc:
            if os.environ.get("TWISTEDRS_REQUIRE_EXT"):
                raise
            sys.stderr.write(
                "warning: compiled kernels not built (%s); "
                "falling back to pure-Python kernels\n" % exc
            )

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            if os.environ.get("TWISTEDRS_REQUIRE_EXT"):
                raise
            sys.stderr.write(
                "warning: %s not built (%s); "
                "falling back to pure-Python kernels\n" % (ext.name, exc)
            )


def extensions():
    if os.environ.get("TWISTEDRS_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [
            Extension(
                "twistedrs._core",
                ["src/twistedrs/_core.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )


setup(cmdclass={"build_ext": optional_build_ext}, ext_modules=extensions())
