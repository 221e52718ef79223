"""CMake-driven build of the qparadox._core extension.

The wheel layout comes from python/qparadox; the extension is compiled by the
project's CMake build and dropped into the package directory.
"""

import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name: str):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        extdir = Path(self.get_ext_fullpath(ext.name)).resolve().parent
        build_dir = Path(self.build_temp).resolve()
        build_dir.mkdir(parents=True, exist_ok=True)

        configure = [
            "cmake",
            "-S", str(Path(__file__).parent.resolve()),
            "-B", str(build_dir),
            "-DCMAKE_BUILD_TYPE=Release",
            "-DQPARADOX_BUILD_TESTS=OFF",
            f"-DQPARADOX_EXT_OUTDIR={extdir}",
            f"-DPython3_EXECUTABLE={sys.executable}",
        ]
        subprocess.run(configure, check=True)
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_core",
             f"-j{os.cpu_count() or 2}"],
            check=True,
        )


setup(
    packages=["qparadox"],
    package_dir={"": "python"},
    ext_modules=[CMakeExtension("qparadox._core")],
    cmdclass={"build_ext": CMakeBuild},
    zip_safe=False,
)
