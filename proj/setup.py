"""Builds the _padiq extension by delegating to the project's CMake build."""

import pathlib
import shutil
import subprocess
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

ROOT = pathlib.Path(__file__).resolve().parent


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        out = pathlib.Path(self.get_ext_fullpath(ext.name)).resolve()
        build_dir = ROOT / "build" / "pip-ext"
        subprocess.run(
            [
                "cmake", "-S", str(ROOT), "-B", str(build_dir),
                "-DPADIQ_BUILD_TESTS=OFF",
                "-DCMAKE_BUILD_TYPE=Release",
                f"-DPYTHON_EXECUTABLE={sys.executable}",
            ],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_padiq"],
            check=True,
        )
        built = list((build_dir / "python" / "padiq").glob("_padiq*.so"))
        if not built:
            raise RuntimeError("CMake did not produce the _padiq module")
        out.parent.mkdir(parents=True, exist_ok=True)
        shutil.copy2(built[0], out)


setup(
    ext_modules=[Extension("padiq._padiq", sources=[])],
    cmdclass={"build_ext": CMakeBuild},
)
