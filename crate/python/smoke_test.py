"""Build the extension module and exercise it from Python.

    python3 python/smoke_test.py [--no-build]
"""

import argparse
import math
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build(dest: Path) -> None:
    subprocess.run(
        ["cargo", "build", "--release", "-p", "sdf-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    shutil.copy(ROOT / "target" / "release" / "libsdf_py.so", dest / "sdf_py.so")


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--no-build", action="store_true", help="use target/release as is")
    args = parser.parse_args()

    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        if args.no_build:
            shutil.copy(ROOT / "target" / "release" / "libsdf_py.so", tmp / "sdf_py.so")
        else:
            build(tmp)
        sys.path.insert(0, str(tmp))
        import numpy as np
        import sdf_py

        rows, cols, res, heights = sdf_py.make_terrain("gap", 19)
        field = np.frombuffer(heights, "<f4").reshape(rows, cols)
        assert (rows, cols) == (80, 160) and abs(res - 0.05) < 1e-7
        assert field.min() == -1.0

        scan = sdf_py.height_scan("platform_up", 19, 4.0, 0.0, 0.0, 0.0)
        assert len(scan) == 693

        with sdf_py.Session("[run]\nseed = 7\nenvs = 3\n") as s:
            assert s.shape == (3, 1, 24, 32)
            for _ in range(3):
                student, clean = s.step()
            student = np.frombuffer(student, "<f4").reshape(s.shape)
            clean = np.frombuffer(clean, "<f4").reshape(s.shape)
            assert 0.0 <= student.min() and student.max() <= 1.0
            assert 0.0 <= clean.min() and clean.max() <= 1.0
            poses = s.course_poses()
            assert len(poses) == 3
            s.step(poses)
        assert s.closed
        try:
            s.step()
        except RuntimeError as e:
            assert "closed" in str(e)
        else:
            raise AssertionError("step on a closed session succeeded")

        try:
            sdf_py.Session("[run]\nenvz = 2\n")
        except ValueError as e:
            assert "envz" in str(e)
        else:
            raise AssertionError("bad key accepted")

        assert sdf_py.kl_loss([[0.0], [2.0]], 0.0) == 0.5
        l = sdf_py.losses([[1.0, 2.0]], [[1.0, 2.0]], [[0.0], [2.0]], [[0.0], [2.0]], epsilon=0.0)
        assert l == {"behavior": 0.0, "denoise": 0.0, "kl": 0.5, "total": 0.05}, l
        assert abs(sdf_py.reward_vel_exp([0.8, 0.0], [0.3, 0.0], 0.5) - math.exp(-1)) < 1e-12
        assert sdf_py.avg_power([[3.0, -4.0]], [[2.0, 2.0]]) == 10.0
        assert abs(sdf_py.pdr(32.4, 27.7) - 16.9675) < 1e-4

    print("python smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
