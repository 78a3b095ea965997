import importlib.util
import sys
from pathlib import Path

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def load(name):
    spec = importlib.util.spec_from_file_location(name, SCRIPTS / f"{name}.py")
    module = importlib.util.module_from_spec(spec)
    sys.modules[name] = module
    spec.loader.exec_module(module)
    return module


def test_ball_growth():
    mod = load("ball_growth")
    (row,) = mod.run(mod.Config([2], 6))
    assert row["spheres"] == [1, 4, 12, 26, 50, 98, 184] and row["mismatches"] == 0


def test_qi_baselines(tmp_path):
    mod = load("qi_baselines")
    rows = mod.run(mod.Config(radius=3, classes=["[1 0; 0 2]"], out=tmp_path))
    assert rows[0]["least-k"].C == 2 and rows[0]["coarse_inverse"] == 0
    assert (tmp_path / "pairs_0.csv").exists()


def test_displacement_growth():
    mod = load("displacement_growth")
    table = mod.run(mod.Config([2], 4))
    assert table[2, "inner(ab)", "ab"] == [0] * 5
    assert table[2, "Q_1", "b"] == [0, 1, 2, 3, 4]
