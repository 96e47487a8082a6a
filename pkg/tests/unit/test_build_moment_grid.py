"""Tests for the moment-grid CSV script."""

import importlib.util
import sys
from pathlib import Path


def _load():
    """Load ``scripts/build_moment_grid.py`` without treating ``scripts`` as a package."""
    path = Path(__file__).parent.parent.parent / "scripts" / "build_moment_grid.py"
    spec = importlib.util.spec_from_file_location("build_moment_grid", path)
    mod = importlib.util.module_from_spec(spec)
    sys.modules["build_moment_grid"] = mod
    spec.loader.exec_module(mod)  # type: ignore
    return mod


def test_grid_cells_cover_every_h():
    mod = _load()
    assert mod.grid_cells(2) == [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2)]


def test_output_does_not_depend_on_thread_count(tmp_path):
    mod = _load()
    one, four = tmp_path / "one.csv", tmp_path / "four.csv"
    assert mod.main(["--max-k", "3", "--threads", "1", "--out", str(one)]) == 0
    assert mod.main(["--max-k", "3", "--threads", "4", "--out", str(four)]) == 0
    assert one.read_bytes() == four.read_bytes()
    lines = one.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 1 + 2 + 3 + 4
    assert lines[-1] == "3,0 0 0,,3,-3,0,0:1/2"


def test_rejects_non_positive_max_k():
    assert _load().main(["--max-k", "0"]) == 1
