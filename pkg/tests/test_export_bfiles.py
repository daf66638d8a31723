import sys

from finfish.data.formats import parse_bfile
from scripts import export_bfiles


def test_cross_check_is_clean():
    assert export_bfiles.cross_check(6) == []


def test_export_writes_bfiles(tmp_path, monkeypatch):
    monkeypatch.setattr(sys, "argv", ["export_bfiles", "--out-dir", str(tmp_path), "--max", "6", "--verify-size", "5"])
    assert export_bfiles.main() == 0
    fish = parse_bfile((tmp_path / "fish.txt").read_text(encoding="ascii"))
    assert fish == {1: 1, 2: 2, 3: 6, 4: 22, 5: 91, 6: 408}
    ternary = parse_bfile((tmp_path / "ternary.txt").read_text(encoding="ascii"))
    assert ternary[0] == 1 and ternary[4] == 55
    assert (tmp_path / "fish_i2.txt").read_text(encoding="ascii").startswith("1 1\n2 4\n")
