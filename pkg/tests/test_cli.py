import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from crsphere import __version__
from crsphere.cli import main
from crsphere.forms import SymQForm, short_form
from crsphere.reproduce import ITEMS, RunReport, Item, cmd_extend, cmd_reproduce

FIXTURES = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_integrate(capsys):
    assert run(capsys, "integrate", "2", "2", "2") == (0, "1/105\n")
    assert run(capsys, "integrate", "2", "0", "0", "--units", "phi2") == (0, "1\n")
    assert run(capsys, "integrate", "2", "0", "0", "0", "--m", "3") == (0, "1/4\n")
    code, out = run(capsys, "integrate", "4", "2", "0", "--oracle")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "1/35"
    assert abs(float(lines[1].split()[1]) - 1 / 35) < 1e-14
    assert "agrees" in lines[3]


def test_integrate_error_exit(capsys):
    assert main(["integrate", "1", "2"]) == 2


def test_pairing(capsys):
    assert run(capsys, "pairing", "grad", "2,0,0", "0,2,0") == (0, "-4/15\n")
    code, out = run(capsys, "pairing", "cr", "3", "1,0,0", "0,1,0", "--oracle")
    assert code == 0 and out.splitlines() == ["1/3", "triple determinant 1/3 (agrees)"]
    assert main(["pairing", "grad", "1,0,0", "2,0,0"]) == 2


def test_form_outputs(tmp_path, capsys):
    out = tmp_path / "q.json"
    assert main(["form", "short", "--axis", "1", "--degree", "2", "--out", str(out)]) == 0
    assert SymQForm.from_json(json.loads(out.read_text())) == short_form(1, 2)
    csv = tmp_path / "q.csv"
    assert main(["form", "long", "--degree", "1", "--out", str(csv)]) == 0
    assert len(csv.read_text().splitlines()) == 13
    assert main(["form", "short", "--degree", "1"]) == 2


def test_spectrum_and_certify(capsys):
    code, out = run(capsys, "spectrum", "--degree", "1")
    assert code == 0 and len(out.splitlines()) == 12
    code, out = run(capsys, "certify", "--degree", "2", "--json")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "stable" and data["inertia"] == {"pos": 20, "neg": 0, "zero": 4}
    code, out = run(capsys, "certify", "--degree", "1", "--short", "2")
    assert code == 0 and "verdict  stable" in out


def test_bounds(capsys):
    code, out = run(capsys, "bounds", "--json")
    rows = json.loads(out)
    assert code == 0
    assert [r["sufficiency"]["holds"] for r in rows] == [False] * 5 + [True]


def test_reproduce_only(capsys):
    code, out = run(capsys, "reproduce", "--only", "F", "--json", "--no-timings")
    data = json.loads(out)
    assert code == 0
    assert data["items"][0]["details"]["F"] == "-138"
    assert data["version"] == __version__ and "timings_ms" not in data
    code, out = run(capsys, "reproduce", "--only", "integrals")
    assert code == 0 and "integrals  PASS" in out


def test_reproduce_unknown_item():
    with pytest.raises(ValueError):
        cmd_reproduce(["nope"])


def test_report_determinism(capsys):
    first = run(capsys, "reproduce", "--only", "spectrum", "--only", "block", "--json", "--no-timings")
    second = run(capsys, "reproduce", "--only", "spectrum", "--only", "block", "--json", "--no-timings")
    assert first == second


def test_exit_codes():
    r = RunReport("x", {})
    r.items = [Item("a", True)]
    assert r.exit_code() == 0
    r.items.append(Item("b", False))
    assert r.exit_code() == 1 and r.failing == ["b"]
    r.items.append(Item("c", False, unexpected_instability=True))
    assert r.exit_code() == 10


def test_reproduce_items_listed():
    assert list(ITEMS)[:5] == ["integrals", "oracles", "structure", "short", "long"]


def test_rationals_round_trip():
    data = cmd_reproduce(["integrals"]).to_json()
    for row in data["items"][0]["details"]["values"]:
        assert str(Fraction(row["value"])) == row["value"]


@pytest.mark.parametrize("l", [4, 5])
def test_extend_regression(l):
    want = json.loads((FIXTURES / f"extend_l{l}.json").read_text())
    got = json.loads(json.dumps(cmd_extend(l).to_json(timings=False)))
    assert want["format"] == got["format"] == 1
    w_items, g_items = want["items"][0]["details"], got["items"][0]["details"]
    for wb, gb in zip(w_items["blocks"], g_items["blocks"]):
        w_eig, g_eig = wb.pop("eigenvalues"), gb.pop("eigenvalues")
        assert max(abs(float(a) - float(b)) for a, b in zip(w_eig, g_eig)) < 1e-12
    assert got == want


def test_extend_degree_three_consistent():
    d = cmd_extend(3).items[0].details
    assert d["verdict"] == "stable" and d["inertia"] == {"pos": 32, "neg": 0, "zero": 8}
    long_item = cmd_reproduce(["long"]).items[0].details["forms"][3]
    assert long_item["inertia"] == d["inertia"]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "crsphere", "integrate", "6", "0", "0"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "1/7\n"
