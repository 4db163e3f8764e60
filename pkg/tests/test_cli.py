import csv
import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from su2tqft.cli import main
from su2tqft.laurent import LaurentPoly, PeriodicSeries

SCHEMA = json.loads(resources.files("su2tqft").joinpath("schemas/output.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, SCHEMA)
    return data


def test_repvar_genus_two(capsys):
    assert run(capsys, "repvar", "--group", "su2", "--genus", "2")[:2] == (
        0, "1 + t^2 + 4t^3 + t^4 + 4t^5 + 6t^6 + t^9\n")


def test_repvar_demigenus_one(capsys):
    assert run(capsys, "repvar", "--demigenus", "1")[1] == "2\n"


def test_so3_two_components(capsys):
    (rec,) = run_json(capsys, "repvar", "--group", "so3", "--genus", "1")
    comps = {c["label"]: LaurentPoly.from_json(c["payload"]["terms"]) for c in rec["components"]}
    assert comps == {"identity": LaurentPoly({0: 1, 2: 1, 3: 2}), "twisted": LaurentPoly({0: 1, 3: 1})}


def test_range_output_ordered(capsys):
    data = run_json(capsys, "repvar", "--genus", "0..4")
    assert [r["genus"] for r in data] == [0, 1, 2, 3, 4]


def test_text_and_json_agree(capsys):
    text = run(capsys, "repvar", "--genus", "3")[1].strip()
    (rec,) = run_json(capsys, "repvar", "--genus", "3")
    assert str(LaurentPoly.from_json(rec["payload"]["terms"])) == text == rec["payload"]["text"]


@pytest.mark.parametrize("argv", [
    ["repvar", "--group", "u2", "--genus", "1", "--twisted"],
    ["repvar", "--group", "so3", "--demigenus", "2"],
    ["repvar", "--genus", "-1"],
    ["repvar", "--genus", "1", "--demigenus", "1"],
    ["repvar", "--twisted", "--genus", "0"],
    ["repvar", "--genus", "3..1"],
    ["expand", "--object", "F", "--power", "-2"],
    ["charstack", "--genus", "4"],
])
def test_usage_errors_exit_2(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 2
    assert capsys.readouterr().err


def test_charstack_genus_four_message(capsys):
    code, _, err = run(capsys, "charstack", "--genus", "4")
    assert code == 2 and "no systematic way" in err


def test_charstack_text(capsys):
    out = run(capsys, "charstack", "--genus", "1")[1]
    assert out == "(1 + t^2 + 2t^3) * T, T = t^{-3} + t^{-7} + t^{-11} + t^{-15} + ...\n"


def test_charstack_twisted_note(capsys):
    code, out, err = run(capsys, "charstack", "--genus", "2", "--twisted", "--cohomology", "ordinary")
    assert (code, out) == (0, "1 + t^2 + 4t^3 + t^4 + t^6\n")
    assert "coincide" in err


def test_charstack_json_round_trip(capsys):
    (rec,) = run_json(capsys, "charstack", "--genus", "2")
    from su2tqft.stacks import charstack_cohomology
    assert PeriodicSeries.from_json(rec["payload"]["series"]) == charstack_cohomology(2)


@pytest.mark.parametrize("obj, n, text", [
    ("F", 1, "2·I[-3] + U1[-3] + E1"),
    ("F", 2, "6·I[-6] + 4·U1[-6] + U2[-6] + 4·E1[-3] + E2"),
    ("S", 2, "2·I[-3] + U2 + E2"),
    ("F", 0, "I"),
])
def test_expand(capsys, obj, n, text):
    assert run(capsys, "expand", "--object", obj, "--power", str(n))[1] == text + "\n"


def test_expand_json(capsys):
    run_json(capsys, "expand", "--object", "S", "--power", "3")


def test_csv_series_block(capsys):
    out = run(capsys, "charstack", "--genus", "2", "--format", "csv")[1]
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][0].startswith("# ") and rows[1] == ["degree", "coefficient"]
    periodic = rows.index(["tail_start", "direction", "pattern_0", "pattern_1", "pattern_2", "pattern_3"])
    assert rows[periodic - 1][0].startswith("# periodic")
    assert rows[periodic + 1][1] == "-1"


def test_csv_polynomial(capsys):
    out = run(capsys, "repvar", "--genus", "1", "--format", "csv")[1]
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[2:] == [["0", "1"], ["2", "1"], ["3", "2"]]


def test_verify_exit_and_json(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "rep", "--json")
    assert code == 0
    assert all(r["status"] == "pass" for r in json.loads(out))


def test_verify_deterministic(capsys):
    first = run(capsys, "verify", "--seed", "7")
    second = run(capsys, "verify", "--seed", "7")
    assert first == second and first[0] == 0


def test_verify_failure_exit_code(capsys):
    from su2tqft.verify import inject_fault
    with inject_fault("generic-stalk-U-offset"):
        code, out, _ = run(capsys, "verify", "--suite", "rep")
    assert code == 1 and "fail" in out


def test_out_file(tmp_path, capsys):
    target = tmp_path / "g2.json"
    assert main(["repvar", "--genus", "2", "--format", "json", "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    jsonschema.validate(json.loads(target.read_text()), SCHEMA)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "su2tqft", "expand", "--object", "F", "--power", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "2·I[-3] + U1[-3] + E1\n"
