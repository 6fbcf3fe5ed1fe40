import json
import subprocess
import sys

import pytest

from superlinkage.characters import Character
from superlinkage.cli import main
from superlinkage.weights import Weight


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_weyl_gl12(capsys):
    code, out, _ = run(capsys, "weyl", "gl(1|2)")
    data = json.loads(out)
    assert code == 0
    assert data["charts"] == 6 and data["group_order"] == 12
    assert data["w0"]["length"] == 3 and data["w0"]["verified"]


def test_weyl_reports_guarded_order(capsys):
    code, out, _ = run(capsys, "weyl", "gl(1|2)", "--max-order", "5")
    data = json.loads(out)
    assert code == 0 and data["group_order"] is None and "cap" in data["group_order_note"]


def test_jantzen_gl11(capsys):
    code, out, _ = run(capsys, "jantzen", "gl(1|1)", "--p", "3", "--weight", "2,1")
    data = json.loads(out)
    assert code == 0
    assert Character.from_json(data["character"]) == Character.monomial(Weight.of([1, 2]))
    assert data["n_lambda"] == data["n_lambda_inductive"] == 1


def test_json_round_trip_and_determinism(capsys):
    argv = ["jantzen", "gl(1|2)", "--p", "3", "--weight", "0,0,0"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    data = json.loads(first)
    c = Character.from_json(data["character"])
    assert json.loads(json.dumps(c.to_json(), sort_keys=True)) == data["character"]


def test_roots_and_borels(capsys):
    code, out, _ = run(capsys, "roots", "osp(1|2)", "--p", "3")
    data = json.loads(out)
    assert code == 0 and data["algebra"] == "spo(2|1)" and data["rho"] == ["1/2"]
    code, out, _ = run(capsys, "borels", "gl(2|2)", "--limit", "2")
    data = json.loads(out)
    assert data["count"] == 24 and len(data["charts"]) == 2


def test_linkage_relations(capsys):
    base = ["linkage", "gl(1|2)", "--p", "3", "--from", "0,0,0", "--to", "0,-1,1"]
    for rel in ("up", "strong", "upup"):
        code, out, _ = run(capsys, *base, "--relation", rel)
        data = json.loads(out)
        assert code == 0 and data["status"] == "found" and data["validated"]
    # a weight starting with a minus sign must be attached with "="
    code, out, _ = run(capsys, "linkage", "gl(1|2)", "--p", "3", "--from", "0,0,0",
                       "--to=-1,1,0", "--relation", "upup", "--radius", "0")
    assert json.loads(out)["status"] == "refused-within-radius"


def test_verify_suites(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "rankone", "--p", "3", "--format", "text")
    assert code == 0 and out.strip().endswith("suite rankone: PASS")
    assert "FAIL" not in out
    code, out, _ = run(capsys, "verify", "--suite", "distinguished", "--algebra", "gl(2|2)")
    assert code == 0 and json.loads(out)["pass"]
    code, out, _ = run(capsys, "verify", "--suite", "filtration", "--p", "3")
    assert code == 0 and json.loads(out)["pass"]


def test_text_format(capsys):
    code, out, _ = run(capsys, "roots", "gl(1|1)", "--format", "text")
    assert code == 0 and "algebra: gl(1|1)" in out


@pytest.mark.parametrize("argv,code", [
    (["roots", "foo(1|1)"], 2),
    (["jantzen", "gl(1|1)", "--p", "3", "--weight", "1,2,3"], 2),
    (["jantzen", "gl(1|1)", "--p", "3", "--weight", "1/3,0"], 2),
    (["jantzen", "gl(1|1)", "--p", "3", "--weight", "1,0", "--depth-factor", "0"], 2),
    (["verify", "--suite", "rankone", "--cases", "7"], 2),
    (["nonsense"], 2),
    (["jantzen", "F(4)", "--p", "7", "--weight", "0,0,0,0"], 1),
    (["jantzen", "sl(2|2)", "--p", "5", "--weight", "0,0,0,0"], 1),
    (["jantzen", "gl(1|1)", "--p", "2", "--weight", "0,0"], 1),
    (["jantzen", "gl(1|1)", "--p", "3", "--weight", "1/2,0"], 1),
    (["roots", "gl(1|1)", "--p", "4"], 1),
])
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code
    if code == 1:
        assert err.startswith("error:")


def test_error_names_the_table_row(capsys):
    _, _, err = run(capsys, "jantzen", "F(4)", "--p", "7", "--weight", "0,0,0,0")
    assert "p > 15" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "superlinkage", "weyl", "osp(1|2)"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["group_order"] == 2
