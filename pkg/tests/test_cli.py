import json

import pytest

from canalg.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_decide_h(capsys):
    code, out = run(capsys, "decide", "--type", "2,2,2", "--d", '{"alpha":1,"arms":[[1],[1],[1]],"omega":1}')
    assert code == 0
    assert out["result"]["is_normal"] is True and out["config"]["type"] == "2,2,2"


def test_decide_not_regular(capsys):
    code, _ = run(capsys, "decide", "--type", "2,2,2", "--d", "[1,0,0,0,0]")
    assert code == 3


def test_classify_flat(capsys):
    code, out = run(capsys, "classify", "--type", "2,2,2", "--d", "[1,1,1,1,1]")
    assert code == 0 and out["result"]["in_Rprime"] and out["result"]["threshold"] == "2"


def test_witness(capsys):
    code, out = run(capsys, "witness", "--type", "2,2,3,4")
    assert code == 0 and out["result"]["value"] == 16 and out["result"]["scale"] == 16
    code, out = run(capsys, "witness", "--type", "2,2,3,4", "--minimal", "--lift")
    assert code == 0 and out["result"]["lift"]["value"] > 0


def test_witness_above_threshold(capsys):
    code, out = run(capsys, "witness", "--type", "2,2,2")
    assert code == 3 and "error" in out["result"]


def test_certify(capsys):
    code, out = run(capsys, "certify", "--type", "2,2,2", "--d", "[1,1,1,1,1]", "--dprime", "[1,0,0,0,0]")
    assert code == 0 and out["result"]["conclusion"] == "StrictlyNegative" and out["result"]["value"] == -2
    h, e_alpha = json.dumps([1] * 14), json.dumps([1] + [0] * 13)
    code, _ = run(capsys, "certify", "--type", "5,5,5", "--d", h, "--dprime", e_alpha)
    assert code == 3


def test_scan_csv(capsys, tmp_path):
    path = tmp_path / "out.csv"
    code, out = run(capsys, "scan", "--type", "2,2,2,2,2", "--bound", "2", "--csv", str(path))
    assert code == 0 and out["result"]["normal_failures"] >= 1 and out["result"]["consistent"]
    assert path.read_text().startswith("d,")


def test_verify_lemmas(capsys):
    code, out = run(capsys, "verify-lemmas", "--max", "6", "--max-m", "4")
    assert code == 0 and out["result"]["passed"] and len(out["result"]["reports"]) == 6


def test_rep_commands(capsys):
    base = ["rep", "--type", "2,2,2", "--seed", "4"]
    assert run(capsys, *base, "hom", "--a", "simple:alpha", "--b", "simple:alpha")[1]["result"]["hom"] == 1
    assert run(capsys, *base, "ext1", "--a", "homog:1,3", "--b", "homog:1,3")[1]["result"]["ext1"] == 1
    assert run(capsys, *base, "ext2", "--a", "simple:omega", "--b", "simple:alpha")[1]["result"]["ext2"] == 1
    code, out = run(capsys, *base, "check", "--a", "arm:1,2")
    assert code == 0 and out["result"]["relations_hold"]
    code, out = run(capsys, *base, "sample", "--d", "[2,2,2,2,2]")
    assert code == 0 and not out["result"]["absent"]
    code, out = run(capsys, *base, "euler-test", "--pairs", "10")
    assert code == 0 and out["result"]["passed"]
    code, out = run(capsys, "rep", "--type", "2,2,2,2", "--lambda", "5,9", "ext1", "--a", "homog:2,3", "--b", "homog:2,3")
    assert code == 0 and out["result"]["ext1"] == 1 and out["config"]["lam"] == "5,9"


def test_deterministic_output(capsys):
    argv = ["rep", "--type", "2,3,4", "--seed", "9", "sample", "--d", "[2,2,2,2,2,2,2,2]"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


@pytest.mark.parametrize(
    "argv",
    [
        ["decide", "--type", "2,2", "--d", "[1]"],
        ["decide", "--type", "2,2,2", "--d", "not json"],
        ["decide", "--type", "2,2,2", "--d", "[1,1]"],
        ["scan", "--type", "2,2,2", "--bound", "2", "--family", "bogus"],
        ["rep", "--type", "2,2,2", "hom", "--a", "weird:1", "--b", "simple:alpha"],
        ["rep", "--type", "2,2,2", "--lambda", "1,2", "hom", "--a", "simple:alpha", "--b", "simple:alpha"],
        ["verify-lemmas", "--lemma", "9.9"],
        ["nonsense"],
    ],
)
def test_usage_errors(capsys, argv):
    assert main(argv) == 1


def test_help_exit_zero(capsys):
    assert main(["--help"]) == 0
