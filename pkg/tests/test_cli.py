import json
import subprocess
import sys
from pathlib import Path

import pytest

from parabundle.cli import CheckOutput, build_check, main
from parabundle.perm_core import Permutation, all_permutations

GOLDEN = Path(__file__).parent / "golden" / "check_s4.json"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_3241(capsys):
    code, out, _ = run(capsys, "check", "3241", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["bp_positions"] == [1, 2]
    assert data["complete_bp"] is not None
    assert data["schema_version"] == 1
    assert data["positions"][2]["violation"] == "23|1"


def test_check_3412(capsys):
    code, out, _ = run(capsys, "check", "3412", "--format", "json")
    data = json.loads(out)
    assert data["bp_positions"] == [] and data["complete_bp"] is None
    assert data["patterns"]["3412"]["contained"]


def test_check_4231_words(capsys):
    _, out, _ = run(capsys, "check", "4231", "--format", "json")
    bp = json.loads(out)["complete_bp"]
    assert bp["reduced_words"] == [[1, 3, 2], [1], [3]]
    assert bp["sigma"] == [2, 1, 3]


def test_check_trivial(capsys):
    code, out, _ = run(capsys, "check", "1", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["length"] == 0 and data["positions"] == []


def test_check_plain(capsys):
    code, out, _ = run(capsys, "check", "4231", "--rank-matrix")
    assert code == 0
    assert "r=1: not BP, contains 3|12" in out
    assert "sigma 213" in out


def test_check_bad_input(capsys):
    code, _, err = run(capsys, "check", "2213")
    assert code == 1 and "error" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["enumerate"])
    assert exc.value.code == 1


def test_check_golden_s4():
    golden = json.loads(GOLDEN.read_text())
    assert len(golden) == 24
    for w in all_permutations(4):
        assert build_check(w, True).to_dict() == golden[str(w)]


def test_check_output_round_trip():
    for w in map(Permutation.parse, ("4231", "3412", "1", "635241")):
        out = build_check(w, True)
        assert CheckOutput.from_dict(json.loads(json.dumps(out.to_dict()))) == out


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "541623", "--r", "3", "--format", "json")
    rec = json.loads(out)["decompositions"][0]
    assert (rec["v"], rec["u"]) == ("145236", "321645")
    code, out, _ = run(capsys, "decompose", "4231")
    assert code == 0 and out.count("\n") == 3
    code, _, _ = run(capsys, "decompose", "4231", "--r", "7")
    assert code == 1


def test_enumerate_factorials(capsys):
    code, out, _ = run(capsys, "enumerate", "--n-max", "4", "--patterns", "", "--format", "csv")
    assert code == 0 and out == "n,count\n1,1\n2,2\n3,6\n4,24\n"


def test_enumerate_smooth(capsys):
    _, out, _ = run(capsys, "enumerate", "--n-max", "8", "--patterns", "3412,4231",
                    "--format", "json", "--jobs", "1")
    assert [row["count"] for row in json.loads(out)["rows"]] == [1, 2, 6, 22, 88, 366, 1552, 6652]


def test_enumerate_formats_agree(capsys):
    results = {}
    for fmt in ("json", "csv", "plain"):
        _, out, _ = run(capsys, "enumerate", "--n-max", "6", "--format", fmt, "--jobs", "1")
        results[fmt] = out
    from_json = [(r["n"], r["count"]) for r in json.loads(results["json"])["rows"]]
    from_csv = [tuple(map(int, line.split(","))) for line in results["csv"].splitlines()[1:]]
    from_plain = [
        (int(line.split()[0][2:]), int(line.split()[1]))
        for line in results["plain"].splitlines()[1:]
    ]
    assert from_json == from_csv == from_plain


def test_enumerate_rejects_split_patterns(capsys):
    code, _, err = run(capsys, "enumerate", "--n-max", "3", "--patterns", "23|1")
    assert code == 1


def test_enumerate_disagreement_exit_code(capsys, monkeypatch):
    import parabundle.enumeration as enumeration

    monkeypatch.setattr(enumeration, "count_avoiders_scan", lambda n, p, jobs=1: -1)
    code, _, err = run(capsys, "enumerate", "--n-max", "3", "--jobs", "1")
    assert code == 2 and "consistency" in err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "main", "--n", "6", "--jobs", "1")
    data = json.loads(out)
    assert code == 0 and data["mismatches"] == [] and data["checks_performed"] == 720 * 5
    code, out, _ = run(capsys, "verify", "--theorem", "main2", "--n", "4")
    assert code == 0 and json.loads(out)["successes"] == 23
    code, out, _ = run(capsys, "verify", "--theorem", "main", "--n", "1")
    assert json.loads(out)["checks_performed"] == 0


def test_verify_ceiling(capsys):
    code, _, err = run(capsys, "verify", "--theorem", "main", "--n", "8")
    assert code == 1 and "--force" in err


def test_verify_mismatch_exit_code(capsys, monkeypatch):
    import parabundle.enumeration as enumeration

    monkeypatch.setattr(enumeration, "is_bp_by_descent", lambda w, r: True)
    code, out, _ = run(capsys, "verify", "--theorem", "main", "--n", "3", "--jobs", "1")
    assert code == 2 and json.loads(out)["mismatches"]


@pytest.mark.parametrize(
    "w, sigma, success",
    [("4231", "213", True), ("3241", "312", False), ("3241", "132", False), ("3241", "231", True)],
)
def test_tower(capsys, w, sigma, success):
    code, out, _ = run(capsys, "tower", w, "--sigma", sigma, "--format", "json")
    assert code == 0 and json.loads(out)["success"] is success


def test_tower_wrong_length(capsys):
    code, _, err = run(capsys, "tower", "4231", "--sigma", "12")
    assert code == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "parabundle", "tower", "4231", "--sigma", "213"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout.strip().endswith("success")
