import json
import subprocess
import sys

import pytest

from anticonc import cli
from anticonc.constants import ConstantsError
from anticonc.groups import GroundSet
from anticonc.sequencer import CollisionReport, Ordering, SearchExhausted


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_dist_interval(files, capsys):
    code, out, _ = run(["dist", files("a.txt", "0 5\n-2 -1 0 1 2\n"), "--ell", "3"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert doc["max"] == {"x": 0, "num": "19", "den": "125", "float": 0.152}


def test_dist_single_draw_echoes_uniform(files, capsys):
    code, out, _ = run(["dist", files("a.txt", "0 3\n4 1 9\n"), "--ell", "1"], capsys)
    rows = json.loads(out)["distribution"]
    assert [(r["x"], r["num"], r["den"]) for r in rows] == [(1, "1", "3"), (4, "1", "3"), (9, "1", "3")]


def test_dist_cyclic_and_csv(files, capsys):
    path = files("a.txt", "5 2\n1 4\n")
    code, out, _ = run(["dist", path, "--ell", "2"], capsys)
    assert json.loads(out)["max"]["x"] == 0 and json.loads(out)["max"]["num"] == "1"
    code, out, _ = run(["dist", path, "--ell", "2", "--format", "csv"], capsys)
    assert out == "x,prob_num,prob_den,prob_float\n0,1,2,0.5\n2,1,4,0.25\n3,1,4,0.25\n"


def test_dist_float_mode(files, capsys):
    code, out, _ = run(["dist", files("a.txt", "0 5\n1 2 3 4 5\n"), "--ell", "3", "--mode", "float"], capsys)
    doc = json.loads(out)
    assert doc["mode"] == "float" and doc["max"]["num"] is None
    assert doc["max"]["float"] == pytest.approx(0.152, abs=1e-12)


def test_lo(files, capsys):
    code, out, _ = run(["lo", files("a.txt", "7 3\n1 2 5\n"), "--ell", "2"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["max"]["x"] == 0 and (doc["max"]["num"], doc["max"]["den"]) == ("1", "3")
    code, out, _ = run(["lo", files("b.txt", "0 4\n1 2 3 4\n"), "--ell", "2", "--format", "csv"], capsys)
    assert out.splitlines()[0] == "ell,x,count_decimal" and "2,5,2" in out.splitlines()


def test_lo_rejects_large_ell(files, capsys):
    code, _, err = run(["lo", files("a.txt", "7 3\n1 2 5\n"), "--ell", "4"], capsys)
    assert code == 2 and "--ell" in err


def test_constants(capsys, tmp_path):
    out_path = tmp_path / "c.json"
    code, out, _ = run(["constants", "--out", str(out_path)], capsys)
    assert code == 0 and out == ""
    doc = json.loads(out_path.read_text())
    assert doc["C1"] <= 0.99993 and doc["C2"] <= 0.999986 and doc["nu"] > 0
    assert doc["solver"]["root_finder"] == "brentq"


def test_constants_failure_exit_code(capsys, monkeypatch):
    def boom():
        raise ConstantsError("no feasible point")
    monkeypatch.setattr(cli, "compute_constants", boom)
    code, _, err = run(["constants"], capsys)
    assert code == 3 and "no feasible point" in err


def test_verify_bounds3(capsys):
    code, out, _ = run(["verify", "bounds3", "--n-max", "5", "--primes", "11", "13"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["failures"] == 0 and doc["cases"] > 3000
    assert 0 < doc["worst_ratio"] < 1


def test_verify_fourier_p7_csv(capsys):
    code, out, _ = run(["verify", "fourier", "--primes", "7", "--format", "csv"], capsys)
    lines = out.splitlines()
    assert code == 0 and lines[0] == "case,lhs,rhs,margin"
    assert all(float(line.rsplit(",", 3)[1]) <= 1e-9 for line in lines[1:])


def test_verify_be(capsys):
    code, out, _ = run(["verify", "be", "--n-max", "5", "--ell-max", "6"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["cases"] == 5


def test_verify_failure_exit_code(capsys, monkeypatch):
    from anticonc import suites
    monkeypatch.setattr(suites, "be", lambda **kw: [suites.CaseResult("be", "x", 2.0, 1.0, False)])
    code, out, _ = run(["verify", "be"], capsys)
    assert code == 1 and json.loads(out)["failures"] == 1


def test_sequence_examples(files, capsys):
    code, out, _ = run(["sequence", files("a.txt", "7 3\n1 2 5\n"), files("g.txt", "3 1\n1 3\n")], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["violations"] == []
    s = doc["partial_sums"]
    assert s[1] != s[3]
    code, out, _ = run(["sequence", files("b.txt", "11 2\n1 10\n"), files("k2.txt", "2 1\n1 2\n")], capsys)
    assert code == 0 and json.loads(out)["violations"] == []
    code, out, _ = run(["sequence", files("c.txt", "11 4\n1 2 3 4\n"), files("e.txt", "4 0\n")], capsys)
    assert code == 0 and json.loads(out)["trials_used"] == 1


def test_sequence_rejects_zero(files, capsys):
    code, _, err = run(["sequence", files("a.txt", "7 3\n0 2 5\n"), files("g.txt", "3 1\n1 3\n")], capsys)
    assert code == 2 and "must not contain 0" in err


def test_sequence_size_mismatch(files, capsys):
    code, _, err = run(["sequence", files("a.txt", "7 3\n1 2 5\n"), files("g.txt", "4 1\n1 3\n")], capsys)
    assert code == 2


def test_sequence_exhausted_exit_code(files, capsys, monkeypatch):
    A = GroundSet.of([1, 2], modulus=7)

    def give_up(*args, **kwargs):
        raise SearchExhausted(Ordering(A, (1, 2)), CollisionReport(((1, 2),)), 5)
    monkeypatch.setattr(cli, "randomized_sequencing", give_up)
    code, out, _ = run(["sequence", files("a.txt", "7 2\n1 2\n"), files("g.txt", "2 1\n1 2\n")], capsys)
    doc = json.loads(out)
    assert code == 4 and doc["ordering"] is None and doc["trials_used"] == 5


@pytest.mark.parametrize(
    "text, needle",
    [("0 3\n1 2\n", "line 2"), ("0 x\n", "line 1"), ("0 2\n1 1\n", "distinct")],
)
def test_bad_set_files_exit_2(files, capsys, text, needle):
    code, _, err = run(["dist", files("a.txt", text), "--ell", "2"], capsys)
    assert code == 2 and needle in err


def test_bad_graph_file_reports_line(files, capsys):
    code, _, err = run(["sequence", files("a.txt", "7 3\n1 2 5\n"), files("g.txt", "3 2\n1 2\n2 9\n")], capsys)
    assert code == 2 and "line 3" in err


def test_missing_file_exit_2(capsys, tmp_path):
    code, _, err = run(["dist", str(tmp_path / "nope.txt"), "--ell", "2"], capsys)
    assert code == 2


def test_nonpositive_ell(files, capsys):
    code, _, err = run(["dist", files("a.txt", "0 2\n1 2\n"), "--ell", "0"], capsys)
    assert code == 2


def test_output_identical_across_thread_counts(files, capsys):
    outs = set()
    for threads in ("1", "3"):
        outs.add(run(["verify", "lo", "--n-max", "5", "--samples", "6", "--threads", threads], capsys)[1])
    assert len(outs) == 1
    set_file = files("a.txt", "7 6\n1 2 3 4 5 6\n")
    graph_file = files("k6.txt", "6 15\n" + "".join(f"{i} {j}\n" for i in range(1, 7) for j in range(i + 1, 7)))
    outs = {run(["sequence", set_file, graph_file, "--seed", "4", "--threads", t], capsys)[1] for t in ("1", "2", "5")}
    assert len(outs) == 1


def test_console_script_is_byte_identical_across_runs(files):
    path = files("a.txt", "13 4\n1 3 4 9\n")
    cmd = [sys.executable, "-m", "anticonc.cli", "dist", path, "--ell", "3"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["ell"] == 3
