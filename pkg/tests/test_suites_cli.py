import json

import pytest

from cattorus.cli import generators, main, parse_suites, UsageError
from cattorus.lattice import builtin
from cattorus.suites import SUITES, run_suites


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_suites():
    assert parse_suites("all") == list(SUITES)
    assert parse_suites("xi, rep") == ["xi", "rep"]
    with pytest.raises(UsageError):
        parse_suites("nope")


def test_unknown_suite_exits_2(capsys):
    code, _, err = run(capsys, "verify", "--lattice", "A1", "--suite", "bogus")
    assert code == 2 and "unknown suite" in err


def test_unknown_lattice_exits_2(capsys):
    assert run(capsys, "verify", "--lattice", "Z7")[0] == 2


def test_odd_lattice_file_exits_2(capsys, tmp_path):
    p = tmp_path / "odd.json"
    p.write_text(json.dumps({"name": "odd", "rank": 1, "gram": [[1]], "gram_is": "I"}))
    code, _, err = run(capsys, "verify", "--lattice", f"file:{p}")
    assert code == 2 and err


def test_trials_must_be_positive(capsys):
    with pytest.raises(SystemExit) as e:
        main(["verify", "--lattice", "A1", "--trials", "0"])
    assert e.value.code == 2


def test_verify_small_run(capsys, tmp_path):
    out = tmp_path / "r.txt"
    code, msg, _ = run(capsys, "verify", "--lattice", "A1", "--suite", "axioms,rep",
                       "--trials", "30", "--out", str(out))
    text = out.read_text()
    assert code == 0 and "PASS" in msg
    assert text.startswith("# verify lattice=A1 rank=1 seed=0 trials=30 suites=axioms,rep")
    assert text.rstrip().endswith("RESULT\tPASS")


def test_centralizer_rank_guard_exits_1(capsys):
    assert run(capsys, "verify", "--lattice", "E8", "--suite", "centralizer", "--trials", "1")[0] == 1


def test_report_identical_across_threads(monkeypatch, capsys):
    args = ("verify", "--lattice", "A2", "--suite", "axioms,xi-prime,looijenga", "--trials", "40",
            "--seed", "3")
    monkeypatch.setenv("CATTORUS_THREADS", "1")
    one = run(capsys, *args)
    monkeypatch.setenv("CATTORUS_THREADS", "4")
    four = run(capsys, *args)
    assert one == four


def test_same_seed_same_reports():
    a = run_suites(builtin("A1"), ["axioms"], 10, seed=1)
    b = run_suites(builtin("A1"), ["axioms"], 10, seed=1)
    assert [r.render() for r in a] == [r.render() for r in b]


def test_suite_order_is_fixed():
    reps = run_suites(builtin("A1"), ["rep", "axioms"], 5)
    titles = [r.title for r in reps]
    assert titles[0].startswith("axioms") and titles[-1].startswith("basic representation")


def test_theta_e8(capsys):
    code, out, _ = run(capsys, "theta", "--lattice", "E8", "--max", "3")
    assert code == 0 and out == "0\t1\n1\t240\n2\t2160\n3\t6720\n"


def test_theta_a1(capsys):
    code, out, _ = run(capsys, "theta", "--lattice", "A1", "--max", "4")
    assert [int(line.split("\t")[1]) for line in out.splitlines()] == [1, 2, 0, 0, 2]


def test_theta_refined(capsys):
    code, out, _ = run(capsys, "theta", "--lattice", "A1", "--max", "1", "--weight", "0", "--k", "1")
    assert code == 0 and "1\t(2)\t1" in out


def test_theta_bad_weight(capsys):
    assert run(capsys, "theta", "--lattice", "A1", "--weight", "1,2")[0] == 2


def test_theta_indefinite_exits_1(capsys):
    assert run(capsys, "theta", "--lattice", "U")[0] == 1


def test_groups_a2(capsys):
    code, out, _ = run(capsys, "groups", "--lattice", "A2")
    assert code == 0 and "O.order\t12" in out


def test_groups_a1(capsys):
    code, out, _ = run(capsys, "groups", "--lattice", "A1")
    assert code == 0 and "extraspecial.order\t4" in out


def test_groups_u(capsys):
    code, out, _ = run(capsys, "groups", "--lattice", "U")
    assert code == 0 and "O.order\t4" in out and "O2.order" in out and "INN" in out


def test_groups_rank_guard(capsys):
    assert run(capsys, "groups", "--lattice", "E8")[0] == 1


def test_generators_span_group():
    mul = lambda a, b: (a + b) % 6  # noqa: E731
    assert generators(range(6), mul, 0) == [1]
