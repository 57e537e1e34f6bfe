import csv
import subprocess
import sys

import pytest

from mwmatch.cli import main


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_solve_single_edge(tmp_path, capsys):
    f = write(tmp_path, "g.txt", "1 1 1\n0 0 7\n")
    assert main(["solve", f]) == 0
    assert capsys.readouterr().out.splitlines() == ["weight 7", "0 0 7"]


@pytest.mark.parametrize("algo", ["kwok", "hungarian", "mcmf"])
def test_solve_two_by_two_certified(tmp_path, capsys, algo):
    f = write(tmp_path, "g.txt", "# 2x2\n2 2 4\n0 0 5\n0 1 1\n1 0 2\n1 1 3\n")
    assert main(["solve", f, "--algo", algo, "--certify"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "weight 8"
    assert out[1:3] == ["0 0 5", "1 1 3"]
    assert out[-1] == "certificate OK"


def test_solve_reports_original_orientation(tmp_path, capsys):
    f = write(tmp_path, "g.txt", "3 1 2\n0 0 4\n2 0 6\n")
    assert main(["solve", f, "--no-prune", "--no-greedy", "--sorted-adj"]) == 0
    assert capsys.readouterr().out.splitlines() == ["weight 6", "2 0 6"]


def test_solve_stats(tmp_path, capsys):
    f = write(tmp_path, "g.txt", "2 2 3\n0 0 5\n0 1 5\n1 0 5\n")
    assert main(["solve", f, "--stats"]) == 0
    out = capsys.readouterr().out
    assert "weight 10" in out and "# edges_visited" in out and "# h_adjustments" in out


def test_solve_negative_edges_cleaned(tmp_path, capsys):
    f = write(tmp_path, "g.txt", "1 2 2\n0 0 -4\n0 1 2\n")
    assert main(["solve", f]) == 0
    assert capsys.readouterr().out.splitlines() == ["weight 2", "0 1 2"]


def test_malformed_header(tmp_path, capsys):
    f = write(tmp_path, "bad.txt", "2 two 1\n0 0 1\n")
    assert main(["solve", f]) == 2
    err = capsys.readouterr().err
    assert "line 1" in err


def test_bad_edge_line(tmp_path, capsys):
    f = write(tmp_path, "bad.txt", "2 2 2\n0 0 1\n0 9 1\n")
    assert main(["solve", f]) == 2
    assert "line 3" in capsys.readouterr().err


def test_missing_file(tmp_path, capsys):
    assert main(["solve", str(tmp_path / "nope.txt")]) == 2


def test_gen_then_solve(tmp_path, capsys):
    out = str(tmp_path / "g.txt")
    assert main(["gen", "--n-left", "5", "--ratio", "2", "--rule", "fixed", "--param", "20",
                 "--weights", "1:R", "--seed", "3", "-o", out]) == 0
    lines = open(out).read().splitlines()
    assert lines[0] == "5 10 20" and len(lines) == 21
    for algo in ("kwok", "hungarian", "mcmf"):
        assert main(["solve", out, "--algo", algo]) == 0
    weights = [l for l in capsys.readouterr().out.splitlines() if l.startswith("weight")]
    assert len(set(weights)) == 1


def test_gen_rejects_budget(tmp_path, capsys):
    assert main(["gen", "--n-left", "2", "--param", "9", "-o", str(tmp_path / "g")]) == 2


def test_gen_seed_from_env(tmp_path, monkeypatch):
    a, b, c = (str(tmp_path / n) for n in "abc")
    argv = ["gen", "--n-left", "6", "--rule", "fixed", "--param", "10", "--weights", "1:R^2"]
    monkeypatch.setenv("MWM_SEED", "11")
    main(argv + ["-o", a])
    main(argv + ["-o", b])
    monkeypatch.setenv("MWM_SEED", "12")
    main(argv + ["-o", c])
    assert open(a).read() == open(b).read() != open(c).read()


def test_bench_command(tmp_path, capsys):
    cfg = write(tmp_path, "b.cfg", "# tiny\nn_left = 8\nratios = 1,2\nrules = c_lgR:1,frac:2\n"
                "weights = 1:R\nrounds = 2\nalgorithms = kwok,hungarian,mcmf\nseed = 5\n")
    out = str(tmp_path / "b.csv")
    assert main(["bench", cfg, "-o", out]) == 0
    rows = list(csv.DictReader(open(out)))
    # 4 specs x 3 algorithms x 2 rounds
    assert len(rows) == 24
    text = capsys.readouterr().out
    assert text.count("±") == 12


def test_scaling_command(tmp_path, capsys):
    cfg = write(tmp_path, "s.cfg", "e_values = 100:300:100\nl_points = 3\nrounds = 2\nseed = 1\n")
    out = str(tmp_path / "s.csv")
    assert main(["scaling", cfg, "-o", out]) == 0
    text = capsys.readouterr().out
    assert "exponent:" in text and "h_adjustments/L" in text


def test_scaling_insufficient_points(tmp_path, capsys):
    cfg = write(tmp_path, "s.cfg", "e_values = 100\nl_points = 1\nrounds = 2\n")
    assert main(["scaling", cfg, "-o", str(tmp_path / "s.csv")]) == 0
    assert "insufficient points" in capsys.readouterr().out


def test_bad_config_line(tmp_path, capsys):
    cfg = write(tmp_path, "b.cfg", "n_left 8\n")
    assert main(["bench", cfg, "-o", str(tmp_path / "x.csv")]) == 2


def test_module_entry_point(tmp_path):
    f = write(tmp_path, "g.txt", "1 1 1\n0 0 7\n")
    res = subprocess.run([sys.executable, "-m", "mwmatch", "solve", f], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("weight 7")
