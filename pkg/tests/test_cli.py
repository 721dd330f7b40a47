import json

import pytest

from fanolines.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_lines_count_fermat(capsys):
    data = run_json(capsys, "lines", "count", "--q", "2^2",
                    "--form", "x0^3 + x1^3 + x2^3 + x3^3")
    assert data["count"] == 27
    assert data["q"] == 4 and data["n"] == 3 and data["d"] == 3
    assert data["total_lines"] == 357
    assert data["mode"] in ("naive", "table", "stream")


def test_form_from_file(capsys, tmp_path):
    path = tmp_path / "f.txt"
    path.write_text("x0^3 + x1^3 + x2^3 + x3^3\n")
    data = run_json(capsys, "lines", "count", "--q", "4", "--form", f"@{path}")
    assert data["count"] == 27


def test_point_find(capsys):
    data = run_json(capsys, "point", "find", "--q", "2",
                    "--form", "x0^3 + x1^3 + x2^3 + x3^3")
    assert data["point"] == [0, 0, 1, 1]  # first zero in enumeration order
    empty = run_json(capsys, "point", "find", "--q", "2",
                     "--form", "x0^2 + x0*x1 + x1^2")
    assert empty["point"] is None


def test_smooth_check(capsys):
    data = run_json(capsys, "smooth", "check", "--q", "7",
                    "--form", "x0^3 + x1^3 + x2^3 + x3^3 + x4^3")
    assert data["smooth"] is True
    data = run_json(capsys, "smooth", "check", "--q", "3",
                    "--form", "x0^3 + x1^3 + x2^3 + x3^3 + x4^3")
    assert data["smooth"] is False


def test_planes_lift(capsys):
    data = run_json(capsys, "planes", "lift", "--q", "2",
                    "--form", "x0*x1 + x2*x3", "--r", "1",
                    "--plane", "[[0, 1, 0, 0]]")
    assert data["contained"] is True
    assert data["start_r"] == 0 and data["r"] == 1
    assert len(data["plane"]) == 2  # row matrix of the lifted line


def test_bounds_report(capsys):
    data = run_json(capsys, "bounds", "report", "--n", "7", "--d", "3", "--r", "1")
    assert data["prop2_ok"] is True and data["main_thm_ok"] is True
    assert data["fano_dim"] == 8
    assert data["q_threshold"] == 30233088 or data["q_threshold"] > 30233087


def test_census_run_json_deterministic(capsys):
    code1, out1, _ = run(capsys, "census", "run", "--q", "2",
                         "--samples", "150", "--seed", "5", "--threads", "1")
    code2, out2, _ = run(capsys, "census", "run", "--q", "2",
                         "--samples", "150", "--seed", "5", "--threads", "3")
    assert code1 == code2 == 0
    assert out1 == out2
    data = json.loads(out1)
    assert data["config"]["samples"] == 150
    assert "threads" not in data["config"]


def test_census_env_thread_default(capsys, monkeypatch):
    monkeypatch.setenv("FANO_CENSUS_THREADS", "2")
    data = run_json(capsys, "census", "run", "--q", "2",
                    "--samples", "60", "--seed", "1")
    assert sum(int(v) for v in data["histogram"].values()) == 60


def test_census_csv_output(capsys, tmp_path):
    prefix = str(tmp_path / "out")
    code, out, _ = run(capsys, "census", "run", "--q", "2", "--samples", "80",
                       "--seed", "2", "--format", "csv", "--out", prefix)
    assert code == 0
    listed = out.strip().split("\n")
    assert listed == [f"{prefix}_stats.csv", f"{prefix}_hist.csv"]
    header = (tmp_path / "out_stats.csv").read_text().splitlines()[0]
    assert header == "q,n,d,samples,smooth_only,seed,min,max,median,mean,sd"


def test_census_csv_requires_out(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["census", "run", "--q", "2", "--samples", "10", "--format", "csv"])
    assert exc.value.code == 2


def test_verify_appendix(capsys):
    data = run_json(capsys, "verify", "appendix")
    assert data == {"q": 7, "n": 4, "d": 3, "smooth": True,
                    "line_count": 8, "expected": 8, "ok": True}


def test_exit_code_form_syntax(capsys):
    code, _, err = run(capsys, "lines", "count", "--q", "2", "--form", "x0^ +")
    assert code == 2
    assert "error[" in err


def test_exit_code_semantic(capsys):
    # parses fine but is not homogeneous: a computational-domain error
    code, _, err = run(capsys, "lines", "count", "--q", "2", "--form", "x0^2 + x1")
    assert code == 1
    assert "error[" in err


def test_exit_code_unsupported_field(capsys):
    code, _, err = run(capsys, "lines", "count", "--q", "6", "--form", "x0^2")
    assert code == 1
    assert "error[" in err


def test_exit_code_missing_form_file(capsys):
    code, _, err = run(capsys, "lines", "count", "--q", "2", "--form", "@/no/such/file")
    assert code == 2


def test_exit_code_bad_plane_json(capsys):
    code, _, err = run(capsys, "planes", "lift", "--q", "2",
                       "--form", "x0*x1 + x2*x3", "--r", "1", "--plane", "[[")
    assert code == 2


def test_bad_q_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["lines", "count", "--q", "two", "--form", "x0^2"])
    assert exc.value.code == 2


def test_stdout_is_sorted_json(capsys):
    _, out, _ = run(capsys, "bounds", "report", "--n", "4", "--d", "2", "--r", "1")
    assert out == json.dumps(json.loads(out), sort_keys=True) + "\n"
