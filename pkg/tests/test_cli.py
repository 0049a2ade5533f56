import json
import subprocess
import sys

import pytest

from qwk import reports
from qwk.cli import main


def run_cli(args, cwd):
    return subprocess.run([sys.executable, "-m", "qwk.cli", *args],
                          capture_output=True, text=True, cwd=cwd)


def test_check_pass_exit_zero_and_schema(tmp_path):
    out = tmp_path / "report.json"
    code = main(["check", "forms", "--report", str(out), "--no-figures"])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["schema"] == "qwk-report/1"
    assert report["summary"]["fail"] == 0
    assert report["timings"] is None


def test_check_reports_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["check", "structure", "--report", str(a), "--no-figures"]) == 0
    assert main(["check", "structure", "--report", str(b), "--no-figures"]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_check_seed_recorded_and_varies(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["check", "structure", "--n", "4", "--seed", "1", "--report", str(a),
          "--no-figures"])
    main(["check", "structure", "--n", "4", "--seed", "2", "--report", str(b),
          "--no-figures"])
    ra, rb = json.loads(a.read_text()), json.loads(b.read_text())
    assert ra["config"]["seed"] == 1 and rb["config"]["seed"] == 2


def test_check_renders_figure(tmp_path):
    out = tmp_path / "report.json"
    assert main(["check", "dw-lemmas", "--report", str(out)]) == 0
    assert out.with_suffix(".png").exists()


def test_check_unknown_suite_usage_error(tmp_path):
    proc = run_cli(["check", "nosuch"], tmp_path)
    assert proc.returncode == 2


def test_config_file_roundtrip(tmp_path):
    cfg = tmp_path / "suite.cfg"
    cfg.write_text("# desk config\nn = 3\nseed = 77\n", encoding="utf-8")
    out = tmp_path / "r.json"
    assert main(["check", "forms", "--config", str(cfg), "--report", str(out),
                 "--no-figures"]) == 0
    report = json.loads(out.read_text())
    assert report["config"]["n"] == 3 and report["config"]["seed"] == 77


def test_config_file_rejects_garbage(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("this is not a key value line\n", encoding="utf-8")
    assert main(["check", "forms", "--config", str(cfg), "--no-figures"]) == 2


def test_compute_character_csv_rows(tmp_path):
    assert main(["compute", "character", "--lambda", "1,0", "--depth", "3",
                 "--out", str(tmp_path), "--no-figures"]) == 0
    lines = (tmp_path / "character.csv").read_text().strip().split("\n")
    assert lines[0] == "w1,w2,multiplicity"
    assert len(lines) - 1 == 4
    data = json.loads((tmp_path / "character.json").read_text())
    assert data["schema"] == "qwk-character/1"


def test_compute_character_length_mismatch_exit_two(tmp_path):
    assert main(["compute", "character", "--lambda", "1,0", "--n", "3",
                 "--out", str(tmp_path), "--no-figures"]) == 2


def test_whittaker_solve_json(tmp_path):
    assert main(["whittaker", "solve", "--lambda", "2,-2", "--zeta", "1",
                 "--window", "0:3", "--out", str(tmp_path),
                 "--no-figures"]) == 0
    data = json.loads((tmp_path / "whittaker.json").read_text())
    assert data["schema"] == "qwk-whittaker/1"
    assert data["slices"] == {"0": 2, "1": 4, "2": 4, "3": 4}
    assert "leakage-rank" in data


def test_whittaker_solve_strict_flag(tmp_path):
    assert main(["whittaker", "solve", "--lambda", "0,0", "--zeta", "1",
                 "--window", "0:0", "--strict", "--depth", "0",
                 "--out", str(tmp_path), "--no-figures"]) == 0
    data = json.loads((tmp_path / "whittaker.json").read_text())
    assert data["strict"] is True


def test_walgebra_build_report(tmp_path):
    out = tmp_path / "wal.json"
    assert main(["walgebra", "build", "--n", "2", "--E", "principal",
                 "--cap", "2", "--report", str(out), "--no-figures"]) == 0
    data = json.loads(out.read_text())
    assert data["schema"] == "qwk-walgebra/1"
    assert data["axioms"] == {"a": True, "b": True, "c": True}
    assert data["graded_dims"] == {"0": 1, "2": 2}
    assert data["certified"]["dims_match_sgE"] is True
    # basis listing includes the image of the central element: the unit plus
    # two degree-2 vectors, one of which carries the diagonal monomials
    assert len(data["basis"]) == 3


def test_walgebra_build_element_text(tmp_path):
    out = tmp_path / "wal.json"
    assert main(["walgebra", "build", "--n", "2", "--E", "f(1,2)",
                 "--cap", "2", "--report", str(out), "--no-figures"]) == 0
    data = json.loads(out.read_text())
    assert data["E"] == "f(1,2)"


def test_compute_star(tmp_path):
    assert main(["compute", "star", "--n", "2", "--x", "e(1,2)", "--y",
                 "e(2,1)", "--cap", "4", "--out", str(tmp_path),
                 "--no-figures"]) == 0
    data = json.loads((tmp_path / "star.json").read_text())
    assert "hbar^2" in data["result"]


def test_run_suite_rejects_unknown():
    with pytest.raises(KeyError):
        reports.run_suite("bogus", {})


def test_failing_check_sets_exit_one_and_witnesses(tmp_path, monkeypatch):
    def broken_suite(cfg, rng):
        checks = []
        reports._check(checks, "always-fails", False, ["e(1,2)"], rank=3)
        return checks

    monkeypatch.setitem(reports.SUITES, "broken", broken_suite)
    out = tmp_path / "r.json"
    assert main(["check", "broken", "--report", str(out),
                 "--no-figures"]) == 1
    report = json.loads(out.read_text())
    assert report["summary"]["fail"] == 1
    check = report["checks"][0]
    assert check["status"] == "fail"
    assert check["witnesses"] == ["e(1,2)"]
    assert check["numbers"]["rank"] == 3


def test_figures_byte_identical(tmp_path):
    from qwk.figures import render_report_figure

    report = reports.run_suite("forms", {})
    a, b = tmp_path / "a.png", tmp_path / "b.png"
    render_report_figure(report, a)
    render_report_figure(report, b)
    assert a.read_bytes() == b.read_bytes()


def test_compute_missing_flags_exit_two(tmp_path):
    assert main(["compute", "character", "--out", str(tmp_path),
                 "--no-figures"]) == 2
    assert main(["compute", "star", "--x", "e(1,1)", "--out", str(tmp_path),
                 "--no-figures"]) == 2


def test_walgebra_build_cap_guard_exit_two(tmp_path):
    out = tmp_path / "wal.json"
    assert main(["walgebra", "build", "--n", "2", "--E", "principal",
                 "--cap", "9", "--report", str(out), "--no-figures"]) == 2


def test_check_structure_rank_one(tmp_path):
    # q(1): one even and one odd generator, [f,f] = 2h; trivially green
    out = tmp_path / "q1.json"
    assert main(["check", "structure", "--n", "1", "--report", str(out),
                 "--no-figures"]) == 0
    report = json.loads(out.read_text())
    assert report["summary"]["fail"] == 0


def test_check_dw_lemmas_with_explicit_datum(tmp_path):
    out = tmp_path / "dw.json"
    assert main(["check", "dw-lemmas", "--n", "2", "--E", "principal",
                 "--report", str(out), "--no-figures"]) == 0
    report = json.loads(out.read_text())
    assert any(c["name"] == "dw-q2-principal" for c in report["checks"])
