import csv
import json

from qfibcong.cli import main
from qfibcong.report import check_report


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def strip_run(payload):
    return {k: v for k, v in payload.items() if k != "run"}


def test_qfib_poly(capsys):
    code, out, _ = run(capsys, "qfib", "5", "--poly")
    assert code == 0 and out.strip() == "1 + q + q^2 + q^3 + q^4"
    code, out, _ = run(capsys, "qfib", "0", "--poly")
    assert code == 0 and out.strip() == "0"


def test_qfib_mod(capsys):
    code, out, _ = run(capsys, "qfib", "7", "--q", "2", "--p", "7")
    assert code == 0 and out.strip() == "1"
    code, out, _ = run(capsys, "qfib", "7", "--q", "1/2", "--p", "13")
    assert code == 0


def test_qfib_missing_flags(capsys):
    code, _, err = run(capsys, "qfib", "5")
    assert code == 2 and "usage" in err or "need" in err


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--alpha", "2", "--p", "7")
    assert code == 0 and "match" in out
    code, out, _ = run(capsys, "verify", "--alpha", "2", "--p", "11")
    assert code == 3 and "inapplicable" in out
    code, _, err = run(capsys, "verify", "--alpha", "1", "--p", "7")
    assert code == 2
    code, _, err = run(capsys, "verify", "--alpha", "2", "--p", "9")
    assert code == 2


def test_scan_writes_reports(capsys, tmp_path):
    out_json = tmp_path / "r.json"
    out_csv = tmp_path / "r.csv"
    code, out, _ = run(
        capsys, "scan", "--alpha", "2", "--pmin", "3", "--pmax", "20",
        "--out", str(out_json), "--csv", str(out_csv),
    )
    assert code == 0
    assert "checked = 6" in out and "mismatched = 0" in out
    payload = json.loads(out_json.read_text())
    assert payload["kind"] == "scan"
    assert len(payload["records"]) == 6
    assert payload["summary"]["skipped"]["OrdDivisibleBy5"] == 1
    with open(out_csv) as fh:
        rows = list(csv.DictReader(fh))
    assert [int(r["p"]) for r in rows] == [3, 5, 7, 13, 17, 19]
    assert all(r["match"] == "True" for r in rows)


def test_scan_deterministic_across_workers(capsys, tmp_path):
    bodies = []
    for workers in ("1", "2", "8"):
        path = tmp_path / f"w{workers}.json"
        code, _, _ = run(
            capsys, "scan", "--alpha", "2", "--pmax", "500",
            "--workers", workers, "--out", str(path),
        )
        assert code == 0
        bodies.append(json.dumps(strip_run(json.loads(path.read_text()))))
    assert bodies[0] == bodies[1] == bodies[2]


def test_check_command(capsys, tmp_path):
    path = tmp_path / "r.json"
    run(capsys, "scan", "--alpha", "2", "--pmax", "100", "--out", str(path))
    code, out, _ = run(capsys, "check", str(path))
    assert code == 0 and "ok" in out

    # corrupt a record: the revalidator must notice
    payload = json.loads(path.read_text())
    payload["records"][0]["lhs"] = "5"
    path.write_text(json.dumps(payload))
    code, _, err = run(capsys, "check", str(path))
    assert code == 1 and "match flag" in err

    missing = tmp_path / "nope.json"
    code, _, _ = run(capsys, "check", str(missing))
    assert code == 4


def test_scan_unwritable_path(capsys, tmp_path):
    code, _, err = run(
        capsys, "scan", "--alpha", "2", "--pmax", "20",
        "--out", str(tmp_path / "no" / "such" / "dir" / "r.json"),
    )
    assert code == 4


def test_density_command(capsys, tmp_path):
    path = tmp_path / "d.json"
    code, out, _ = run(
        capsys, "density", "--g", "2", "--t", "11", "--trunc", "200",
        "--empirical-x", "100", "--out", str(path),
    )
    assert code == 0
    assert "POSITIVE" in out
    assert "empirical count up to 100: 0" in out
    payload = json.loads(path.read_text())
    assert payload["kind"] == "density"
    assert payload["summary"]["positive"] is True
    assert payload["empirical"]["count"] == 0
    assert check_report(str(path)) == []

    code, _, err = run(capsys, "density", "--g", "4", "--t", "11")
    assert code == 2 and "square-free" in err


def test_stats_command(capsys, tmp_path):
    path = tmp_path / "s.json"
    code, out, _ = run(capsys, "stats", "--g", "2", "--x", "20", "--out", str(path))
    assert code == 0
    assert "index 0 (value 0): 3" in out
    payload = json.loads(path.read_text())
    assert payload["kind"] == "stats"
    assert payload["by_index"]["0"]["witnesses"] == [3, 13, 19]
    assert payload["by_value"] == {"0": 3, "1": 3}
    assert check_report(str(path)) == []

    code, out, _ = run(capsys, "stats", "--g", "2", "--x", "3")
    assert code == 0  # x = 3 has a single prime, bucketed under index 0


def test_config_file_defaults_and_overrides(capsys, tmp_path):
    cfg = tmp_path / "qfib.cfg"
    cfg.write_text("pmin = 3\nworkers = 2\n# comment\n\n")
    code, out, _ = run(
        capsys, "--config", str(cfg), "scan", "--alpha", "2", "--pmax", "20"
    )
    assert code == 0 and "range [3, 20]" in out
    # a flag beats the config entry
    code, out, _ = run(
        capsys, "--config", str(cfg), "scan", "--alpha", "2", "--pmax", "20",
        "--pmin", "5",
    )
    assert code == 0 and "range [5, 20]" in out
    code, _, err = run(capsys, "--config", str(tmp_path / "bad.cfg"), "scan",
                       "--alpha", "2", "--pmax", "20")
    assert code == 4


def test_workers_env_default(capsys, monkeypatch):
    monkeypatch.setenv("QFIB_WORKERS", "2")
    code, out, _ = run(capsys, "scan", "--alpha", "2", "--pmax", "100")
    assert code == 0 and "checked" in out


def test_bad_subcommand_usage(capsys):
    assert main(["frobnicate"]) == 2
    assert main([]) == 2
    assert main(["--version"]) == 0
