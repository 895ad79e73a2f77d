"""CLI contract: flags, config file, report schema, exit codes."""

import json

from acderiv import cli
from acderiv.verifier import REGISTRY_IDS, IdentityReport

FAST_IDS = "EQ2.3,L3.7.3,R3.10,NEG-T3.8.1"


def run_cli(args):
    return cli.main(args)


def test_list_ids(capsys):
    assert run_cli(["--list-ids"]) == 0
    out = capsys.readouterr().out
    for cid in REGISTRY_IDS:
        assert cid in out


def test_end_to_end_report(tmp_path):
    out = tmp_path / "report.json"
    code = run_cli(
        ["--chart", "standard:1", "--rank", "1", "--seed", "7", "--ids", FAST_IDS,
         "--out", str(out)]
    )
    assert code == 0
    doc = json.loads(out.read_text())
    assert set(doc) == {"config", "reports", "summary"}
    assert doc["config"]["chart"] == "standard:1"
    assert doc["config"]["seed"] == 7
    assert [r["id"] for r in doc["reports"]] == FAST_IDS.split(",")
    for r in doc["reports"]:
        assert "id" in r and "chart" in r and "seeds" in r and "millis" in r
        assert ("pass" in r) != ("skip" in r)
        if "skip" in r:
            assert r["reason"]
    assert doc["summary"] == {"pass": 3, "fail": 0, "skip": 1}


def test_rerun_reproduces_pass_fail_vector(tmp_path):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    args = ["--chart", "standard:1", "--rank", "1", "--seed", "3", "--ids", "EQ2.3,EQ2.4"]
    assert run_cli(args + ["--out", str(out1)]) == 0
    assert run_cli(args + ["--out", str(out2)]) == 0
    doc1, doc2 = json.loads(out1.read_text()), json.loads(out2.read_text())
    strip = lambda doc: [
        {k: v for k, v in r.items() if k != "millis"} for r in doc["reports"]
    ]
    assert strip(doc1) == strip(doc2)
    assert doc1["summary"] == doc2["summary"]


def test_ids_filter_only_runs_selected(tmp_path):
    out = tmp_path / "r.json"
    assert run_cli(["--chart", "standard:1", "--ids", "L3.6-matrix", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert [r["id"] for r in doc["reports"]] == ["L3.6-matrix"]


def test_usage_error_on_bad_chart():
    assert run_cli(["--chart", "standard:0"]) == cli.USAGE_ERROR
    assert run_cli(["--chart", "twisted:1"]) == cli.USAGE_ERROR
    assert run_cli(["--chart", "nonsense"]) == cli.USAGE_ERROR


def test_usage_error_on_unknown_id():
    assert run_cli(["--ids", "T0.0.0"]) == cli.USAGE_ERROR


def test_usage_error_on_bad_rank():
    assert run_cli(["--rank", "0", "--ids", "EQ2.3"]) == cli.USAGE_ERROR


def test_config_file_with_flag_override(tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"chart": "standard:2", "rank": 1, "ids": ["EQ2.3"], "seed": 5}))
    out = tmp_path / "r.json"
    code = run_cli(["--config", str(config), "--chart", "standard:1", "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["config"]["chart"] == "standard:1"  # flag wins
    assert doc["config"]["rank"] == 1  # file value survives
    assert doc["config"]["seed"] == 5


def test_malformed_config_reports_location(tmp_path, capsys):
    config = tmp_path / "broken.json"
    config.write_text('{"chart": }')
    assert run_cli(["--config", str(config)]) == cli.USAGE_ERROR
    err = capsys.readouterr().err
    assert "line" in err


def test_unknown_config_field_rejected(tmp_path):
    config = tmp_path / "extra.json"
    config.write_text(json.dumps({"chart": "standard:1", "volume": 11}))
    assert run_cli(["--config", str(config)]) == cli.USAGE_ERROR


def test_exit_code_one_on_failure(monkeypatch, tmp_path):
    failing = IdentityReport(
        id="EQ2.3", chart="standard:1", status="fail",
        worst_generator="s1", worst_residual="x1",
    )

    def fake_run_suite(config):
        return [failing], {"pass": 0, "fail": 1, "skip": 0}

    monkeypatch.setattr(cli, "run_suite", fake_run_suite)
    out = tmp_path / "r.json"
    code = run_cli(["--chart", "standard:1", "--ids", "EQ2.3", "--out", str(out)])
    assert code == 1
    doc = json.loads(out.read_text())
    assert doc["summary"]["fail"] == 1
    assert doc["reports"][0]["pass"] is False
    assert "worst_residual" in doc["reports"][0]


def test_parallel_flag_matches_serial(tmp_path):
    serial, parallel = tmp_path / "s.json", tmp_path / "p.json"
    base = ["--chart", "standard:1", "--rank", "1", "--seed", "9", "--ids", "EQ2.3,L3.7.3,L3.6-matrix"]
    assert run_cli(base + ["--out", str(serial)]) == 0
    assert run_cli(base + ["--parallel", "--out", str(parallel)]) == 0
    doc_s, doc_p = json.loads(serial.read_text()), json.loads(parallel.read_text())
    strip = lambda doc: [
        {k: v for k, v in r.items() if k != "millis"} for r in doc["reports"]
    ]
    assert strip(doc_s) == strip(doc_p)
