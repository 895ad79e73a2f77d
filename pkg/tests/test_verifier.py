"""The identity registry: determinism, skips, negative controls, cross-checks."""

import pytest

from acderiv.verifier import (
    REGISTRY_IDS,
    IdentityCheck,
    check_identity,
    parse_chart_name,
    registry_descriptions,
    run_suite,
)


def test_registry_is_closed_and_complete():
    expected = {
        "EQ2.3", "EQ2.4", "EX3.1", "L3.6-matrix", "P3.12",
        "L3.7.1", "L3.7.2", "L3.7.3",
        "T3.8.1", "T3.8.2", "T3.8.3", "T3.8.4", "T3.8.5", "T3.8.6",
        "R3.10", "P3.3", "NILP", "NEG-T3.8.1",
    }
    assert set(REGISTRY_IDS) == expected
    assert len(REGISTRY_IDS) == len(set(REGISTRY_IDS))
    assert dict(registry_descriptions()).keys() == expected


def test_unknown_id_raises():
    with pytest.raises(KeyError):
        check_identity(IdentityCheck(id="T9.9.9"))


def test_parse_chart_name_errors():
    for bad in ("standard", "standard:x", "standard:0", "mystery:2"):
        with pytest.raises(ValueError):
            parse_chart_name(bad)


@pytest.mark.parametrize("cid", ["EQ2.3", "EX3.1", "L3.7.3", "P3.3", "NILP"])
def test_fast_checks_pass_on_standard_chart(cid):
    report = check_identity(IdentityCheck(id=cid, chart="standard:1", rank=1, seed=11))
    assert report.status == "pass", report.worst_residual


def test_reports_are_deterministic_modulo_timing():
    a = check_identity(IdentityCheck(id="EQ2.3", chart="twisted:2", seed=3))
    b = check_identity(IdentityCheck(id="EQ2.3", chart="twisted:2", seed=3))
    assert (a.id, a.chart, a.status, a.seeds, a.worst_residual) == (
        b.id, b.chart, b.status, b.seeds, b.worst_residual,
    )


def test_matrix_checks_ignore_chart():
    for cid in ("L3.6-matrix", "P3.12"):
        report = check_identity(IdentityCheck(id=cid, chart="standard:1", seed=5))
        assert report.status == "pass", report.worst_residual


def test_r310_skips_on_twisted():
    report = check_identity(IdentityCheck(id="R3.10", chart="twisted:2", seed=5))
    assert report.status == "skip"
    assert "integrable" in report.reason


def test_r310_passes_on_standard_n2():
    report = check_identity(IdentityCheck(id="R3.10", chart="standard:2", seed=5))
    assert report.status == "pass", report.worst_residual


def test_negative_control_detects_corruption_on_twisted():
    report = check_identity(IdentityCheck(id="NEG-T3.8.1", chart="twisted:2", seed=5))
    assert report.status == "pass"  # pass means: the corrupted identity FAILED


def test_negative_control_skips_on_standard():
    report = check_identity(IdentityCheck(id="NEG-T3.8.1", chart="standard:2", seed=5))
    assert report.status == "skip"


def test_corrupted_rhs_actually_fails():
    from acderiv.verifier import _CheckContext, _check_T381

    ctx = _CheckContext(IdentityCheck(id="T3.8.1", chart="twisted:2", seed=5))
    groups = _check_T381(ctx, corrupt=True)
    _, residuals = groups[0]
    assert residuals, "dropping the 1/2 coefficient must leave a residual"


def test_run_suite_summary_counts():
    class Config:
        chart = "standard:1"
        rank = 1
        degree = 1
        seed = 13
        ids = ["EQ2.3", "R3.10", "NEG-T3.8.1"]
        parallel = False

    reports, summary = run_suite(Config())
    assert [r.id for r in reports] == ["EQ2.3", "R3.10", "NEG-T3.8.1"]
    assert summary == {"pass": 2, "fail": 0, "skip": 1}


def test_run_suite_rejects_unknown_id():
    class Config:
        chart = "standard:1"
        rank = 1
        degree = 1
        seed = 13
        ids = ["NOPE"]
        parallel = False

    with pytest.raises(KeyError):
        run_suite(Config())


def test_run_suite_rejects_unknown_chart():
    class Config:
        chart = "moebius:2"
        rank = 1
        degree = 1
        seed = 13
        ids = ["EQ2.3"]
        parallel = False

    with pytest.raises(ValueError):
        run_suite(Config())
