import json

import pytest

import nrlat


def test_up_latency_anchor():
    r = nrlat.up_latency("dl", 30, 7)
    assert r["printed"] == "0.91"
    assert r["tag"] == "urllc_ok"
    assert sum(c["ms"] for c in r["components"]) == pytest.approx(r["total_ms"])


def test_retransmissions_add_one_rtt_each():
    first = nrlat.up_latency("dl", 15, 14)
    fourth = nrlat.up_latency("dl", 15, 14, retx=3)
    assert fourth["harq_rtt_ms"] == pytest.approx(3.0)
    assert fourth["total_ms"] == pytest.approx(first["total_ms"] + 3 * 3.0)


def test_cp_latency():
    r = nrlat.cp_latency("tdd-uldldldl", 120, 14)
    assert (r["ttis"], r["fixed_ms"], r["printed"]) == (26, 6.0, "9.3")
    assert len(r["steps"]) == 15


def test_oracle_within_a_symbol():
    closed = nrlat.up_latency("cg", 15, 14)["total_ms"]
    o = nrlat.oracle("cg", 15, 14)
    assert abs(o["worst_case_ms"] - closed) <= 1 / 14
    assert o["trace"][-1]["end_ms"] == pytest.approx(o["worst_case_ms"])


def test_threshold_tag():
    assert nrlat.threshold_tag(1.0) == "urllc_ok"
    assert nrlat.threshold_tag(4.0) == "embb_ok"
    assert nrlat.threshold_tag(4.5) == "above"


def test_check_verdicts():
    verdicts = nrlat.check()
    assert len(verdicts) == 4
    assert all(v["met"] for v in verdicts)


def test_residuals():
    r = nrlat.residuals()
    assert r["total"] == 252
    assert r["matched"] / r["total"] >= 0.75
    assert len(r["mismatches"]) == r["total"] - r["matched"]


def test_run_config_is_deterministic():
    cfg = json.dumps({"plane": "cp", "format": "csv"})
    a = nrlat.run_config(cfg)
    assert a == nrlat.run_config(cfg)
    assert a[1] == 0
    assert a[0].count("\n") == 28


def test_errors():
    with pytest.raises(nrlat.ConfigError):
        nrlat.up_latency("dl", 15, 2, duplex="tdd-uldl")
    with pytest.raises(ValueError):
        nrlat.run_config('{"tti": [3]}')
    with pytest.raises(nrlat.ConfigError):
        nrlat.up_latency("dl", 60, 14)


def test_profile_round_trip(tmp_path):
    text = nrlat.profile_json()
    path = tmp_path / "p.json"
    path.write_text(text)
    assert nrlat.profile_json(str(path)) == text
    assert nrlat.up_latency("sr", 15, 7, profile=str(path))["printed"] == "3.0"
