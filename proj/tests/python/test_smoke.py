import csv
import json
import math

import pytest

import airan_econ as ae


def test_capacity_helpers():
    assert ae.baseband_capacity(4, 3, 100) == 1200
    assert ae.mixed_capacity(14400, 14400) == pytest.approx(14400)
    assert ae.mixed_capacity(100, 200, 1, 1) == pytest.approx(150)
    assert ae.net_throughput(14400, 9.0, 0.2) == pytest.approx(103680)
    with pytest.raises(ae.DomainError):
        ae.net_throughput(100, 9.0, 1.0)


def test_catalog_and_presets():
    cat = ae.catalog()
    names = {p["name"] for p in cat["platforms"]}
    assert {"ARS-111GL", "EGX74I", "DL110"} <= names
    assert {"Aerial", "FlexRAN"} <= {p["l1_stack"] for p in cat["platforms"]}
    assert set(ae.presets()) >= {"milan_s1", "milan_s2"}


def test_validate_roundtrip():
    spec = ae.validate_spec({"horizon_weeks": 4})
    digest = spec.pop("config_digest")
    again = ae.validate_spec(spec)
    assert again["config_digest"] == digest


def test_config_error_lists_every_issue():
    with pytest.raises(ae.ConfigError) as err:
        ae.validate_spec({"ran": {"se": -1, "overhead": 1.5}, "bogus": 1})
    paths = {i["path"] for i in err.value.issues}
    assert {"ran.se", "ran.overhead", "bogus"} <= paths
    assert isinstance(err.value, ValueError)


def test_run_scenario_fleets():
    s1 = ae.run_scenario(preset="milan_s1", include_grid=True,
                         doc={"horizon_weeks": 2})
    assert s1["fleet_primary"]["g_total"] == 35
    assert s1["fleet_baseline"]["g_total"] == 144
    assert s1["roi"]["investment_usd"] == pytest.approx(624600)
    alloc = s1["allocation"]
    g = alloc["g_total"]
    for ran, llm, idle in zip(*(alloc["grid"][k] for k in ("ran", "llm", "idle"))):
        assert ran + llm + idle == g
        assert min(ran, llm, idle) >= 0
    assert len(alloc["grid"]["ran"]) == 2 * 168

    # Scenario 2 sizes its fleet at the end of the horizon.
    s2 = ae.run_scenario(preset="milan_s2")
    assert s2["fleet_primary"]["g_total"] == 215
    assert s2["roi"]["investment_usd"] == pytest.approx(3801000)


def test_sweep_matches_single_runs():
    doc = {"horizon_weeks": 3, "sweep": {"k": [1.0, 2.0]}}
    runs = ae.run_sweep(doc, threads=2)
    assert len(runs) == 2
    m = [r["roi"]["return_multiple"] for r in runs]
    assert all(isinstance(x, float) and math.isfinite(x) for x in m)
    assert m[0] > m[1]
    assert len({r["config_digest"] for r in runs}) == 2


def test_export_writes_manifest(tmp_path):
    files = ae.export({"horizon_weeks": 2}, tmp_path, generated_at="fixed")
    assert files[-1].endswith("manifest.json")
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["generated_at"] == "fixed"
    with open(tmp_path / "roi.csv", newline="") as f:
        assert len(list(csv.DictReader(f))) >= 1


def test_ingest_trace(tmp_path):
    path = tmp_path / "trace.csv"
    # 2024-01-01 is a Monday.
    monday = 1704067200
    rows = ["timestamp,request_tokens,response_tokens"]
    rows += [f"{monday + 9 * 3600 + i},100,50" for i in range(3)]
    rows += [f"{monday + 10 * 3600},100,50"]
    path.write_text("\n".join(rows) + "\n")
    out = ae.ingest_trace(path)
    assert out["record_count"] == 4
    assert out["mean_tokens_per_request"] == pytest.approx(150)
    prof = out["profile"]
    assert len(prof) == 168
    assert prof[9] == pytest.approx(0.75)
    assert prof[10] == pytest.approx(0.25)
    for d in range(7):
        assert sum(prof[24 * d:24 * d + 24]) == pytest.approx(1.0)
    assert ae.ingest_trace(path, count_response_tokens=False)[
        "mean_tokens_per_request"] == pytest.approx(100)
