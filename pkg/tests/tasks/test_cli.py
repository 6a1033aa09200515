import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from core.enums import ExitCode
from core.registry import registry
from main import cli


def invoke(*args: str):
    return CliRunner().invoke(cli, list(args), catch_exceptions=False)


def read_summary(directory: Path, name: str) -> dict:
    return json.loads((directory / f"{name}_summary.json").read_text(encoding="utf-8"))


def test_every_verb_is_registered():
    assert registry.list_registered() == sorted(
        ["bandwidth", "bell", "calibrate", "dispersion", "explain", "mu-extract", "phase-match", "simulate", "spectrum", "sweep"]
    )


def test_explain_marks_origins(tmp_path):
    result = invoke("--output-dir", str(tmp_path), "--set", "fiber.length_m=308", "explain")
    assert result.exit_code == 0, result.output
    assert "fiber.length_m" in result.output
    rows = (tmp_path / "explain_parameters.csv").read_text(encoding="utf-8").splitlines()
    assert rows[0] == "key,value,origin,provenance,note"
    length_row = next(row for row in rows if row.startswith("fiber.length_m,"))
    assert length_row.startswith("fiber.length_m,308.0,flag,reference-setup,")
    summary = read_summary(tmp_path, "explain")
    assert summary["overridden"] == ["fiber.length_m"]
    assert summary["verb"] == "explain"
    assert len(summary["config_hash"]) == 64


def test_phase_match_summary(tmp_path):
    result = invoke("--output-dir", str(tmp_path), "phase-match")
    assert result.exit_code == 0, result.output
    summary = read_summary(tmp_path, "phase_match")
    assert summary["phase_matched_ghz"] == pytest.approx(77.3, abs=0.5)
    assert summary["beta2_ps2_per_km"] == pytest.approx(-17.07, rel=2e-3)
    assert (tmp_path / "phase_match_delta_k.csv").exists()


def test_spectrum_bandwidth_and_dispersion(tmp_path):
    assert invoke("--output-dir", str(tmp_path), "spectrum", "--step-ghz", "10").exit_code == 0
    curves = read_summary(tmp_path, "spectrum")["curves"]
    assert [c["length_m"] for c in curves] == [3.8, 11.4, 31.5, 308.0]

    assert invoke("--output-dir", str(tmp_path), "bandwidth", "--points", "12").exit_code == 0
    assert read_summary(tmp_path, "bandwidth")["monotone_decreasing"] is True

    assert invoke("--output-dir", str(tmp_path), "dispersion").exit_code == 0
    summary = read_summary(tmp_path, "dispersion")
    assert summary["d_ps_nm_km"] == pytest.approx(13.34, abs=0.01)


def test_invalid_config_exit_code(tmp_path):
    config = tmp_path / "bad.toml"
    config.write_text("[fiber]\nlength_m = -1\n", encoding="utf-8")
    result = invoke("--config", str(config), "--output-dir", str(tmp_path), "phase-match")
    assert result.exit_code == ExitCode.CONFIG
    assert "line 2" in result.output
    assert "invariant violated" in result.output
    assert not list(tmp_path.glob("*.json"))


def test_malformed_override_is_usage_error(tmp_path):
    result = CliRunner().invoke(cli, ["--set", "fiber.length_m", "explain"])
    assert result.exit_code == ExitCode.USAGE


def test_model_error_exit_code(tmp_path):
    result = invoke("--output-dir", str(tmp_path), "--set", "pump.lambda_p_nm=1300", "phase-match")
    assert result.exit_code == ExitCode.MODEL
    assert "normal-dispersion" in result.output


def test_simulate_output_is_byte_identical(tmp_path):
    args = ("simulate", "--power", "10", "--duration", "3", "--seed", "5")
    runs = {
        "first": ("--workers", "1"),
        "second": ("--workers", "1"),
        "threaded": ("--workers", "4"),
    }
    for name, workers in runs.items():
        result = invoke("--output-dir", str(tmp_path / name), *workers, *args)
        assert result.exit_code == 0, result.output

    names = sorted(p.name for p in (tmp_path / "first").iterdir())
    assert names == ["simulate_histogram.csv", "simulate_summary.json"]
    for name in names:
        reference = (tmp_path / "first" / name).read_bytes()
        assert (tmp_path / "second" / name).read_bytes() == reference
        assert (tmp_path / "threaded" / name).read_bytes() == reference

    summary = read_summary(tmp_path / "first", "simulate")
    assert summary["seed"] == 5
    assert summary["c_c"] > 0


def test_sweep_feeds_mu_extract(tmp_path):
    sweep_dir = tmp_path / "sweep"
    values = [arg for v in ("0.25", "0.5", "0.75", "1.0") for arg in ("--values", v)]
    result = invoke("--output-dir", str(sweep_dir), "sweep", "--axis", "power", *values, "--duration", "300")
    assert result.exit_code == 0, result.output
    sweep = read_summary(sweep_dir, "sweep")
    assert sweep["axis"] == "power"
    assert len(sweep["points"]) == 4

    result = invoke("--output-dir", str(tmp_path), "mu-extract", str(sweep_dir / "sweep_summary.json"))
    assert result.exit_code == 0, result.output
    header, row = (tmp_path / "mu_extract_mu_p.csv").read_text(encoding="utf-8").splitlines()
    assert header == "detuning_ghz,length_m,mu_p_model,mu_p_extracted,mu_p_extracted_se,note"
    fields = row.split(",")
    model, extracted, se = float(fields[2]), float(fields[3]), float(fields[4])
    assert abs(extracted - model) <= 4.0 * se + 0.1 * model


def test_noise_dominated_extraction_exit_code(tmp_path):
    sweep_dir = tmp_path / "sweep"
    values = [arg for v in ("0.25", "0.5", "0.75", "1.0") for arg in ("--values", v)]
    result = invoke(
        "--output-dir", str(sweep_dir), "sweep", *values, "--length", "308", "--detuning", "1000", "--duration", "60"
    )
    assert result.exit_code == 0, result.output

    result = invoke("--output-dir", str(tmp_path), "mu-extract", str(sweep_dir / "sweep_summary.json"))
    assert result.exit_code == ExitCode.EXTRACTION
    assert "noise-dominated" in result.output


def test_length_sweep_cannot_be_extracted(tmp_path):
    sweep_dir = tmp_path / "sweep"
    values = [arg for v in ("3.8", "11.4", "31.5") for arg in ("--values", v)]
    assert invoke("--output-dir", str(sweep_dir), "sweep", "--axis", "length", *values, "--duration", "2").exit_code == 0
    result = invoke("--output-dir", str(tmp_path), "mu-extract", str(sweep_dir / "sweep_summary.json"))
    assert result.exit_code == ExitCode.MODEL


def test_mu_extract_rejects_inputs_with_table_options(tmp_path):
    summary = tmp_path / "sweep_summary.json"
    summary.write_text(json.dumps({"axis": "power", "points": []}), encoding="utf-8")
    result = invoke("--output-dir", str(tmp_path), "mu-extract", str(summary), "--detunings", "400")
    assert result.exit_code == ExitCode.USAGE
    assert "detunings" in result.output


def test_mu_extract_model_table(tmp_path):
    result = invoke("--output-dir", str(tmp_path), "--preset", "smf28-datasheet", "mu-extract")
    assert result.exit_code == 0, result.output
    summary = read_summary(tmp_path, "mu_extract")
    assert summary["source"] == "model"
    assert summary["non_monotone"]["11.4"] is True
    assert summary["preset"] == "smf28-datasheet"


def test_bell_reports_both_estimates(tmp_path):
    result = invoke("--output-dir", str(tmp_path), "bell")
    assert result.exit_code == 0, result.output
    summary = read_summary(tmp_path, "bell")
    assert summary["chsh_counts"]["s_value"] == pytest.approx(2.664, abs=0.4)
    assert summary["chsh_visibility"]["s_value"] == pytest.approx(2.664, abs=0.15)
    assert summary["s_from_source_visibility"] == pytest.approx(2.664, abs=1e-3)
    fringes = (tmp_path / "bell_fringes.csv").read_text(encoding="utf-8").splitlines()
    assert len(fringes) == 1 + 4 * 145


def test_bell_from_simulated_source(tmp_path):
    # the configured length is ignored: the source is always the 11.4 m fiber
    args = ("--output-dir", str(tmp_path), "--set", "fiber.length_m=308", "bell", "--from-sim", "--subtract-floor")
    result = invoke(*args)
    assert result.exit_code == 0, result.output
    summary = read_summary(tmp_path, "bell")
    assert summary["source_origin"] == "simulation"
    assert summary["accidentals_subtracted"] is True

    simulated = summary["simulated_source"]
    assert simulated["length_m"] == 11.4
    assert simulated["true_coincidences"] == max(0.0, simulated["c_c"] - simulated["c_a"])
    assert summary["source"]["rate_scale"] == pytest.approx(0.5 * simulated["true_coincidences"])
    assert summary["source"]["accidental_floor"] == pytest.approx(0.25 * simulated["c_a"])


def test_bell_without_simulation_has_no_simulated_source(tmp_path):
    assert invoke("--output-dir", str(tmp_path), "bell", "--step-deg", "10").exit_code == 0
    assert read_summary(tmp_path, "bell")["simulated_source"] is None


def test_calibrate(tmp_path):
    result = invoke("--output-dir", str(tmp_path), "calibrate")
    assert result.exit_code == 0, result.output
    summary = read_summary(tmp_path, "calibrate")
    assert summary["raman_coeff"] == pytest.approx(3.7e-7, rel=0.05)
    assert summary["car_decreases_with_length"] is True


def test_environment_supplies_output_dir_and_workers(tmp_path, monkeypatch):
    monkeypatch.setenv("FIBERPAIRS_OUTPUT_DIR", str(tmp_path / "from-env"))
    monkeypatch.setenv("FIBERPAIRS_WORKERS", "3")
    captured = {}

    def capture(state, verb, options):
        captured["state"] = state

    monkeypatch.setattr("main._run_verb", capture)
    assert invoke("explain").exit_code == 0
    assert captured["state"].output_dir == tmp_path / "from-env"
    assert captured["state"].workers == 3

    assert invoke("--output-dir", str(tmp_path / "flag"), "--workers", "2", "explain").exit_code == 0
    assert captured["state"].output_dir == tmp_path / "flag"
    assert captured["state"].workers == 2


def test_environment_output_dir_receives_summary(tmp_path, monkeypatch):
    monkeypatch.setenv("FIBERPAIRS_OUTPUT_DIR", str(tmp_path))
    assert invoke("explain").exit_code == 0
    assert read_summary(tmp_path, "explain")["verb"] == "explain"
