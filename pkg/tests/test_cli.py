import csv
import io
import json

import pytest

from trapbudget.cli import POWER_COLUMNS, RunRequest, Sweep, main, resolve_config, run
from trapbudget.errors import ConfigError


def invoke(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_power_table(capsys):
    code, out, _ = invoke(capsys, "power", "--config", "enchilada_solid", "--drive", "300V@50MHz")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == POWER_COLUMNS
    assert float(rows[0]["total_w"]) * 1e3 == pytest.approx(101.6, rel=0.02)
    assert float(rows[0]["frequency_hz"]) == 50e6


def test_power_sweep_json(capsys):
    code, out, _ = invoke(
        capsys, "power", "--config", "enchilada_perforated", "--sweep", "10MHz:100MHz:4", "--format", "json"
    )
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [r["frequency_hz"] for r in rows] == [10e6, 40e6, 70e6, 100e6]
    assert rows[0]["total_w"] < rows[-1]["total_w"]


def test_ladder_convergence(capsys):
    code, out, _ = invoke(capsys, "ladder", "--segments", "1,10,100,1000")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    errors = [float(r["relative_error"]) for r in rows]
    assert all(a > b > 0 for a, b in zip(errors, errors[1:]))
    assert errors[-1] < 0.005


def test_scale(capsys):
    code, out, _ = invoke(capsys, "scale", "--alpha-o", "1", "--alpha-d", "0", "--sites", "8", "--launches", "1,2,3")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [(r["n_launches"], float(r["total_w"])) for r in rows] == [("1", 512.0), ("2", 128.0)]


def test_pseudo_and_clip(capsys):
    code, out, _ = invoke(capsys, "pseudo")
    result = json.loads(out)
    assert code == 0 and set(result) == {"radial_hz", "depth_ev", "mathieu_q", "stable"}
    assert result["radial_hz"] == pytest.approx(5.75e6, abs=1e4)
    code, out, _ = invoke(capsys, "clip", "--wavelength", "532nm", "--waist", "5um")
    result = json.loads(out)
    assert code == 0 and set(result) == {"na_beam", "na_max", "clip_fraction", "clip_db"}
    assert result["clip_db"] == pytest.approx(-67, abs=0.5)


def test_heating_formats(capsys, tmp_path):
    code, out, _ = invoke(capsys, "heating", "--sweep", "2MHz:2MHz:1")
    assert code == 0
    row = next(csv.DictReader(io.StringIO(out)))
    assert float(row["total"]) == pytest.approx(15, rel=0.01)
    svg = tmp_path / "h.svg"
    code, _, _ = invoke(capsys, "heating", "--config", "dac_cheb1p3m", "--format", "svg", "-o", str(svg))
    assert code == 0
    text = svg.read_text()
    assert text.startswith("<svg") and "polyline" in text


def test_fit(capsys, tmp_path):
    data = tmp_path / "d.csv"
    data.write_text("frequency_hz,rate_quanta_per_s,sigma\n2e6,100,5\n2.5e6,64,4\n3e6,44.444444444444,2\n")
    code, out, _ = invoke(capsys, "fit", "--data", str(data))
    assert code == 0
    assert json.loads(out)["exponent"] == pytest.approx(-2.0, abs=1e-9)
    code, out, _ = invoke(capsys, "fit", "--data", str(data), "--format", "svg")
    assert code == 0 and "<circle" in out


def test_fit_empty_file_exit_2(capsys, tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("frequency_hz,rate_quanta_per_s\n")
    code, out, err = invoke(capsys, "fit", "--data", str(empty))
    assert code == 2
    assert out == ""
    payload = json.loads(err)
    assert payload["error"] == "config" and "at least 3 points" in payload["message"]


def test_wiring(capsys):
    code, out, _ = invoke(capsys, "wiring", "--active", "junction_1,junction_6")
    result = json.loads(out)
    assert code == 0
    assert (result["signals"], result["pass"], result["margin"]) == (75, True, 25)
    assert len(result["conflicts"]) == 35
    code, out, _ = invoke(capsys, "wiring", "--budget", "74")
    assert json.loads(out)["pass"] is False


def test_error_exit_codes(capsys, tmp_path):
    assert invoke(capsys, "power", "--config", "no_such_trap")[0] == 2
    assert invoke(capsys, "power", "--drive", "banana")[0] == 2
    assert invoke(capsys, "wiring", "--active", "nowhere")[0] == 2
    bad = tmp_path / "bad.yaml"
    bad.write_text("layers: [\n")
    assert invoke(capsys, "power", "--config", str(bad))[0] == 2
    missing_dir = tmp_path / "nope" / "out.csv"
    code, _, err = invoke(capsys, "power", "-o", str(missing_dir))
    assert code == 4 and json.loads(err)["error"] == "io"


def test_numerical_failure_exit_3(capsys, monkeypatch):
    from trapbudget import cli
    from trapbudget.errors import NumericalError

    def boom(*args, **kwargs):
        raise NumericalError("overflow")

    monkeypatch.setattr(cli, "ladder_power_oracle", boom)
    code, _, err = invoke(capsys, "ladder")
    assert code == 3 and json.loads(err)["error"] == "numerical"


def test_byte_identical_reruns(capsys, tmp_path):
    for argv in (
        ["power", "--sweep", "1MHz:100MHz:7:log"],
        ["ladder"],
        ["heating", "--config", "battery_rc206k", "--format", "json"],
        ["heating", "--config", "dac_rc206k", "--format", "svg"],
        ["wiring", "--active", "side_1,side_2"],
    ):
        a, b = tmp_path / "a.out", tmp_path / "b.out"
        assert main([*argv, "-o", str(a)]) == 0
        assert main([*argv, "-o", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()
        meta = json.loads((tmp_path / "a.out.meta.json").read_text())
        assert meta["subcommand"] == argv[0]
    capsys.readouterr()


def test_version_lists_checksums(capsys):
    code, out, _ = invoke(capsys, "--version")
    assert code == 0
    assert "enchilada_solid.yaml  sha256:" in out
    assert out.count("sha256:") == 7


def test_config_dir_env(monkeypatch, tmp_path, capsys):
    (tmp_path / "mytrap.yaml").write_text(resolve_config("enchilada_perforated").read_text())
    monkeypatch.setenv("TRAPBUDGET_CONFIG_DIR", str(tmp_path))
    assert resolve_config("mytrap") == tmp_path / "mytrap.yaml"
    code, out, _ = invoke(capsys, "power", "--config", "mytrap")
    assert code == 0
    assert float(next(csv.DictReader(io.StringIO(out)))["total_w"]) * 1e3 == pytest.approx(38.7, rel=0.02)


def test_sweep_parsing():
    s = Sweep.parse("1MHz:5MHz:5:log")
    assert s.log_spacing and s.frequencies()[2] == pytest.approx(5**0.5 * 1e6)
    with pytest.raises(ConfigError):
        Sweep.parse("5MHz:1MHz:3")
    with pytest.raises(ConfigError):
        Sweep.parse("1MHz:5MHz:0")
    with pytest.raises(ConfigError):
        Sweep.parse("1MHz")


def test_run_request_rejects_bad_format(capsys):
    code = run(RunRequest("pseudo", format="csv"))
    assert code == 2
    assert "supports json" in capsys.readouterr().err
