import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from trapbudget.errors import ConfigError
from trapbudget.filters import FilterSpec
from trapbudget.noise_budget import (
    AnomalousNoise,
    JohnsonNoise,
    TechnicalNoise,
    budget_report,
    field_noise_psd,
    heating_rate,
    load_noise_config,
    noise_config_from_dict,
)
from trapbudget.species import CA40
from trapbudget.trap_model import bundled_config_path

KB = 1.380649e-23
HBAR = 1.054571817e-34


def test_single_johnson_electrode():
    src = JohnsonNoise(((12.0, 1.0),), 300.0)
    expected = 4 * KB * 300 * 12
    assert field_noise_psd([src], 1e6) == pytest.approx(expected, rel=1e-14)
    assert expected == pytest.approx(1.99e-19, rel=0.005)
    np.testing.assert_allclose(field_noise_psd([src], [1e5, 1e6, 1e7]), expected, rtol=1e-14)


def test_empty_sources():
    assert field_noise_psd([], 2e6) == 0.0


def test_anomalous_power_law():
    src = AnomalousNoise(1.0, 1e6, 2.0)
    assert field_noise_psd([src], 2e6) == pytest.approx(0.25)
    with pytest.raises(ValueError):
        AnomalousNoise(1.0, 1e6, 7.0)


def test_technical_source_filtered():
    filt = FilterSpec("cascaded_rc", 3, 206e3)
    src = TechnicalNoise(4e-16, 1e6, filt)
    assert field_noise_psd([src], 206e3) == pytest.approx(0.5 * 4e-16 * 1e6)
    assert field_noise_psd([TechnicalNoise(4e-16, 1e6)], 5e6) == pytest.approx(4e-10)


def test_heating_rate_direct_arithmetic():
    q, m = CA40.charge, CA40.mass
    oracle = q**2 / (4 * m * HBAR * 2 * math.pi * 1e6) * 1e-12
    assert heating_rate(CA40, 1e6, 1e-12) == pytest.approx(oracle, rel=1e-14)
    assert oracle == pytest.approx(146, abs=0.5)
    assert heating_rate(CA40, 2e6, 0.0) == 0.0


def test_johnson_coupling_inversion():
    # aggregate epsilon^2 that makes 12 ohm at 300 K give 15 quanta/s at 2 MHz
    q, m = CA40.charge, CA40.mass
    prefactor = q**2 / (4 * m * HBAR * 2 * math.pi * 2e6)
    eps_sq = 15 / (prefactor * 4 * KB * 300 * 12)
    assert eps_sq == pytest.approx(1.04e6, rel=0.01)
    cfg = load_noise_config(bundled_config_path("johnson_leads"))
    (src,) = cfg.sources
    bundled_eps_sq = sum(eps**2 for _, eps in src.electrodes)
    assert bundled_eps_sq == pytest.approx(eps_sq, rel=1e-5)
    rate = heating_rate(CA40, 2e6, field_noise_psd(cfg.sources, 2e6))
    assert rate == pytest.approx(15, rel=0.01)


@given(
    amp=st.floats(1e-16, 1e-10),
    psd=st.floats(1e-18, 1e-10),
    f=st.floats(1e5, 1e7),
    k=st.floats(0.1, 10),
)
def test_heating_linear_in_psd_inverse_in_frequency(amp, psd, f, k):
    base = heating_rate(CA40, f, psd)
    assert heating_rate(CA40, f, k * psd) == pytest.approx(k * base, rel=1e-12)
    assert heating_rate(CA40, k * f, psd) == pytest.approx(base / k, rel=1e-12)


_source = st.one_of(
    st.builds(
        JohnsonNoise,
        electrodes=st.lists(st.tuples(st.floats(0, 100), st.floats(0, 1e4)), max_size=5).map(tuple),
        temperature=st.floats(0, 400),
    ),
    st.builds(
        AnomalousNoise,
        amplitude=st.floats(0, 1e-10),
        reference_frequency=st.floats(1e5, 1e7),
        exponent=st.floats(0, 6),
    ),
    st.builds(
        TechnicalNoise,
        white_voltage_psd=st.floats(0, 1e-14),
        coupling=st.floats(0, 1e7),
        filter=st.sampled_from(
            [None, FilterSpec("cascaded_rc", 3, 206e3), FilterSpec("chebyshev1", 6, 1.3e6)]
        ),
    ),
)


@given(a=st.lists(_source, max_size=4), b=st.lists(_source, max_size=4), f=st.floats(1e5, 1e7))
def test_incoherent_additivity(a, b, f):
    whole = field_noise_psd(a + b, f)
    parts = field_noise_psd(a, f) + field_noise_psd(b, f)
    assert whole == pytest.approx(parts, rel=1e-12, abs=0)
    assert whole >= 0


def test_budget_report_columns_sum():
    cfg = load_noise_config(bundled_config_path("dac_rc206k"))
    table = budget_report(cfg.species, np.linspace(2e6, 3e6, 5), cfg.sources)
    assert table.header() == ["frequency_hz", "dac", "lead_johnson", "surface", "total"]
    stacked = sum(table.rates.values())
    np.testing.assert_allclose(table.total, stacked, rtol=0)
    for row in table.rows():
        assert row[-1] == pytest.approx(sum(row[1:-1]), rel=1e-15)


def test_budget_report_johnson_and_zero():
    cfg = load_noise_config(bundled_config_path("johnson_leads"))
    table = budget_report(cfg.species, [2e6], cfg.sources)
    assert table.total[0] == pytest.approx(15, rel=0.01)
    zero = budget_report(CA40, [1e6, 2e6], [JohnsonNoise(((0.0, 1e3),)), AnomalousNoise(0.0, 1e6, 1.0)])
    assert np.all(zero.total == 0)


def test_budget_duplicate_names_kept_apart():
    srcs = [JohnsonNoise(((1.0, 1.0),)), JohnsonNoise(((2.0, 1.0),))]
    table = budget_report(CA40, [1e6], srcs)
    assert len(table.rates) == 2


@pytest.mark.parametrize("name", ["johnson_leads", "battery_rc206k", "dac_rc206k", "dac_cheb1p3m"])
def test_bundled_noise_configs_load(name):
    cfg = load_noise_config(bundled_config_path(name))
    assert cfg.species == CA40
    assert cfg.sweep["start_hz"] > 0


@pytest.mark.parametrize(
    "tree, match",
    [
        ({"sources": "nope"}, "sources"),
        ({"sources": [{"kind": "magic"}]}, "unknown source kind"),
        ({"sources": [{"kind": "johnson"}]}, "electrodes"),
        ({"sources": [{"kind": "anomalous", "amplitude": 1, "reference_frequency": 1e6, "exponent": 9}]}, "exponent"),
        ({"sources": [{"kind": "technical", "white_voltage_psd": 1, "coupling": 1, "filter": {"kind": "rc"}}]}, "filter"),
        ({"species": "Xx-9", "sources": []}, "species"),
    ],
)
def test_noise_config_errors(tree, match):
    with pytest.raises(ConfigError, match=match):
        noise_config_from_dict(tree)
