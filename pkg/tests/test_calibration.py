"""Back-solve the bundled electrical inputs from the reference power table.

Each table entry (mW, 300 V peak at 50 MHz) is inverted on its own with
plain algebra; the bundled configs must carry the resulting values.
"""

import math

import pytest

V = 300.0
W = 2 * math.pi * 50e6
TAN_D = 1e-3
PF = 1e-12

TABLE = {
    "solid": {"ohmic_trap": 9.7, "ohmic_lead": 13.4, "dielectric_trap": 59.1, "dielectric_lead": 19.4},
    "perforated": {"ohmic_trap": 1.9, "ohmic_lead": 4.5, "dielectric_trap": 12.9, "dielectric_lead": 19.4},
}
C_TRAP = {"solid": 6.5 * PF - 1.4 * PF, "perforated": 2.3 * PF}
C_TOTAL = {"solid": 6.5 * PF, "perforated": 3.7 * PF}


def r_distributed(p_mw, c):
    return 6 * p_mw * 1e-3 / (V**2 * W**2 * c**2)


def r_lumped(p_mw, c):
    return 2 * p_mw * 1e-3 / (V**2 * W**2 * c**2)


def c_oxide(p_mw):
    return 2 * p_mw * 1e-3 / (V**2 * W * TAN_D)


def test_per_column_resistances():
    assert r_distributed(TABLE["perforated"]["ohmic_trap"], C_TRAP["perforated"]) == pytest.approx(0.2426, abs=1e-4)
    assert r_distributed(TABLE["solid"]["ohmic_trap"], C_TRAP["solid"]) == pytest.approx(0.2519, abs=1e-4)
    assert r_lumped(TABLE["perforated"]["ohmic_lead"], C_TOTAL["perforated"]) == pytest.approx(0.07401, abs=1e-5)
    assert r_lumped(TABLE["solid"]["ohmic_lead"], C_TOTAL["solid"]) == pytest.approx(0.07141, abs=1e-5)


def test_bundled_resistances_are_geometric_means(solid, perforated):
    r_trap = math.sqrt(
        r_distributed(TABLE["solid"]["ohmic_trap"], C_TRAP["solid"])
        * r_distributed(TABLE["perforated"]["ohmic_trap"], C_TRAP["perforated"])
    )
    r_lead = math.sqrt(
        r_lumped(TABLE["solid"]["ohmic_lead"], C_TOTAL["solid"])
        * r_lumped(TABLE["perforated"]["ohmic_lead"], C_TOTAL["perforated"])
    )
    for trap in (solid, perforated):
        assert trap.rf_model.r_trap == pytest.approx(r_trap, rel=2e-4)
        assert trap.rf_model.r_lead == pytest.approx(r_lead, rel=2e-4)


def test_bundled_oxide_capacitances(solid, perforated):
    assert solid.rf_model.c_ox_trap == pytest.approx(c_oxide(59.1), rel=1e-4)
    assert perforated.rf_model.c_ox_trap == pytest.approx(c_oxide(12.9), rel=1e-4)
    assert solid.rf_model.c_ox_lead == pytest.approx(c_oxide(19.4), rel=1e-4)
    assert perforated.rf_model.c_ox_lead == solid.rf_model.c_ox_lead
    assert c_oxide(59.1) / PF == pytest.approx(4.18, abs=0.005)
    assert c_oxide(19.4) / PF == pytest.approx(1.37, abs=0.005)


def test_perforated_oxide_ratio_near_pillar_fraction():
    ratio = c_oxide(12.9) / c_oxide(59.1)
    assert ratio == pytest.approx(0.218, abs=0.001)
    assert abs(ratio - 0.2) < 0.02
