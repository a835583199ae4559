import numpy as np
import pytest
from hypothesis import given, strategies as st

from martnuc.lattice import (DEFAULT, PRESETS, EnergyDensity, LatticeParams, check_assumptions,
                             load_params, variants)
from martnuc.tables import A_MINUS_B, COF_NORM, NORM_CHECK


@given(st.floats(0.8, 1.2), st.floats(0.8, 1.2), st.floats(0.8, 1.2))
def test_variants_are_spd_with_lattice_stretches(a, b, g):
    vs = variants(LatticeParams(a, b, g))
    for s in range(1, 7):
        u = vs[s]
        np.testing.assert_array_equal(u, u.T)
        np.testing.assert_allclose(np.sort(np.linalg.eigvalsh(u)), np.sort([a, b, g]), atol=1e-12)
        assert np.linalg.det(u) == pytest.approx(a * b * g, rel=1e-12)


def test_variant_indexing_is_one_based():
    vs = variants(DEFAULT)
    assert vs[1][0, 0] == DEFAULT.beta
    np.testing.assert_array_equal(vs.austenite, np.eye(3))
    for bad in (0, 7):
        with pytest.raises(IndexError):
            vs[bad]


def test_variant_matrices_are_read_only():
    with pytest.raises(ValueError):
        variants(DEFAULT)[1][0, 0] = 1.0


def test_preset_assumption_values():
    rep = check_assumptions(DEFAULT)
    assert rep.all_hold and rep.failed() == []
    assert rep.norm_check == pytest.approx(NORM_CHECK, abs=1e-4)
    assert rep.cof_norm == pytest.approx(COF_NORM, abs=1e-4)
    assert rep.a_minus_b == pytest.approx(A_MINUS_B, abs=1e-4)
    assert rep.det_le_one and rep.lam_max_cof_ge_one
    assert rep.det_u == pytest.approx(np.prod(DEFAULT.as_tuple()))
    assert rep.boundary == ()


def test_identity_lattice_fails_assumptions():
    rep = check_assumptions(LatticeParams(1.0, 1.0, 1.0))
    assert not rep.all_hold
    assert "A1" in rep.failed()


def test_boundary_values_are_flagged():
    rep = check_assumptions(LatticeParams(1.06, 1.0, 1.02))
    assert "A1:beta<=1" in rep.boundary
    assert rep.a1


@pytest.mark.parametrize("bad", [(0.0, 1, 1), (-1, 1, 1), (1, float("nan"), 1), (1, 1, float("inf"))])
def test_invalid_stretches_rejected(bad):
    with pytest.raises(ValueError):
        LatticeParams(*bad)


def test_load_params_round_trip(tmp_path):
    path = tmp_path / "p.toml"
    path.write_text("# CuAlNi\n[lattice]\nalpha = 1.06372\nbeta = 0.91542\ngamma = 1.02368\n")
    assert load_params(path) == PRESETS["cualni-seiner"]
    assert load_params(path).is_preset()


def test_load_params_missing_key(tmp_path):
    path = tmp_path / "p.txt"
    path.write_text("alpha = 1.1\nbeta = 0.9\n")
    with pytest.raises(ValueError, match="gamma"):
        load_params(path)


def test_energy_density_depth_must_be_positive():
    assert EnergyDensity().depth == 1.0
    for depth in (0.0, -1.0):
        with pytest.raises(ValueError):
            EnergyDensity(depth)
