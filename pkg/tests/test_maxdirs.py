import csv
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from martnuc.errors import AssumptionViolated, MalformedPath
from martnuc.lattice import DEFAULT, LatticeParams, variants
from martnuc.maxdirs import (check_rigidity, classify_sphere, coverage_witness, direction_verdict,
                             fibonacci_sphere, in_M, in_Minv, in_N, in_Ninv, in_UinvSq_Minv,
                             label_directions, normal_verdict, oracle_agreement, oracle_in_M,
                             oracle_in_Minv, oracle_in_N, oracle_in_Ninv)
from martnuc.symmetry import conjugating_rotations

R2 = 1 / math.sqrt(2)
VARIANTS = range(1, 7)


@pytest.mark.parametrize("func,s,e,expected", [
    (in_M, 1, (0, 1, 0), True),
    (in_M, 1, (0, 0, 1), True),
    (in_M, 1, (0, R2, -R2), False),
    (in_Minv, 1, (1, 0, 0), True),
    (in_Minv, 1, (0, 1, 0), False),
    (in_UinvSq_Minv, 1, (1, 0, 0), True),
    (in_UinvSq_Minv, 1, (0, R2, -R2), False),
    (in_N, 1, (1, 0, 0), True),
    (in_N, 1, (0.3, 0.6, 0.6), False),
    (in_Ninv, 1, (0, 0, 1), True),
    (in_Ninv, 1, (1, 0, 0), False),
])
def test_reference_memberships(func, s, e, expected):
    assert func(s, np.array(e, dtype=float)) is expected


@pytest.mark.parametrize("s", VARIANTS)
def test_closed_forms_match_definition_oracles(s):
    pts = fibonacci_sphere(20_000, seed=s)
    report = oracle_agreement(s, pts)
    assert report["mismatches"] == 0
    assert report["checked"] > 19_000


@pytest.mark.parametrize("s", VARIANTS)
def test_scalar_oracles_agree_with_batch(s, rng):
    pts = rng.normal(size=(50, 3))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    batch_m = oracle_in_M(s, pts)
    for p, expected in zip(pts, batch_m):
        assert bool(oracle_in_M(s, p)) == bool(expected)
    v = direction_verdict(s, pts[0])
    if v.margin > 1e-9:
        assert v.consistent


@pytest.mark.parametrize("s", VARIANTS)
def test_normal_sets_match_witness_search(s, rng):
    pts = rng.normal(size=(25, 3))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    u = variants(DEFAULT)[s]
    for n in pts:
        v = normal_verdict(s, n)
        if v.margin <= 1e-6:
            continue
        assert in_N(s, n) == oracle_in_N(s, n)
        pre = n / np.linalg.norm(n)
        pre = np.linalg.solve(u @ u, pre)
        pre /= np.linalg.norm(pre)
        assert in_Ninv(s, pre) == oracle_in_Ninv(s, pre)


@pytest.mark.parametrize("s", VARIANTS)
def test_no_direction_in_both_sets(s):
    labels = label_directions(s, fibonacci_sphere(100_000, seed=3))
    assert not np.any(labels == "BOTH")


@pytest.mark.parametrize("s", VARIANTS)
def test_membership_transports_to_first_variant(s):
    # Q U_s Q^T = U_1 gives |U_1 Q e| = |U_s e|.
    q = conjugating_rotations(s, 1)[0].matrix.astype(float)
    pts = fibonacci_sphere(2000, seed=11)
    moved = pts @ q.T
    np.testing.assert_array_equal(label_directions(s, pts), label_directions(1, moved))


@pytest.mark.parametrize("s", VARIANTS)
def test_coverage_witnesses_fall_outside(s):
    e, n = coverage_witness(s)
    assert not (in_M(s, e) or in_UinvSq_Minv(s, e))
    assert not (in_M(s, -e) or in_UinvSq_Minv(s, -e))
    assert not (in_N(s, n) or in_Ninv(s, _pre(s, n)))
    assert not oracle_in_M(s, e)
    assert not oracle_in_Minv(s, _usq(s, e))
    assert not oracle_in_N(s, n)
    assert not oracle_in_Ninv(s, _pre(s, n))


def _usq(s, e):
    u = variants(DEFAULT)[s]
    f = u @ u @ e
    return f / np.linalg.norm(f)


def _pre(s, n):
    u = variants(DEFAULT)[s]
    f = np.linalg.solve(u @ u, n)
    return f / np.linalg.norm(f)


def test_first_variant_witnesses():
    e, n = coverage_witness(1)
    np.testing.assert_allclose(e, [0, R2, -R2])
    u = variants(DEFAULT)[1]
    ref = u @ u @ (np.array([0.9, 0.5, 0.5]) / np.linalg.norm([0.9, 0.5, 0.5]))
    np.testing.assert_allclose(n, ref / np.linalg.norm(ref))


def test_sphere_populations():
    cloud = classify_sphere(1, count=10_000)
    frac = cloud.fractions()
    assert frac["M"] > 0 and frac["UM"] > 0 and frac["NONE"] > 0
    assert frac["BOTH"] == 0
    assert sum(frac.values()) == pytest.approx(1.0)


def test_sphere_fractions_stable_across_seeds():
    a = classify_sphere(1, count=100_000, seed=1).fractions()
    b = classify_sphere(1, count=100_000, seed=2).fractions()
    for key in a:
        assert abs(a[key] - b[key]) <= 0.02


@pytest.mark.parametrize("sets,forbidden", [("M", {"UM", "BOTH"}), ("UM", {"M", "BOTH"})])
def test_single_set_labelling(sets, forbidden):
    labels = classify_sphere(2, count=2000, sets=sets).labels
    assert not set(labels) & forbidden


def test_empty_cloud():
    cloud = classify_sphere(1, count=0)
    assert cloud.points.shape == (0, 3) and cloud.count == 0
    assert cloud.fractions()["M"] == 0.0


def test_fibonacci_points_are_unit(rng):
    pts = fibonacci_sphere(1000, seed=5)
    np.testing.assert_allclose(np.linalg.norm(pts, axis=1), 1.0, atol=1e-14)
    np.testing.assert_array_equal(fibonacci_sphere(10, seed=4), fibonacci_sphere(10, seed=4))


def test_csv_output(tmp_path):
    path = tmp_path / "cloud.csv"
    cloud = classify_sphere(3, count=100, seed=0)
    cloud.write_csv(path)
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["x", "y", "z", "label"]
    assert len(rows) == 101
    np.testing.assert_array_equal(np.array(rows[1:])[:, :3].astype(float), cloud.points)


def test_predicates_require_assumptions():
    with pytest.raises(AssumptionViolated):
        in_M(1, np.array([1.0, 0, 0]), LatticeParams(1.0, 1.0, 1.0))


# -- rigidity ------------------------------------------------------------------

@given(st.lists(st.floats(0.01, 1.0), min_size=2, max_size=20),
       st.tuples(*[st.floats(-5, 5)] * 3), st.tuples(*[st.floats(-5, 5)] * 3))
def test_straight_constant_speed_path_is_rigid(steps, start, end):
    t = np.concatenate([[0.0], np.cumsum(steps)])
    start, end = np.array(start), np.array(end)
    sig = start + ((t - t[0]) / (t[-1] - t[0]))[:, None] * (end - start)
    assert check_rigidity(list(zip(t, sig)))


@given(st.floats(0.1, 3.0), st.floats(-1, 1).filter(lambda x: abs(x) > 1e-3))
def test_dogleg_is_not_rigid(length, bend):
    path = [(0.0, np.zeros(3)), (0.5, np.array([length / 2, bend, 0.0])), (1.0, np.array([length, 0, 0]))]
    assert not check_rigidity(path)


def test_tiny_noise_is_tolerated(rng):
    t = np.linspace(0, 1, 30)
    sig = np.outer(t, [1.0, 2.0, -1.0]) + 1e-13 * rng.normal(size=(30, 3))
    sig[0], sig[-1] = 0.0, [1.0, 2.0, -1.0]
    assert check_rigidity(list(zip(t, sig)))


def test_speed_change_on_the_chord_is_not_rigid():
    path = [(0.0, np.zeros(3)), (0.5, np.array([0.2, 0, 0])), (1.0, np.array([1.0, 0, 0]))]
    assert not check_rigidity(path)


@pytest.mark.parametrize("path", [
    [(0.0, np.zeros(3)), (1.0, np.ones(3))],
    [(0.0, np.zeros(3)), (0.0, np.ones(3)), (1.0, np.ones(3))],
])
def test_malformed_paths(path):
    with pytest.raises(MalformedPath):
        check_rigidity(path)
