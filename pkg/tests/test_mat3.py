import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from martnuc.errors import NonInvertible
from martnuc.mat3 import (cofactor, cross, is_rotation, outer, polar_rotation, rank_one_decompose,
                          sym, sym_eigen, sym_eigvals, sym_eigvals_batch, sym_sqrt, unit)

entries = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
mat3 = arrays(np.float64, (3, 3), elements=entries)
vec3 = arrays(np.float64, (3,), elements=entries)
unit_quat = arrays(np.float64, (4,), elements=st.floats(-1, 1)).filter(lambda q: np.linalg.norm(q) > 0.1)


def quat_rotation(q):
    w, x, y, z = q / np.linalg.norm(q)
    return np.array([
        [1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)],
        [2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)],
        [2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)],
    ])


@given(mat3)
def test_eigenvalues_match_lapack(m):
    s = sym(m)
    np.testing.assert_allclose(sym_eigvals(s), np.linalg.eigvalsh(s), atol=1e-10 * (1 + np.abs(s).max()))


@given(mat3)
def test_eigenpairs_are_orthonormal_with_small_residual(m):
    s = sym(m)
    vals, vecs = sym_eigen(s)
    scale = 1 + np.abs(s).max()
    assert np.all(np.diff(vals) >= -1e-12 * scale)
    np.testing.assert_allclose(vecs.T @ vecs, np.eye(3), atol=1e-10)
    assert np.abs(s @ vecs - vecs * vals).max() <= 1e-10 * scale


@given(unit_quat, st.floats(0.5, 2.0), st.floats(0, 1e-7), st.floats(0.5, 2.0))
def test_near_degenerate_spectrum(q, lam, gap, other):
    r = quat_rotation(q)
    s = r @ np.diag([lam, lam + gap, other]) @ r.T
    vals, vecs = sym_eigen(s)
    assert np.abs(s @ vecs - vecs * vals).max() <= 1e-12
    np.testing.assert_allclose(vecs.T @ vecs, np.eye(3), atol=1e-12)


def test_batched_eigenvalues_match_scalar(rng):
    stack = rng.normal(size=(50, 3, 3))
    stack = stack + np.swapaxes(stack, 1, 2)
    batch = sym_eigvals_batch(stack)
    for s, vals in zip(stack, batch):
        np.testing.assert_allclose(vals, sym_eigvals(s), atol=1e-12)


@pytest.mark.parametrize("diag", [(1.0, 1.0, 1.0), (2.0, 2.0, 0.5), (0.0, 0.0, 0.0)])
def test_repeated_eigenvalues(diag):
    vals, vecs = sym_eigen(np.diag(diag))
    np.testing.assert_allclose(vals, sorted(diag), atol=1e-15)
    np.testing.assert_allclose(vecs.T @ vecs, np.eye(3), atol=1e-14)


@given(unit_quat, arrays(np.float64, (3,), elements=st.floats(0.2, 3.0)))
def test_polar_rotation_matches_svd(q, stretches):
    r = quat_rotation(q)
    f = r @ np.diag(stretches)
    w, _, vt = np.linalg.svd(f)
    expected = w @ vt
    got = polar_rotation(f)
    np.testing.assert_allclose(got, expected, atol=1e-10)
    assert is_rotation(got)
    u = got.T @ f
    np.testing.assert_allclose(u, u.T, atol=1e-10)


def test_polar_rotation_rejects_reflections():
    with pytest.raises(NonInvertible):
        polar_rotation(np.diag([1.0, 1.0, -1.0]))
    with pytest.raises(NonInvertible):
        polar_rotation(np.zeros((3, 3)))


@given(vec3, vec3.filter(lambda v: np.linalg.norm(v) > 1e-3))
def test_rank_one_round_trip(a, n):
    m = outer(a, n)
    a2, n2 = rank_one_decompose(m)
    np.testing.assert_allclose(outer(a2, n2), m, atol=1e-9 * (1 + np.abs(m).max()))
    assert np.linalg.norm(n2) == pytest.approx(1.0)
    assert n2[np.argmax(np.abs(n2) > 1e-9)] > 0


def test_rank_one_rejects_rank_two():
    assert rank_one_decompose(np.diag([1.0, 1.0, 0.0])) is None
    a, n = rank_one_decompose(np.zeros((3, 3)))
    np.testing.assert_array_equal(a, 0.0)
    np.testing.assert_array_equal(n, [1.0, 0.0, 0.0])


@given(mat3)
def test_cofactor_identity(m):
    np.testing.assert_allclose(m @ cofactor(m).T, np.linalg.det(m) * np.eye(3),
                               atol=1e-8 * (1 + np.abs(m).max() ** 3))


@given(vec3, vec3)
def test_cross_matches_numpy(u, v):
    np.testing.assert_allclose(cross(u, v), np.cross(u, v), atol=1e-12)


@given(unit_quat, arrays(np.float64, (3,), elements=st.floats(0.0, 4.0)))
def test_sym_sqrt_squares_back(q, vals):
    r = quat_rotation(q)
    s = r @ np.diag(vals) @ r.T
    root = sym_sqrt(s)
    np.testing.assert_allclose(root @ root, s, atol=1e-9)


def test_unit_rejects_zero():
    with pytest.raises(ValueError):
        unit(np.zeros(3))
