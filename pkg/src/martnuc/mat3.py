"""Small fixed-size linear algebra on 3-vectors and 3x3 matrices.

Vectors and matrices are plain ``numpy`` arrays of shape ``(3,)`` and
``(3, 3)``.  The symmetric eigen-solver is closed form (trigonometric roots
of the characteristic cubic) so results do not depend on LAPACK.
"""

from __future__ import annotations

import math

import numpy as np

from .constants import EPS_DET, EPS_RANK
from .errors import NonInvertible

Vector3 = np.ndarray
Matrix3 = np.ndarray

I3 = np.eye(3)


def unit(v) -> Vector3:
    v = np.asarray(v, dtype=float)
    nrm = np.linalg.norm(v)
    if nrm == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return v / nrm


def outer(a, n) -> Matrix3:
    return np.outer(np.asarray(a, dtype=float), np.asarray(n, dtype=float))


def sym(m) -> Matrix3:
    m = np.asarray(m, dtype=float)
    return 0.5 * (m + m.T)


def cofactor(m) -> Matrix3:
    """Matrix of signed 2x2 minors, so that ``m @ cofactor(m).T == det(m) * I``."""
    m = np.asarray(m, dtype=float)
    c = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != i]
            s = [k for k in range(3) if k != j]
            minor = m[r[0], s[0]] * m[r[1], s[1]] - m[r[0], s[1]] * m[r[1], s[0]]
            c[i, j] = (-1) ** (i + j) * minor
    return c


def cross(u, v) -> Vector3:
    return np.array([u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]])


def _null_vector(rows: np.ndarray) -> Vector3:
    # Largest cross product among row pairs of a rank-2 matrix spans its kernel.
    crosses = [cross(rows[0], rows[1]), cross(rows[0], rows[2]), cross(rows[1], rows[2])]
    norms = [np.dot(c, c) for c in crosses]
    k = int(np.argmax(norms))
    if norms[k] == 0.0:
        return None
    return crosses[k] / math.sqrt(norms[k])


def _orthonormal_complement(w: Vector3) -> tuple[Vector3, Vector3]:
    if abs(w[0]) > abs(w[1]):
        u = np.array([-w[2], 0.0, w[0]]) / math.hypot(w[0], w[2])
    else:
        u = np.array([0.0, w[2], -w[1]]) / math.hypot(w[1], w[2])
    return u, cross(w, u)


def det3(m) -> float:
    return float(m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
                 - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
                 + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0]))


def _cubic_roots(b: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a traceless symmetric ``b`` scaled to O(1)."""
    det_b = det3(b)
    half_det = min(max(0.5 * det_b, -1.0), 1.0)
    phi = math.acos(half_det) / 3.0
    roots = np.array([2.0 * math.cos(phi + 2.0 * math.pi / 3.0),
                      2.0 * math.cos(phi + 4.0 * math.pi / 3.0),
                      2.0 * math.cos(phi)])
    # One Newton step on beta^3 - 3 beta - det(b).
    for i, r in enumerate(roots):
        slope = 3.0 * r * r - 3.0
        if abs(slope) > 1e-8:
            roots[i] = r - (r ** 3 - 3.0 * r - det_b) / slope
    return np.sort(roots)


def sym_eigvals(s) -> np.ndarray:
    """Ascending eigenvalues only (same closed form as :func:`sym_eigen`)."""
    a = sym(s)
    scale = np.max(np.abs(a))
    if scale == 0.0:
        return np.zeros(3)
    a = a / scale
    q = np.trace(a) / 3.0
    shifted = a - q * I3
    p2 = np.sum(shifted * shifted) / 6.0
    if p2 < 1e-30:
        return np.full(3, q * scale)
    p = math.sqrt(p2)
    beta = _cubic_roots(shifted / p)
    # Near a double root the trigonometric form is only sqrt(eps) accurate.
    if np.min(np.diff(beta)) < 1e-4:
        return sym_eigen(s)[0]
    return (q + p * beta) * scale


def sym_eigen(s) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a symmetric 3x3 matrix.

    Returns ``(values, vectors)`` with ascending eigenvalues and the
    eigenvectors as the *columns* of an orthonormal matrix.
    """
    a = sym(s)
    scale = np.max(np.abs(a))
    if scale == 0.0:
        return np.zeros(3), I3.copy()
    a = a / scale
    q = np.trace(a) / 3.0
    shifted = a - q * I3
    p2 = np.sum(shifted * shifted) / 6.0
    if p2 < 1e-30:
        return np.full(3, q * scale), I3.copy()
    p = math.sqrt(p2)
    beta = _cubic_roots(shifted / p)

    # Solve for the eigenvector of the better-separated extreme root first.
    first, second, third = (2, 1, 0) if beta[2] - beta[1] >= beta[1] - beta[0] else (0, 1, 2)
    vecs = np.zeros((3, 3))
    w0 = _null_vector(shifted - p * beta[first] * I3)
    if w0 is None:
        w0 = np.array([1.0, 0.0, 0.0])
    vecs[:, first] = w0

    # Restrict to the plane orthogonal to w0; a Jacobi rotation diagonalizes
    # the projected 2x2 block exactly, even for nearly equal eigenvalues.
    u, v = _orthonormal_complement(w0)
    muu, muv, mvv = u @ shifted @ u, u @ shifted @ v, v @ shifted @ v
    theta = 0.5 * math.atan2(2.0 * muv, muu - mvv)
    c, s_ = math.cos(theta), math.sin(theta)
    w1 = c * u + s_ * v
    w2 = -s_ * u + c * v
    vecs[:, second] = w1
    vecs[:, third] = w2

    # Rayleigh quotients give eigenvalues consistent with the returned basis.
    sa = sym(s)
    values = np.array([vecs[:, i] @ sa @ vecs[:, i] for i in range(3)])
    order = np.argsort(values, kind="stable")
    return values[order], vecs[:, order]


def sym_eigvals_batch(s: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a stack ``(..., 3, 3)`` of symmetric matrices.

    Accuracy degrades to about ``sqrt(eps)`` relative near repeated
    eigenvalues; use :func:`sym_eigvals` there.
    """
    a00, a11, a22 = s[..., 0, 0], s[..., 1, 1], s[..., 2, 2]
    a01 = 0.5 * (s[..., 0, 1] + s[..., 1, 0])
    a02 = 0.5 * (s[..., 0, 2] + s[..., 2, 0])
    a12 = 0.5 * (s[..., 1, 2] + s[..., 2, 1])
    q = (a00 + a11 + a22) / 3.0
    b00, b11, b22 = a00 - q, a11 - q, a22 - q
    p2 = (b00 * b00 + b11 * b11 + b22 * b22 + 2.0 * (a01 * a01 + a02 * a02 + a12 * a12)) / 6.0
    p = np.sqrt(p2)
    det_b = (b00 * (b11 * b22 - a12 * a12) - a01 * (a01 * b22 - a12 * a02)
             + a02 * (a01 * a12 - b11 * a02))
    p3 = np.where(p > 0, p * p2, 1.0)
    phi = np.arccos(np.clip(0.5 * det_b / p3, -1.0, 1.0)) / 3.0
    lo = q + 2.0 * p * np.cos(phi + 2.0 * np.pi / 3.0)
    hi = q + 2.0 * p * np.cos(phi)
    mid = 3.0 * q - lo - hi
    return np.stack([lo, mid, hi], axis=-1)


def sym_sqrt(s) -> Matrix3:
    values, vecs = sym_eigen(s)
    return (vecs * np.sqrt(np.clip(values, 0.0, None))) @ vecs.T


def polar_rotation(f) -> Matrix3:
    """Rotation factor ``R`` of ``F = R U`` with ``U`` symmetric positive definite."""
    f = np.asarray(f, dtype=float)
    det = np.linalg.det(f)
    if det <= EPS_DET:
        raise NonInvertible(f"det F = {det:.3e} is not positive")
    values, vecs = sym_eigen(f.T @ f)
    u_inv = (vecs / np.sqrt(values)) @ vecs.T
    r = f @ u_inv
    # Newton iterations for the orthogonal factor remove residual round-off.
    for _ in range(2):
        r = 0.5 * (r + np.linalg.inv(r).T)
    return r


def rank_one_decompose(m) -> tuple[Vector3, Vector3] | None:
    """Factor ``m = a (x) n`` with unit ``n``, or return ``None`` if rank > 1.

    Sign convention: the first component of ``n`` with magnitude above
    1e-9 is positive; ``a`` absorbs the sign.
    """
    m = np.asarray(m, dtype=float)
    norm = np.linalg.norm(m)
    if norm == 0.0:
        return np.zeros(3), np.array([1.0, 0.0, 0.0])
    w, sv, vt = np.linalg.svd(m)
    if sv[1] > EPS_RANK * norm:
        return None
    n = vt[0]
    a = sv[0] * w[:, 0]
    lead = n[np.argmax(np.abs(n) > 1e-9)]
    if lead < 0:
        n, a = -n, -a
    return a, n


def is_rotation(r, tol: float = 1e-10) -> bool:
    r = np.asarray(r, dtype=float)
    return bool(np.linalg.norm(r.T @ r - I3) <= tol and np.linalg.det(r) > 0)
