"""Maximal directions of the variant wells and the normal sets built from them.

``M_s``: unit ``e`` with ``|U_s e| = max(|U_1 e|, ..., |U_6 e|, 1)``.
``M_s^-1``: unit ``e`` with ``|cof U_s e|`` strictly above every other
``|cof U_i e|`` and 1, together with the top eigenvector of ``cof U_s``.
``N_s``: normals orthogonal to some element of ``M_s`` (likewise ``N_s^-1``).

Each variant has a distinguished axis ``k`` (the ``beta`` axis of
``U_s``) and a pair ``(i, j)`` carrying the off-diagonal stretch.  The
closed forms below are written in those indices with the sign
``(-1)^(s-1)``.  Predicates are evaluated exactly; ``margin`` reports the
smallest slack among the inequalities involved so callers can set aside
points on set boundaries.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .constants import EPS_SET
from .errors import AssumptionViolated, MalformedPath
from .lattice import DEFAULT, LatticeParams, check_assumptions, variants
from .mat3 import cofactor, sym_eigen, unit

# s -> (k, i, j): distinguished axis and the coupled pair.
_AXES = {1: (0, 1, 2), 2: (0, 1, 2), 3: (1, 0, 2), 4: (1, 0, 2), 5: (2, 0, 1), 6: (2, 0, 1)}

LABELS = ("M", "UM", "BOTH", "NONE")


def _sign(s: int) -> float:
    return 1.0 if s % 2 == 1 else -1.0


@lru_cache(maxsize=64)
def _require(params: LatticeParams, need: str) -> None:
    rep = check_assumptions(params)
    flags = {"1": rep.a1, "2": rep.a2, "3": rep.a3, "4": rep.a4}
    missing = [f"A{c}" for c in need if not flags[c]]
    if missing:
        raise AssumptionViolated(f"lattice parameters violate {', '.join(missing)}")


def _split(s: int, e: np.ndarray):
    if s not in _AXES:
        raise ValueError(f"variant index {s} outside 1..6")
    k, i, j = _AXES[s]
    e = np.asarray(e, dtype=float)
    return e[..., k], e[..., i], e[..., j]


# -- closed forms (vectorized over leading axes) ---------------------------

def _m_mask(s, e):
    ek, ei, ej = _split(s, e)
    return (_sign(s) * ei * ej >= 0) & (np.abs(ek) <= np.minimum(np.abs(ei), np.abs(ej)))


def _m_margin(s, e):
    ek, ei, ej = _split(s, e)
    return np.minimum(np.abs(ei * ej), np.abs(np.abs(ek) - np.minimum(np.abs(ei), np.abs(ej))))


def _axis_point(s, e):
    ek, ei, ej = _split(s, e)
    return (np.abs(ei) <= EPS_SET) & (np.abs(ej) <= EPS_SET)


def _minv_mask(s, e):
    ek, ei, ej = _split(s, e)
    strict = (_sign(s) * ei * ej < 0) & (np.abs(ek) > np.maximum(np.abs(ei), np.abs(ej)))
    return strict | _axis_point(s, e)


def _minv_margin(s, e):
    ek, ei, ej = _split(s, e)
    return np.minimum(np.abs(ei * ej), np.abs(np.abs(ek) - np.maximum(np.abs(ei), np.abs(ej))))


def _usq_image(s, e, params):
    u = variants(params)[s]
    f = np.asarray(e, dtype=float) @ (u @ u).T
    return f / np.linalg.norm(f, axis=-1, keepdims=True)


def _n_mask(s, n):
    nk, ni, nj = _split(s, n)
    return (_sign(s) * ni * nj <= 0) | (np.abs(nk) >= np.abs(ni) + np.abs(nj))


def _ninv_mask(s, n):
    nk, ni, nj = _split(s, n)
    prod = _sign(s) * ni * nj
    b1 = (prod <= 0) & (np.abs(nk) < np.abs(ni) + np.abs(nj))
    b2 = (prod >= 0) & (np.abs(nk) < np.maximum(np.abs(ni), np.abs(nj)))
    return b1 | b2 | (nk == 0)


def _n_margin(s, n):
    nk, ni, nj = _split(s, n)
    return np.minimum.reduce([
        np.abs(ni * nj),
        np.abs(np.abs(nk) - np.abs(ni) - np.abs(nj)),
        np.abs(np.abs(nk) - np.maximum(np.abs(ni), np.abs(nj))),
        np.abs(nk),
    ])


def _scalar(mask) -> bool:
    return bool(np.asarray(mask).item())


def in_M(s: int, e, params: LatticeParams = DEFAULT) -> bool:
    _require(params, "12")
    return _scalar(_m_mask(s, e))


def in_Minv(s: int, e, params: LatticeParams = DEFAULT) -> bool:
    _require(params, "134")
    return _scalar(_minv_mask(s, e))


def in_UinvSq_Minv(s: int, e, params: LatticeParams = DEFAULT) -> bool:
    """Whether ``U_s^2 e / |U_s^2 e|`` lies in ``M_s^-1``."""
    _require(params, "134")
    return _scalar(_minv_mask(s, _usq_image(s, e, params)))


def in_N(s: int, n, params: LatticeParams = DEFAULT) -> bool:
    _require(params, "12")
    return _scalar(_n_mask(s, n))


def in_Ninv(s: int, n, params: LatticeParams = DEFAULT) -> bool:
    _require(params, "134")
    return _scalar(_ninv_mask(s, n))


# -- brute-force oracles straight from the definitions ----------------------

@lru_cache(maxsize=64)
def _well_stacks(params: LatticeParams) -> tuple[np.ndarray, np.ndarray, tuple[np.ndarray, ...]]:
    us = np.stack(variants(params).u)
    cofs = np.stack([cofactor(u) for u in us])
    tops = tuple(sym_eigen(c)[1][:, 2] for c in cofs)
    return us, cofs, tops


def _dominance(stack: np.ndarray, s: int, e) -> np.ndarray:
    e = np.asarray(e, dtype=float)
    sq = np.sum(np.einsum("kab,...b->...ka", stack, e) ** 2, axis=-1)
    others = np.delete(sq, s - 1, axis=-1)
    return sq[..., s - 1] - np.maximum(others.max(axis=-1), 1.0)


def m_score(s: int, e, params: LatticeParams = DEFAULT) -> np.ndarray:
    """``|U_s e|^2 - max(|U_i e|^2 over i != s, 1)``; ``e`` is in ``M_s`` iff >= 0."""
    return _dominance(_well_stacks(params)[0], s, e)


def minv_score(s: int, e, params: LatticeParams = DEFAULT) -> np.ndarray:
    """Cofactor analogue of :func:`m_score`; strict positivity is required."""
    return _dominance(_well_stacks(params)[1], s, e)


def top_cofactor_axis(s: int, params: LatticeParams = DEFAULT) -> np.ndarray:
    return _well_stacks(params)[2][s - 1]


def oracle_in_M(s: int, e, params: LatticeParams = DEFAULT) -> np.ndarray:
    return m_score(s, e, params) >= 0.0


def oracle_in_Minv(s: int, e, params: LatticeParams = DEFAULT) -> np.ndarray:
    e = np.asarray(e, dtype=float)
    e_max = top_cofactor_axis(s, params)
    on_axis = np.abs(np.abs(e @ e_max) - 1.0) <= EPS_SET
    return (minv_score(s, e, params) > 0.0) | on_axis


def _circle_max(score, n, angles: int, keep: int = 4, passes: int = 12) -> float:
    """Maximize ``score`` over the great circle orthogonal to ``n``.

    A uniform sweep of ``angles`` points is followed by local zooming on the
    ``keep`` best samples (each pass resamples a shrinking window).
    """
    n = unit(n)
    helper = np.eye(3)[np.argmin(np.abs(n))]
    u = unit(np.cross(n, helper))
    v = np.cross(n, u)
    at = lambda th: np.cos(th)[..., None] * u + np.sin(th)[..., None] * v  # noqa: E731
    theta = np.linspace(0.0, np.pi, angles, endpoint=False)
    vals = score(at(theta))
    centers = theta[np.argsort(vals)[-keep:]]
    best = float(vals.max())
    width = np.pi / angles
    offsets = np.linspace(-1.0, 1.0, 21)
    for _ in range(passes):
        grid = centers[:, None] + width * offsets
        local = score(at(grid))
        best = max(best, float(local.max()))
        centers = grid[np.arange(keep), np.argmax(local, axis=1)]
        width *= 0.2
    return best


def oracle_in_N(s: int, n, params: LatticeParams = DEFAULT, angles: int = 10_000) -> bool:
    """Witness search: is some element of ``M_s`` orthogonal to ``n``?"""
    return _circle_max(lambda e: m_score(s, e, params), n, angles) >= -1e-13


def oracle_in_Ninv(s: int, n, params: LatticeParams = DEFAULT, angles: int = 10_000) -> bool:
    n = unit(n)
    if abs(n @ top_cofactor_axis(s, params)) <= EPS_SET:
        return True
    return _circle_max(lambda e: minv_score(s, e, params), n, angles) > 0.0


# -- verdicts ---------------------------------------------------------------

@dataclass(frozen=True)
class DirectionVerdict:
    in_M: bool
    in_UinvSqMinv: bool
    in_M_oracle: bool
    in_Minv_oracle_preimage: bool
    margin: float

    @property
    def consistent(self) -> bool:
        return self.in_M == self.in_M_oracle and self.in_UinvSqMinv == self.in_Minv_oracle_preimage


@dataclass(frozen=True)
class NormalVerdict:
    in_N: bool
    in_UsqNinv: bool
    margin: float


def direction_verdict(s: int, e, params: LatticeParams = DEFAULT) -> DirectionVerdict:
    _require(params, "1234")
    e = unit(e)
    f = _usq_image(s, e, params)
    return DirectionVerdict(
        in_M=_scalar(_m_mask(s, e)),
        in_UinvSqMinv=_scalar(_minv_mask(s, f)),
        in_M_oracle=_scalar(oracle_in_M(s, e, params)),
        in_Minv_oracle_preimage=_scalar(oracle_in_Minv(s, f, params)),
        margin=float(min(_m_margin(s, e), _minv_margin(s, f))),
    )


def normal_verdict(s: int, n, params: LatticeParams = DEFAULT) -> NormalVerdict:
    """Membership of ``n`` in ``N_s`` and in ``U_s^2 N_s^-1``."""
    _require(params, "1234")
    n = unit(n)
    u = variants(params)[s]
    pre = unit(np.linalg.solve(u @ u, n))
    return NormalVerdict(
        in_N=_scalar(_n_mask(s, n)),
        in_UsqNinv=_scalar(_ninv_mask(s, pre)),
        margin=float(min(_n_margin(s, n), _n_margin(s, pre))),
    )


def coverage_witness(s: int, params: LatticeParams = DEFAULT) -> tuple[np.ndarray, np.ndarray]:
    """A direction outside ``M_s u U_s^-2 M_s^-1`` and a normal outside ``N_s u U_s^2 N_s^-1``.

    The direction is the coupled-pair diagonal with the sign that violates
    ``M_s``; the normal is ``U_s^2 n`` for ``n`` with ``n_i n_j`` of the
    wrong sign and ``max(|n_i|, |n_j|) <= |n_k| < |n_i| + |n_j|``.
    """
    k, i, j = _AXES[s]
    e = np.zeros(3)
    e[i], e[j] = 1.0, -_sign(s)
    n = np.zeros(3)
    n[k], n[i], n[j] = 0.9, 0.5, 0.5 * _sign(s)
    u = variants(params)[s]
    return unit(e), unit(u @ u @ unit(n))


# -- sphere sampling ---------------------------------------------------------

def _random_rotation(rng: np.random.Generator) -> np.ndarray:
    q = rng.normal(size=4)
    w, x, y, z = q / np.linalg.norm(q)
    return np.array([
        [1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)],
        [2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)],
        [2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)],
    ])


def fibonacci_sphere(count: int, seed: int | None = None) -> np.ndarray:
    """Fibonacci lattice on the unit sphere, rotated rigidly when ``seed`` is given."""
    if count <= 0:
        return np.zeros((0, 3))
    i = np.arange(count) + 0.5
    z = 1.0 - 2.0 * i / count
    r = np.sqrt(1.0 - z * z)
    phi = np.pi * (3.0 - math.sqrt(5.0)) * i
    pts = np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)
    if seed is not None:
        pts = pts @ _random_rotation(np.random.default_rng(seed)).T
    return pts


@dataclass(frozen=True)
class SpherePointCloud:
    points: np.ndarray
    labels: np.ndarray
    count: int
    variant: int
    seed: int | None

    def fractions(self) -> dict[str, float]:
        if self.count == 0:
            return {lab: 0.0 for lab in LABELS}
        return {lab: float(np.mean(self.labels == lab)) for lab in LABELS}

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["x", "y", "z", "label"])
            for p, lab in zip(self.points, self.labels):
                writer.writerow([repr(float(p[0])), repr(float(p[1])), repr(float(p[2])), lab])


def label_directions(s: int, pts: np.ndarray, params: LatticeParams = DEFAULT,
                     sets: str = "both") -> np.ndarray:
    """Labels ``M``, ``UM``, ``BOTH`` or ``NONE`` for each row of ``pts``."""
    _require(params, "1234")
    in_m = _m_mask(s, pts) if sets in ("both", "M") else np.zeros(len(pts), bool)
    in_um = (_minv_mask(s, _usq_image(s, pts, params)) if sets in ("both", "UM")
             else np.zeros(len(pts), bool))
    labels = np.full(len(pts), "NONE", dtype="<U4")
    labels[in_m & ~in_um] = "M"
    labels[in_um & ~in_m] = "UM"
    labels[in_m & in_um] = "BOTH"
    return labels


def classify_sphere(s: int, params: LatticeParams = DEFAULT, count: int = 10_000,
                    seed: int | None = None, sets: str = "both") -> SpherePointCloud:
    pts = fibonacci_sphere(count, seed)
    labels = label_directions(s, pts, params, sets) if count > 0 else np.zeros(0, dtype="<U4")
    return SpherePointCloud(pts, labels, max(count, 0), s, seed)


def oracle_agreement(s: int, pts: np.ndarray, params: LatticeParams = DEFAULT,
                     band: float = 1e-9) -> dict:
    """Compare closed forms with the definition oracles on a batch of directions."""
    f = _usq_image(s, pts, params)
    margin = np.minimum(_m_margin(s, pts), _minv_margin(s, f))
    decided = margin > band
    m_ok = _m_mask(s, pts) == oracle_in_M(s, pts, params)
    um_ok = _minv_mask(s, f) == oracle_in_Minv(s, f, params)
    bad = decided & ~(m_ok & um_ok)
    return {
        "checked": int(decided.sum()),
        "boundary": int((~decided).sum()),
        "mismatches": int(bad.sum()),
        "mismatch_points": pts[bad],
    }


# -- rigidity of paths -------------------------------------------------------

def check_rigidity(path, slope_rtol: float = 1e-9, slope_atol: float = 1e-12,
                   chord_tol: float = 1e-9) -> bool:
    """Discrete rigidity check for a sampled path ``[(t, sigma), ...]``.

    If no secant slope exceeds the end-to-end chord slope, the path must be
    the chord itself traversed at constant speed.  Returns ``False`` as soon
    as some slope exceeds the chord slope; otherwise returns whether every
    sample lies on the chord within ``chord_tol`` times its length.
    """
    if len(path) < 3:
        raise MalformedPath("need at least three samples")
    t = np.array([float(p[0]) for p in path])
    sig = np.array([np.asarray(p[1], dtype=float) for p in path])
    if np.any(np.diff(t) <= 0):
        raise MalformedPath("times must be strictly increasing")
    span = t[-1] - t[0]
    chord = sig[-1] - sig[0]
    chord_slope = np.linalg.norm(chord) / span
    slopes = np.linalg.norm(np.diff(sig, axis=0), axis=1) / np.diff(t)
    if np.any(slopes > chord_slope * (1.0 + slope_rtol) + slope_atol):
        return False
    expected = sig[0] + ((t - t[0]) / span)[:, None] * chord
    length = np.linalg.norm(chord) or 1.0
    return bool(np.max(np.linalg.norm(sig - expected, axis=1)) <= chord_tol * length)
