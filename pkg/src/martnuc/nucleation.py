"""Austenite nucleation at a specimen corner.

A corner candidate pairs a Type-II twin ``(a, n)`` of ``U_s`` with a habit
solution ``(b, m, R, lam)`` such that ``n`` and ``m`` point into the same
octant.  Near the corner ``x0`` the deformation is

    S1 = {x . m >= k_m}             y = R x + k_m b~ - lam k_n a
    S2 = {x . n >= k_n} \\ S1        y = (U_s + lam a (x) n) x - lam k_n a
    S3 = everything else            y = U_s x

with ``b~ = R b``.  Across each plane the gradients differ by a rank-one
tensor and the translations make ``y`` continuous.  The austenite wedge
``S1`` lowers the multi-well energy by ``depth * vol(S1)``.

Geometry is handled in corner coordinates ``xi = sigma * (x0 - x) >= 0``
where ``sigma`` is the sign pattern of the corner.  With ``m^ = sigma * m``
and ``n^ = sigma * n`` (both positive) the regions become the simplices
``{m^ . xi <= d_m}`` and ``{n^ . xi <= d_n}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyRegion, InjectivityViolated, PlanesOverlap
from .habit import BRANCHES, HabitSolution, habit_solutions, solve_volume_fractions
from .lattice import DEFAULT, EnergyDensity, LatticeParams
from .mat3 import outer
from .specimen import OCTANT_SIGNS, antipode, octant_of
from .tables import COMPOUND_PAIRS
from .twinning import TwinSystem, twin

AXIS_EDGES = np.eye(3)
ZERO_TOL = 1e-9


@dataclass(frozen=True)
class CornerCandidate:
    s: int
    l: int
    twin: TwinSystem
    habit: HabitSolution
    octant: int | None
    b_tilde: np.ndarray
    inj_sign: float
    perpendicular_flags: tuple[bool, bool, bool]

    @property
    def a(self) -> np.ndarray:
        return self.twin.a

    @property
    def n(self) -> np.ndarray:
        return self.twin.n

    @property
    def m(self) -> np.ndarray:
        return self.habit.m

    @property
    def lam(self) -> float:
        return self.habit.lam

    @property
    def shares_octant(self) -> bool:
        return self.octant is not None and octant_of(self.n, ZERO_TOL) == self.octant

    @property
    def valid(self) -> bool:
        return self.shares_octant and self.inj_sign < 0 and not any(self.perpendicular_flags)

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "twin_kind": self.twin.kind,
            "branch": self.habit.branch,
            "kappa": self.habit.kappa,
            "n": self.n.tolist(),
            "m": self.m.tolist(),
            "inj_sign": self.inj_sign,
        }


def _candidate(tw: TwinSystem, hb: HabitSolution, edges: np.ndarray) -> CornerCandidate:
    b_tilde = hb.r @ hb.b
    inj = float(np.linalg.solve(tw.u_s, b_tilde) @ tw.n)
    flags = tuple(bool(abs(tw.n @ d) <= ZERO_TOL or abs(hb.m @ d) <= ZERO_TOL) for d in edges)
    return CornerCandidate(tw.s, tw.l, tw, hb, octant_of(hb.m, ZERO_TOL), b_tilde, inj, flags)


def enumerate_candidates(s: int, params: LatticeParams = DEFAULT, specimen_edges=AXIS_EDGES,
                         kinds=("II",), branches=BRANCHES,
                         include_rejected: bool = False) -> list[CornerCandidate]:
    """Twin/habit combinations whose normals can meet at a corner of the specimen.

    Every sign representative ``(+-a, +-n)`` and ``(+-b, +-m)`` is tried.  By
    default only combinations with ``n`` and ``m`` strictly inside the same
    octant are returned; ``include_rejected`` returns all of them.  Use
    :attr:`CornerCandidate.valid` for the full acceptance test.
    """
    edges = np.array([d / np.linalg.norm(d) for d in np.asarray(specimen_edges, dtype=float)])
    out = []
    for l in range(1, 7):
        if l == s or (s, l) in COMPOUND_PAIRS:
            continue
        for kind in kinds:
            base = twin(params, s, l, kind)
            inv = solve_volume_fractions(base)
            for branch in branches:
                for kappa in (1, -1):
                    hb = habit_solutions(base, branch, kappa, inv)
                    for tw in (base, base.flipped()):
                        for h in (hb, hb.flipped()):
                            cand = _candidate(tw, h, edges)
                            if include_rejected or cand.shares_octant:
                                out.append(cand)
    return out


@dataclass(frozen=True)
class OctantVerdict:
    variant: int
    octants: tuple[int, ...]
    witnesses: dict = field(repr=False)
    by_branch: dict = field(default_factory=dict)

    def is_antipode_closed(self) -> bool:
        return all(antipode(k) in self.octants for k in self.octants)


def nucleating_octants(s: int, params: LatticeParams = DEFAULT, specimen_edges=AXIS_EDGES,
                       candidates: list[CornerCandidate] | None = None) -> OctantVerdict:
    """Corners of the specimen at which austenite can nucleate in variant ``s``."""
    cands = candidates if candidates is not None else enumerate_candidates(s, params, specimen_edges)
    witnesses: dict[int, list[CornerCandidate]] = {}
    by_branch = {b: set() for b in BRANCHES}
    for c in cands:
        if not c.valid:
            continue
        witnesses.setdefault(c.octant, []).append(c)
        by_branch[c.habit.branch].add(c.octant)
    octants = set(witnesses)
    octants |= {antipode(k) for k in octants}
    return OctantVerdict(s, tuple(sorted(octants)), witnesses,
                         {b: tuple(sorted(v)) for b, v in by_branch.items()})


@dataclass(frozen=True)
class CornerConstruction:
    candidate: CornerCandidate
    radius: float
    half_size: float
    k_n: float
    k_m: float
    corner: np.ndarray
    gradients: tuple[np.ndarray, np.ndarray, np.ndarray]
    translations: tuple[np.ndarray, np.ndarray, np.ndarray]
    volumes: tuple[float, float, float]

    @property
    def sigma(self) -> np.ndarray:
        return np.array(OCTANT_SIGNS[self.candidate.octant], dtype=float)

    @property
    def d_n(self) -> float:
        return float(self.corner @ self.candidate.n - self.k_n)

    @property
    def d_m(self) -> float:
        return float(self.corner @ self.candidate.m - self.k_m)

    def region(self, x) -> np.ndarray:
        """Region index 1, 2 or 3 for each row of ``x``."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        c = self.candidate
        lab = np.full(len(x), 3)
        lab[x @ c.n >= self.k_n] = 2
        lab[x @ c.m >= self.k_m] = 1
        return lab

    def in_box(self, x, tol: float = 0.0) -> np.ndarray:
        return np.all(np.abs(x) <= self.half_size + tol, axis=-1)

    def deform(self, x) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=float))
        lab = self.region(x)
        y = np.empty_like(x)
        for k in (1, 2, 3):
            sel = lab == k
            y[sel] = x[sel] @ self.gradients[k - 1].T + self.translations[k - 1]
        return y

    def jump_residuals(self) -> dict:
        c = self.candidate
        f1, f2, f3 = self.gradients
        return {
            "n_plane": float(np.max(np.abs(f2 - f3 - c.lam * outer(c.a, c.n)))),
            "m_plane": float(np.max(np.abs(f2 - f1 - outer(c.b_tilde, c.m)))),
        }

    def continuity_residual(self, count: int = 64, seed: int = 0) -> float:
        """Largest mismatch of neighbouring affine maps on points of either plane."""
        rng = np.random.default_rng(seed)
        c = self.candidate
        worst = 0.0
        for normal, k, (i, j) in ((c.n, self.k_n, (1, 2)), (c.m, self.k_m, (0, 1))):
            pts = self.corner + rng.uniform(-self.radius, self.radius, (count, 3))
            pts += np.outer(k - pts @ normal, normal)
            yi = pts @ self.gradients[i].T + self.translations[i]
            yj = pts @ self.gradients[j].T + self.translations[j]
            worst = max(worst, float(np.max(np.abs(yi - yj))))
        return worst

    def to_json(self) -> dict:
        return {
            "radius": self.radius,
            "k_n": self.k_n,
            "k_m": self.k_m,
            "corner": self.corner.tolist(),
            "volumes": list(self.volumes),
        }


def _local(cand: CornerCandidate):
    sigma = np.array(OCTANT_SIGNS[cand.octant], dtype=float)
    return sigma, sigma * cand.n, sigma * cand.m


def default_offsets(cand: CornerCandidate, r: float = 1.0, half_size: float | None = None) -> tuple[float, float]:
    """Plane offsets ``(k_n, k_m)`` with the n-cap inside the corner ball and S1 inside the n-cap."""
    sigma, nh, mh = _local(cand)
    x0 = (2.0 * r if half_size is None else half_size) * sigma
    d_n = 0.8 * r * nh.min()
    d_m = 0.4 * d_n / np.max(nh / mh)
    return float(x0 @ cand.n - d_n), float(x0 @ cand.m - d_m)


def construction_margin(cand: CornerCandidate, r: float, d_n: float, d_m: float) -> float:
    """Distance by which the region layout clears its constraints (negative if violated)."""
    _, nh, mh = _local(cand)
    ratio = np.max(nh / mh)
    return float(min(r - np.max(d_n / nh), (d_n - d_m * ratio) / np.linalg.norm(nh)))


def build_construction(cand: CornerCandidate, r: float = 1.0, k_n: float | None = None,
                       k_m: float | None = None, half_size: float | None = None,
                       validate: bool = True) -> CornerConstruction:
    if cand.octant is None:
        raise EmptyRegion("habit normal has no octant; there is no corner to build at")
    h = 2.0 * r if half_size is None else half_size
    sigma, nh, mh = _local(cand)
    x0 = h * sigma
    dk_n, dk_m = default_offsets(cand, r, h)
    k_n = dk_n if k_n is None else k_n
    k_m = dk_m if k_m is None else k_m
    d_n, d_m = float(x0 @ cand.n - k_n), float(x0 @ cand.m - k_m)
    if validate:
        if d_m <= 0 or d_n <= 0:
            raise EmptyRegion(f"plane offsets leave an empty region (d_n={d_n:.3g}, d_m={d_m:.3g})")
        if np.any(nh <= 0) or np.any(mh <= 0):
            raise PlanesOverlap("n and m do not point into the corner octant")
        if d_m * np.max(nh / mh) >= d_n:
            raise PlanesOverlap("the austenite region reaches the pure-variant region")
        if np.max(d_n / nh) > r:
            raise PlanesOverlap("the laminate region leaves the corner ball")

    u_s = cand.twin.u_s
    lam, a, n = cand.lam, cand.a, cand.n
    r_mat = cand.habit.r
    f1, f2, f3 = r_mat, u_s + lam * outer(a, n), u_s
    t1 = k_m * cand.b_tilde - lam * k_n * a
    t2 = -lam * k_n * a
    t3 = np.zeros(3)
    vol_m = d_m ** 3 / (6.0 * np.prod(mh)) if d_m > 0 else 0.0
    vol_n = d_n ** 3 / (6.0 * np.prod(nh)) if d_n > 0 else 0.0
    vol_ball = math.pi * r ** 3 / 6.0
    con = CornerConstruction(cand, r, h, float(k_n), float(k_m), x0, (f1, f2, f3),
                             (t1, t2, t3), (vol_m, vol_n - vol_m, vol_ball - vol_n))
    if validate:
        jumps = con.jump_residuals()
        if max(jumps.values()) > 1e-10:
            raise PlanesOverlap(f"gradient jumps are not rank-one compatible: {jumps}")
    return con


@dataclass(frozen=True)
class InjectivityReport:
    twin_det_term: float
    habit_det_term: float
    inj_sign: float
    samples: int
    seed: int
    collisions: int

    @property
    def analytic_ok(self) -> bool:
        return (abs(self.twin_det_term) <= 1e-10 and -1.0 < self.habit_det_term <= 1e-12
                and self.inj_sign < 0)

    @property
    def ok(self) -> bool:
        return self.analytic_ok and self.collisions == 0


def _sample_corner(con: CornerConstruction, count: int, rng: np.random.Generator) -> np.ndarray:
    # Uniform in the cube of side r at the corner, which holds S1, S2 and part of S3.
    xi = rng.uniform(0.0, con.radius, (count, 3))
    return con.corner - con.sigma * xi


def find_collisions(con: CornerConstruction, count: int = 100_000, seed: int = 0,
                    tol: float | None = None) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pairs of distinct points of the box with the same image.

    For sampled ``x`` in region A, the unique preimage of ``y(x)`` under the
    affine map of each other region B is computed; a collision is recorded
    when that preimage lies in B and differs from ``x``.
    """
    tol = 1e-9 * con.radius if tol is None else tol
    rng = np.random.default_rng(seed)
    x = _sample_corner(con, count, rng)
    lab = con.region(x)
    y = con.deform(x)
    hits = []
    for k in (1, 2, 3):
        f, t = con.gradients[k - 1], con.translations[k - 1]
        sel = lab != k
        xp = np.linalg.solve(f, (y[sel] - t).T).T
        ok = (con.region(xp) == k) & con.in_box(xp) & (np.linalg.norm(xp - x[sel], axis=1) > tol)
        hits.extend(zip(x[sel][ok], xp[ok]))
    return hits


def verify_injectivity(con: CornerConstruction, count: int = 100_000, seed: int = 0,
                       raise_on_failure: bool = True) -> InjectivityReport:
    c = con.candidate
    u_s = c.twin.u_s
    twin_term = float(np.linalg.solve(u_s, c.a) @ c.n)
    habit_term = float(c.habit.b @ c.m)
    hits = find_collisions(con, count, seed)
    report = InjectivityReport(twin_term, habit_term, c.inj_sign, count, seed, len(hits))
    if raise_on_failure:
        if hits:
            raise InjectivityViolated(f"{len(hits)} sampled points share an image", witness=hits[0])
        if not report.analytic_ok:
            raise InjectivityViolated(
                f"analytic conditions fail: U_s^-1 a.n={twin_term:.3g}, "
                f"b.m={habit_term:.3g}, U_s^-1 b~.n={c.inj_sign:.3g}", witness=None)
    return report


def s1_volume_mc(con: CornerConstruction, samples: int = 1_000_000, seed: int = 0) -> float:
    """Monte-Carlo volume of the austenite region over its bounding box in the corner."""
    if con.d_m <= 0:
        return 0.0
    _, _, mh = _local(con.candidate)
    extent = con.d_m / mh
    rng = np.random.default_rng(seed)
    xi = rng.uniform(0.0, 1.0, (samples, 3)) * extent
    inside = (xi @ mh <= con.d_m) & (np.einsum("ij,ij->i", xi, xi) <= con.radius ** 2)
    return float(inside.mean() * np.prod(extent))


def energy_change(con: CornerConstruction, density: EnergyDensity = EnergyDensity(),
                  samples: int = 1_000_000, seed: int = 0) -> float:
    """Energy difference from replacing ``U_s`` near the corner: ``-depth * vol(S1)``."""
    return -density.depth * s1_volume_mc(con, samples, seed)


def laminate_minors_residual(f0, f1, lam: float) -> float:
    """``|(1 - lam) det f0 + lam det f1 - det((1 - lam) f0 + lam f1)|``."""
    f0, f1 = np.asarray(f0, dtype=float), np.asarray(f1, dtype=float)
    mean = (1.0 - lam) * np.linalg.det(f0) + lam * np.linalg.det(f1)
    return float(abs(mean - np.linalg.det((1.0 - lam) * f0 + lam * f1)))


def laminate_minors_check(tw: TwinSystem, lam: float) -> float:
    """Minors residual of the laminate between ``U_s`` and ``Q U_l``."""
    return laminate_minors_residual(tw.u_s, tw.q @ tw.u_l, lam)


def corner_report(s: int, params: LatticeParams = DEFAULT, density: EnergyDensity = EnergyDensity(),
                  samples: int = 1_000_000, seed: int = 0) -> dict:
    cands = enumerate_candidates(s, params)
    verdict = nucleating_octants(s, params, candidates=cands)
    valid = [c for c in cands if c.valid]
    out = {
        "variant": s,
        "octants": list(verdict.octants),
        "candidates": [c.to_json() for c in valid],
        "energy": None,
    }
    if valid:
        con = build_construction(valid[0])
        vol = s1_volume_mc(con, samples, seed)
        out["energy"] = {"depth": density.depth, "volume_s1": vol, "delta_I": -density.depth * vol,
                         "seed": seed, "samples": samples}
    return out


__all__ = [
    "CornerCandidate", "CornerConstruction", "InjectivityReport", "OctantVerdict",
    "build_construction", "construction_margin", "corner_report", "default_offsets",
    "energy_change", "enumerate_candidates", "find_collisions", "laminate_minors_check",
    "laminate_minors_residual", "nucleating_octants", "s1_volume_mc", "verify_injectivity",
]
