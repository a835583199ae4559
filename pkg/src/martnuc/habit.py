"""Austenite / twinned-martensite interfaces: ``U_s + lam a (x) n = R (1 + b (x) m)``.

For a fixed volume fraction ``lam`` put ``G = U_s + lam a (x) n`` and
``C = G^T G`` with eigenvalues ``l1 <= l2 <= l3``.  A solution exists iff
``l2 = 1``; then, with unit eigenvectors ``e1``, ``e3`` oriented so that
``e . n > 0``,

    b~ = sqrt(l3 (1 - l1) / (l3 - l1)) e1 + kappa sqrt(l1 (l3 - 1) / (l3 - l1)) e3
    m~ = (sqrt(l3) - sqrt(l1)) / sqrt(l3 - l1) (-sqrt(1 - l1) e1 + kappa sqrt(l3 - 1) e3)

and ``b = |m~| b~``, ``m = m~ / |m~|``, ``R = G (1 + b (x) m)^-1``.

The orientation rule makes ``kappa`` independent of the sign representative
``(+-a, +-n)`` of the twin.  ``KAPPA_SIGN`` aligns the label with the
printed tables on the reference row ``(1, 3)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoHabitPlane
from .lattice import DEFAULT, LatticeParams
from .mat3 import I3, outer, polar_rotation, sym_eigen, sym_eigvals, sym_eigvals_batch
from .tables import ETA
from .twinning import TwinSystem, type2_twin

BRANCHES = ("small", "large")
KAPPA_SIGN = {"small": 1, "large": 1}
SCAN_POINTS = 2000


@dataclass(frozen=True)
class HabitInvariants:
    lambda_star: float
    delta: float
    eta_ref: float | None
    roots: tuple[float, ...]

    @property
    def lambda_large(self) -> float:
        upper = [r for r in self.roots if r > 0.5]
        if not upper:
            raise NoHabitPlane("no volume fraction in (1/2, 1)")
        return upper[0]


@dataclass(frozen=True)
class HabitResiduals:
    equation: float
    identity: float


@dataclass(frozen=True)
class HabitSolution:
    b: np.ndarray
    m: np.ndarray
    r: np.ndarray
    lam: float
    kappa: int
    branch: str
    s: int = 0
    l: int = 0
    twin_kind: str = "II"

    def tensor(self) -> np.ndarray:
        return outer(self.b, self.m)

    def flipped(self) -> "HabitSolution":
        """The same solution written with ``(-b, -m)``."""
        return HabitSolution(-self.b, -self.m, self.r, self.lam, self.kappa,
                             self.branch, self.s, self.l, self.twin_kind)

    def to_json(self, twin: TwinSystem | None = None) -> dict:
        out = {
            "pair": [self.s, self.l],
            "twin_kind": self.twin_kind,
            "branch": self.branch,
            "kappa": self.kappa,
            "lambda": self.lam,
            "m": self.m.tolist(),
            "b": self.b.tolist(),
            "r": self.r.reshape(-1).tolist(),
        }
        if twin is not None:
            res = verify_habit(self, twin)
            out["residuals"] = {"equation": res.equation, "identity": res.identity}
        return out


def _laminate_gradient(twin: TwinSystem, lam: float) -> np.ndarray:
    return twin.u_s + lam * outer(twin.a, twin.n)


def middle_eigen_deficit(twin: TwinSystem, lam: float) -> float:
    """``l2(C(lam)) - 1``; zero exactly when an interface with austenite exists."""
    g = _laminate_gradient(twin, lam)
    return float(sym_eigvals(g.T @ g)[1] - 1.0)


def _deficit_batch(u_s: np.ndarray, an: np.ndarray, lams: np.ndarray) -> np.ndarray:
    g = u_s + lams[..., None, None] * an
    return sym_eigvals_batch(np.swapaxes(g, -1, -2) @ g)[..., 1] - 1.0


def _bisect_all(u_s, an, lo: np.ndarray, hi: np.ndarray, tol: float = 1e-12,
                splits: int = 16) -> np.ndarray:
    """Refine every sign-change bracket simultaneously.

    Each pass evaluates ``splits - 1`` interior points per bracket and keeps
    the sub-interval holding the sign change (bisection generalized to
    ``splits`` parts).
    """
    frac = np.linspace(0.0, 1.0, splits + 1)
    while np.max(hi - lo) > tol:
        pts = lo[:, None] + (hi - lo)[:, None] * frac
        vals = _deficit_batch(u_s, an, pts)
        change = np.signbit(vals[:, :-1]) != np.signbit(vals[:, 1:])
        k = np.argmax(change, axis=1)
        rows = np.arange(len(lo))
        lo, hi = pts[rows, k], pts[rows, k + 1]
    return 0.5 * (lo + hi)


def delta_from_lambda(lam: float) -> float:
    """Invert ``lam = (1 - sqrt(1 + 2 / delta)) / 2`` for ``delta``."""
    return 2.0 / ((1.0 - 2.0 * lam) ** 2 - 1.0)


def solve_volume_fractions(twin: TwinSystem) -> HabitInvariants:
    """Roots of the middle-eigenvalue condition in (0, 1) by scan and bisection."""
    if twin.kind == "compound":
        raise NoHabitPlane("compound twins are not used for habit planes")
    u_s, an = twin.u_s, outer(twin.a, twin.n)
    grid = np.linspace(0.0, 1.0, SCAN_POINTS + 1)
    vals = _deficit_batch(u_s, an, grid)
    exact = [float(x) for x in grid[1:-1][vals[1:-1] == 0.0]]
    idx = np.nonzero(vals[:-1] * vals[1:] < 0.0)[0]
    refined = _bisect_all(u_s, an, grid[idx], grid[idx + 1]) if idx.size else []
    roots = sorted(exact + [float(r) for r in refined])
    lower = [r for r in roots if r < 0.5]
    if not lower:
        raise NoHabitPlane(f"no volume fraction in (0, 1/2) for pair (s={twin.s}, l={twin.l})")
    lam_star = lower[0]
    eta = ETA if twin.params.is_preset() else None
    return HabitInvariants(lam_star, delta_from_lambda(lam_star), eta, tuple(roots))


def _orient(e: np.ndarray, ref: np.ndarray, fallback: np.ndarray) -> np.ndarray:
    d = e @ ref
    if abs(d) <= 1e-12:
        d = e @ fallback
    if abs(d) <= 1e-12:
        d = e[np.argmax(np.abs(e))]
    return e if d > 0 else -e


def habit_solutions(twin: TwinSystem, branch: str, kappa: int,
                    invariants: HabitInvariants | None = None) -> HabitSolution:
    """The ``kappa`` solution on the ``small`` or ``large`` volume-fraction branch."""
    if branch not in BRANCHES:
        raise ValueError(f"branch must be one of {BRANCHES}")
    if kappa not in (1, -1):
        raise ValueError("kappa must be +1 or -1")
    inv = invariants or solve_volume_fractions(twin)
    lam = inv.lambda_star if branch == "small" else inv.lambda_large
    g = _laminate_gradient(twin, lam)
    vals, vecs = sym_eigen(g.T @ g)
    l1, l3 = min(vals[0], 1.0), max(vals[2], 1.0)
    if l3 - l1 <= 1e-12:
        raise NoHabitPlane("laminate gradient is already a rotation")
    e1 = _orient(vecs[:, 0], twin.n, twin.a)
    e3 = _orient(vecs[:, 2], twin.n, twin.a)
    k = kappa * KAPPA_SIGN[branch]
    b_t = math.sqrt(l3 * (1 - l1) / (l3 - l1)) * e1 + k * math.sqrt(l1 * (l3 - 1) / (l3 - l1)) * e3
    m_t = ((math.sqrt(l3) - math.sqrt(l1)) / math.sqrt(l3 - l1)
           * (-math.sqrt(1 - l1) * e1 + k * math.sqrt(l3 - 1) * e3))
    rho = np.linalg.norm(m_t)
    b, m = b_t * rho, m_t / rho
    r = polar_rotation(g @ np.linalg.inv(I3 + outer(b, m)))
    return HabitSolution(b, m, r, lam, kappa, branch, twin.s, twin.l, twin.kind)


def verify_habit(sol: HabitSolution, twin: TwinSystem) -> HabitResiduals:
    g = _laminate_gradient(twin, sol.lam)
    stretch = I3 + outer(sol.b, sol.m)
    eq = np.linalg.norm(g - sol.r @ stretch)
    ident = np.linalg.norm(g.T @ g - stretch.T @ stretch)
    return HabitResiduals(float(eq), float(ident))


@dataclass(frozen=True)
class HabitTableConstants:
    s1: float
    s2: float
    s3: float
    s4: float
    s5: float
    s6: float
    z1: float
    z2: float
    z3: float
    z4: float
    z5: float
    z6: float

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def habit_table_constants(params: LatticeParams = DEFAULT) -> HabitTableConstants:
    """Component magnitudes of the reference row: twin ``(s=3, l=1)``, small branch.

    ``s1..s3`` and ``z1..z3`` come from ``kappa = +1``; ``s4..s6`` and
    ``z4..z6`` from ``kappa = -1``.
    """
    twin = type2_twin(params, 3, 1)
    inv = solve_volume_fractions(twin)
    plus = habit_solutions(twin, "small", 1, inv)
    minus = habit_solutions(twin, "small", -1, inv)
    s = np.abs(np.concatenate([plus.m, minus.m]))
    z = np.abs(np.concatenate([plus.b, minus.b]))
    return HabitTableConstants(*s, *z)
