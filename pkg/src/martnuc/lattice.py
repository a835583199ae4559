"""Lattice parameters, the six orthorhombic variants and the parameter checks."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .constants import EPS_SET
from .mat3 import I3


@dataclass(frozen=True)
class LatticeParams:
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        vals = (self.alpha, self.beta, self.gamma)
        if not all(np.isfinite(v) and v > 0 for v in vals):
            raise ValueError(f"stretches must be finite and positive, got {vals}")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.alpha, self.beta, self.gamma)

    def is_preset(self, name: str = "cualni-seiner") -> bool:
        return self == PRESETS[name]


PRESETS = {"cualni-seiner": LatticeParams(1.06372, 0.91542, 1.02368)}
DEFAULT = PRESETS["cualni-seiner"]


def load_params(path) -> LatticeParams:
    """Read ``alpha``, ``beta``, ``gamma`` from a ``key = value`` text file."""
    values = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line or line.startswith("["):
            continue
        key, _, value = line.partition("=")
        values[key.strip().lower()] = float(value.strip().strip('"'))
    missing = {"alpha", "beta", "gamma"} - values.keys()
    if missing:
        raise ValueError(f"missing keys: {sorted(missing)}")
    return LatticeParams(values["alpha"], values["beta"], values["gamma"])


@dataclass(frozen=True)
class VariantSet:
    """``u[i]`` is the stretch of variant ``i + 1``; ``austenite`` is the identity."""

    u: tuple[np.ndarray, ...]
    params: LatticeParams

    def __getitem__(self, s: int) -> np.ndarray:
        """1-based access: ``vs[1]`` is U_1."""
        if not 1 <= s <= 6:
            raise IndexError(f"variant index {s} outside 1..6")
        return self.u[s - 1]

    @property
    def austenite(self) -> np.ndarray:
        return I3

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.u[0]))


def variants(params: LatticeParams = DEFAULT) -> VariantSet:
    a, b, g = params.as_tuple()
    p, q = 0.5 * (a + g), 0.5 * (a - g)
    mats = (
        [[b, 0, 0], [0, p, q], [0, q, p]],
        [[b, 0, 0], [0, p, -q], [0, -q, p]],
        [[p, 0, q], [0, b, 0], [q, 0, p]],
        [[p, 0, -q], [0, b, 0], [-q, 0, p]],
        [[p, q, 0], [q, p, 0], [0, 0, b]],
        [[p, -q, 0], [-q, p, 0], [0, 0, b]],
    )
    u = []
    for m in mats:
        arr = np.array(m, dtype=float)
        arr.setflags(write=False)
        u.append(arr)
    return VariantSet(tuple(u), params)


@dataclass(frozen=True)
class AssumptionReport:
    a1: bool
    a2: bool
    a3: bool
    a4: bool
    norm_check: float
    cof_norm: float
    a_minus_b: float
    A: float
    B: float
    N: float
    P: float
    det_u: float
    lam_max_cof: float
    det_le_one: bool
    lam_max_cof_ge_one: bool
    boundary: tuple[str, ...] = ()

    @property
    def all_hold(self) -> bool:
        return self.a1 and self.a2 and self.a3 and self.a4

    def failed(self) -> list[str]:
        return [k.upper() for k in ("a1", "a2", "a3", "a4") if not getattr(self, k)]


def check_assumptions(params: LatticeParams = DEFAULT) -> AssumptionReport:
    """Evaluate the four parameter inequalities and the standing conditions.

    Inequalities are decided exactly; any quantity within 1e-12 of its
    threshold is listed in ``boundary`` so callers can flag it.
    """
    a, b, g = params.as_tuple()
    a2, b2, g2 = a * a, b * b, g * g
    norm_check = 2 * a2 + b2
    cof_norm = a2 * g2 + a2 * b2 + b2 * g2
    big_a = a2 * g2 - 0.5 * b2 * (a2 + g2)
    big_b = b2 * (a2 - g2)
    u1 = variants(params).u[0]
    det_u = float(np.linalg.det(u1))
    # Eigenvalues of cof U are the pairwise stretch products; alpha*gamma under A1.
    lam_max_cof = max(a * g, b * g, a * b)

    boundary = []
    for name, lhs, rhs in (
        ("A1:beta<=1", b, 1.0), ("A1:1<=gamma", 1.0, g), ("A1:gamma<alpha", g, a),
        ("A2", norm_check, 3.0), ("A3", cof_norm, 3.0), ("A4", big_a - big_b, 0.0),
    ):
        if abs(lhs - rhs) <= EPS_SET:
            boundary.append(name)

    return AssumptionReport(
        a1=b <= 1.0 <= g < a,
        a2=norm_check >= 3.0,
        a3=cof_norm >= 3.0,
        a4=big_a - big_b > 0.0,
        norm_check=norm_check,
        cof_norm=cof_norm,
        a_minus_b=big_a - big_b,
        A=big_a,
        B=big_b,
        N=0.5 * (a2 + g2) - b2,
        P=a2 - g2,
        det_u=det_u,
        lam_max_cof=lam_max_cof,
        det_le_one=det_u <= 1.0,
        lam_max_cof_ge_one=lam_max_cof >= 1.0,
        boundary=tuple(boundary),
    )


@dataclass(frozen=True)
class EnergyDensity:
    """Multi-well density: minimum ``-depth`` on austenite, 0 on the variants."""

    depth: float = 1.0

    def __post_init__(self):
        if not self.depth > 0:
            raise ValueError("well depth must be positive")
