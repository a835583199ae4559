"""Twin solutions of ``Q U_l - U_s = a (x) n`` between martensite variants.

Two routes are provided.  The closed forms (:func:`type1_twin`,
:func:`type2_twin`) evaluate the tabulated component patterns for the
CuAlNi well geometry.  The generic route (:func:`solve_twins_generic`)
uses the classical eigen-construction and serves as an independent check:

    With ``C = U_s^-1 U_l^2 U_s^-1`` having eigenvalues
    ``l1 < l2 = 1 < l3`` and unit eigenvectors ``e1``, ``e3``, the two
    solutions (kappa = +-1) are

        a~ = sqrt(l3 (1 - l1) / (l3 - l1)) e1 + kappa sqrt(l1 (l3 - 1) / (l3 - l1)) e3
        n~ = (sqrt(l3) - sqrt(l1)) / sqrt(l3 - l1) (-sqrt(1 - l1) e1 + kappa sqrt(l3 - 1) e3)

    and ``a = |U_s n~| a~``, ``n = U_s n~ / |U_s n~|``.

Pairs are addressed as ``(s, l)``: ``s`` is the variant on the reference
side of the equation.  Table rows are printed with the label ``(l, s)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .constants import EPS_SET
from .errors import DegenerateTwin, NoRankOneConnection, PairNotTabulated
from .lattice import DEFAULT, LatticeParams, variants
from .mat3 import outer, polar_rotation, rank_one_decompose, sym_eigen
from .tables import COMPOUND_PAIRS, TYPE_I, TYPE_I_CORRECTIONS, TYPE_II, resolve

KINDS = ("I", "II", "compound")


@dataclass(frozen=True)
class TwinSystem:
    s: int
    l: int
    kind: str
    a: np.ndarray
    n: np.ndarray
    q: np.ndarray
    params: LatticeParams = field(default=DEFAULT, repr=False)

    @property
    def u_s(self) -> np.ndarray:
        return variants(self.params)[self.s]

    @property
    def u_l(self) -> np.ndarray:
        return variants(self.params)[self.l]

    @property
    def residual(self) -> float:
        return float(np.linalg.norm(self.q @ self.u_l - self.u_s - outer(self.a, self.n)))

    @property
    def det_residual(self) -> float:
        """``|det(U_s + a (x) n) - det U_s|``; zero forces ``U_s^-1 a . n = 0``."""
        return abs(np.linalg.det(self.u_s + outer(self.a, self.n)) - np.linalg.det(self.u_s))

    @property
    def table_row(self) -> tuple[int, int]:
        return (self.l, self.s)

    def tensor(self) -> np.ndarray:
        return outer(self.a, self.n)

    def flipped(self) -> "TwinSystem":
        """The same twin written with ``(-a, -n)``."""
        return replace(self, a=-self.a, n=-self.n)

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "l": self.l,
            "kind": self.kind,
            "a": self.a.tolist(),
            "n": self.n.tolist(),
            "q": self.q.reshape(-1).tolist(),
            "residual": self.residual,
        }


@dataclass(frozen=True)
class TwinElementConstants:
    u1: float
    u2: float
    u3: float
    t1: float
    t2: float
    v1: float
    v2: float
    v3: float

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def twin_constants(params: LatticeParams = DEFAULT) -> TwinElementConstants:
    """Scalars from which every Type-I and Type-II table entry is built.

    The Type-II normal uses the unit-normalization
    ``8 b^2 (b^2 - a^2 - g^2) + 6 a^4 - 4 a^2 g^2 + 6 g^4``.
    """
    a, b, g = params.as_tuple()
    a2, b2, g2 = a * a, b * b, g * g
    if abs(a - g) <= EPS_SET:
        raise DegenerateTwin("alpha = gamma: Type-I and Type-II twins coincide")
    d1 = 2 * a2 * g2 + b2 * (a2 + g2)
    norm2 = 8 * b2 * (b2 - a2 - g2) + 6 * a2 * a2 - 4 * a2 * g2 + 6 * g2 * g2
    d3 = a2 + g2 + 2 * b2
    if abs(d1) <= EPS_SET or norm2 <= EPS_SET or abs(d3) <= EPS_SET:
        raise DegenerateTwin("vanishing denominator in the twin constants")
    k = math.sqrt(2) / d1
    u1 = k * (a + g) / 2 * (4 * a * g * b2 - 2 * a2 * g2 - b2 * (a2 + g2))
    u2 = k * b * (b2 * (a2 + g2) - 2 * a2 * g2)
    u3 = -k * (a - g) / 2 * (4 * a * g * b2 + 2 * a2 * g2 + b2 * (a2 + g2))
    root = math.sqrt(norm2)
    t1 = (2 * b2 - a2 - g2) / root
    t2 = 2 * (g2 - a2) / root
    scale = root / d3
    v1, v2, v3 = scale * (a + g) / 2, -scale * b, scale * (a - g) / 2
    return TwinElementConstants(u1, u2, u3, t1, t2, v1, v2, v3)


def _check_pair(s: int, l: int) -> None:
    if not (1 <= s <= 6 and 1 <= l <= 6):
        raise ValueError("variant indices must lie in 1..6")
    if s == l or (s, l) in COMPOUND_PAIRS:
        raise PairNotTabulated(f"pair (s={s}, l={l}) has no Type-I/Type-II table entry")


def _assemble(params, s, l, kind, a, n) -> TwinSystem:
    vs = variants(params)
    q = polar_rotation((vs[s] + outer(a, n)) @ np.linalg.inv(vs[l]))
    return TwinSystem(s, l, kind, a, n, q, params)


def type1_twin(params: LatticeParams, s: int, l: int) -> TwinSystem:
    """Type-I twin in the printed sign representative; normal is a {110} plane."""
    _check_pair(s, l)
    consts = twin_constants(params).as_dict()
    n_row, a_row = TYPE_I_CORRECTIONS.get((l, s), TYPE_I[(l, s)])
    n = resolve(n_row, consts) / math.sqrt(2)
    a = resolve(a_row, consts)
    return _assemble(params, s, l, "I", a, n)


def type2_twin(params: LatticeParams, s: int, l: int) -> TwinSystem:
    """Type-II twin in the printed sign representative."""
    _check_pair(s, l)
    consts = twin_constants(params).as_dict()
    n_row, a_row = TYPE_II[(l, s)]
    return _assemble(params, s, l, "II", resolve(a_row, consts), resolve(n_row, consts))


def twin(params: LatticeParams, s: int, l: int, kind: str) -> TwinSystem:
    if kind == "I":
        return type1_twin(params, s, l)
    if kind == "II":
        return type2_twin(params, s, l)
    raise ValueError(f"unknown twin kind {kind!r}")


def tabulated_pairs() -> list[tuple[int, int]]:
    """All 24 ordered ``(s, l)`` pairs with closed-form twins."""
    return sorted((s, l) for (l, s) in TYPE_II)


def _classify(params, s, l, tensor) -> str:
    if (s, l) in COMPOUND_PAIRS:
        return "compound"
    for kind in ("I", "II"):
        try:
            closed = twin(params, s, l, kind).tensor()
        except DegenerateTwin:
            return "compound"
        if np.max(np.abs(closed - tensor)) <= 1e-8:
            return kind
    return "compound"


def solve_twins_generic(params: LatticeParams, s: int, l: int) -> list[TwinSystem]:
    """Both rank-one connections between ``SO(3) U_l`` and ``U_s``."""
    if s == l:
        raise ValueError("s and l must differ")
    vs = variants(params)
    us_inv = np.linalg.inv(vs[s])
    c = us_inv @ vs[l] @ vs[l] @ us_inv
    lam, vecs = sym_eigen(c)
    l1, l2, l3 = lam
    if abs(l2 - 1.0) > 1e-9 or l3 - l1 <= 1e-9:
        raise NoRankOneConnection(
            f"eigenvalues of C for (s={s}, l={l}) are {lam.round(12).tolist()}; need l1 < 1 = l2 < l3"
        )
    l1, l3 = min(l1, 1.0), max(l3, 1.0)
    e1, e3 = vecs[:, 0], vecs[:, 2]
    out = []
    for kappa in (1.0, -1.0):
        a_t = (math.sqrt(l3 * (1 - l1) / (l3 - l1)) * e1
               + kappa * math.sqrt(l1 * (l3 - 1) / (l3 - l1)) * e3)
        n_t = ((math.sqrt(l3) - math.sqrt(l1)) / math.sqrt(l3 - l1)
               * (-math.sqrt(1 - l1) * e1 + kappa * math.sqrt(l3 - 1) * e3))
        n_raw = vs[s] @ n_t
        scale = np.linalg.norm(n_raw)
        a, n = rank_one_decompose(outer(scale * a_t, n_raw / scale))
        kind = _classify(params, s, l, outer(a, n))
        out.append(_assemble(params, s, l, kind, a, n))
    return out
