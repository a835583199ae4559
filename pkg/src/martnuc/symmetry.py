"""The 24 proper rotations of the cube and the variant relation table."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NoMatch
from .tables import load_table1

# Signed dyadic terms (sign, row, column), 1-based, for 1, Q1 .. Q23.
_DYADICS = [
    "+11 +22 +33",
    "+13 +21 +32", "+12 +23 +31", "-12 +23 -31", "-13 -21 +32",
    "-12 -23 +31", "+13 -21 -32", "+12 -23 -31", "-13 +21 -32",
    "+12 +21 -33", "-12 -21 -33", "+13 -22 +31", "-13 -22 -31",
    "-11 +23 +32", "-11 -23 -32",
    "+11 -22 -33", "-11 +22 -33", "-11 -22 +33",
    "+11 -23 +32", "+11 +23 -32", "+13 +22 -31", "-13 +22 +31",
    "-12 +21 +33", "+12 -21 +33",
]

_TAU = 2.0 * math.pi / 3.0
_AXES_ANGLES = [
    ((1, 0, 0), 0.0),
    ((1, 1, 1), _TAU), ((1, 1, 1), -_TAU),
    ((-1, 1, 1), _TAU), ((-1, 1, 1), -_TAU),
    ((1, -1, 1), _TAU), ((1, -1, 1), -_TAU),
    ((1, 1, -1), _TAU), ((1, 1, -1), -_TAU),
    ((1, 1, 0), math.pi), ((1, -1, 0), math.pi),
    ((1, 0, 1), math.pi), ((1, 0, -1), math.pi),
    ((0, 1, 1), math.pi), ((0, 1, -1), math.pi),
    ((1, 0, 0), math.pi), ((0, 1, 0), math.pi), ((0, 0, 1), math.pi),
    ((1, 0, 0), math.pi / 2), ((1, 0, 0), -math.pi / 2),
    ((0, 1, 0), math.pi / 2), ((0, 1, 0), -math.pi / 2),
    ((0, 0, 1), math.pi / 2), ((0, 0, 1), -math.pi / 2),
]


@dataclass(frozen=True)
class CubicRotation:
    index: int
    matrix: np.ndarray
    axis: np.ndarray
    angle: float

    @property
    def name(self) -> str:
        return "1" if self.index == 0 else f"Q{self.index}"


def _dyadic_matrix(spec: str) -> np.ndarray:
    m = np.zeros((3, 3), dtype=int)
    for term in spec.split():
        sign = -1 if term[0] == "-" else 1
        m[int(term[1]) - 1, int(term[2]) - 1] = sign
    return m


@lru_cache(maxsize=1)
def _group() -> tuple[CubicRotation, ...]:
    out = []
    for k, (spec, (axis, angle)) in enumerate(zip(_DYADICS, _AXES_ANGLES)):
        mat = _dyadic_matrix(spec)
        mat.setflags(write=False)
        ax = np.array(axis, dtype=float) / np.linalg.norm(axis)
        ax.setflags(write=False)
        out.append(CubicRotation(k, mat, ax, angle))
    return tuple(out)


def cubic_group() -> list[CubicRotation]:
    """Identity followed by Q1..Q23, as exact integer matrices."""
    return list(_group())


@dataclass(frozen=True)
class SymmetryTable:
    """``entries[s-1, q] = i`` iff ``Q_q U_s Q_q^T = U_i``."""

    entries: np.ndarray

    def __getitem__(self, key) -> int:
        s, q = key
        return int(self.entries[s - 1, q])

    def matches_fixture(self) -> bool:
        return bool(np.array_equal(self.entries, load_table1()))


def build_symmetry_table(variants, tol: float = 1e-10) -> SymmetryTable:
    """Recompute the 6x24 conjugation table for a variant set."""
    u = variants.u
    table = np.zeros((6, 24), dtype=int)
    for s in range(6):
        for rot in _group():
            q = rot.matrix
            conj = q @ u[s] @ q.T
            hits = [i for i in range(6) if np.linalg.norm(conj - u[i]) <= tol]
            if len(hits) != 1:
                raise NoMatch(f"Q{rot.index} U_{s + 1} Q^T matches variants {[h + 1 for h in hits]}")
            table[s, rot.index] = hits[0] + 1
    return SymmetryTable(table)


def conjugating_rotations(s: int, l: int) -> list[CubicRotation]:
    """All cubic rotations with ``Q U_s Q^T = U_l`` (read off the fixture table)."""
    if not (1 <= s <= 6 and 1 <= l <= 6):
        raise ValueError("variant indices must lie in 1..6")
    table = load_table1()
    return [rot for rot in _group() if table[s - 1, rot.index] == l]


def rotation_by_name(name: str) -> CubicRotation:
    key = name.strip().upper()
    idx = 0 if key in ("1", "I", "ID") else int(key.lstrip("Q"))
    return _group()[idx]
