"""Parallelepiped specimens and their admissibility for a given variant."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateSpecimen
from .lattice import DEFAULT, LatticeParams, variants
from .mat3 import unit
from .maxdirs import in_M, in_N, in_Ninv, in_UinvSq_Minv

# Sign patterns of the octants O1..O8; O_{k+4} = -O_k.
OCTANT_SIGNS = {
    1: (1, 1, 1), 2: (-1, 1, 1), 3: (1, -1, 1), 4: (1, 1, -1),
    5: (-1, -1, -1), 6: (1, -1, -1), 7: (-1, 1, -1), 8: (-1, -1, 1),
}
_OCTANT_OF = {v: k for k, v in OCTANT_SIGNS.items()}


def octant_of(x, tol: float = 1e-9) -> int | None:
    """Index of the open octant containing ``x``; ``None`` on a coordinate plane."""
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) <= tol):
        return None
    return _OCTANT_OF[tuple(int(v) for v in np.sign(x))]


def antipode(octant: int) -> int:
    return octant + 4 if octant <= 4 else octant - 4


@dataclass(frozen=True)
class Parallelepiped:
    """Box ``origin + sum c_i edges[i]`` with ``c_i`` in [0, 1]."""

    origin: np.ndarray
    edges: np.ndarray
    corners: np.ndarray = field(init=False, repr=False)
    corner_octants: tuple = field(init=False, repr=False)

    def __post_init__(self):
        edges = np.asarray(self.edges, dtype=float).reshape(3, 3)
        origin = np.asarray(self.origin, dtype=float).reshape(3)
        if abs(np.linalg.det(edges)) <= 1e-12:
            raise DegenerateSpecimen("edge vectors are linearly dependent")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "origin", origin)
        coeffs = np.array(list(itertools.product((0.0, 1.0), repeat=3)))
        corners = origin + coeffs @ edges
        # Tagged in the edge frame so skewed boxes still get one corner per octant;
        # for axis-aligned boxes this is the lab octant.
        tags = tuple(octant_of(c - 0.5) for c in coeffs)
        object.__setattr__(self, "corners", corners)
        object.__setattr__(self, "corner_octants", tags)

    @classmethod
    def axis_aligned(cls, lengths=(1.0, 1.0, 1.0), center=(0.0, 0.0, 0.0)) -> "Parallelepiped":
        lengths = np.asarray(lengths, dtype=float)
        return cls(np.asarray(center) - 0.5 * lengths, np.diag(lengths))

    @property
    def center(self) -> np.ndarray:
        return self.origin + 0.5 * self.edges.sum(axis=0)

    @property
    def edge_directions(self) -> np.ndarray:
        return np.array([unit(e) for e in self.edges])

    def face_normals(self) -> np.ndarray:
        """Six outward unit normals, two per pair of spanning edges."""
        out = []
        for j, k in ((1, 2), (2, 0), (0, 1)):
            nrm = unit(np.cross(self.edges[j], self.edges[k]))
            i = 3 - j - k
            if nrm @ self.edges[i] < 0:
                nrm = -nrm
            out.extend([nrm, -nrm])
        return np.array(out)

    def edge_lines(self) -> list[tuple[np.ndarray, np.ndarray]]:
        """Twelve edges as (start point, edge vector)."""
        lines = []
        for i in range(3):
            others = [k for k in range(3) if k != i]
            for c1, c2 in itertools.product((0.0, 1.0), repeat=2):
                start = self.origin + c1 * self.edges[others[0]] + c2 * self.edges[others[1]]
                lines.append((start, self.edges[i].copy()))
        return lines

    def contains(self, x, tol: float = 0.0) -> np.ndarray:
        coeffs = np.linalg.solve(self.edges.T, (np.asarray(x, dtype=float) - self.origin).T).T
        return np.all((coeffs >= -tol) & (coeffs <= 1.0 + tol), axis=-1)


@dataclass(frozen=True)
class EdgeVerdict:
    direction: np.ndarray
    admissible: bool
    via: str | None


@dataclass(frozen=True)
class FaceVerdict:
    normal: np.ndarray
    admissible: bool
    via: str | None


def edge_admissible(s: int, direction, params: LatticeParams = DEFAULT) -> EdgeVerdict:
    """Edge parallel to an element of ``M_s`` or of ``U_s^-2 M_s^-1`` (either sign)."""
    e = unit(direction)
    for d in (e, -e):
        if in_M(s, d, params):
            return EdgeVerdict(e, True, "M")
    for d in (e, -e):
        if in_UinvSq_Minv(s, d, params):
            return EdgeVerdict(e, True, "UM")
    return EdgeVerdict(e, False, None)


def face_admissible(s: int, normal, params: LatticeParams = DEFAULT) -> FaceVerdict:
    """Normal in ``N_s`` or in ``U_s^2 N_s^-1``."""
    n = unit(normal)
    if in_N(s, n, params):
        return FaceVerdict(n, True, "N")
    u = variants(params)[s]
    if in_Ninv(s, unit(np.linalg.solve(u @ u, n)), params):
        return FaceVerdict(n, True, "UN")
    return FaceVerdict(n, False, None)


@dataclass(frozen=True)
class AdmissibilityReport:
    variant: int
    edges: tuple[EdgeVerdict, ...]
    faces: tuple[FaceVerdict, ...]

    @property
    def domain_admissible(self) -> bool:
        return all(e.admissible for e in self.edges)

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "edges": [{"dir": e.direction.tolist(), "admissible": e.admissible, "via": e.via}
                      for e in self.edges],
            "faces": [{"normal": f.normal.tolist(), "admissible": f.admissible, "via": f.via}
                      for f in self.faces],
            "domain_admissible": self.domain_admissible,
        }


def classify_specimen(s: int, box: Parallelepiped, params: LatticeParams = DEFAULT) -> AdmissibilityReport:
    per_direction = [edge_admissible(s, d, params) for d in box.edge_directions]
    edges = tuple(per_direction[i] for i in range(3) for _ in range(4))
    faces = tuple(face_admissible(s, n, params) for n in box.face_normals())
    return AdmissibilityReport(s, edges, faces)
