"""Printed twin, habit-plane and corner tables for the CuAlNi specimen.

Entries are stored symbolically (e.g. ``"-s1"``) and resolved against a
constants mapping with :func:`resolve`.  Pair keys are the printed row
labels ``(l, s)``: the row ``(1, 3)`` holds the solution of
``Q U_1 - U_3 = a (x) n`` and of the habit equation for ``U_3``.
"""

from __future__ import annotations

from importlib import resources

import numpy as np

# Printed numeric constants (6 significant figures).
TWIN_CONSTANTS = {
    "u1": 0.197977, "u2": -0.173644, "u3": 0.00379754,
    "t1": -0.688388, "t2": -0.228571,
    "v1": 0.197977, "v2": -0.173644, "v3": 0.00379754,
}

HABIT_CONSTANTS = {
    "s1": 0.141221, "s2": 0.668151, "s3": 0.730501,
    "s4": 0.261549, "s5": 0.727152, "s6": 0.634699,
    "z1": 0.0244382, "z2": 0.0728267, "z3": 0.0575181,
    "z4": 0.0123419, "z5": 0.0674388, "z6": 0.0671488,
}

LAMBDA_STAR = 0.300782
DELTA = -2.37742
ETA = 0.0091991
INJ_SIGN = -0.0226521
NORM_CHECK = 3.10099
COF_NORM = 3.01206
A_MINUS_B = 0.202513

COMPOUND_PAIRS = frozenset({(1, 2), (2, 1), (3, 4), (4, 3), (5, 6), (6, 5)})


def _parse(block: str) -> dict:
    table = {}
    for line in block.strip().splitlines():
        pair, first, second = (part.strip() for part in line.split("|"))
        key = tuple(int(c) for c in pair.split(","))
        table[key] = (tuple(first.split()), tuple(second.split()))
    return table


# Type-I: (sqrt(2) n, a)
TYPE_I = _parse("""
1,3 | 1 -1 0 | u1 u2 u3
3,1 | 1 -1 0 | -u2 -u1 -u3
1,4 | 1 1 0 | u1 -u2 -u3
4,1 | 1 1 0 | -u2 u1 u3
1,5 | 1 0 -1 | u1 u3 u2
5,1 | 1 0 -1 | -u2 -u3 -u1
1,6 | 1 0 1 | u1 -u3 -u2
6,1 | 1 0 1 | -u2 u3 u1
2,3 | 1 1 0 | u1 -u2 u3
3,2 | 1 1 0 | -u2 u1 -u3
2,4 | 1 -1 0 | u1 u2 -u3
4,2 | 1 -1 0 | -u2 -u1 u3
2,5 | 1 0 1 | u1 u3 -u2
5,2 | 1 0 1 | -u2 -u3 u1
2,6 | 1 0 -1 | u1 -u3 u2
6,2 | 1 0 -1 | -u2 u3 -u1
3,5 | 0 1 -1 | u3 u1 u2
5,3 | 0 1 -1 | -u3 -u2 -u1
3,6 | 0 1 1 | -u3 u1 -u2
6,3 | 0 1 1 | u3 -u2 u1
4,5 | 0 1 1 | u3 u1 -u2
5,4 | 0 1 1 | -u3 -u2 u1
4,6 | 0 1 -1 | -u3 -u1 u2
6,4 | 0 1 -1 | u3 -u2 -u1
""")

# Printed entries that fail the twin equation, with the sign pattern that
# satisfies it (confirmed by the generic solver and det(U_s + a n) = det U_s).
TYPE_I_CORRECTIONS = {
    (4, 6): (("0", "1", "-1"), ("-u3", "u1", "u2")),
}

# Type-II: (n, a)
TYPE_II = _parse("""
1,3 | t1 t1 t2 | v1 v2 v3
3,1 | t1 t1 t2 | v2 v1 v3
1,4 | -t1 t1 t2 | -v1 v2 v3
4,1 | -t1 t1 t2 | -v2 v1 v3
1,5 | t1 t2 t1 | v1 v3 v2
5,1 | t1 t2 t1 | v2 v3 v1
1,6 | -t1 t2 t1 | -v1 v3 v2
6,1 | -t1 t2 t1 | -v2 v3 v1
2,3 | t1 -t1 t2 | v1 -v2 v3
3,2 | t1 -t1 t2 | v2 -v1 v3
2,4 | t1 t1 -t2 | v1 v2 -v3
4,2 | t1 t1 -t2 | v2 v1 -v3
2,5 | t1 t2 -t1 | v1 v3 -v2
5,2 | t1 t2 -t1 | v2 v3 -v1
2,6 | t1 -t2 t1 | v1 -v3 v2
6,2 | t1 -t2 t1 | v2 -v3 v1
3,5 | t2 t1 t1 | v3 v1 v2
5,3 | t2 t1 t1 | v3 v2 v1
3,6 | t2 -t1 t1 | v3 -v1 v2
6,3 | t2 -t1 t1 | v3 -v2 v1
4,5 | t2 t1 -t1 | v3 v1 -v2
5,4 | t2 t1 -t1 | v3 v2 -v1
4,6 | -t2 t1 t1 | -v3 v1 v2
6,4 | -t2 t1 t1 | -v3 v2 v1
""")

# Habit tables: (m, b).  Keys: (branch, kappa) with branch "small" for
# lambda in (0, 1/2) and "large" for lambda in (1/2, 1).
HABIT = {
    ("small", +1): _parse("""
1,3 | -s1 s2 -s3 | -z1 -z2 -z3
3,1 | -s2 s1 s3 | z2 z1 z3
1,4 | s4 -s5 -s6 | z4 z5 -z6
4,1 | -s5 s4 s6 | z5 z4 z6
1,5 | s1 s3 -s2 | z1 z3 z2
5,1 | -s5 -s6 -s4 | z5 -z6 -z4
1,6 | s4 -s6 -s5 | z4 -z6 z5
6,1 | -s2 -s3 -s1 | z2 -z3 -z1
2,3 | s4 -s5 s6 | z4 z5 z6
3,2 | -s2 -s1 s3 | z2 -z1 z3
2,4 | -s1 s2 s3 | -z1 -z2 z3
4,2 | -s5 -s4 s6 | z5 -z4 z6
2,5 | s4 s6 -s5 | z4 z6 z5
5,2 | -s5 -s6 s4 | z5 -z6 z4
2,6 | s1 -s3 -s2 | z1 -z3 z2
6,2 | -s2 -s3 s1 | z2 -z3 z1
3,5 | s3 s1 -s2 | z3 z1 z2
5,3 | s3 -s2 s1 | z3 z2 z1
3,6 | s3 -s1 -s2 | z3 -z1 z2
6,3 | -s6 s5 -s4 | -z6 -z5 -z4
4,5 | s6 s4 -s5 | z6 z4 z5
5,4 | s3 -s2 -s1 | z3 z2 -z1
4,6 | s6 -s4 -s5 | z6 -z4 z5
6,4 | -s6 s5 s4 | -z6 -z5 z4
"""),
    ("small", -1): _parse("""
1,3 | s4 s5 s6 | z4 -z5 z6
3,1 | -s5 -s4 -s6 | z5 -z4 -z6
1,4 | -s1 -s2 s3 | -z1 z2 z3
4,1 | -s2 -s1 -s3 | z2 -z1 -z3
1,5 | -s4 -s6 -s5 | -z4 -z6 z5
5,1 | -s2 s3 s1 | z2 z3 z1
1,6 | -s1 s3 -s2 | -z1 z3 z2
6,1 | -s5 s6 s4 | z5 z6 z4
2,3 | -s1 -s2 -s3 | -z1 z2 -z3
3,2 | -s5 s4 -s6 | z5 z4 -z6
2,4 | s4 s5 -s6 | z4 -z5 -z6
4,2 | -s2 s1 -s3 | z2 z1 -z3
2,5 | -s1 -s3 -s2 | -z1 -z3 z2
5,2 | -s2 s3 -s1 | z2 z3 -z1
2,6 | -s4 s6 -s5 | -z4 z6 z5
6,2 | -s5 s6 -s4 | z5 z6 -z4
3,5 | -s6 -s4 -s5 | -z6 -z4 z5
5,3 | -s6 -s5 -s4 | -z6 z5 -z4
3,6 | -s6 s4 -s5 | -z6 z4 z5
6,3 | s3 s2 s1 | z3 -z2 z1
4,5 | -s3 -s1 -s2 | -z3 -z1 z2
5,4 | -s6 -s5 s4 | -z6 z5 z4
4,6 | -s3 s1 -s2 | -z3 z1 z2
6,4 | s3 s2 -s1 | z3 -z2 -z1
"""),
    ("large", +1): _parse("""
1,3 | -s2 s1 s3 | z2 z1 z3
3,1 | s4 s5 s6 | z4 -z5 z6
1,4 | -s5 s4 s6 | z5 z4 z6
4,1 | -s1 -s2 s3 | -z1 z2 z3
1,5 | -s5 -s6 -s4 | z5 -z6 -z4
5,1 | s1 s3 -s2 | z1 z3 z2
1,6 | -s2 -s3 -s1 | z2 -z3 -z1
6,1 | s4 -s6 -s5 | z4 -z6 z5
2,3 | -s2 -s1 s3 | z2 -z1 z3
3,2 | s4 -s5 s6 | z4 z5 z6
2,4 | -s5 -s4 s6 | z5 -z4 z6
4,2 | -s1 s2 s3 | -z1 -z2 z3
2,5 | -s5 -s6 s4 | z5 -z6 z4
5,2 | s1 s3 s2 | z1 z3 -z2
2,6 | -s2 -s3 s1 | z2 -z3 z1
6,2 | s4 -s6 s5 | z4 -z6 -z5
3,5 | s3 -s2 s1 | z3 z2 z1
5,3 | s3 s1 -s2 | z3 z1 z2
3,6 | -s6 s5 -s4 | -z6 -z5 -z4
6,3 | s3 -s1 -s2 | z3 -z1 z2
4,5 | s3 -s2 -s1 | z3 z2 -z1
5,4 | s6 s4 -s5 | z6 z4 z5
4,6 | -s6 s5 s4 | -z6 -z5 z4
6,4 | s6 -s4 -s5 | z6 -z4 z5
"""),
    ("large", -1): _parse("""
1,3 | -s5 -s4 -s6 | z5 -z4 -z6
3,1 | -s1 s2 -s3 | -z1 -z2 -z3
1,4 | -s2 -s1 -s3 | z2 -z1 -z3
4,1 | s4 -s5 -s6 | z4 z5 -z6
1,5 | -s2 s3 s1 | z2 z3 z1
5,1 | -s4 -s6 -s5 | -z4 -z6 z5
1,6 | -s5 s6 s4 | z5 z6 z4
6,1 | -s1 s3 -s2 | -z1 z3 z2
2,3 | -s5 s4 -s6 | z5 z4 -z6
3,2 | -s1 -s2 -s3 | -z1 z2 -z3
2,4 | -s2 s1 -s3 | z2 z1 -z3
4,2 | s4 s5 -s6 | z4 -z5 -z6
2,5 | -s2 s3 -s1 | z2 z3 -z1
5,2 | -s4 -s6 s5 | -z4 -z6 -z5
2,6 | -s5 s6 -s4 | z5 z6 -z4
6,2 | -s1 s3 s2 | -z1 z3 -z2
3,5 | -s6 -s5 -s4 | -z6 z5 -z4
5,3 | -s6 -s4 -s5 | -z6 -z4 z5
3,6 | s3 s2 s1 | z3 -z2 z1
6,3 | -s6 s4 -s5 | -z6 z4 z5
4,5 | -s6 -s5 s4 | -z6 z5 z4
5,4 | -s3 -s1 -s2 | -z3 -z1 z2
4,6 | s3 s2 -s1 | z3 -z2 -z1
6,4 | -s3 s1 -s2 | -z3 z1 z2
"""),
}

# Corner tables: s -> ({l: (sign, kappa)}, octants).
CORNER = {
    "small": {
        1: ({3: (+1, -1), 4: (-1, +1), 5: (+1, +1), 6: (-1, -1)}, (1, 2, 5, 6)),
        2: ({3: (+1, -1), 4: (+1, +1), 5: (+1, +1), 6: (+1, -1)}, (3, 4, 7, 8)),
        3: ({1: (-1, -1), 2: (-1, +1), 5: (+1, -1), 6: (+1, +1)}, (1, 3, 5, 7)),
        4: ({1: (+1, +1), 2: (-1, -1), 5: (+1, -1), 6: (-1, +1)}, (2, 4, 6, 8)),
        5: ({1: (+1, -1), 2: (-1, +1), 3: (+1, -1), 4: (-1, +1)}, (1, 4, 5, 8)),
        6: ({1: (+1, +1), 2: (+1, -1), 3: (+1, -1), 4: (+1, +1)}, (2, 3, 6, 7)),
    },
    "large": {
        1: ({3: (-1, +1), 4: (+1, -1), 5: (+1, -1), 6: (+1, +1)}, (1, 2, 5, 6)),
        2: ({3: (-1, +1), 4: (-1, -1), 5: (+1, -1), 6: (-1, +1)}, (3, 4, 7, 8)),
        3: ({1: (+1, -1), 2: (+1, -1), 5: (+1, -1), 6: (+1, -1)}, (1, 3, 5, 7)),
        4: ({1: (-1, +1), 2: (+1, +1), 5: (-1, +1), 6: (+1, +1)}, (2, 4, 6, 8)),
        5: ({1: (+1, +1), 2: (+1, +1), 3: (+1, -1), 4: (+1, -1)}, (1, 4, 5, 8)),
        6: ({1: (-1, -1), 2: (+1, -1), 3: (+1, +1), 4: (-1, +1)}, (2, 3, 6, 7)),
    },
}


def resolve(entry, constants) -> np.ndarray:
    """Evaluate a symbolic triple such as ``("-s1", "s2", "0")``."""
    out = []
    for token in entry:
        sign = -1.0 if token.startswith("-") else 1.0
        name = token.lstrip("-")
        out.append(sign * (constants[name] if name in constants else float(name)))
    return np.array(out)


def load_table1() -> np.ndarray:
    """The 6x24 symmetry table, rows U_1..U_6, columns 1, Q_1..Q_23."""
    text = resources.files("martnuc").joinpath("fixtures/table1.csv").read_text()
    rows = [[int(x) for x in line.split(",")] for line in text.strip().splitlines()]
    return np.array(rows, dtype=int)
