"""Acceptance criteria 1-12 at their stated tolerances.

Each test records its verdict in ``conftest.CRITERIA`` before asserting so the
terminal summary prints one PASS/FAIL line per criterion.  Criteria 1 and 12
are strict xfails: the published Type-I triple (u1, u2, u3) repeats the
Type-II triple (v1, v2, v3) and does not solve the twin equation, so both the
constant check and the regression driver report it as failing.
"""

import itertools
import json
import time

import numpy as np
import pytest

from conftest import CRITERIA
from martnuc.cli import main
from martnuc.habit import BRANCHES, habit_solutions, solve_volume_fractions, verify_habit
from martnuc.lattice import DEFAULT, check_assumptions, variants
from martnuc.maxdirs import (check_rigidity, coverage_witness, fibonacci_sphere, in_M,
                             in_UinvSq_Minv, label_directions, oracle_agreement)
from martnuc.nucleation import (build_construction, energy_change, enumerate_candidates,
                                laminate_minors_check, nucleating_octants, verify_injectivity)
from martnuc.specimen import Parallelepiped, classify_specimen
from martnuc.symmetry import build_symmetry_table, cubic_group
from martnuc.tables import (A_MINUS_B, COF_NORM, CORNER, DELTA, HABIT, HABIT_CONSTANTS, INJ_SIGN,
                           LAMBDA_STAR, NORM_CHECK, TWIN_CONSTANTS, load_table1, resolve)
from martnuc.twinning import tabulated_pairs, twin, twin_constants, type2_twin

PAIRS = tabulated_pairs()


def record(num: int, title: str, ok: bool, detail: str = "") -> None:
    CRITERIA[num] = (title, bool(ok))
    print(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {title}{'  ' + detail if detail else ''}")


def timed(func):
    start = time.perf_counter()
    value = func()
    return value, time.perf_counter() - start


@pytest.mark.xfail(strict=True, reason="published u triple repeats v and fails the twin equation")
def test_criterion_01_twin_constants():
    consts, elapsed = timed(lambda: twin_constants(DEFAULT))
    errors = {k: abs(getattr(consts, k) - v) for k, v in TWIN_CONSTANTS.items()}
    worst = max(errors, key=errors.get)
    ok = all(e <= 5e-6 for e in errors.values()) and elapsed < 1e-3
    record(1, "twin constants", ok, f"worst {worst} off by {errors[worst]:.3g}, {elapsed * 1e3:.3f} ms")
    assert ok


def test_criterion_02_habit_invariants():
    def solve_all():
        return [solve_volume_fractions(type2_twin(DEFAULT, s, l)) for s, l in PAIRS]

    invs, elapsed = timed(solve_all)
    lam_err = max(abs(i.lambda_star - LAMBDA_STAR) for i in invs)
    delta_err = max(abs(i.delta - DELTA) for i in invs)
    ok = lam_err <= 1e-5 and delta_err <= 1e-4 and elapsed < 0.1
    record(2, "habit invariants", ok, f"lambda* err {lam_err:.2g}, delta err {delta_err:.2g}, "
                                      f"{elapsed * 1e3:.1f} ms")
    assert ok


def test_criterion_03_habit_tables():
    worst_row, worst_res, rows = 0.0, 0.0, 0
    for s, l in PAIRS:
        tw = type2_twin(DEFAULT, s, l)
        inv = solve_volume_fractions(tw)
        sols = [habit_solutions(tw, b, k, inv) for b in BRANCHES for k in (1, -1)]
        for sol in sols:
            res = verify_habit(sol, tw)
            worst_res = max(worst_res, res.equation, res.identity)
        for branch, kappa in itertools.product(BRANCHES, (1, -1)):
            m_row, b_row = HABIT[(branch, kappa)][(l, s)]
            printed = np.outer(resolve(b_row, HABIT_CONSTANTS), resolve(m_row, HABIT_CONSTANTS))
            candidates = [sol.tensor() for sol in sols if sol.branch == branch]
            worst_row = max(worst_row, min(np.abs(printed - c).max() for c in candidates))
            rows += 1
    ok = rows == 96 and worst_row <= 5e-6 and worst_res <= 1e-8
    record(3, "habit tables", ok, f"{rows} rows, worst {worst_row:.2g}, residual {worst_res:.2g}")
    assert ok


def test_criterion_04_symmetry_table():
    table = build_symmetry_table(variants(DEFAULT))
    matches = int((table.entries == load_table1()).sum())
    ok = matches == 144 and table[3, 14] == 5 and len(cubic_group()) == 24
    record(4, "symmetry table", ok, f"{matches}/144")
    assert ok


def test_criterion_05_assumption_values():
    rep = check_assumptions(DEFAULT)
    errs = (abs(rep.norm_check - NORM_CHECK), abs(rep.cof_norm - COF_NORM),
            abs(rep.a_minus_b - A_MINUS_B))
    ok = max(errs) <= 1e-4 and rep.all_hold
    record(5, "assumption values", ok, f"worst error {max(errs):.2g}")
    assert ok


@pytest.fixture(scope="module")
def all_candidates():
    return {s: enumerate_candidates(s) for s in range(1, 7)}


def test_criterion_06_injectivity_constant(all_candidates):
    valid = [c for s in range(1, 7) for c in all_candidates[s] if c.valid]
    err = max(abs(c.inj_sign - INJ_SIGN) for c in valid)
    ok = len(valid) == 96 and err <= 1e-5
    record(6, "injectivity constant", ok, f"{len(valid)} candidates, worst error {err:.2g}")
    assert ok


def test_criterion_07_octant_verdicts(all_candidates):
    ok = True
    for s in range(1, 7):
        verdict = nucleating_octants(s, candidates=all_candidates[s])
        expected = CORNER["small"][s][1]
        ok &= verdict.octants == expected == CORNER["large"][s][1]
        ok &= len(verdict.octants) == 4 and verdict.is_antipode_closed()
    record(7, "octant verdicts", ok)
    assert ok


def test_criterion_08_maximal_directions():
    ok, slowest = True, 0.0
    pts = fibonacci_sphere(100_000, seed=0)
    for s in range(1, 7):
        start = time.perf_counter()
        rep = oracle_agreement(s, pts)
        labels = label_directions(s, pts)
        slowest = max(slowest, time.perf_counter() - start)
        ok &= rep["mismatches"] == 0 and not np.any(labels == "BOTH")
    e, _ = coverage_witness(1)
    np.testing.assert_allclose(e, [0, 1 / np.sqrt(2), -1 / np.sqrt(2)])
    ok &= not any(f(1, d) for f in (in_M, in_UinvSq_Minv) for d in (e, -e))
    ok &= slowest < 5.0
    record(8, "maximal-direction oracles", ok, f"slowest variant {slowest:.2f} s")
    assert ok


def test_criterion_09_specimen_verdicts():
    axis = Parallelepiped.axis_aligned()
    skew = Parallelepiped(np.zeros(3), np.array([[1.0, 0, 0], [0, 1, -1], [0, 1, 1]]))
    ok = all(classify_specimen(s, axis).domain_admissible for s in range(1, 7))
    ok &= not classify_specimen(1, skew).domain_admissible
    record(9, "specimen verdicts", ok)
    assert ok


def test_criterion_10_constructions(all_candidates):
    start = time.perf_counter()
    built = 0
    ok = True
    for s in range(1, 7):
        verdict = nucleating_octants(s, candidates=all_candidates[s])
        for octant in verdict.octants:
            cand = verdict.witnesses[octant][0]
            con = build_construction(cand)
            rep = verify_injectivity(con, count=100_000, seed=0, raise_on_failure=False)
            ok &= max(con.jump_residuals().values()) <= 1e-10
            ok &= rep.analytic_ok and rep.collisions == 0
            ok &= energy_change(con) < 0
            built += 1
    elapsed = time.perf_counter() - start
    ok &= built == 24 and elapsed < 10.0
    record(10, "corner constructions", ok, f"{built} built in {elapsed:.2f} s")
    assert ok


def test_criterion_11_property_suites():
    rng = np.random.default_rng(11)
    minors = max(laminate_minors_check(type2_twin(DEFAULT, s, l), lam)
                 for s, l in PAIRS for lam in np.linspace(0.0, 1.0, 11))
    minors = max(minors, *(laminate_minors_check(twin(DEFAULT, s, l, "I"), lam)
                           for s, l in PAIRS for lam in (0.3, 0.7)))
    rigid_ok = True
    for trial in range(1000):
        k = int(rng.integers(3, 12))
        t = np.sort(rng.uniform(0, 1, k))
        t[0], t[-1] = 0.0, 1.0
        a, b = rng.normal(size=3), rng.normal(size=3)
        sig = a + t[:, None] * (b - a)
        on_chord = trial % 2 == 0
        if not on_chord:
            i = int(rng.integers(1, k - 1))
            sig[i] = sig[i] + rng.normal(size=3) * 10 ** rng.uniform(-6, 0)
        rigid_ok &= check_rigidity(list(zip(t, sig))) is on_chord
    keys = {g.matrix.tobytes() for g in cubic_group()}
    closed = all((a.matrix @ b.matrix).tobytes() in keys
                 for a, b in itertools.product(cubic_group(), repeat=2))
    table = build_symmetry_table(variants(DEFAULT))
    transport = True
    for g in cubic_group():
        p = g.matrix.astype(float)
        for s, l in PAIRS[::6]:
            moved = p @ type2_twin(DEFAULT, s, l).tensor() @ p.T
            s2, l2 = table[s, g.index], table[l, g.index]
            targets = [twin(DEFAULT, s2, l2, k).tensor() for k in ("I", "II")]
            transport &= min(np.abs(moved - t).max() for t in targets) <= 1e-10
    ok = minors <= 1e-10 and rigid_ok and closed and transport
    record(11, "property suites", ok, f"minors residual {minors:.2g}")
    assert ok


@pytest.mark.xfail(strict=True, reason="regression driver includes the published u triple")
def test_criterion_12_verify_paper(capsys):
    start = time.perf_counter()
    code = main(["verify-paper"])
    elapsed = time.perf_counter() - start
    out, _ = capsys.readouterr()
    rec = json.loads(out)
    failed = [r["name"] for r in rec["results"] if not r["passed"]]
    ok = code == 0 and rec["total"] >= 20 and elapsed < 30.0
    with capsys.disabled():
        record(12, "verify-paper", ok, f"exit {code}, {rec['total']} checks, failing {failed}, "
                                       f"{elapsed:.2f} s")
    assert ok
