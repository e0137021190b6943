"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

The D4 period item is the one known red: the exact T-system of D4 (trivial
Delta) returns to its initial state after N = 4, so the smallest period is 4
rather than 8.  That sub-check is a strict xfail; everything else in the
period criterion is asserted normally.
"""

from __future__ import annotations

import contextlib
import math
import random
import time
from fractions import Fraction as F

import pytest

from color_sets_data import COLOR_SETS
from zamolod.biagram import (
    coxeter_numbers,
    color_sets,
    fixed_point_labeling,
    fixed_point_residual,
    is_strictly_subadditive,
    parse_type,
    strictly_subadditive_labeling,
    template_matrix,
    all_types,
)
from zamolod.catalog import (
    D5A7_FOLD,
    FamilySpec,
    build,
    derivation_script,
    enumerate_by_rank,
    fixtures,
    sweep,
)
from zamolod.exchange import find_symmetrizer
from zamolod.laurent import LaurentPoly
from zamolod import tropical, tsystem, wgraph
from zamolod.transform import find_isomorphism, fold_biagram, global_flip, orbits_of, replay

_RESULTS: dict = {}


@pytest.fixture
def report(capsys):
    """Print one PASS/FAIL line for a criterion, whatever the outcome."""

    @contextlib.contextmanager
    def _report(num: int, title: str):
        t0 = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            _RESULTS[num] = ok
            with capsys.disabled():
                print(f"\nCRITERION {num:2d} {'PASS' if ok else 'FAIL'}  {title}  ({time.perf_counter() - t0:.2f}s)")

    return _report


# ---------------------------------------------------------------------------
# 1. tropical table of the B3/G2 double binding
# ---------------------------------------------------------------------------

# t -> {k (1-based): value}
E5_ROWS = {
    0: {2: 0, 5: 1}, 1: {1: 0, 3: 0, 4: 0}, 2: {2: 0, 5: -1}, 3: {1: 0, 3: 0, 4: 0},
    4: {2: 0, 5: 1}, 5: {1: 1, 3: 1, 4: 1}, 6: {2: 3, 5: 2}, 7: {1: 2, 3: 2, 4: 2},
    8: {2: 3, 5: 4}, 9: {1: 2, 3: 2, 4: 2}, 10: {2: 3, 5: 2}, 11: {1: 1, 3: 1, 4: 1},
    12: {2: 0, 5: 1}, 13: {1: 0, 3: 0, 4: 0},
}


def test_criterion_01_tropical_table(report):
    with report(1, "tropical table of B3 bowtie_1 G2 from e5, period 6"):
        t0 = time.perf_counter()
        bg = build(FamilySpec("B3bowtie1G2"))
        lam = tropical.parse_lambda("e5", bg.n)
        tr = tropical.evolve(bg, lam, 13)
        N = tropical.trop_period(bg, lam)
        elapsed = time.perf_counter() - t0
        assert len(tr.states) == 14
        for t, row in E5_ROWS.items():
            assert tr.states[t].values == {k - 1: F(v) for k, v in row.items()}, t
        assert N == 6
        assert elapsed < 0.1


# ---------------------------------------------------------------------------
# 2. first steps of the exact T-system on the 5x5 matrix
# ---------------------------------------------------------------------------

def test_criterion_02_exact_first_steps(report):
    with report(2, "exact T-system first steps on the 5x5 matrix"):
        t0 = time.perf_counter()
        bg = build(FamilySpec("B3bowtie1G2"))
        traj = tsystem.evolve(bg, 3)
        elapsed = time.perf_counter() - t0
        x = [LaurentPoly.var(5, i) for i in range(5)]
        num = x[0] * x[2] ** 2 + x[3] ** 3
        inv = lambda p: p ** -1
        assert traj[2].values[1] == num * inv(x[1])
        assert traj[2].values[4] == num * inv(x[4])
        assert traj[3].values[0] == num * inv(x[0] * x[1]) + num * inv(x[0] * x[4])
        assert traj[3].values[2] == num * inv(x[2] * x[1]) + num * inv(x[2] * x[4])
        assert elapsed < 0.1


# ---------------------------------------------------------------------------
# 3. exact periods
# ---------------------------------------------------------------------------

D4 = FamilySpec("tensor", variant="D4,A1")


def test_criterion_03_periods(report):
    t0 = time.perf_counter()
    try:
        assert tsystem.detect_period(build(FamilySpec("tensor", variant="E6,A1"))) == 14
        assert tsystem.detect_period(build(FamilySpec("A2xA3-tensor"))) == 7
        assert tsystem.detect_period(build(FamilySpec("tensor", variant="A3,A2"))) == 7
        assert tsystem.detect_period(build(FamilySpec("tensor", variant="A2,A2"))) == 6
        # D4: 8 = h_Gamma + h_Delta is a period; the smallest one is 4
        bg = build(D4)
        traj = tsystem.evolve(bg, 33)
        assert all(traj[t] == traj[t + 16] for t in range(18))
        assert tsystem.detect_period(bg) == 4 and 8 % 4 == 0
        assert time.perf_counter() - t0 < 60
        _RESULTS["3-main"] = True
    except Exception:
        _RESULTS["3-main"] = False
        raise


@pytest.mark.xfail(strict=True, reason="minimal exact period of D4 with trivial Delta is 4, not 8")
def test_criterion_03_d4_returns_8(capsys):
    got = tsystem.detect_period(build(D4))
    with capsys.disabled():
        main = "other periods ok" if _RESULTS.get("3-main") else "other periods FAILED"
        print(
            f"\nCRITERION  3 FAIL  exact periods: E6 14, A3xA2 7, A2xA2 6 ({main}); "
            f"D4 detect_period returns {got}, not 8 (8 is a period, 4 is the smallest)"
        )
    assert got == 8


# ---------------------------------------------------------------------------
# 4. A2 x A3 half period
# ---------------------------------------------------------------------------

G, D = tropical.GAMMA, tropical.DELTA
# column t of the half-period record = state t + 1 here (column 0 is lambda)
HALF_PERIOD = {
    1: {0: ("-1", D), 2: ("4.9", D), 4: ("6", G)},
    2: {1: ("6", D), 3: ("5", G), 5: ("2", G)},
    3: {0: ("7", G), 2: ("1.1", G), 4: ("1", G)},
    4: {1: ("2.1", G), 3: ("2", D), 5: ("-0.9", D)},
    5: {0: ("-4.9", G), 2: ("1", G), 4: ("1.1", D)},
    6: {1: ("-1", D), 3: ("-0.9", G), 5: ("2", G)},
    7: {0: ("4", D), 2: ("1", D), 4: ("0", G)},
}


def test_criterion_04_half_period_table(report):
    with report(4, "A2 x A3 half period, mutation colors and counts"):
        t0 = time.perf_counter()
        bg = build(FamilySpec("A2xA3-tensor"))
        lam = tropical.parse_lambda("2,0,-9/10,1,-1,4", bg.n)
        tr = tropical.evolve(bg, lam, 9)
        half = tropical.count_mutations(bg, lam, one_period=False)
        full = tropical.count_mutations(bg, lam)
        elapsed = time.perf_counter() - t0
        for col, cells in HALF_PERIOD.items():
            t = col + 1
            assert tr.states[t].values == {k: F(v) for k, (v, _) in cells.items()}, col
            assert {k: tr.colors[(k, t)] for k in cells} == {k: c for k, (_, c) in cells.items()}, col
        assert (half.n_gamma, half.n_delta) == (12, 9)
        assert full.as_tuple() == (24, 18, 0)
        assert elapsed < 0.1


# ---------------------------------------------------------------------------
# 5. classification sweep
# ---------------------------------------------------------------------------

def test_criterion_05_classification_sweep(report):
    with report(5, "catalog up to rank 14: admissible, recurrent, tropical periodic (20 lambda each)"):
        t0 = time.perf_counter()
        rows = sweep(1, 1, trials=20, seed=20240501, max_rank=14)
        assert len(rows) > 400
        bad = [r["name"] for r in rows if not (r["admissible"] and r["recurrent"] and r["periodic"])]
        assert not bad, bad
        fx = fixtures()
        for key in ("fig:admissible-left", "fig:BCE", "fig:BBCC-left", "fig:BBCC-right"):
            f = fx[key]
            assert not f.bg.is_admissible()
            pairs = {frozenset(p) for p in f.bg.nonadmissible_pairs()}
            assert frozenset(f.witness) in pairs, key
        assert time.perf_counter() - t0 < 600


# ---------------------------------------------------------------------------
# 6. color-set projections
# ---------------------------------------------------------------------------

def _norm(s):
    m = min(s)
    return sorted(x / m for x in s)


def _close(a, b):
    return len(a) == len(b) and all(abs(x - y) <= 5e-4 + 1e-9 for x, y in zip(a, sorted(b)))


def test_criterion_06_color_sets(report):
    with report(6, "color-set projections of left/right dominant eigenvectors"):
        for name, rows in COLOR_SETS.items():
            t = parse_type(name)
            got = [[_norm(s) for s in color_sets(t, side)] for side in ("left", "right")]
            exp = [rows[0], rows[-1]]
            ok = any(
                all(_close(g[a], e[0]) and _close(g[1 - a], e[1]) for g, e in zip(got, exp)) for a in (0, 1)
            )
            assert ok, name


# ---------------------------------------------------------------------------
# 7. labelings
# ---------------------------------------------------------------------------

def test_criterion_07_labelings(report):
    with report(7, "subadditive and fixed-point labelings up to rank 10"):
        for spec, bg in enumerate_by_rank(10):
            lab = strictly_subadditive_labeling(bg)
            assert lab is not None, spec.label
            assert is_strictly_subadditive(bg, lab.values)
            fp = fixed_point_labeling(bg)
            assert fp is not None and fixed_point_residual(bg, fp.values) < 1e-10, spec.label
        fx = fixtures()
        fp = fixed_point_labeling(fx["fig:A3xA3"].bg)
        r2 = 2 * math.sqrt(2)
        assert max(abs(a - b) for a, b in zip(fp.values, (r2, 4, r2, r2, 4, r2))) < 1e-8
        rho = [0.8 if a == 2 else 0.5 for a in range(4) for _ in range(2)]
        assert is_strictly_subadditive(fx["fig:D4A2"].bg, rho)


# ---------------------------------------------------------------------------
# 8. degree oracle
# ---------------------------------------------------------------------------

def test_criterion_08_degree_oracle(report):
    with report(8, "deg_min/deg_max symmetry and tropical delta_i trajectories"):
        for variant in ("A2,A2", "B2,A2"):
            bg = build(FamilySpec("tensor", variant=variant))
            hg, hd = coxeter_numbers(bg)
            N = hg + hd
            traj = tsystem.evolve(bg, 2 * N + 4)
            for i in range(bg.n):
                shift = 2 if bg.eps[i] == "w" else -2
                for t in range(2, 2 * N + 2):
                    for j, p in traj[t].values.items():
                        assert -p.deg_min(i) == traj[t + shift].values[j].deg_max(i), (variant, i, j, t)
            trajs, _ = tropical.delta_labelings_oracle(bg, N)
            for i in range(bg.n):
                for t in range(2 * N + 2):
                    for j, p in traj[t].values.items():
                        assert trajs[i].states[t].values[j] == p.deg_max(i)


# ---------------------------------------------------------------------------
# 9. folding pipeline
# ---------------------------------------------------------------------------

def test_criterion_09_folding(report):
    with report(9, "folding D5 box A7, derivation of B3 bowtie_1 G2, fold and flip covariance"):
        src = build(FamilySpec("D5boxA7"))
        folded = fold_biagram(src, D5A7_FOLD)
        assert find_isomorphism(folded, build(FamilySpec("B4boxC4"))) is not None

        derived = replay(derivation_script(FamilySpec("B3bowtie1G2")))
        assert find_isomorphism(derived, build(FamilySpec("B3bowtie1G2")), respect_colors=False) is not None

        orbits = orbits_of(D5A7_FOLD)
        steps = 2 * sum(coxeter_numbers(src)) + 1
        rng = random.Random(9)
        for _ in range(20):
            vals = [F(rng.randint(-30, 30), rng.randint(1, 7)) for _ in orbits]
            lam = [None] * src.n
            for v, orb in zip(vals, orbits):
                for i in orb:
                    lam[i] = v
            a = tropical.evolve(src, lam, steps)
            b = tropical.evolve(folded, vals, steps)
            for t in range(steps + 1):
                for I, val in b.states[t].values.items():
                    assert all(a.states[t].values[i] == val for i in orbits[I])

        bg = build(FamilySpec("BltD", 3))
        flipped = global_flip(bg)
        c = find_symmetrizer(bg.to_exchange_matrix())
        steps = 2 * sum(coxeter_numbers(bg)) + 1
        for _ in range(20):
            rho = [F(rng.randint(-30, 30), rng.randint(1, 7)) for _ in range(bg.n)]
            a = tropical.evolve(bg, rho, steps)
            b = tropical.evolve(flipped, [r / ci for r, ci in zip(rho, c)], steps)
            for t in range(steps + 1):
                for k, v in a.states[t].values.items():
                    assert b.states[t].values[k] == v / c[k]


# ---------------------------------------------------------------------------
# 10. W-cells
# ---------------------------------------------------------------------------

def test_criterion_10_wcells(report):
    with report(10, "phi_p cell test, Hecke relations on rank <= 8 cells, corrupted weight located"):
        t0 = time.perf_counter()
        for t in all_types(30):
            if t.coxeter_number > 30:
                continue
            a = template_matrix(t)
            for p in range(1, 31):
                assert wgraph.is_I2p_cell(a, p) == (p % t.coxeter_number == 0), (t, p)
        count = 0
        for spec, bg in enumerate_by_rank(8):
            hg, hd = coxeter_numbers(bg)
            for cell in wgraph.product_cells(bg):
                rep = wgraph.verify_hecke_relations(cell, hg, hd)
                assert len(rep) == 10 and all(v is None for v in rep.values())
                count += 1
        assert count > 500
        bg = build(FamilySpec("tensor", variant="B3,A2"))
        hg, hd = coxeter_numbers(bg)
        cell = wgraph.build_product_cell(bg, {1, 3})
        bad = cell.with_weight(0, 1, cell.m[0, 0, 1] + 1)
        with pytest.raises(wgraph.RelationFailure) as exc:
            wgraph.verify_hecke_relations(bad, hg, hd)
        assert exc.value.witness is not None
        assert time.perf_counter() - t0 < 300
