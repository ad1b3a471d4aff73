"""Acceptance criteria 1-9.

Each test prints one line ``criterion N: PASS|FAIL ...`` to the terminal
(bypassing capture) and then asserts.  Criterion 9 depends on a hand
transcription of two lattices and is skipped unless HIBI_ENABLE_MANUAL=1.
"""

import os
import random
import time

import pytest

from conftest import butterfly, expseudo
from hibikit.algebra import buchberger, initial_ideal, is_squarefree, sample_orders
from hibikit.betti import (
    betti_table,
    induced_monotonicity_check,
    linearly_related_observed,
    pure_resolution_observed,
)
from hibikit.errors import TheoremViolated
from hibikit.hibi import join_meet_ideal, verify_gb_theorem
from hibikit.invariants import (
    generalized_comparison,
    hilbert_data,
    is_regular_planar,
    level_necessary,
    level_regular_planar,
    minimal_T,
    miyazaki_sufficient,
    pseudo_gorenstein,
    regularity_formula,
)
from hibikit.lattice import ideal_lattice, verify_thm43
from hibikit.planar import (
    NONPURE8,
    PureResClass,
    enumerate_planar,
    grid,
    induced_sublattice,
    is_simple,
    linrel_predicted,
    max_chained_squares,
    planar_from_points,
    pureres_predicted,
    to_distributive,
)
from hibikit.poset import enumerate_posets, hat_stats, is_pure, poset_from_covers
from hibikit.sweep import Instance, run_instance

from test_lattice import diamond
from test_planar import L1, L2


@pytest.fixture
def emit(capsys):
    def _emit(n, ok, detail, seconds):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} ({seconds:.1f}s) {detail}")

    return _emit


def test_criterion_1_nonpure_resolution(emit):
    t = time.time()
    D = to_distributive(planar_from_points(NONPURE8))
    table = betti_table(D, 4, 8)
    got = table.ideal_table()
    want = {(0, 2): 5, (1, 3): 5, (2, 5): 1}
    dt = time.time() - t
    ok = got == want and table.complete and dt < 10
    emit(1, ok, f"beta(I) = {sorted(got.items())}", dt)
    assert ok


def test_criterion_2_regularity(emit):
    t = time.time()
    bad = []
    count = 0
    for P in enumerate_posets(5):
        D = ideal_lattice(P)
        hd = hilbert_data(D)
        count += 1
        if not (hd.reg == regularity_formula(P, None, D) == P.n - (hat_stats(P).rank_hat - 2) - 1):
            bad.append(P)
    for L in enumerate_planar(3, 3):
        D = to_distributive(L)
        count += 1
        try:
            regularity_formula(D.ji, max_chained_squares(L), D)
        except TheoremViolated:
            bad.append(L)
    captions = (max_chained_squares(L1()), max_chained_squares(L2()))
    dt = time.time() - t
    ok = not bad and captions == (2, 3) and dt < 300
    emit(2, ok, f"{count} instances, {len(bad)} disagreements, L1, L2 reg {captions}", dt)
    assert ok


def test_criterion_3_groebner(emit):
    t = time.time()
    lattices = 0
    for P in enumerate_posets(9, max_ideals=10, bound=9):
        D = ideal_lattice(P)
        assert verify_gb_theorem(D).passed
        lattices += 1
    H = join_meet_ideal(diamond())
    orders = list(sample_orders(H.nvars, "all"))
    squarefree = sum(is_squarefree(initial_ideal(buchberger(H.generators, o), o)) for o in orders)
    dt = time.time() - t
    ok = lattices > 0 and len(orders) == 240 and squarefree == 0 and dt < 120
    emit(3, ok, f"{lattices} lattices with |L| <= 10 pass; diamond squarefree in {squarefree}/{len(orders)} orders", dt)
    assert ok


def test_criterion_4_canonical_predicates(emit):
    t = time.time()
    bad = []
    n = 0
    for P in enumerate_posets(5):
        n += 1
        cd = minimal_T(P)
        hd = hilbert_data(ideal_lattice(P))
        if not (cd.gorenstein == is_pure(P) == (cd.type == 1)):
            bad.append(("a", P))
        try:
            pg = pseudo_gorenstein(P, cd, hd)  # raises if the characterizations disagree
        except TheoremViolated:
            bad.append(("b", P))
            continue
        if pg != (hd.h[-1] == 1):
            bad.append(("b", P))
    B = butterfly()
    c = minimal_T(B).level and miyazaki_sufficient(B) == {"upper": False, "lower": False}
    E = expseudo()
    d = pseudo_gorenstein(E) and not minimal_T(E).gorenstein
    dt = time.time() - t
    ok = not bad and c and d and dt < 120
    emit(4, ok, f"{n} posets, {len(bad)} disagreements; butterfly level without pure filters/ideals: {c}; expseudo pseudo-Gorenstein, not Gorenstein: {d}", dt)
    assert ok


def test_criterion_5_level_theory(emit):
    t = time.time()
    planar = 0
    level = 0
    failures = []
    for P in enumerate_posets(6):
        cd = minimal_T(P)
        if cd.level:
            level += 1
            if not level_necessary(P):
                failures.append(("necessary", P))
        if is_regular_planar(P):
            planar += 1
            try:
                level_regular_planar(P, cd)
            except TheoremViolated as exc:
                failures.append((exc.check, P))
    dt = time.time() - t
    ok = not failures and planar > 0 and dt < 300
    emit(5, ok, f"{planar} regular planar posets, {level} level posets, {len(failures)} violations", dt)
    assert ok


def test_criterion_6_generalized(emit):
    t = time.time()
    runs = 0
    failures = []
    for P in enumerate_posets(4):
        for r in range(2, 5):
            try:
                verify_thm43(P, r)
                rep = generalized_comparison(P, r)
                runs += 1
                assert rep.passed
            except TheoremViolated as exc:
                failures.append((exc.check, P, r))
    dt = time.time() - t
    ok = not failures and runs == 24 * 3 and dt < 300
    emit(6, ok, f"{runs} (P, r) pairs, {len(failures)} violations", dt)
    assert ok


def test_criterion_7_planar_classifications(emit):
    t = time.time()
    simple = [L for L in enumerate_planar(3, 3) if is_simple(L)]
    mismatches = []
    incomplete = 0
    for L in simple:
        D = to_distributive(L)
        lin = linearly_related_observed(D)
        pure = pure_resolution_observed(D)
        incomplete += not (lin.complete and pure.complete)
        if lin.verdict != linrel_predicted(L) or pure.verdict != (pureres_predicted(L) != PureResClass.NONE):
            mismatches.append(sorted(L.points))

    witnesses = {}
    w = betti_table(to_distributive(L1()), 2, 4)
    witnesses["L1 beta_14 != 0"] = w.ideal(1, 4) != 0
    G32 = to_distributive(grid(3, 2))
    g = betti_table(G32, 2, 4)
    witnesses["grid(3,2) not pure"] = not pure_resolution_observed(G32).verdict
    witnesses["grid(3,2) beta_13 != 0"] = g.ideal(1, 3) != 0
    witnesses["grid(3,2) beta_14 != 0"] = g.ideal(1, 4) != 0
    witnesses["grid(2,2) pure"] = pure_resolution_observed(to_distributive(grid(2, 2))).verdict
    dt = time.time() - t
    failed = [k for k, v in witnesses.items() if not v]
    ok = not mismatches and not incomplete and not failed and dt < 900
    detail = f"{len(simple)} simple lattices, {len(mismatches)} mismatches, {incomplete} incomplete; witnesses failing: {failed or 'none'}"
    if not witnesses["grid(3,2) beta_14 != 0"]:
        detail += f" (computed beta_13 = {g.ideal(1, 3)}, beta_14 = {g.ideal(1, 4)})"
    emit(7, ok, detail, dt)
    assert not mismatches and not incomplete
    assert not failed, detail


def _monotonicity_pairs(count, seed):
    rng = random.Random(seed)
    pool = [L for L in enumerate_planar(3, 3) if len(L) <= 12 and L.m >= 1 and L.n >= 1]
    pairs = []
    while len(pairs) < count:
        L = rng.choice(pool)
        if rng.random() < 0.5:
            A, B = rng.sample(range(L.m + 1), rng.randint(1, L.m)), []
        else:
            A, B = [], rng.sample(range(L.n + 1), rng.randint(1, L.n))
        small = induced_sublattice(L, A, B)
        pairs.append((L, small, A, B))
    return pairs


def test_criterion_8_property_suites(emit):
    t = time.time()
    names = ["birkhoff", "modular", "betti", "hilbert"]
    instances = [Instance("poset", P) for P in enumerate_posets(5)]
    instances += [Instance("planar", L) for L in enumerate_planar(3, 3)]
    violations = []
    checks = 0
    for inst in instances:
        got, _ = run_instance(inst, names)
        checks += len(got)
        violations += [(c.name, inst.describe()) for c in got if not c.passed]
    mono = 0
    for L, small, A, B in _monotonicity_pairs(20, seed=2024):
        big = to_distributive(L)
        hd = hilbert_data(big)
        rep = induced_monotonicity_check(big, to_distributive(small), hd.projdim, hd.projdim + hd.reg)
        checks += len(rep.checks)
        mono += 1
        if not rep.passed:
            violations.append(("induced_monotonicity", (sorted(L.points), A, B)))
    dt = time.time() - t
    ok = not violations and mono == 20
    emit(8, ok, f"{len(instances)} instances, {checks} checks, {mono} induced-sublattice pairs, {len(violations)} violations", dt)
    assert ok, violations[:5]


MANUAL_LEFT = [("a1", "a2"), ("a2", "a3"), ("b1", "b2"), ("b2", "b3"), ("b3", "b4"), ("b2", "a2"), ("b3", "a3")]
MANUAL_RIGHT = MANUAL_LEFT + [("a1", "b4")]


@pytest.mark.skipif(
    os.environ.get("HIBI_ENABLE_MANUAL") != "1",
    reason="manual transcription; set HIBI_ENABLE_MANUAL=1 to run (see README)",
)
def test_criterion_9_manual_transcription(emit):
    t = time.time()
    labels = ["a1", "a2", "a3", "b1", "b2", "b3", "b4"]
    out = []
    for covers in (MANUAL_LEFT, MANUAL_RIGHT):
        P = poset_from_covers(labels, covers)
        out.append((hilbert_data(ideal_lattice(P)).h, minimal_T(P).level))
    dt = time.time() - t
    ok = out == [((1, 7, 9, 2), True), ((1, 6, 9, 2), False)]
    emit(9, ok, f"(h, level) = {out}", dt)
    assert ok
