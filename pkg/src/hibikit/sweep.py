"""Property checks run over enumerated posets and planar lattices."""

from dataclasses import dataclass, field
from functools import cached_property

from .betti import betti_table, check_table_consistency, linearly_related_observed, pure_resolution_observed, quadratic_gb_implies_linear_syzygy_bound
from .errors import BoundExceeded, NotHyperPlanar, TheoremViolated
from .hibi import count_multichains, hibi_ideal, verify_gb_theorem
from .algebra import buchberger, count_standard_monomials, initial_ideal
from .invariants import (
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
from .io import planar_json, poset_json
from .lattice import as_lattice, distributive_lattice, has_diamond, ideal_lattice, is_modular, verify_thm43
from .poset import enumerate_posets, find_isomorphism, is_pure
from .report import Check

ALL_CHECKS = (
    "regularity",
    "gorenstein",
    "pseudo_gorenstein",
    "level",
    "gb",
    "birkhoff",
    "modular",
    "hilbert",
    "generalized",
    "betti",
    "linrel",
    "pureres",
)


@dataclass
class Limits:
    gb_max_lattice: int = 20
    hilbert_max_k: int = 4
    r_max: int = 3
    generalized_max_elements: int = 12
    betti_max_lattice: int = 12
    betti_max_degree: int = 7


@dataclass
class Instance:
    kind: str  # "poset", "lattice" or "planar"
    source: object  # Poset (of P or of L itself) or PlanarLattice
    limits: Limits = field(default_factory=Limits)

    @cached_property
    def D(self):
        if self.kind == "poset":
            return ideal_lattice(self.source)
        if self.kind == "lattice":
            return distributive_lattice(as_lattice(self.source))
        from .planar import to_distributive

        return to_distributive(self.source)

    @property
    def P(self):
        return self.source if self.kind == "poset" else self.D.ji

    @cached_property
    def hilbert(self):
        return hilbert_data(self.D)

    @cached_property
    def canonical(self):
        return minimal_T(self.P)

    def describe(self):
        if self.kind == "planar":
            return planar_json(self.source)
        return poset_json(self.source, self.kind)


def _run(name, fn, inst):
    """Run one check; a TheoremViolated becomes a failed Check."""
    try:
        out = fn(inst)
    except TheoremViolated as exc:
        return [Check(name + ": " + exc.check, False, exc.witness)]
    if isinstance(out, Check):
        return [out]
    return list(out)


def check_regularity(inst):
    chained = None
    if inst.kind == "planar":
        from .planar import max_chained_squares

        chained = max_chained_squares(inst.source)
    value = regularity_formula(inst.P, chained, inst.D)
    return Check("reg = |P| - rank P - 1 = deg h" + (" = chained squares" if chained is not None else ""), True, value)


def check_gorenstein(inst):
    cd, hd = inst.canonical, inst.hilbert
    pure = is_pure(inst.P)
    symmetric = hd.h == tuple(reversed(hd.h))
    ok = (cd.type == 1) == pure == symmetric
    return [
        Check("Gorenstein iff pure iff type 1 iff h symmetric", ok, {"type": cd.type, "pure": pure, "h": hd.h}),
        Check("a-invariant is minus the lowest canonical degree", cd.degrees[0] == cd.rank_hat == -hd.a_invariant, {"degrees": cd.degrees, "a": hd.a_invariant}),
    ]


def check_pseudo_gorenstein(inst):
    v = pseudo_gorenstein(inst.P, inst.canonical, inst.hilbert)
    return Check("pseudo-Gorenstein characterizations agree", True, v)


def check_level(inst):
    P, cd = inst.P, inst.canonical
    out = []
    miyazaki_sufficient(P, cd)
    out.append(Check("pure filters or ideals imply level", True))
    if cd.level:
        out.append(Check("level implies cover inequality", level_necessary(P), {"degrees": cd.degrees}))
    if is_regular_planar(P):
        level_regular_planar(P, cd)
        out.append(Check("regular planar: level iff cover inequality", True))
    return out


def check_gb(inst):
    if inst.D.n > inst.limits.gb_max_lattice:
        raise BoundExceeded("gb_max_lattice")
    rep = verify_gb_theorem(inst.D)
    return Check("reduced GB is the Hibi generators, initial ideal squarefree", rep.passed, rep.data)


def check_birkhoff(inst):
    L = inst.D.lattice
    again = ideal_lattice(inst.D.ji).lattice
    return Check("I(J(L)) isomorphic to L", find_isomorphism(again.poset, L.poset) is not None)


def check_modular(inst):
    L = inst.D.lattice
    mod = is_modular(L)  # raises if the two characterizations disagree
    dia = has_diamond(L)
    return [
        Check("modularity characterizations agree", True),
        Check("distributive implies modular without diamond", bool(mod) and not dia, {"pentagon": mod.witness, "diamond": dia.witness}),
    ]


def check_hilbert(inst):
    D, hd = inst.D, inst.hilbert
    out = []
    for k in range(inst.limits.hilbert_max_k + 1):
        mc = count_multichains(D.lattice, k)
        out.append(Check(f"Hilbert function equals multichain count (k={k})", hd.hilbert_function(k) == mc, {"H": hd.hilbert_function(k), "multichains": mc}))
    if D.n <= inst.limits.gb_max_lattice:
        H = hibi_ideal(D)
        order = H.order()
        ini = initial_ideal(buchberger(H.generators, order), order)
        for k in range(min(inst.limits.hilbert_max_k, 4) + 1):
            std = count_standard_monomials(D.n, k, ini)
            mc = count_multichains(D.lattice, k)
            out.append(Check(f"standard monomials equal multichains (k={k})", std == mc, {"standard": std, "multichains": mc}))
    return out


def check_generalized(inst):
    out = []
    P = inst.P
    for r in range(2, inst.limits.r_max + 1):
        if P.n * (r - 1) > inst.limits.generalized_max_elements:
            break
        w = verify_thm43(P, r)
        out.append(Check(f"join-irreducibles of I_{r}(P) are P x chain({r - 1})", True, w.method))
        rep = generalized_comparison(P, r)
        out.extend(rep.checks)
    return out


def betti_budget_ok(inst):
    hd = inst.hilbert
    return inst.D.n <= inst.limits.betti_max_lattice and hd.projdim + hd.reg <= inst.limits.betti_max_degree


def check_betti(inst):
    D, hd = inst.D, inst.hilbert
    out = []
    if D.n > inst.limits.betti_max_lattice:
        raise BoundExceeded("betti_max_lattice")
    rep = quadratic_gb_implies_linear_syzygy_bound(D)
    out.append(Check("beta_1j(I) = 0 for j > 4", rep.passed, rep.data))
    if not betti_budget_ok(inst):
        return out
    table = betti_table(D, hd.projdim + 1, hd.projdim + hd.reg)
    check_table_consistency(D, table)
    out.append(Check("complete table: reg, projdim, generators", True))
    out.append(Check("complete table: alternating sum matches Hilbert series", _k_polynomial_ok(D, table, hd), None))
    p = hd.projdim
    c = p + hd.reg
    if inst.canonical.gorenstein:
        sym = all(table.ring(i, j) == table.ring(p - i, c - j) for i in range(p + 1) for j in range(c + 1))
        out.append(Check("Gorenstein Betti table is self-dual", sym, table.rows()))
    top = {j: v for (i, j), v in table.graded.items() if i == p and v}
    out.append(Check("pseudo-Gorenstein iff top Betti number is 1", (top[max(top)] == 1) == inst.canonical.pseudo_gorenstein, {"top": top}))
    return out


def _k_polynomial_ok(D, table, hd):
    # sum (-1)^i beta_ij t^j = h(t) (1 - t)^(|L| - dim)
    from math import comb

    e = D.n - hd.dim
    lhs = {}
    for (i, j), v in table.graded.items():
        lhs[j] = lhs.get(j, 0) + (-1) ** i * v
    rhs = {}
    for a, ha in enumerate(hd.h):
        for b in range(e + 1):
            rhs[a + b] = rhs.get(a + b, 0) + ha * comb(e, b) * (-1) ** b
    keys = set(lhs) | set(rhs)
    return all(lhs.get(k, 0) == rhs.get(k, 0) for k in keys)


def check_linrel(inst):
    from .planar import is_simple, linrel_predicted

    if inst.kind != "planar" or not is_simple(inst.source):
        return []
    obs = linearly_related_observed(inst.D)
    pred = linrel_predicted(inst.source)
    return Check("linearly related: prediction equals observation", obs.verdict == pred and obs.complete, {"predicted": pred, "observed": obs.verdict})


def check_pureres(inst):
    from .planar import PureResClass, is_simple, pureres_predicted

    if inst.kind != "planar" or not is_simple(inst.source):
        return []
    obs = pure_resolution_observed(inst.D)
    pred = pureres_predicted(inst.source)
    return Check("pure resolution: prediction equals observation", obs.complete and obs.verdict == (pred != PureResClass.NONE), {"predicted": pred.value, "observed": obs.verdict})


CHECKS = {
    "regularity": check_regularity,
    "gorenstein": check_gorenstein,
    "pseudo_gorenstein": check_pseudo_gorenstein,
    "level": check_level,
    "gb": check_gb,
    "birkhoff": check_birkhoff,
    "modular": check_modular,
    "hilbert": check_hilbert,
    "generalized": check_generalized,
    "betti": check_betti,
    "linrel": check_linrel,
    "pureres": check_pureres,
}


def run_instance(inst, names):
    """Run the named checks; returns (checks, skipped) lists."""
    checks, skipped = [], []
    for name in names:
        try:
            checks.extend(_run(name, CHECKS[name], inst))
        except BoundExceeded as exc:
            skipped.append({"check": name, "bound": exc.bound})
    return checks, skipped


def poset_instances(max_elements, limits=None, max_ideals=None):
    for P in enumerate_posets(max_elements, dedup_iso=True, max_ideals=max_ideals):
        yield Instance("poset", P, limits or Limits())


def planar_instances(m, n, limits=None):
    from .planar import enumerate_planar

    for L in enumerate_planar(m, n):
        yield Instance("planar", L, limits or Limits())
