"""Hilbert data of Hibi rings and the combinatorics of their canonical modules.

Maps on the hat poset are stored as a value per element of P plus the value
at the adjoined minimum; the value at the adjoined maximum is always 0.
"""

from dataclasses import dataclass
from math import comb

from .errors import BoundExceeded, NotHyperPlanar, TheoremViolated
from .hibi import count_multichains
from .lattice import DistributiveLattice, canonical_chain_decompositions, ideal_lattice, is_regular_hyper_planar
from .poset import bits, cartesian_product, chain, hat_stats, is_pure, rank, subposet
from .report import Report

DEFAULT_MAX_T = 16
DEFAULT_MAX_BRUTE = 7


# Hilbert data


@dataclass(frozen=True)
class HilbertData:
    f: tuple  # f[0] = 1 is the empty chain, f[k] counts chains of k elements
    h: tuple
    dim: int
    projdim: int
    reg: int
    a_invariant: int

    def hilbert_function(self, k):
        """dim of the degree-k part, from h(t) / (1 - t)^dim."""
        d = self.dim
        return sum(hi * comb(k - i + d - 1, d - 1) for i, hi in enumerate(self.h) if i <= k)


def chain_counts(L):
    """``out[k]`` = number of chains of L with k elements (``out[0] = 1``)."""
    order = L.poset.topological_order()
    down = L.poset.down
    ending = {x: [0, 1] for x in range(L.n)}  # ending[x][k]: k-chains with top x
    for x in order:
        below = bits(down[x] & ~(1 << x))
        acc = ending[x]
        for y in below:
            ey = ending[y]
            for k in range(1, len(ey)):
                if k + 1 >= len(acc):
                    acc.extend([0] * (k + 2 - len(acc)))
                acc[k + 1] += ey[k]
    top = max(len(e) for e in ending.values())
    out = [0] * top
    out[0] = 1
    for e in ending.values():
        for k in range(1, len(e)):
            out[k] += e[k]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def h_from_f(f, d):
    """h(t) = sum_i f[i] t^i (1 - t)^(d - i)."""
    h = [0] * (d + 1)
    for i, fi in enumerate(f):
        if i > d:
            if fi:
                raise ValueError("chain longer than the dimension")
            continue
        for j in range(d - i + 1):
            h[i + j] += fi * comb(d - i, j) * (-1) ** j
    while len(h) > 1 and h[-1] == 0:
        h.pop()
    return tuple(h)


def hilbert_data(D):
    """Hilbert data of R[L] from the chain counts of L."""
    L = D.lattice
    P = D.ji
    f = chain_counts(L)
    d = P.n + 1
    if len(f) - 1 != d:
        raise TheoremViolated("dimension is |P| + 1", (len(f) - 1, d))
    h = h_from_f(f, d)
    if any(x < 0 for x in h):
        raise RuntimeError(f"negative h-vector {h}; this is an internal error")
    reg = len(h) - 1
    return HilbertData(tuple(f), h, d, L.n - P.n - 1, reg, reg - d)


def regularity_formula(P, chained_squares=None, D=None):
    """|P| - rank P - 1, checked against deg h (and a planar square count)."""
    value = P.n - rank(P) - 1
    hd = hilbert_data(D if D is not None else ideal_lattice(P))
    if hd.reg != value:
        raise TheoremViolated("reg equals |P| - rank P - 1", {"deg_h": hd.reg, "formula": value})
    if chained_squares is not None and chained_squares != value:
        raise TheoremViolated("reg equals max chained squares", {"squares": chained_squares, "formula": value})
    return value


# order reversing maps


@dataclass(frozen=True, order=True)
class OrderReversingMap:
    values: tuple  # value on each element of P
    bottom: int  # value at the adjoined minimum
    strict: bool = True

    @property
    def degree(self):
        return self.bottom

    def as_vector(self):
        return self.values + (self.bottom,)

    def __sub__(self, other):
        return OrderReversingMap(tuple(a - b for a, b in zip(self.values, other.values)), self.bottom - other.bottom, False)


def _hat_covers(P):
    """Covers of P-hat as (upper, lower) pairs; n is the top, n + 1 the bottom."""
    n = P.n
    top, bot = n, n + 1
    out = [(b, a) for a, b in P.covers]
    out += [(top, x) for x in P.maximal_elements()]
    out += [(x, bot) for x in P.minimal_elements()]
    if n == 0:
        out.append((top, bot))
    return out


def _vals(v, n):
    return list(v.values) + [0, v.bottom]


def in_S(v, P):
    vals = _vals(v, P.n)
    return all(vals[lo] >= vals[hi] for hi, lo in _hat_covers(P))


def in_T(v, P):
    vals = _vals(v, P.n)
    return all(vals[lo] > vals[hi] for hi, lo in _hat_covers(P))


def leq_T(u, v, P):
    """u <= v in the partial order of T(P): v - u is order reversing."""
    return in_S(v - u, P)


def is_minimal(v, P):
    """Minimality of v in T(P).

    v is not minimal iff some down-set D of P-hat without the top has
    v - chi_D in T(P).  Such a D must be closed under going down and under
    going up along tight covers (where the values differ by exactly one), so
    it suffices to test the closure of the bottom.
    """
    n = P.n
    top, bot = n, n + 1
    vals = _vals(v, n)
    covers = _hat_covers(P)
    below = {x: [] for x in range(n + 2)}
    tight_up = {x: [] for x in range(n + 2)}
    for hi, lo in covers:
        below[hi].append(lo)
        if vals[lo] == vals[hi] + 1:
            tight_up[lo].append(hi)
    seen = {bot}
    stack = [bot]
    while stack:
        x = stack.pop()
        for y in below[x] + tight_up[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return top in seen


def depth_map(P):
    hs = hat_stats(P)
    return OrderReversingMap(tuple(hs.depth), hs.rank_hat)


def coheight_map(P):
    hs = hat_stats(P)
    return OrderReversingMap(tuple(hs.rank_hat - h for h in hs.height), hs.rank_hat)


def _chamber_candidates(P, max_nodes):
    """Minimal elements of T(P) via one candidate per linear extension.

    Label P-hat top-down (top 0, bottom n + 1) so larger elements get smaller
    labels.  For a top-down linear extension s, the map f_s counts the ascents
    of the labels seen so far.  Every v in T(P) dominates the f_s of the
    extension sorting by (v, -label), so the minimal elements are among the
    f_s.  A minimal map needs, for every value c, a tight cover crossing from
    c to c + 1; the search closes a level only if that holds.
    """
    n = P.n
    top, bot = n, n + 1
    label = [0] * (n + 2)
    for k, x in enumerate(reversed(P.topological_order()), start=1):
        label[x] = k
    label[top], label[bot] = 0, n + 1
    upper = {x: [] for x in range(n + 2)}
    for hi, lo in _hat_covers(P):
        upper[lo].append(hi)
    need = [sum(1 << u for u in upper[x]) for x in range(n + 2)]
    vals = [0] * (n + 2)
    found = set()
    nodes = 0

    def level_ok(members):
        # some element of this level sits tightly below an element of the previous level
        for y in members:
            c = vals[y]
            if any(vals[u] == c - 1 for u in upper[y]):
                return True
        return False

    def rec(placed, last, level_members):
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise BoundExceeded("minimal_T.max_nodes", f"more than {max_nodes} search nodes")
        if (placed >> bot) & 1:
            v = OrderReversingMap(tuple(vals[:n]), vals[bot])
            if is_minimal(v, P):
                found.add(v)
            return
        c = vals[last]
        for q in range(n + 2):
            if (placed >> q) & 1 or (need[q] & placed) != need[q]:
                continue
            if q == bot and placed != (1 << (n + 1)) - 1:
                continue
            if label[last] < label[q]:
                # strict step: the current level closes
                if c > 0 and not level_ok(level_members):
                    continue
                vals[q] = c + 1
                if q == bot and not level_ok([bot]):
                    continue
                rec(placed | (1 << q), q, [q])
            else:
                vals[q] = c
                level_members.append(q)
                rec(placed | (1 << q), q, level_members)
                level_members.pop()

    vals[top] = 0
    rec(1 << top, top, [top])
    return found


@dataclass(frozen=True)
class CanonicalData:
    minimals: tuple
    type: int
    degrees: tuple
    rank_hat: int
    gorenstein: bool
    pseudo_gorenstein: bool
    level: bool

    def as_dict(self):
        return {
            "type": self.type,
            "degrees": list(self.degrees),
            "rank_hat": self.rank_hat,
            "gorenstein": self.gorenstein,
            "pseudo_gorenstein": self.pseudo_gorenstein,
            "level": self.level,
            "minimals": [list(v.as_vector()) for v in self.minimals],
        }


def _canonical_data(P, mins):
    hs = hat_stats(P)
    mins = tuple(sorted(mins, key=lambda v: v.as_vector()))
    degrees = tuple(sorted(v.bottom for v in mins))
    low = sum(1 for d in degrees if d == hs.rank_hat)
    if not mins or degrees[0] != hs.rank_hat:
        raise TheoremViolated("lowest canonical degree is rank of P-hat", {"degrees": degrees, "rank_hat": hs.rank_hat})
    return CanonicalData(
        minimals=mins,
        type=len(mins),
        degrees=degrees,
        rank_hat=hs.rank_hat,
        gorenstein=len(mins) == 1,
        pseudo_gorenstein=low == 1,
        level=all(d == hs.rank_hat for d in degrees),
    )


def minimal_T(P, max_elements=DEFAULT_MAX_T, max_nodes=5_000_000):
    """Minimal elements of T(P), the type and the level predicates."""
    if P.n > max_elements:
        raise BoundExceeded("minimal_T.max_elements", f"|P| = {P.n} > {max_elements}")
    data = _canonical_data(P, _chamber_candidates(P, max_nodes))
    if data.gorenstein != is_pure(P):
        raise TheoremViolated("Gorenstein iff P pure", {"type": data.type, "pure": is_pure(P)})
    return data


def strict_maps(P, bound):
    """Every strictly order reversing map with bottom value at most ``bound``."""
    n = P.n
    hs = hat_stats(P)
    order = list(reversed(P.topological_order()))
    uppers = [P.upper_covers(x) for x in range(n)]
    vals = [0] * n
    out = []

    def rec(k):
        if k == n:
            low = max(vals, default=0) + 1
            for b in range(low, bound + 1):
                out.append(OrderReversingMap(tuple(vals), b))
            return
        x = order[k]
        low = max((vals[u] for u in uppers[x]), default=0) + 1
        for val in range(low, bound - hs.height[x] + 1):
            vals[x] = val
            rec(k + 1)

    rec(0)
    return out


def minimal_T_bruteforce(P, bound=None, max_elements=DEFAULT_MAX_BRUTE):
    """Oracle: all strict maps with bottom value <= |P| + 1, minimal by
    pairwise comparison."""
    if P.n > max_elements:
        raise BoundExceeded("minimal_T_bruteforce.max_elements", f"|P| = {P.n} > {max_elements}")
    maps = strict_maps(P, P.n + 1 if bound is None else bound)
    mins = [v for v in maps if not any(u != v and u.bottom <= v.bottom and leq_T(u, v, P) for u in maps)]
    return _canonical_data(P, mins)


# predicates


def pseudo_gorenstein(P, canonical=None, hilbert=None):
    """height(x) + depth(x) == rank P-hat for all x, cross-checked against
    the leading h coefficient and the number of lowest-degree generators."""
    hs = hat_stats(P)
    verdict = all(hs.height[x] + hs.depth[x] == hs.rank_hat for x in range(P.n))
    hd = hilbert if hilbert is not None else hilbert_data(ideal_lattice(P))
    if (hd.h[-1] == 1) != verdict:
        raise TheoremViolated("pseudo-Gorenstein iff leading h coefficient is 1", {"h": hd.h, "criterion": verdict})
    cd = canonical if canonical is not None else minimal_T(P)
    if cd.pseudo_gorenstein != verdict:
        raise TheoremViolated("pseudo-Gorenstein iff one generator of lowest degree", {"degrees": cd.degrees})
    return verdict


def _all_pure(P, masks):
    return all(is_pure(subposet(P, bits(m))) for m in masks)


def miyazaki_sufficient(P, canonical=None):
    """Purity of all principal filters (upper) and all principal ideals (lower)."""
    upper = _all_pure(P, P.up)
    lower = _all_pure(P, P.down)
    if upper or lower:
        cd = canonical if canonical is not None else minimal_T(P)
        if not cd.level:
            raise TheoremViolated("pure filters or ideals imply level", {"upper": upper, "lower": lower, "degrees": cd.degrees})
    return {"upper": upper, "lower": lower}


def level_necessary(P):
    """height(x) + depth(y) <= rank P-hat + 1 for all covers y < x in P."""
    hs = hat_stats(P)
    return all(hs.height[x] + hs.depth[y] <= hs.rank_hat + 1 for y, x in P.covers)


def _condition_c(P):
    hs = hat_stats(P)
    return all(hs.depth[y] == hs.depth[x] + 1 or hs.height[x] == hs.height[y] + 1 for y, x in P.covers)


def is_regular_planar(P):
    decs = canonical_chain_decompositions(P)
    if not decs or len(decs[0].chains) != 2:
        return False
    return is_regular_hyper_planar(P)


def level_regular_planar(P, canonical=None):
    """Levelness test for regular planar posets, checked against enumeration.

    Also verifies that every minimal map takes the value 1 at the top of a
    longest chain of a decomposition when the test says level.
    """
    if not is_regular_planar(P):
        raise NotHyperPlanar("P is not a regular planar poset")
    b = level_necessary(P)
    if b != _condition_c(P):
        raise TheoremViolated("level conditions (b) and (c) agree", {"b": b})
    cd = canonical if canonical is not None else minimal_T(P)
    if cd.level != b:
        raise TheoremViolated("regular planar level iff cover inequality", {"inequality": b, "degrees": cd.degrees})
    if b:
        dec = canonical_chain_decompositions(P)[0]
        longest = max(dec.chains, key=len)
        if len(longest) - 1 == rank(P):
            top = longest[-1]
            for v in cd.minimals:
                if v.values[top] != 1:
                    raise TheoremViolated("minimal maps are 1 at the top of a longest chain", v.as_vector())
    return b


def generalized_comparison(P, r, report=None):
    """Compare canonical data of I(P) and I(P x chain(r - 1))."""
    rep = report if report is not None else Report(f"generalized r={r}")
    Pr = cartesian_product(P, chain(r - 1, "k"))
    cd = minimal_T(P)
    cdr = minimal_T(Pr)
    rep.require("type grows", cd.type <= cdr.type, (cd.type, cdr.type))
    rep.require("pseudo-Gorenstein agrees", cd.pseudo_gorenstein == cdr.pseudo_gorenstein, (cd.pseudo_gorenstein, cdr.pseudo_gorenstein))
    rep.require("level descends", (not cdr.level) or cd.level, (cd.level, cdr.level))
    hs, hsr = hat_stats(P), hat_stats(Pr)
    rep.require("rank shift", hsr.rank_hat == hs.rank_hat + r - 2, (hs.rank_hat, hsr.rank_hat))
    for x in range(P.n):
        for i in range(1, r):
            k = x * (r - 1) + (i - 1)
            ok = hsr.height[k] == hs.height[x] + i - 1 and hsr.depth[k] == hs.depth[x] + (r - i - 1)
            rep.require("height/depth shift", ok, (P.labels[x], i))
    rmin = set(cdr.minimals)
    for v in cd.minimals:
        vals = tuple(v.values[x] + (r - 1 - i) for x in range(P.n) for i in range(1, r))
        image = OrderReversingMap(vals, v.bottom + r - 2)
        rep.require("epsilon lands in minimal T(P_r)", image in rmin, v.as_vector())
    rep.data.update(type=cd.type, type_r=cdr.type, level=cd.level, level_r=cdr.level)
    return rep


def extremal_classification(P, hilbert=None):
    hd = hilbert if hilbert is not None else hilbert_data(ideal_lattice(P))
    gor = is_pure(P)
    return {
        "extremal_CM": hd.reg == 1,
        "nearly_extremal_CM": hd.reg == 2,
        "extremal_Gorenstein": gor and hd.reg == 2,
        "nearly_extremal_Gorenstein": gor and hd.reg == 3,
    }


def standard_count_matches(D, k, hilbert=None):
    """Hilbert function from h equals the number of k-multichains."""
    hd = hilbert if hilbert is not None else hilbert_data(D)
    return hd.hilbert_function(k) == count_multichains(D.lattice, k)
