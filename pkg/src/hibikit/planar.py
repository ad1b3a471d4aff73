"""Planar distributive lattices given as finite sublattices of N^2."""

from dataclasses import dataclass
from enum import Enum
from itertools import product

from .errors import EmptyResult, NotASublattice, NotConnected, NotSimpleAfterReduction, TheoremViolated
from .lattice import Lattice, distributive_lattice, join_irreducible_indices
from .poset import Poset, bits, subposet


@dataclass(frozen=True)
class PlanarLattice:
    points: frozenset
    m: int
    n: int

    def __contains__(self, p):
        return tuple(p) in self.points

    def __len__(self):
        return len(self.points)

    def sorted_points(self):
        return sorted(self.points, key=lambda p: (p[0] + p[1], p))

    def transpose(self):
        return PlanarLattice(frozenset((j, i) for i, j in self.points), self.n, self.m)

    def __repr__(self):
        return f"PlanarLattice({self.sorted_points()})"


def planar_from_points(points):
    pts = {tuple(int(c) for c in p) for p in points}
    if not pts:
        raise EmptyResult("no points")
    x0 = min(i for i, _ in pts)
    y0 = min(j for _, j in pts)
    pts = {(i - x0, j - y0) for i, j in pts}
    for a, b in product(pts, repeat=2):
        lo = (min(a[0], b[0]), min(a[1], b[1]))
        hi = (max(a[0], b[0]), max(a[1], b[1]))
        if lo not in pts or hi not in pts:
            raise NotASublattice(f"{a} and {b} have no meet or join in the set")
    # every cover must be a unit step, so maximal chains move one step at a time
    for a in pts:
        for b in pts:
            if a != b and a[0] <= b[0] and a[1] <= b[1] and (b[0] - a[0]) + (b[1] - a[1]) > 1:
                if not any(c != a and c != b and a[0] <= c[0] <= b[0] and a[1] <= c[1] <= b[1] for c in pts):
                    raise NotConnected(f"{a} and {b} are not joined by unit steps")
    m = max(i for i, _ in pts)
    n = max(j for _, j in pts)
    return PlanarLattice(frozenset(pts), m, n)


def grid(m, n):
    return planar_from_points([(i, j) for i in range(m + 1) for j in range(n + 1)])


def to_lattice(L):
    pts = L.sorted_points()
    index = {p: k for k, p in enumerate(pts)}
    down = [sum(1 << index[q] for q in pts if q[0] <= p[0] and q[1] <= p[1]) for p in pts]
    P = Poset(pts, down)
    join = tuple(tuple(index[(max(a[0], b[0]), max(a[1], b[1]))] for b in pts) for a in pts)
    meet = tuple(tuple(index[(min(a[0], b[0]), min(a[1], b[1]))] for b in pts) for a in pts)
    return Lattice(P, join, meet)


def to_distributive(L):
    return distributive_lattice(to_lattice(L))


def ji_poset(L):
    lat = to_lattice(L)
    return subposet(lat.poset, join_irreducible_indices(lat))


# squares and cut edges


@dataclass(frozen=True, order=True)
class Square:
    i: int
    j: int

    @property
    def vertices(self):
        i, j = self.i, self.j
        return ((i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1))


def squares(L):
    return [Square(i, j) for i, j in sorted(L.points) if all(v in L.points for v in Square(i, j).vertices)]


def edges(L):
    """Cover relations of L as (lower, upper) unit steps."""
    out = []
    for i, j in sorted(L.points):
        for q in ((i + 1, j), (i, j + 1)):
            if q in L.points:
                out.append(((i, j), q))
    return out


def cut_edges(L):
    """Edges (a, b) with every element of L either >= b or <= a."""
    out = []
    for a, b in edges(L):
        if all((g[0] >= b[0] and g[1] >= b[1]) or (g[0] <= a[0] and g[1] <= a[1]) for g in L.points):
            out.append((a, b))
    return out


def is_simple(L):
    """No join-irreducible comparable to all other join-irreducibles."""
    P = ji_poset(L)
    return not any((P.down[p] | P.up[p]) == P.full for p in range(P.n))


def max_chained_squares(L):
    return _square_chains(L)[0]


def count_max_cyclic(L):
    return _square_chains(L)[1]


def _square_chains(L):
    """Length and number of longest chains Q_1..Q_r of squares with
    max(Q_k) <= min(Q_(k+1))."""
    sq = squares(L)
    if not sq:
        return 0, 1
    best = {}
    for s in sorted(sq, key=lambda s: (s.i + s.j, s.i)):
        prev = [best[t] for t in best if t.i + 1 <= s.i and t.j + 1 <= s.j]
        if prev:
            top = max(p[0] for p in prev)
            best[s] = (top + 1, sum(c for length, c in prev if length == top))
        else:
            best[s] = (1, 1)
    top = max(v[0] for v in best.values())
    return top, sum(c for length, c in best.values() if length == top)


# classifications


class PureResClass(str, Enum):
    LINEAR = "linear"
    CYCLIC = "cyclic"
    SPORADIC = "sporadic"
    NONE = "none"


NONPURE8 = frozenset({(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1), (1, 2), (2, 2)})
CASEIII = frozenset((i, j) for i in range(3) for j in range(3))


def reduce_to_simple(L):
    """Strip a bottom or top element that has a single neighbour.

    Such an element is a join-irreducible below (or above) everything else;
    removing it leaves the Betti numbers of the Hibi ideal unchanged.
    Raises NotSimpleAfterReduction if some other join-irreducible is still
    comparable to everything.
    """
    pts = set(L.points)
    changed = True
    while changed and len(pts) > 1:
        changed = False
        lo = min(pts)
        ups = [q for q in ((lo[0] + 1, lo[1]), (lo[0], lo[1] + 1)) if q in pts]
        if len(ups) == 1:
            pts.discard(lo)
            changed = True
            continue
        hi = max(pts)
        downs = [q for q in ((hi[0] - 1, hi[1]), (hi[0], hi[1] - 1)) if q in pts]
        if len(downs) == 1:
            pts.discard(hi)
            changed = True
    R = planar_from_points(pts)
    if not is_simple(R):
        raise NotSimpleAfterReduction(f"{R!r} still has a join-irreducible comparable to all others")
    return R


def linrel_predicted(L):
    R = reduce_to_simple(L)
    m, n = R.m, R.n
    if m <= 1 or n <= 1:
        return True
    missing = sum(1 for p in ((m, 0), (0, n)) if p not in R.points)
    return missing <= 1 and (1, n - 1) in R.points and (m - 1, 1) in R.points


def is_cyclic(L):
    """P is an ordinal sum of antichains with one or two elements."""
    P = ji_poset(L)
    rest = P.full
    while rest:
        mins = [p for p in bits(rest) if (P.down[p] & rest) == 1 << p]
        if len(mins) > 2:
            return False
        mmask = sum(1 << p for p in mins)
        others = rest & ~mmask
        if any((P.up[p] & others) != others for p in mins):
            return False
        rest = others
    return True


def is_sporadic(L):
    return L.points in (NONPURE8, CASEIII) or L.transpose().points in (NONPURE8, CASEIII)


def pureres_predicted(L):
    R = reduce_to_simple(L)
    if R.m <= 1 or R.n <= 1:
        return PureResClass.LINEAR
    if is_cyclic(R):
        return PureResClass.CYCLIC
    if is_sporadic(R):
        return PureResClass.SPORADIC
    return PureResClass.NONE


def induced_sublattice(L, remove_columns=(), remove_rows=()):
    A, B = set(remove_columns), set(remove_rows)
    kept = [(i, j) for i, j in L.points if i not in A and j not in B]
    if not kept:
        raise EmptyResult("every point was removed")
    cols = sorted({i for i, _ in kept})
    rows = sorted({j for _, j in kept})
    ci = {c: k for k, c in enumerate(cols)}
    rj = {r: k for k, r in enumerate(rows)}
    try:
        return planar_from_points([(ci[i], rj[j]) for i, j in kept])
    except (NotASublattice, NotConnected) as exc:
        raise TheoremViolated("induced sublattice is a planar lattice", sorted(kept)) from exc


def enumerate_planar(max_m, max_n, min_points=1):
    """Every planar lattice with frame (m, n), m <= max_m, n <= max_n.

    Column i holds the interval lo[i]..hi[i]; both bounds are nondecreasing
    and consecutive columns overlap so that unit steps connect them.
    """
    out = []
    for m in range(max_m + 1):
        for n in range(max_n + 1):
            def rec(i, lo_prev, hi_prev, cols):
                if i > m:
                    if cols[-1][1] == n:
                        out.append(cols[:])
                    return
                for lo in range(lo_prev, hi_prev + 1):
                    for hi in range(max(lo, hi_prev), n + 1):
                        cols.append((lo, hi))
                        rec(i + 1, lo, hi, cols)
                        cols.pop()

            for hi0 in range(n + 1):
                rec(1, 0, hi0, [(0, hi0)])
    result = []
    for cols in out:
        pts = [(i, j) for i, (lo, hi) in enumerate(cols) for j in range(lo, hi + 1)]
        if len(pts) >= min_points:
            result.append(planar_from_points(pts))
    result.sort(key=lambda L: (L.m, L.n, len(L.points), sorted(L.points)))
    return result
