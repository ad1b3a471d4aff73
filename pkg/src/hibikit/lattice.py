"""Finite lattices, Birkhoff representation, ideal and multichain lattices,
and chain decompositions of posets."""

from dataclasses import dataclass
from typing import NamedTuple

from .errors import (
    BoundExceeded,
    IsoNotFound,
    NotALattice,
    NotDistributive,
    NotHyperPlanar,
    TheoremViolated,
)
from .poset import (
    Poset,
    bits,
    cartesian_product,
    chain,
    find_isomorphism,
    hat_stats,
    is_pure,
    maximal_chains,
    order_ideals,
    popcount,
    subposet,
)

DEFAULT_MAX_LATTICE = 4096


class Verdict(NamedTuple):
    """A boolean answer together with a witness (None when there is none)."""

    holds: bool
    witness: object = None

    def __bool__(self):
        return self.holds


class Lattice:
    """A poset together with its join and meet tables."""

    __slots__ = ("poset", "join", "meet", "bottom", "top")

    def __init__(self, poset, join, meet):
        self.poset = poset
        self.join = join
        self.meet = meet
        n = poset.n
        self.bottom = next(i for i in range(n) if poset.down[i] == 1 << i)
        self.top = next(i for i in range(n) if poset.up[i] == 1 << i)

    @property
    def n(self):
        return self.poset.n

    @property
    def labels(self):
        return self.poset.labels

    def leq(self, i, j):
        return self.poset.leq(i, j)

    def __len__(self):
        return self.poset.n

    def __repr__(self):
        return f"Lattice({self.poset.n} elements)"


def as_lattice(P):
    """Join/meet tables of P; raises NotALattice with a witness pair."""
    n = P.n
    if n == 0:
        raise NotALattice(None, "empty poset")
    join = [[0] * n for _ in range(n)]
    meet = [[0] * n for _ in range(n)]
    size_down = [popcount(d) for d in P.down]
    size_up = [popcount(u) for u in P.up]
    for i in range(n):
        for j in range(i, n):
            ub = P.up[i] & P.up[j]
            cand = min(bits(ub), key=lambda u: size_down[u], default=None)
            if cand is None or (P.up[cand] & ub) != ub:
                raise NotALattice((P.labels[i], P.labels[j]))
            lb = P.down[i] & P.down[j]
            cand2 = min(bits(lb), key=lambda u: size_up[u], default=None)
            if cand2 is None or (P.down[cand2] & lb) != lb:
                raise NotALattice((P.labels[i], P.labels[j]))
            join[i][j] = join[j][i] = cand
            meet[i][j] = meet[j][i] = cand2
    return Lattice(P, tuple(map(tuple, join)), tuple(map(tuple, meet)))


def _lattice_from_sets(labels, masks):
    """Lattice of a family of tuples of bitmasks closed under | and &.

    Each element is a tuple of masks compared componentwise by inclusion.
    """
    index = {m: k for k, m in enumerate(masks)}
    n = len(masks)
    down = []
    for m in masks:
        d = 0
        for k, o in enumerate(masks):
            if all((a & ~b) == 0 for a, b in zip(o, m)):
                d |= 1 << k
        down.append(d)
    P = Poset(labels, down)
    join = tuple(tuple(index[tuple(a | b for a, b in zip(masks[i], masks[j]))] for j in range(n)) for i in range(n))
    meet = tuple(tuple(index[tuple(a & b for a, b in zip(masks[i], masks[j]))] for j in range(n)) for i in range(n))
    return Lattice(P, join, meet)


# distributivity and modularity


def is_distributive(L):
    """Exhaustive check of x v (y ^ z) == (x v y) ^ (x v z)."""
    J, M = L.join, L.meet
    for x in range(L.n):
        for y in range(L.n):
            for z in range(y + 1, L.n):
                if J[x][M[y][z]] != M[J[x][y]][J[x][z]]:
                    return Verdict(False, (L.labels[x], L.labels[y], L.labels[z]))
    return Verdict(True)


def _pentagon(L):
    # a < b and c with a v c == b v c and a ^ c == b ^ c span a pentagon
    J, M = L.join, L.meet
    for a in range(L.n):
        for b in bits(L.poset.up[a] & ~(1 << a)):
            for c in range(L.n):
                if J[a][c] == J[b][c] and M[a][c] == M[b][c]:
                    return (M[a][c], a, b, c, J[a][c])
    return None


def _modular_by_rank(L):
    P = L.poset
    if not is_pure(P):
        return False
    rho = [h - 1 for h in hat_stats(P).height]
    J, M = L.join, L.meet
    return all(rho[x] + rho[y] == rho[M[x][y]] + rho[J[x][y]] for x in range(L.n) for y in range(x + 1, L.n))


def is_modular(L):
    """Modularity decided by the rank identity and by pentagon search.

    The two answers must agree; the witness is a pentagon sublattice
    (bottom, a, b, c, top) when one exists.
    """
    by_rank = _modular_by_rank(L)
    pent = _pentagon(L)
    if by_rank != (pent is None):
        raise TheoremViolated("modular characterizations agree", pent)
    if pent is None:
        return Verdict(True)
    return Verdict(False, tuple(L.labels[k] for k in pent))


def _diamond(L):
    J, M = L.join, L.meet
    for a in range(L.n):
        for b in range(a + 1, L.n):
            for c in range(b + 1, L.n):
                if J[a][b] == J[a][c] == J[b][c] and M[a][b] == M[a][c] == M[b][c] and len({a, b, c, J[a][b], M[a][b]}) == 5:
                    return (M[a][b], a, b, c, J[a][b])
    return None


def has_diamond(L):
    d = _diamond(L)
    return Verdict(d is not None, None if d is None else tuple(L.labels[k] for k in d))


# Birkhoff


def join_irreducible_indices(L):
    """Lattice indices of elements covering exactly one element."""
    lower = [0] * L.n
    for a, b in L.poset.covers:
        lower[b] += 1
    out = [x for x in range(L.n) if lower[x] == 1]
    if __debug__ and L.n <= 40:
        J = L.join
        for x in range(L.n):
            split = any(J[y][z] == x for y in range(L.n) for z in range(L.n) if y != x and z != x)
            definitional = x != L.bottom and not split
            assert definitional == (x in out), x
    return out


def join_irreducibles(L):
    return subposet(L.poset, join_irreducible_indices(L))


@dataclass(frozen=True)
class DistributiveLattice:
    """A distributive lattice with its Birkhoff data.

    ``ji_elements[k]`` is the lattice index of the k-th join-irreducible;
    ``birkhoff[x]`` is the bitmask (over ji) of join-irreducibles below ``x``.
    """

    lattice: Lattice
    ji: Poset
    ji_elements: tuple
    birkhoff: tuple

    @property
    def n(self):
        return self.lattice.n

    def element_of_ideal(self, mask):
        return self._inverse()[mask]

    def _inverse(self):
        inv = self.__dict__.get("_inv")
        if inv is None:
            inv = {m: x for x, m in enumerate(self.birkhoff)}
            object.__setattr__(self, "_inv", inv)
        return inv


def _birkhoff_certificate(L, ji_idx):
    """Birkhoff map of L, checked to be an isomorphism onto I(ji)."""
    ji = subposet(L.poset, ji_idx)
    bmap = []
    for x in range(L.n):
        m = 0
        for k, j in enumerate(ji_idx):
            if L.leq(j, x):
                m |= 1 << k
        bmap.append(m)
    if len(set(bmap)) != L.n:
        x, y = _first_duplicate(bmap)
        return ji, None, (L.labels[x], L.labels[y])
    ideals = order_ideals(ji, limit=L.n)
    if len(ideals) != L.n:
        return ji, None, None
    for x in range(L.n):
        for y in range(L.n):
            if L.leq(x, y) != ((bmap[x] & ~bmap[y]) == 0):
                return ji, None, (L.labels[x], L.labels[y])
    return ji, tuple(bmap), None


def _first_duplicate(seq):
    seen = {}
    for k, v in enumerate(seq):
        if v in seen:
            return seen[v], k
        seen[v] = k
    return None


def distributive_lattice(L):
    """Birkhoff data for a distributive lattice L.

    Distributivity is certified by the Birkhoff map being an isomorphism onto
    the order ideals of the join-irreducibles, which is cheaper than checking
    all triples.
    """
    ji_idx = join_irreducible_indices(L)
    try:
        ji, bmap, bad = _birkhoff_certificate(L, ji_idx)
    except BoundExceeded:
        bmap, bad = None, None
    if bmap is None:
        v = is_distributive(L)
        raise NotDistributive(v.witness if not v else bad)
    return DistributiveLattice(L, ji, tuple(ji_idx), bmap)


def _ideal_label(P, mask):
    return tuple(P.labels[i] for i in bits(mask))


def ideal_lattice(P, max_size=DEFAULT_MAX_LATTICE):
    """The lattice I(P) of order ideals; its join-irreducibles are P itself."""
    ideals = order_ideals(P, limit=max_size)
    masks = [(m,) for m in ideals]
    L = _lattice_from_sets([_ideal_label(P, m) for m in ideals], masks)
    index = {m: k for k, m in enumerate(ideals)}
    ji_idx = [index[P.down[p]] for p in range(P.n)]
    ji = subposet(L.poset, ji_idx)
    # principal ideals ordered like P, so the Birkhoff mask is the ideal itself
    if ji.down != P.down:
        raise TheoremViolated("join-irreducibles of I(P) recover P", P)
    return DistributiveLattice(L, ji, tuple(ji_idx), tuple(ideals))


def multichains_of_ideals(P, r, max_size=DEFAULT_MAX_LATTICE):
    """Nested tuples (I_1 <= ... <= I_{r-1}) of order ideals of P."""
    if r < 2:
        raise ValueError("r must be at least 2")
    ideals = order_ideals(P)
    out = []

    def rec(prefix, last):
        if len(prefix) == r - 1:
            out.append(tuple(prefix))
            if len(out) > max_size:
                raise BoundExceeded("multichain lattice size", f"more than {max_size} multichains")
            return
        for m in ideals:
            if (last & ~m) == 0:
                prefix.append(m)
                rec(prefix, m)
                prefix.pop()

    rec([], 0)
    out.sort(key=lambda t: (sum(popcount(m) for m in t), t))
    return out


def multichain_lattice(P, r, max_size=DEFAULT_MAX_LATTICE):
    """Lattice I_r(P) of r-multichains of ideals ending in P (the last,
    always equal to P, is left implicit)."""
    masks = multichains_of_ideals(P, r, max_size)
    labels = [tuple(_ideal_label(P, m) for m in t) for t in masks]
    return distributive_lattice(_lattice_from_sets(labels, masks))


@dataclass(frozen=True)
class IsoWitness:
    source: Poset
    target: Poset
    mapping: tuple
    method: str


def _is_order_iso(P, Q, phi):
    if sorted(phi) != list(range(Q.n)):
        return False
    return all(P.leq(a, b) == Q.leq(phi[a], phi[b]) for a in range(P.n) for b in range(P.n))


def verify_thm43(P, r, max_size=DEFAULT_MAX_LATTICE):
    """Isomorphism between the join-irreducibles of I_r(P) and P x chain(r-1).

    The explicit map sends (p, k) to the multichain whose last k entries are
    the principal ideal of p and whose other entries are empty.
    """
    D = multichain_lattice(P, r, max_size)
    L = D.lattice
    Q = cartesian_product(P, chain(r - 1, "k"))
    pos_in_ji = {x: t for t, x in enumerate(D.ji_elements)}
    masks = multichains_of_ideals(P, r, max_size)
    index = {m: k for k, m in enumerate(masks)}
    phi = []
    ok = True
    for p in range(P.n):
        for k in range(1, r):
            mc = tuple([0] * (r - 1 - k) + [P.down[p]] * k)
            x = index.get(mc)
            if x is None or x not in pos_in_ji:
                ok = False
                break
            phi.append(pos_in_ji[x])
        if not ok:
            break
    # phi maps Q-indices (P-major) to ji-indices
    if ok and _is_order_iso(Q, D.ji, phi):
        return IsoWitness(Q, D.ji, tuple(phi), "explicit")
    found = find_isomorphism(Q, D.ji)
    if found is None:
        raise IsoNotFound(f"no isomorphism between P x chain({r - 1}) and the join-irreducibles of I_{r}(P)")
    return IsoWitness(Q, D.ji, tuple(found), "search")


# chain decompositions


@dataclass(frozen=True)
class ChainDecomposition:
    chains: tuple  # index tuples, bottom to top
    lengths: tuple  # sorted chain lengths (elements minus one)

    def labelled(self, P):
        return [[P.labels[i] for i in c] for c in self.chains]


def canonical_chain_decompositions(P):
    """All partitions of P into chains that are maximal chains of P."""
    mc = maximal_chains(P)
    masks = [sum(1 << i for i in c) for c in mc]
    by_elem = [[k for k, m in enumerate(masks) if (m >> i) & 1] for i in range(P.n)]
    out = []

    def rec(covered, chosen):
        if covered == P.full:
            cs = sorted(mc[k] for k in chosen)
            out.append(ChainDecomposition(tuple(cs), tuple(sorted(len(c) - 1 for c in cs))))
            return
        first = (~covered & (covered + 1)).bit_length() - 1
        for k in by_elem[first]:
            if masks[k] & covered == 0:
                chosen.append(k)
                rec(covered | masks[k], chosen)
                chosen.pop()

    rec(0, [])
    out.sort(key=lambda d: d.chains)
    return out


def is_regular_hyper_planar(P):
    """Regularity of the chain decompositions of a hyper-planar poset.

    Regular means every decomposition satisfies height_Ci(x) < height_Cj(y)
    for all x < y with x in Ci and y in Cj.  Raises NotHyperPlanar when P has
    no decomposition into maximal chains.
    """
    decs = canonical_chain_decompositions(P)
    if not decs:
        raise NotHyperPlanar("no partition into maximal chains")
    for dec in decs:
        if not _decomposition_regular(P, dec):
            return False
    hs = hat_stats(P)
    for dec in decs:
        for c in dec.chains:
            for pos, x in enumerate(c):
                if pos != hs.height[x] - 1:
                    raise TheoremViolated("chain height equals poset height", (P.labels[x], pos, hs.height[x] - 1))
        if dec.lengths != decs[0].lengths:
            raise TheoremViolated("chain lengths agree across decompositions", (dec.lengths, decs[0].lengths))
    return True


def _decomposition_regular(P, dec):
    height = {}
    for c in dec.chains:
        for pos, x in enumerate(c):
            height[x] = pos
    return all(height[x] < height[y] for x in range(P.n) for y in range(P.n) if P.lt(x, y))


def hyper_planar_width(P):
    """Number of chains d in a decomposition, or None if not hyper-planar."""
    decs = canonical_chain_decompositions(P)
    return len(decs[0].chains) if decs else None
