"""Hibi (join-meet) ideals, the toric semigroup of a distributive lattice,
and standard monomials."""

from dataclasses import dataclass

from .algebra import MonomialOrder, Polynomial, buchberger, initial_ideal, is_squarefree, mono
from .errors import BoundExceeded, TheoremViolated
from .lattice import DistributiveLattice, Lattice, multichain_lattice, multichains_of_ideals
from .poset import bits, popcount
from .report import Report

DEFAULT_MAX_DEGREE = 8
DEFAULT_MAX_MULTICHAINS = 200000


def _label_str(label):
    if isinstance(label, tuple):
        return "(" + ",".join(_label_str(x) for x in label) + ")"
    return str(label)


@dataclass(frozen=True)
class HibiIdeal:
    """Binomials x_a x_b - x_(a^b) x_(avb), one per incomparable pair.

    Variable ``k`` belongs to lattice element ``k``.
    """

    lattice: Lattice
    names: tuple
    generators: tuple
    pairs: tuple
    linear_extension: tuple

    def order(self, kind="degrevlex"):
        """Order with x_a < x_b whenever a < b in the lattice."""
        return MonomialOrder(kind, tuple(reversed(self.linear_extension)))

    @property
    def nvars(self):
        return len(self.names)


def join_meet_ideal(L):
    if isinstance(L, DistributiveLattice):
        L = L.lattice
    ext = L.poset.topological_order()
    rank_in_ext = {x: k for k, x in enumerate(ext)}
    pairs = []
    for a, b in L.poset.incomparable_pairs():
        if rank_in_ext[a] > rank_in_ext[b]:
            a, b = b, a
        pairs.append((a, b))
    pairs.sort(key=lambda p: (rank_in_ext[p[0]], rank_in_ext[p[1]]))
    gens = []
    for a, b in pairs:
        lhs = mono({a: 1, b: 1})
        rhs = mono({L.meet[a][b]: 1}) if L.meet[a][b] == L.join[a][b] else mono({L.meet[a][b]: 1, L.join[a][b]: 1})
        gens.append(Polynomial.binomial(lhs, rhs))
    names = tuple(_label_str(x) for x in L.labels)
    return HibiIdeal(L, names, tuple(gens), tuple(pairs), tuple(ext))


def hibi_ideal(D):
    """Hibi ideal of a distributive lattice."""
    return join_meet_ideal(D.lattice)


def verify_gb_theorem(D, max_vars=40):
    """Buchberger on the Hibi generators under the linear-extension degrevlex
    order; the reduced basis must be the generator set itself and the initial
    ideal the squarefree products of incomparable pairs."""
    H = hibi_ideal(D)
    order = H.order()
    report = Report("gb_theorem")
    G = buchberger(H.generators, order, max_vars=max_vars)
    expected = {g.monic(order) for g in H.generators}
    got = set(G.polys)
    report.require("reduced GB equals Hibi generators", got == expected,
                   {"extra": len(got - expected), "missing": len(expected - got)})
    ini = initial_ideal(G, order)
    want = {mono({a: 1, b: 1}) for a, b in H.pairs}
    report.require("initial ideal is incomparable products", set(ini) == want, [str(m) for m in set(ini) ^ want])
    report.require("initial ideal squarefree", is_squarefree(ini))
    report.data.update(generators=len(H.generators), basis=len(G), linear_extension=[H.names[x] for x in H.linear_extension])
    return report


# semigroup


@dataclass(frozen=True)
class SemigroupElement:
    """t^w0 * prod x_i^w_i, exponents indexed by the elements of P."""

    w0: int
    w: tuple

    def __add__(self, other):
        return SemigroupElement(self.w0 + other.w0, tuple(a + b for a, b in zip(self.w, other.w)))

    def __sub__(self, other):
        return SemigroupElement(self.w0 - other.w0, tuple(a - b for a, b in zip(self.w, other.w)))

    @property
    def degree(self):
        return self.w0


def semigroup_member(h, P):
    if len(h.w) != P.n:
        raise ValueError("exponent vector length differs from |P|")
    w = h.w
    if any(x < 0 or x > h.w0 for x in w):
        return False
    return all(w[a] >= w[b] for a, b in P.covers)


def exponent_vector(D, x):
    """Exponent (1, indicator of the ideal) of the lattice element x."""
    m = D.birkhoff[x]
    return SemigroupElement(1, tuple((m >> i) & 1 for i in range(D.ji.n)))


def element_of_degree_one(D, h):
    """Lattice element with exponent h, for members h of degree 1."""
    m = sum(1 << i for i, e in enumerate(h.w) if e)
    return D.element_of_ideal(m)


# standard monomials


def count_multichains(L, k):
    """Number of multichains x_1 <= ... <= x_k in L."""
    if isinstance(L, DistributiveLattice):
        L = L.lattice
    if k == 0:
        return 1
    counts = [1] * L.n
    order = L.poset.topological_order()
    for _ in range(k - 1):
        new = [0] * L.n
        for x in order:
            new[x] = sum(counts[y] for y in bits(L.poset.down[x]))
        counts = new
    return sum(counts)


def standard_monomials(L, k, max_degree=DEFAULT_MAX_DEGREE, max_count=DEFAULT_MAX_MULTICHAINS):
    """All k-multichains of L as nondecreasing index tuples (bottom first)."""
    if isinstance(L, DistributiveLattice):
        L = L.lattice
    if k > max_degree:
        raise BoundExceeded("standard_monomials.max_degree", f"degree {k} > {max_degree}")
    total = count_multichains(L, k)
    if total > max_count:
        raise BoundExceeded("standard_monomials.max_count", f"{total} multichains > {max_count}")
    up = L.poset.up
    order = L.poset.topological_order()
    out = []

    def rec(prefix, last):
        if len(prefix) == k:
            out.append(tuple(prefix))
            return
        for y in order:
            if last is None or (up[last] >> y) & 1:
                prefix.append(y)
                rec(prefix, y)
                prefix.pop()

    rec([], None)
    return out


# generalized Hibi rings


def _u_exponents(P, masks, r):
    """Exponents of u_I over variables x_(k, l): l in I_k minus I_(k-1)."""
    full = list(masks) + [P.full]
    prev = 0
    out = {}
    for k, m in enumerate(full, start=1):
        for l in bits(m & ~prev):
            out[(k, l)] = out.get((k, l), 0) + 1
        prev = m
    return out


def generalized_hibi_generators(P, r):
    """Hibi ideal of I_r(P) after checking psi(I)psi(J) = psi(I^J)psi(IvJ)."""
    D = multichain_lattice(P, r)
    masks = multichains_of_ideals(P, r)
    H = hibi_ideal(D)
    L = D.lattice
    for a, b in H.pairs:
        lhs = _add(_u_exponents(P, masks[a], r), _u_exponents(P, masks[b], r))
        rhs = _add(_u_exponents(P, masks[L.meet[a][b]], r), _u_exponents(P, masks[L.join[a][b]], r))
        if lhs != rhs:
            raise TheoremViolated("multichain monomial identity", (L.labels[a], L.labels[b]))
    return H


def _add(d1, d2):
    out = dict(d1)
    for k, v in d2.items():
        out[k] = out.get(k, 0) + v
    return out
