"""Sparse polynomials over the rationals and a plain Buchberger engine.

A monomial is a tuple of ``(variable, exponent)`` pairs sorted by variable
with no zero exponents; the empty tuple is 1.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .errors import BoundExceeded

DEFAULT_MAX_VARS = 40
DEFAULT_MAX_PAIRS = 20000


# monomials


def mono(exps):
    """Monomial from a mapping or a dense exponent sequence."""
    items = exps.items() if isinstance(exps, dict) else enumerate(exps)
    return tuple(sorted((v, e) for v, e in items if e))


def mono_mul(a, b):
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_divides(a, b):
    db = dict(b)
    return all(db.get(v, 0) >= e for v, e in a)


def mono_div(b, a):
    """b / a, assuming a divides b."""
    d = dict(b)
    for v, e in a:
        d[v] -= e
    return tuple(sorted((v, e) for v, e in d.items() if e))


def mono_lcm(a, b):
    d = dict(a)
    for v, e in b:
        if e > d.get(v, 0):
            d[v] = e
    return tuple(sorted(d.items()))


def mono_degree(a):
    return sum(e for _, e in a)


def mono_coprime(a, b):
    return not ({v for v, _ in a} & {v for v, _ in b})


def is_squarefree(monomials):
    return all(e == 1 for m in monomials for _, e in m)


def mono_str(m, names=None):
    if not m:
        return "1"
    parts = []
    for v, e in m:
        name = names[v] if names is not None else f"x{v}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


# orders


class MonomialOrder:
    """lex or degrevlex with variables ranked by ``priority``.

    ``priority`` lists variable indices from largest to smallest.
    """

    def __init__(self, kind, priority):
        if kind not in ("lex", "degrevlex"):
            raise ValueError(f"unknown order kind {kind!r}")
        self.kind = kind
        self.priority = tuple(priority)
        self._pos = {v: k for k, v in enumerate(self.priority)}
        self._cache = {}

    def key(self, m):
        k = self._cache.get(m)
        if k is not None:
            return k
        dense = [0] * len(self.priority)
        for v, e in m:
            dense[self._pos[v]] = e
        if self.kind == "lex":
            k = tuple(dense)
        else:
            k = (sum(dense), tuple(-e for e in reversed(dense)))
        self._cache[m] = k
        return k

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.priority) == (other.kind, other.priority)

    def __hash__(self):
        return hash((self.kind, self.priority))

    def __repr__(self):
        return f"MonomialOrder({self.kind!r}, {list(self.priority)})"


def degrevlex(nvars, priority=None):
    return MonomialOrder("degrevlex", range(nvars) if priority is None else priority)


def lex(nvars, priority=None):
    return MonomialOrder("lex", range(nvars) if priority is None else priority)


def sample_orders(nvars, sample="all", seed=0, full_limit=6, n_random=1000):
    """Variable permutations crossed with lex and degrevlex.

    ``sample="all"`` enumerates every permutation when ``nvars <= full_limit``
    and otherwise draws ``n_random`` seeded random orders.
    """
    if sample == "all" and nvars <= full_limit:
        for perm in permutations(range(nvars)):
            yield MonomialOrder("lex", perm)
            yield MonomialOrder("degrevlex", perm)
        return
    count = n_random if sample == "all" else int(sample)
    rng = random.Random(seed)
    for k in range(count):
        perm = list(range(nvars))
        rng.shuffle(perm)
        yield MonomialOrder("lex" if k % 2 == 0 else "degrevlex", perm)


# polynomials


class Polynomial:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for m, c in dict(terms).items():
                c = Fraction(c)
                if c:
                    clean[m] = c
        self.terms = clean

    @classmethod
    def monomial(cls, m, c=1):
        return cls({m: c})

    @classmethod
    def binomial(cls, m1, m2):
        """m1 - m2."""
        return cls({m1: 1}) - cls({m2: 1})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        d = dict(self.terms)
        for m, c in other.terms.items():
            s = d.get(m, 0) + c
            if s:
                d[m] = s
            else:
                d.pop(m, None)
        p = Polynomial()
        p.terms = d
        return p

    def __neg__(self):
        p = Polynomial()
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c, m=()):
        """c * m * self."""
        p = Polynomial()
        c = Fraction(c)
        if c:
            p.terms = {mono_mul(t, m): c * a for t, a in self.terms.items()}
        return p

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        out = Polynomial()
        for m, c in other.terms.items():
            out = out + self.scale(c, m)
        return out

    def degree(self):
        return max((mono_degree(m) for m in self.terms), default=-1)

    def variables(self):
        return sorted({v for m in self.terms for v, _ in m})

    def leading(self, order):
        """(monomial, coefficient) of the leading term."""
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def monic(self, order):
        _, c = self.leading(order)
        return self.scale(1 / c)

    def sorted_terms(self, order):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def to_str(self, order=None, names=None):
        if not self.terms:
            return "0"
        items = self.sorted_terms(order) if order else sorted(self.terms.items())
        out = []
        for k, (m, c) in enumerate(items):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = mono_str(m, names)
            if a != 1:
                body = f"{a}*{body}" if m else str(a)
            out.append((sign if k else ("-" if c < 0 else "")) + (" " if k else "") + body)
        return " ".join(out)

    def __repr__(self):
        return f"Polynomial({self.to_str()})"


# division and Buchberger


def spoly(f, g, order):
    mf, cf = f.leading(order)
    mg, cg = g.leading(order)
    m = mono_lcm(mf, mg)
    return f.scale(1 / cf, mono_div(m, mf)) - g.scale(1 / cg, mono_div(m, mg))


def normal_form(f, G, order):
    """Remainder of f on division by the list G (reducers in list order)."""
    lead = [g.leading(order) for g in G]
    p = Polynomial(f.terms)
    rem = {}
    while p.terms:
        m, c = p.leading(order)
        for g, (mg, cg) in zip(G, lead):
            if mono_divides(mg, m):
                p = p - g.scale(c / cg, mono_div(m, mg))
                break
        else:
            rem[m] = c
            del p.terms[m]
    out = Polynomial()
    out.terms = rem
    return out


@dataclass(frozen=True)
class GroebnerBasis:
    polys: tuple
    order: MonomialOrder
    pairs_considered: int = 0

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)


def buchberger(gens, order, max_pairs=DEFAULT_MAX_PAIRS, max_vars=DEFAULT_MAX_VARS):
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Only the coprime leading-monomial criterion is used to skip pairs.
    """
    if len(order.priority) > max_vars:
        raise BoundExceeded("buchberger.max_vars", f"{len(order.priority)} variables > {max_vars}")
    G = [g.monic(order) for g in gens if g]
    pairs = [(i, j) for j in range(len(G)) for i in range(j)]
    considered = 0
    while pairs:
        i, j = pairs.pop(0)
        considered += 1
        if considered > max_pairs:
            raise BoundExceeded("buchberger.max_pairs", f"more than {max_pairs} S-pairs")
        if mono_coprime(G[i].leading(order)[0], G[j].leading(order)[0]):
            continue
        r = normal_form(spoly(G[i], G[j], order), G, order)
        if r:
            G.append(r.monic(order))
            k = len(G) - 1
            pairs.extend((a, k) for a in range(k))
    return GroebnerBasis(tuple(reduce_basis(G, order)), order, considered)


def reduce_basis(G, order):
    """Minimal, interreduced, monic version of a Groebner basis G."""
    G = [g.monic(order) for g in G if g]
    keep = []
    lms = [g.leading(order)[0] for g in G]
    for k, g in enumerate(G):
        redundant = False
        for t, h in enumerate(G):
            if t == k:
                continue
            if mono_divides(lms[t], lms[k]) and (lms[t] != lms[k] or t < k):
                redundant = True
                break
        if not redundant:
            keep.append(g)
    out = []
    for k, g in enumerate(keep):
        others = keep[:k] + keep[k + 1:]
        m, c = g.leading(order)
        tail = Polynomial({t: a for t, a in g.terms.items() if t != m})
        out.append(Polynomial.monomial(m, c) + normal_form(tail, others, order))
    out = [g.monic(order) for g in out]
    out.sort(key=lambda g: order.key(g.leading(order)[0]), reverse=True)
    return out


def initial_ideal(G, order):
    """Minimal generators of the initial ideal of the Groebner basis G."""
    lms = sorted({g.leading(order)[0] for g in G if g}, key=order.key, reverse=True)
    return [m for m in lms if not any(o != m and mono_divides(o, m) for o in lms)]


def is_standard(m, initial):
    return not any(mono_divides(g, m) for g in initial)


def count_standard_monomials(nvars, degree, initial):
    """Monomials of the given degree divisible by no initial generator."""
    count = 0

    def rec(v, left, cur):
        nonlocal count
        if v == nvars - 1 or left == 0:
            m = cur + ((v, left),) if left else cur
            if is_standard(m, initial):
                count += 1
            return
        for e in range(left, -1, -1):
            rec(v + 1, left - e, cur + ((v, e),) if e else cur)

    if nvars == 0:
        return 1 if degree == 0 else 0
    rec(0, degree, ())
    return count
