"""Finite posets stored as bitmasks.

Element ``i`` of a poset on ``n`` elements is identified with its index;
``down[i]`` is the bitmask of all ``j <= i`` and ``up[i]`` the bitmask of all
``j >= i`` (both include ``i`` itself).  Labels are arbitrary hashable values
and only matter for input, output and the label-based helpers.
"""

from dataclasses import dataclass
from itertools import permutations, product

from .errors import BoundExceeded, CycleDetected, LabelClash, NotComparable, UnknownLabel

DEFAULT_MAX_ENUMERATE = 6


def bits(mask):
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask):
    return bin(mask).count("1")


class Poset:
    __slots__ = ("labels", "n", "down", "up", "_index", "_covers", "_topo")

    def __init__(self, labels, down):
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise LabelClash(f"duplicate labels in {labels!r}")
        n = len(labels)
        if len(down) != n:
            raise ValueError("one down-set per label expected")
        down = tuple(int(d) for d in down)
        for i, d in enumerate(down):
            if not (d >> i) & 1:
                raise ValueError(f"relation not reflexive at {labels[i]!r}")
            for j in bits(d):
                if j != i and (down[j] >> i) & 1:
                    raise CycleDetected(f"{labels[i]!r} and {labels[j]!r} are mutually below each other")
                if down[j] & ~d:
                    raise ValueError(f"relation not transitive at {labels[j]!r} <= {labels[i]!r}")
        up = [0] * n
        for i, d in enumerate(down):
            for j in bits(d):
                up[j] |= 1 << i
        self.labels = labels
        self.n = n
        self.down = down
        self.up = tuple(up)
        self._index = {lab: i for i, lab in enumerate(labels)}
        self._covers = None
        self._topo = None

    # basic queries

    def index(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(f"unknown label {label!r}") from None

    def leq(self, i, j):
        return (self.down[j] >> i) & 1 == 1

    def lt(self, i, j):
        return i != j and (self.down[j] >> i) & 1 == 1

    def comparable(self, i, j):
        return self.leq(i, j) or self.leq(j, i)

    def le_labels(self, a, b):
        return self.leq(self.index(a), self.index(b))

    @property
    def full(self):
        return (1 << self.n) - 1

    @property
    def leq_matrix(self):
        return tuple(tuple(self.leq(i, j) for j in range(self.n)) for i in range(self.n))

    @property
    def covers(self):
        """Pairs ``(i, j)`` with ``j`` covering ``i``, sorted."""
        if self._covers is None:
            out = []
            for j in range(self.n):
                below = self.down[j] & ~(1 << j)
                for i in bits(below):
                    # i is covered by j iff nothing strictly between them
                    if not (self.up[i] & below & ~(1 << i)):
                        out.append((i, j))
            self._covers = tuple(sorted(out))
        return self._covers

    def upper_covers(self, i):
        return [b for a, b in self.covers if a == i]

    def lower_covers(self, j):
        return [a for a, b in self.covers if b == j]

    def minimal_elements(self):
        return [i for i in range(self.n) if self.down[i] == 1 << i]

    def maximal_elements(self):
        return [i for i in range(self.n) if self.up[i] == 1 << i]

    def topological_order(self):
        """A linear extension, bottom to top."""
        if self._topo is None:
            self._topo = tuple(sorted(range(self.n), key=lambda i: (popcount(self.down[i]), i)))
        return self._topo

    def incomparable_pairs(self):
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n) if not self.comparable(i, j)]

    def is_down_closed(self, mask):
        return all((self.down[i] & ~mask) == 0 for i in bits(mask))

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return isinstance(other, Poset) and self.labels == other.labels and self.down == other.down

    def __hash__(self):
        return hash((self.labels, self.down))

    def __repr__(self):
        cov = ", ".join(f"{self.labels[a]!r}<{self.labels[b]!r}" for a, b in self.covers)
        return f"Poset({list(self.labels)!r}, covers=[{cov}])"


def _closure(n, below):
    """Reflexive-transitive closure of ``below[j]`` (direct lower neighbours)."""
    down = [None] * n
    state = [0] * n  # 0 new, 1 visiting, 2 done

    def visit(j):
        if state[j] == 2:
            return down[j]
        if state[j] == 1:
            raise CycleDetected(f"cycle through element {j}")
        state[j] = 1
        d = 1 << j
        for i in bits(below[j]):
            d |= visit(i)
        state[j] = 2
        down[j] = d
        return d

    for j in range(n):
        visit(j)
    return down


def poset_from_covers(labels, cover_pairs):
    """Poset generated by pairs ``(a, b)`` meaning ``a < b``.

    Redundant pairs are fine; the covers are recomputed.
    """
    labels = tuple(labels)
    if len(set(labels)) != len(labels):
        raise LabelClash(f"duplicate labels in {labels!r}")
    index = {lab: i for i, lab in enumerate(labels)}
    below = [0] * len(labels)
    for a, b in cover_pairs:
        if a not in index:
            raise UnknownLabel(f"unknown label {a!r}")
        if b not in index:
            raise UnknownLabel(f"unknown label {b!r}")
        if a == b:
            continue
        below[index[b]] |= 1 << index[a]
    return Poset(labels, _closure(len(labels), below))


def poset_from_leq(labels, leq):
    """Poset from a full boolean relation matrix ``leq[i][j]`` (i <= j)."""
    n = len(labels)
    down = [sum(1 << i for i in range(n) if leq[i][j]) for j in range(n)]
    return Poset(labels, down)


def subposet(P, indices, labels=None):
    indices = list(indices)
    pos = {old: new for new, old in enumerate(indices)}
    down = []
    for old in indices:
        d = 0
        for i in bits(P.down[old]):
            if i in pos:
                d |= 1 << pos[i]
        down.append(d)
    if labels is None:
        labels = [P.labels[i] for i in indices]
    return Poset(labels, down)


def relabel(P, labels):
    return Poset(labels, P.down)


# chains, rank, purity


def chains(P):
    """All nonempty chains of P as index tuples, bottom to top."""
    out = []

    def extend(chain, mask):
        out.append(tuple(chain))
        for j in bits(mask):
            chain.append(j)
            extend(chain, mask & P.up[j] & ~(1 << j))
            chain.pop()

    for i in range(P.n):
        extend([i], P.up[i] & ~(1 << i))
    return out


def maximal_chains(P):
    """Maximal chains as index tuples, bottom to top (walks along covers)."""
    ups = [P.upper_covers(i) for i in range(P.n)]
    out = []

    def walk(chain):
        nxt = ups[chain[-1]]
        if not nxt:
            out.append(tuple(chain))
            return
        for j in nxt:
            chain.append(j)
            walk(chain)
            chain.pop()

    for i in P.minimal_elements():
        walk([i])
    return out


def _longest_below(P):
    """Number of elements of a longest chain of P with top element i."""
    h = [0] * P.n
    for i in P.topological_order():
        h[i] = 1 + max((h[a] for a in P.lower_covers(i)), default=0)
    return h


def _longest_above(P):
    d = [0] * P.n
    for i in reversed(P.topological_order()):
        d[i] = 1 + max((d[b] for b in P.upper_covers(i)), default=0)
    return d


def rank(P):
    """Length (elements minus one) of a longest chain; -1 for the empty poset."""
    return max(_longest_below(P), default=0) - 1


def is_pure(P):
    """All maximal chains have the same length (P is graded)."""
    h = _longest_below(P)
    top = max(h, default=0)
    return all(h[b] == h[a] + 1 for a, b in P.covers) and all(h[m] == top for m in P.maximal_elements())


@dataclass(frozen=True)
class HatStats:
    """Heights and depths of the elements of P inside the hat poset.

    ``height[i]`` is the length of a longest chain from the adjoined minimum
    up to ``i``; ``depth[i]`` the length of a longest chain from ``i`` up to
    the adjoined maximum.
    """

    height: tuple
    depth: tuple
    rank_hat: int

    def coheight(self, i):
        return self.rank_hat - self.height[i]


def hat_stats(P):
    h = _longest_below(P)
    d = _longest_above(P)
    return HatStats(tuple(h), tuple(d), max(h, default=0) + 1)


# constructions


def chain(k, prefix="c"):
    labels = [f"{prefix}{i}" for i in range(1, k + 1)]
    return Poset(labels, [(1 << (i + 1)) - 1 for i in range(k)])


def antichain(k, prefix="a"):
    return Poset([f"{prefix}{i}" for i in range(1, k + 1)], [1 << i for i in range(k)])


def _check_disjoint(P, Q):
    clash = set(P.labels) & set(Q.labels)
    if clash:
        raise LabelClash(f"shared labels {sorted(map(str, clash))}")


def direct_sum(P, Q):
    _check_disjoint(P, Q)
    return Poset(P.labels + Q.labels, list(P.down) + [d << P.n for d in Q.down])


def ordinal_sum(P, Q):
    """P below Q: every element of P is below every element of Q."""
    _check_disjoint(P, Q)
    return Poset(P.labels + Q.labels, list(P.down) + [(d << P.n) | P.full for d in Q.down])


def cartesian_product(P, Q):
    """Product order on pairs; labels are ``(p, q)`` tuples, P-major order."""
    labels = [(a, b) for a in P.labels for b in Q.labels]
    down = []
    for i in range(P.n):
        for j in range(Q.n):
            d = 0
            for a in bits(P.down[i]):
                for b in bits(Q.down[j]):
                    d |= 1 << (a * Q.n + b)
            down.append(d)
    return Poset(labels, down)


def dual(P):
    return Poset(P.labels, P.up)


def interval(P, x, y):
    i, j = P.index(x), P.index(y)
    if not P.leq(i, j):
        raise NotComparable(f"{x!r} is not below {y!r}")
    return subposet(P, bits(P.up[i] & P.down[j]))


def is_connected(P):
    if P.n == 0:
        return True
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for i in bits(frontier):
            nxt |= P.down[i] | P.up[i]
        frontier = nxt & ~seen
        seen |= nxt
    return seen == P.full


# order ideals


def order_ideals(P, limit=None):
    """All down-closed subsets of P as bitmasks, in a deterministic order."""
    topo = P.topological_order()
    out = []

    # decide elements top-down; including x pulls in its whole down-set,
    # and elements already pulled in need no decision
    order = list(reversed(topo))

    def rec(k, inc):
        if k == len(order):
            out.append(inc)
            if limit is not None and len(out) > limit:
                raise BoundExceeded("ideal count", f"more than {limit} order ideals")
            return
        x = order[k]
        if (inc >> x) & 1:
            rec(k + 1, inc)
            return
        rec(k + 1, inc)
        rec(k + 1, inc | P.down[x])

    rec(0, 0)
    out.sort(key=lambda m: (popcount(m), m))
    return out


def count_order_ideals(P, limit=None):
    return len(order_ideals(P, limit))


# isomorphism


def _invariant_classes(P, rounds=3):
    """Isomorphism-invariant colouring of the elements (refined degrees)."""
    colour = [(popcount(P.down[i]), popcount(P.up[i])) for i in range(P.n)]
    for _ in range(rounds):
        new = []
        for i in range(P.n):
            lo = tuple(sorted(colour[a] for a in P.lower_covers(i)))
            hi = tuple(sorted(colour[b] for b in P.upper_covers(i)))
            new.append((colour[i], lo, hi))
        ranks = {c: k for k, c in enumerate(sorted(set(new)))}
        colour = [ranks[c] for c in new]
    return colour


def canonical_form(P):
    """Isomorphism-invariant encoding of P.

    The lexicographically smallest relation matrix among orderings that sort
    the elements by an isomorphism-invariant colour.  Isomorphic posets get the
    same colours, hence the same candidate set and the same minimum.
    """
    colour = _invariant_classes(P)
    keys = sorted(set(colour))
    groups = [[i for i in range(P.n) if colour[i] == k] for k in keys]
    best = None
    for parts in product(*(permutations(g) for g in groups)):
        order = [i for part in parts for i in part]
        pos = {old: new for new, old in enumerate(order)}
        rows = tuple(sum(1 << pos[j] for j in bits(P.down[i])) for i in order)
        enc = (tuple(colour[i] for i in order), rows)
        if best is None or enc < best:
            best = enc
    return (P.n, best)


def find_isomorphism(P, Q):
    """An order isomorphism P -> Q as a list ``phi[i]`` of Q-indices, or None."""
    if P.n != Q.n:
        return None
    cp, cq = _invariant_classes_pair(P, Q)
    if sorted(cp) != sorted(cq):
        return None
    order = sorted(range(P.n), key=lambda i: (popcount(P.down[i]), i))
    phi = [None] * P.n
    used = [False] * Q.n

    def rec(k):
        if k == P.n:
            return True
        i = order[k]
        for j in range(Q.n):
            if used[j] or cq[j] != cp[i]:
                continue
            ok = True
            for t in range(k):
                a = order[t]
                b = phi[a]
                if P.leq(a, i) != Q.leq(b, j) or P.leq(i, a) != Q.leq(j, b):
                    ok = False
                    break
            if ok:
                phi[i] = j
                used[j] = True
                if rec(k + 1):
                    return True
                used[j] = False
                phi[i] = None
        return False

    return phi if rec(0) else None


def _invariant_classes_pair(P, Q):
    # colours have to be computed on a common scale to be comparable
    both = direct_sum(relabel(P, [("P", i) for i in range(P.n)]), relabel(Q, [("Q", i) for i in range(Q.n)]))
    c = _invariant_classes(both)
    return c[: P.n], c[P.n:]


def is_isomorphic(P, Q):
    return find_isomorphism(P, Q) is not None


def enumerate_posets(max_n, dedup_iso=True, max_ideals=None, bound=DEFAULT_MAX_ENUMERATE, min_n=1):
    """Yield posets with ``min_n <= n <= max_n`` elements labelled ``"1".."n"``.

    With ``dedup_iso`` one representative per isomorphism class is produced.
    Without it every partial order on the labelled set is produced.
    ``max_ideals`` keeps only posets with at most that many order ideals
    (the count can only grow when elements are added, so pruning is safe).
    """
    if max_n > bound:
        raise BoundExceeded("enumerate_posets.max_n", f"max_n={max_n} exceeds bound {bound}")
    if not dedup_iso:
        yield from _enumerate_labelled(max_n, min_n, max_ideals)
        return
    level = [Poset([], [])]
    for n in range(1, max_n + 1):
        seen = {}
        for P in level:
            for ideal in order_ideals(P):
                Q = Poset([str(k) for k in range(1, n + 1)], list(P.down) + [ideal | (1 << (n - 1))])
                if max_ideals is not None and _too_many_ideals(Q, max_ideals):
                    continue
                key = canonical_form(Q)
                if key not in seen:
                    seen[key] = Q
        level = [seen[k] for k in sorted(seen)]
        if n >= min_n:
            yield from level


def _too_many_ideals(P, limit):
    try:
        count_order_ideals(P, limit)
    except BoundExceeded:
        return True
    return False


def _enumerate_labelled(max_n, min_n, max_ideals):
    # every labelled order: choose the down-set of each element as a relation
    # matrix and keep the valid ones (brute force, small n only)
    for n in range(min_n, max_n + 1):
        labels = [str(k) for k in range(1, n + 1)]
        pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
        for choice in product((0, 1), repeat=len(pairs)):
            down = [1 << j for j in range(n)]
            for (i, j), c in zip(pairs, choice):
                if c:
                    down[j] |= 1 << i
            try:
                P = Poset(labels, down)
            except (ValueError, CycleDetected):
                continue
            if max_ideals is not None and _too_many_ideals(P, max_ideals):
                continue
            yield P
