"""Multigraded Betti numbers of Hibi rings from squarefree divisor complexes.

For h in the semigroup H of R[L], the complex Delta_h has the lattice
elements as vertices and a face F whenever h minus the sum of the exponent
vectors of F stays in H; then beta_{i,h}(R[L]) is the dimension of the
reduced homology group H_{i-1}(Delta_h) over the rationals.
"""

import os
from dataclasses import dataclass, field
from math import gcd

from .errors import BoundExceeded, NotInSemigroup, TheoremViolated
from .hibi import SemigroupElement, semigroup_member, standard_monomials
from .invariants import hilbert_data
from .poset import bits
from .report import Report

DEFAULT_MAX_VERTICES = 16
DEFAULT_MAX_MEM = 50_000_000  # matrix entries (rows * columns) per rank computation


def _max_mem():
    raw = os.environ.get("HIBI_MAX_MEM")
    return int(raw) if raw else DEFAULT_MAX_MEM


class _Semigroup:
    """Membership oracle for H given by the join-irreducible poset."""

    def __init__(self, D):
        P = D.ji
        self.P = P
        self.n = P.n
        self.covers = P.covers
        self.minimal = P.minimal_elements()
        self.maximal = P.maximal_elements()
        # generator of lattice element x as a dense vector (t first)
        self.gens = [(1,) + tuple((m >> i) & 1 for i in range(P.n)) for m in D.birkhoff]

    def member(self, h):
        w0 = h[0]
        if w0 < 0:
            return False
        for a, b in self.covers:
            if h[1 + a] < h[1 + b]:
                return False
        for a in self.minimal:
            if h[1 + a] > w0:
                return False
        for a in self.maximal:
            if h[1 + a] < 0:
                return False
        return True

    def minus(self, h, x):
        g = self.gens[x]
        return tuple(a - b for a, b in zip(h, g))


@dataclass
class DivisorComplex:
    """Delta_h: vertices are the lattice elements x with h - e(x) in H."""

    h: tuple
    vertices: tuple
    _oracle: object = field(repr=False, default=None)

    def is_face(self, face):
        r = self.h
        for x in face:
            r = self._oracle.minus(r, x)
        return self._oracle.member(r)

    def faces(self, max_size=None):
        """All faces as sorted vertex tuples, grouped by size (index = size)."""
        oracle = self._oracle
        verts = self.vertices
        limit = len(verts) if max_size is None else max_size
        out = [[()]]

        def rec(face, rest, start):
            if len(face) >= limit:
                return
            for k in range(start, len(verts)):
                x = verts[k]
                r = oracle.minus(rest, x)
                if oracle.member(r):
                    nf = face + (x,)
                    while len(out) <= len(nf):
                        out.append([])
                    out[len(nf)].append(nf)
                    rec(nf, r, k + 1)

        rec((), self.h, 0)
        return out


def _as_vector(h):
    if isinstance(h, SemigroupElement):
        return (h.w0,) + tuple(h.w)
    return tuple(h)


def divisor_complex(D, h, oracle=None):
    oracle = oracle or _Semigroup(D)
    h = _as_vector(h)
    if not semigroup_member(SemigroupElement(h[0], h[1:]), D.ji):
        raise NotInSemigroup(f"{h!r} is not in the semigroup")
    verts = tuple(x for x in range(D.lattice.n) if oracle.member(oracle.minus(h, x)))
    return DivisorComplex(h, verts, oracle)


# exact linear algebra


def integer_rank(rows, ncols=None):
    """Rank over Q of a sparse integer matrix given as a list of {col: value}.

    Fraction-free incremental echelon form; rows are divided by the gcd of
    their entries after each elimination step.
    """
    nrows = len(rows)
    if ncols is None:
        ncols = 1 + max((c for r in rows for c in r), default=-1)
    if nrows * ncols > _max_mem():
        raise BoundExceeded("HIBI_MAX_MEM", f"{nrows}x{ncols} boundary matrix exceeds the elimination guard")
    pivots = {}
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                pivots[c] = row
                break
            a, b = piv[c], row[c]
            new = {}
            for k, v in row.items():
                new[k] = v * a
            for k, v in piv.items():
                s = new.get(k, 0) - v * b
                if s:
                    new[k] = s
                else:
                    new.pop(k, None)
            g = 0
            for v in new.values():
                g = gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                new = {k: v // g for k, v in new.items()}
            row = new
    return len(pivots)


def _boundary_rank(faces_k, faces_km1):
    """Rank of the boundary map from k-element faces to (k-1)-element faces."""
    if not faces_k or not faces_km1:
        return 0
    index = {f: t for t, f in enumerate(faces_km1)}
    rows = []
    for f in faces_k:
        row = {}
        for pos in range(len(f)):
            row[index[f[:pos] + f[pos + 1:]]] = -1 if pos % 2 else 1
        rows.append(row)
    return integer_rank(rows, len(faces_km1))


def reduced_homology_dims(faces, up_to_dim, max_vertices=None):
    """dims of reduced homology H_{-1} .. H_{up_to_dim}.

    ``faces`` is either a DivisorComplex or a list of faces (vertex tuples);
    the empty face is implied.
    """
    if isinstance(faces, DivisorComplex):
        if max_vertices is not None and len(faces.vertices) > max_vertices:
            raise BoundExceeded("reduced_homology.max_vertices", f"{len(faces.vertices)} vertices > {max_vertices}")
        by_size = faces.faces(up_to_dim + 2)
    else:
        by_size = _group_faces(faces)
        nverts = len(by_size[1]) if len(by_size) > 1 else 0
        if max_vertices is not None and nverts > max_vertices:
            raise BoundExceeded("reduced_homology.max_vertices", f"{nverts} vertices > {max_vertices}")
    return _homology_from_sizes(by_size, up_to_dim)


def _group_faces(faces):
    closed = {()}
    for f in faces:
        f = tuple(sorted(f))
        stack = [f]
        while stack:
            g = stack.pop()
            if g in closed:
                continue
            closed.add(g)
            stack.extend(g[:k] + g[k + 1:] for k in range(len(g)))
    top = max(len(f) for f in closed)
    by_size = [[] for _ in range(top + 1)]
    for f in sorted(closed):
        by_size[len(f)].append(f)
    return by_size


def _homology_from_sizes(by_size, up_to_dim, dims=None):
    """Reduced homology dims for H_k, k = -1..up_to_dim (face k has k+1 vertices)."""
    def faces_of(size):
        return by_size[size] if 0 <= size < len(by_size) else []

    wanted = range(-1, up_to_dim + 1) if dims is None else dims
    ranks = {}

    def rank_of(size):
        # boundary from faces with `size` vertices
        if size not in ranks:
            ranks[size] = _boundary_rank(faces_of(size), faces_of(size - 1)) if size >= 1 else 0
        return ranks[size]

    out = []
    for k in wanted:
        size = k + 1
        cells = len(faces_of(size))
        out.append(cells - rank_of(size) - rank_of(size + 1))
    return out


def _is_cone(by_size, verts, max_face):
    """A vertex v with F + v a face for every face F of at most ``max_face``
    vertices kills reduced homology in dimensions below ``max_face``."""
    all_faces = set(f for group in by_size for f in group)
    small = [f for f in all_faces if len(f) <= max_face]
    for v in verts:
        if all(tuple(sorted(f + (v,))) in all_faces for f in small if v not in f):
            return True
    return False


# Betti tables


@dataclass
class BettiTable:
    """Betti numbers of R[L] within bounds; ``ideal`` shifts to I_L."""

    multigraded: dict
    graded: dict
    max_i: int
    max_j: int
    projdim: int
    reg: int

    @property
    def complete(self):
        """True when the bounds reach every possible nonzero entry."""
        return self.max_i >= self.projdim and self.max_j >= self.projdim + self.reg

    def ring(self, i, j):
        return self.graded.get((i, j), 0)

    def ideal(self, i, j):
        return self.graded.get((i + 1, j), 0)

    def ideal_table(self):
        return {(i - 1, j): v for (i, j), v in sorted(self.graded.items()) if i >= 1 and v}

    def rows(self):
        return [{"i": i, "j": j, "value": v} for (i, j), v in sorted(self.ideal_table().items())]

    def as_dict(self):
        return {
            "ideal": self.rows(),
            "bounds": {"max_i": self.max_i - 1, "max_j": self.max_j},
            "complete": self.complete,
        }


def _betti_of_h(D, oracle, h, homological, cone_check=True):
    """beta_{i,h} for i in ``homological`` (ring indexing)."""
    verts = tuple(x for x in range(D.lattice.n) if oracle.member(oracle.minus(h, x)))
    cx = DivisorComplex(h, verts, oracle)
    top = max(homological)
    by_size = cx.faces(top + 1)
    if cone_check and len(by_size) > 2 and _is_cone(by_size, verts, top):
        return {i: 0 for i in homological}
    dims = _homology_from_sizes(by_size, top - 1, [i - 1 for i in homological])
    return dict(zip(homological, dims))


def _h_of_multichain(oracle, mc):
    h = [0] * (oracle.n + 1)
    for x in mc:
        for k, v in enumerate(oracle.gens[x]):
            h[k] += v
    return tuple(h)


def betti_table(D, max_i, max_total_degree, homological=None, max_count=500000):
    """Betti numbers beta_{i,j}(R[L]) for i <= max_i and j <= max_total_degree.

    Candidates h of degree j are the sums over j-multichains of L; each
    element of H of degree j arises from exactly one multichain.
    """
    oracle = _Semigroup(D)
    hd = hilbert_data(D)
    multi = {}
    graded = {}
    wanted = list(range(0, max_i + 1)) if homological is None else sorted(homological)
    for j in range(0, max_total_degree + 1):
        rel = [i for i in wanted if i <= j and (i > 0 or j == 0)]
        if 0 in wanted and j == 0:
            multi[(0, (0,) * (oracle.n + 1))] = 1
            graded[(0, 0)] = 1
        rel = [i for i in rel if i > 0]
        if not rel:
            continue
        try:
            mcs = standard_monomials(D.lattice, j, max_degree=max_total_degree, max_count=max_count)
        except BoundExceeded as exc:
            raise BoundExceeded("betti_table.candidates", str(exc), partial=BettiTable(multi, graded, max_i, j - 1, hd.projdim, hd.reg)) from exc
        for mc in mcs:
            h = _h_of_multichain(oracle, mc)
            for i, v in _betti_of_h(D, oracle, h, rel).items():
                if v:
                    multi[(i, h)] = v
                    graded[(i, j)] = graded.get((i, j), 0) + v
    return BettiTable(multi, graded, max_i, max_total_degree, hd.projdim, hd.reg)


@dataclass(frozen=True)
class Observation:
    verdict: bool
    bounds: tuple
    complete: bool

    def __bool__(self):
        return self.verdict


def linearly_related_observed(D):
    """beta_{1,j}(I_L) == 0 for 4 <= j <= reg(I_L) + 1 (the possible range)."""
    hd = hilbert_data(D)
    top = hd.reg + 2  # reg(I) = reg(R) + 1 and beta_{1,j}(I) needs j <= 1 + reg(I)
    if top < 4:
        return Observation(True, (1, top), True)
    oracle = _Semigroup(D)
    for j in range(4, top + 1):
        for mc in standard_monomials(D.lattice, j, max_degree=top, max_count=10**7):
            h = _h_of_multichain(oracle, mc)
            if _betti_of_h(D, oracle, h, [2])[2]:
                return Observation(False, (1, j), True)
    return Observation(True, (1, top), True)


def pure_resolution_observed(D, max_degree=None):
    """Each homological degree of I_L has a single shift.

    Degrees are scanned upwards and the scan stops at the first homological
    degree showing two shifts.  A positive verdict is complete only when
    the scan reaches projdim + reg.
    """
    hd = hilbert_data(D)
    last = hd.projdim + hd.reg
    stop = last if max_degree is None else min(last, max_degree)
    oracle = _Semigroup(D)
    support = {}
    wanted = list(range(1, hd.projdim + 1))
    for j in range(2, stop + 1):
        rel = [i for i in wanted if i < j]
        if not rel:
            continue
        found = {}
        for mc in standard_monomials(D.lattice, j, max_degree=stop, max_count=10**7):
            h = _h_of_multichain(oracle, mc)
            for i, v in _betti_of_h(D, oracle, h, rel).items():
                if v:
                    found[i] = True
        for i in found:
            support.setdefault(i, set()).add(j)
            if len(support[i]) > 1:
                return Observation(False, (i - 1, j), True)
    return Observation(True, (hd.projdim - 1, stop), stop == last)


def induced_monotonicity_check(big, small, max_i, max_j, report=None):
    """beta_{ij}(I_small) <= beta_{ij}(I_big) entrywise within bounds."""
    rep = report if report is not None else Report("induced monotonicity")
    tb = betti_table(big, max_i + 1, max_j)
    ts = betti_table(small, max_i + 1, max_j)
    for (i, j), v in ts.graded.items():
        if i >= 1:
            rep.require("induced sublattice Betti numbers are smaller", v <= tb.graded.get((i, j), 0), {"i": i - 1, "j": j, "small": v, "big": tb.graded.get((i, j), 0)})
    rep.data.update(big=tb.rows(), small=ts.rows())
    return rep


def quadratic_gb_implies_linear_syzygy_bound(D, max_j=None, report=None):
    """beta_{1,j}(I_L) == 0 for j > 4 within the possible degree range."""
    rep = report if report is not None else Report("linear syzygy bound")
    hd = hilbert_data(D)
    top = hd.reg + 2 if max_j is None else max_j
    oracle = _Semigroup(D)
    for j in range(5, top + 1):
        total = 0
        for mc in standard_monomials(D.lattice, j, max_degree=top, max_count=10**7):
            total += _betti_of_h(D, oracle, _h_of_multichain(oracle, mc), [2])[2]
        rep.require("beta_1j(I) vanishes for j > 4", total == 0, {"j": j, "value": total})
    rep.data["checked_up_to"] = top
    return rep


def check_table_consistency(D, table, report=None):
    """Identities that must hold on a complete Betti table."""
    rep = report if report is not None else Report("betti consistency")
    hd = hilbert_data(D)
    nonzero = [(i, j) for (i, j), v in table.graded.items() if v]
    if table.complete:
        rep.require("reg from table equals deg h", max(j - i for i, j in nonzero) == hd.reg, nonzero)
        rep.require("projdim from table", max(i for i, _ in nonzero) == hd.projdim, nonzero)
    gens = sum(v for (i, j), v in table.graded.items() if i == 1)
    incomparable = len(D.lattice.poset.incomparable_pairs())
    rep.require("generators are the incomparable pairs", gens == incomparable and all(j == 2 for (i, j) in nonzero if i == 1), gens)
    return rep


def betti_vector(table):
    """Total Betti numbers beta_i(R) for i = 0..max_i."""
    out = [0] * (table.max_i + 1)
    for (i, _), v in table.graded.items():
        out[i] += v
    return out


def top_shift_betti(table):
    """beta at the highest shift in the last homological degree."""
    i = table.projdim
    row = {j: v for (k, j), v in table.graded.items() if k == i and v}
    if not row:
        raise TheoremViolated("last homological degree is nonzero", i)
    return row[max(row)]
