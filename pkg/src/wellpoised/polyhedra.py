"""Rational cones and sigma-polyhedra.

Cones are stored by generators.  Inequality descriptions are produced on
demand with a double description (Motzkin) routine, ``double_description``,
which is the single place where V- and H-representations are converted.
"""

import itertools
from fractions import Fraction
from typing import List, Sequence, Tuple

from .errors import NotPointed, TailMismatch, UnboundedBelow
from .exactmath import (
    as_fraction, dot, kernel_lattice, mat_vec, nullspace, primitive, rank,
    rref, smith_normal_form,
)


def _is_zero(v):
    return all(x == 0 for x in v)


def _canonical_line_basis(vectors, n):
    """Deterministic integer basis of the span of ``vectors``."""
    vecs = [list(v) for v in vectors if not _is_zero(v)]
    if not vecs:
        return []
    R, piv = rref(vecs)
    return [primitive(row) for row in R[:len(piv)]]


def _project_off(v, basis):
    """Orthogonal projection of v onto the complement of span(basis)."""
    if not basis:
        return [as_fraction(x) for x in v]
    # solve Gram system for the component in span(basis)
    G = [[dot(a, b) for b in basis] for a in basis]
    rhs = [dot(a, v) for a in basis]
    aug = [row + [r] for row, r in zip(G, rhs)]
    R, _ = rref(aug)
    coef = [R[i][-1] for i in range(len(basis))]
    return [as_fraction(v[j]) - sum(c * b[j] for c, b in zip(coef, basis))
            for j in range(len(v))]


def double_description(constraints: Sequence[Sequence], n: int) -> Tuple[List[List[int]], List[List[int]]]:
    """Generators of {x in Q^n : <a, x> >= 0 for every a in constraints}.

    Returns ``(rays, lineality)``: primitive integer rays (taken modulo the
    lineality space, projected onto its orthogonal complement) and an integer
    basis of the lineality space.  The output is sorted and so does not
    depend on the internal processing order.
    """
    cons = [primitive(a) for a in constraints if not _is_zero(a)]
    # drop duplicates, keep first occurrence
    seen = set()
    uniq = []
    for a in cons:
        if tuple(a) not in seen:
            seen.add(tuple(a))
            uniq.append(a)
    cons = uniq

    lin = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    rays: List[List[Fraction]] = []
    done: List[List[int]] = []

    for a in cons:
        lvals = [dot(a, l) for l in lin]
        k = next((i for i, x in enumerate(lvals) if x != 0), None)
        if k is not None:
            l0 = lin[k]
            if lvals[k] < 0:
                l0 = [-x for x in l0]
            a0 = abs(lvals[k])
            new_lin = []
            for i, l in enumerate(lin):
                if i == k:
                    continue
                c = lvals[i] / a0
                new_lin.append([x - c * y for x, y in zip(l, l0)])
            new_rays = []
            for r in rays:
                c = dot(a, r) / a0
                new_rays.append([x - c * y for x, y in zip(r, l0)])
            new_rays.append(l0)
            lin = new_lin
            rays = new_rays
            done.append(a)
            continue

        vals = [dot(a, r) for r in rays]
        pos = [i for i, x in enumerate(vals) if x > 0]
        neg = [i for i, x in enumerate(vals) if x < 0]
        zer = [i for i, x in enumerate(vals) if x == 0]
        if not neg:
            done.append(a)
            continue
        tight = [frozenset(j for j, c in enumerate(done) if dot(c, r) == 0) for r in rays]
        # restrict the adjacency test to rays that survive this step or are being cut
        new = [rays[i] for i in pos + zer]
        for p in pos:
            for q in neg:
                common = tight[p] & tight[q]
                adjacent = True
                for r in range(len(rays)):
                    if r != p and r != q and common <= tight[r]:
                        adjacent = False
                        break
                if adjacent:
                    v = [vals[p] * y - vals[q] * x for x, y in zip(rays[p], rays[q])]
                    new.append([Fraction(x) for x in primitive(v)])
        rays = new
        done.append(a)

    lin_basis = _canonical_line_basis(lin, n)
    out = set()
    for r in rays:
        pr = _project_off(r, lin_basis)
        if _is_zero(pr):
            continue
        out.add(tuple(primitive(pr)))
    return sorted(list(r) for r in out), lin_basis


def pointed_check(generators: Sequence[Sequence], n: int) -> bool:
    """True when cone(generators) contains no line."""
    rays, lin = double_description(generators, n)
    normals = rays + lin
    return rank(normals) == n if normals else n == 0


class RationalCone:
    """Positive hull of finitely many integer generators in Q^n."""

    def __init__(self, ambient_dim: int, generators: Sequence[Sequence] = ()):
        self.ambient_dim = ambient_dim
        gens = []
        seen = set()
        for g in generators:
            if len(g) != ambient_dim:
                raise ValueError("generator has wrong length")
            if _is_zero(g):
                continue
            p = tuple(primitive(g))
            if p not in seen:
                seen.add(p)
                gens.append(list(p))
        self.generators = gens
        self._hrep = None
        self._vrep = None

    def __repr__(self):
        return f"RationalCone({self.ambient_dim}, {self.generators})"

    def __eq__(self, other):
        if not isinstance(other, RationalCone):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.hrep() == other.hrep()

    def __hash__(self):
        return hash((self.ambient_dim, tuple(map(tuple, self.hrep()[0]))))

    @classmethod
    def orthant(cls, n):
        return cls(n, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def from_inequalities(cls, n, inequalities, equalities=()):
        """Cone {x : <a,x> >= 0 (a in inequalities), <b,x> = 0 (b in equalities)}."""
        cons = [list(a) for a in inequalities]
        for b in equalities:
            cons.append(list(b))
            cons.append([-x for x in b])
        rays, lin = double_description(cons, n)
        return cls(n, rays + lin + [[-x for x in l] for l in lin])

    def hrep(self):
        """(facet normals, equality normals) with cone = {normals >= 0, eqs = 0}."""
        if self._hrep is None:
            self._hrep = double_description(self.generators, self.ambient_dim)
        return self._hrep

    def vrep(self):
        """(extreme rays modulo lineality, lineality basis)."""
        if self._vrep is None:
            ineq, eqs = self.hrep()
            cons = ineq + eqs + [[-x for x in e] for e in eqs]
            self._vrep = double_description(cons, self.ambient_dim)
        return self._vrep

    def rays(self):
        return self.vrep()[0]

    def lineality(self):
        return self.vrep()[1]

    def is_pointed(self):
        return not self.lineality()

    def dim(self):
        return rank(self.generators) if self.generators else 0

    def contains(self, x) -> bool:
        ineq, eqs = self.hrep()
        return all(dot(a, x) >= 0 for a in ineq) and all(dot(b, x) == 0 for b in eqs)

    def in_relative_interior(self, x) -> bool:
        ineq, eqs = self.hrep()
        return all(dot(a, x) > 0 for a in ineq) and all(dot(b, x) == 0 for b in eqs)

    def interior_point(self):
        """Sum of the rays: an integer point in the relative interior."""
        rays = self.rays()
        pt = [0] * self.ambient_dim
        for r in rays:
            pt = [a + b for a, b in zip(pt, r)]
        return pt


def dual_cone(c: RationalCone) -> RationalCone:
    """{u : <u, v> >= 0 for every v in c}."""
    rays, lin = c.hrep()
    return RationalCone(c.ambient_dim, rays + lin + [[-x for x in l] for l in lin])


class HilbertBasis:
    def __init__(self, cone: RationalCone, elements):
        self.cone = cone
        self.elements = [list(e) for e in elements]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"HilbertBasis({self.elements})"


def _simplicial_cover(rays: List[List[int]], d: int) -> List[List[List[int]]]:
    """Pulling triangulation of the pointed cone spanned by ``rays`` (dimension d)."""
    if len(rays) == d:
        return [rays]
    if d == 1:
        return [[rays[0]]]
    n = len(rays[0])
    facets, _ = double_description(rays, n)
    r0 = rays[0]
    out = []
    for f in facets:
        if dot(f, r0) == 0:
            continue
        face = [r for r in rays if dot(f, r) == 0]
        for simplex in _simplicial_cover(face, d - 1):
            out.append([r0] + simplex)
    return out


def _span_lattice_basis(vectors, n):
    """Integer basis of Z^n intersected with span(vectors)."""
    ortho = nullspace(vectors, n)
    if not ortho:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    A = [primitive(v) for v in ortho]
    return kernel_lattice(A, n)


def _parallelepiped_points(gens: List[List[int]], basis: List[List[int]]):
    """Lattice points of the half-open parallelepiped spanned by ``gens``."""
    d = len(gens)
    # coordinates of each generator in the lattice basis
    BT = [list(col) for col in zip(*basis)]
    coords = []
    for g in gens:
        R, _ = rref([row + [x] for row, x in zip(BT, g)])
        coords.append([int(R[i][-1]) for i in range(d)])
    M = [list(col) for col in zip(*coords)]  # columns are generators
    D, U, V = smith_normal_form(M)
    diag = [D[i][i] for i in range(d)]
    # U M V = D, so Z^d / M Z^d has representatives U^{-1} y, 0 <= y_i < d_i
    Uinv = [[int(x) for x in row] for row in _inverse(U)]
    Minv = _inverse(M)
    pts = []
    for y in itertools.product(*[range(x) for x in diag]):
        x = mat_vec(Uinv, list(y))
        lam = mat_vec(Minv, x)
        lam = [l - (l.numerator // l.denominator) for l in lam]
        c = [sum(lam[j] * M[i][j] for j in range(d)) for i in range(d)]
        pt = [sum(c[i] * basis[i][k] for i in range(d)) for k in range(len(basis[0]))]
        pts.append([int(v) for v in pt])
    return pts


def _inverse(M):
    n = len(M)
    aug = [list(map(as_fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(M)]
    R, _ = rref(aug)
    return [row[n:] for row in R]


def hilbert_basis(c: RationalCone) -> HilbertBasis:
    """Minimal generating set of the semigroup c intersected with Z^n.

    Candidates are the lattice points of the fundamental parallelepipeds of
    a simplicial cover of c; reducible candidates are then discarded.  The
    elements are returned in ascending lexicographic order.
    """
    n = c.ambient_dim
    if not c.generators:
        return HilbertBasis(c, [])
    if not c.is_pointed():
        raise NotPointed("cone contains a line")
    rays = c.rays()
    d = rank(rays)
    basis = _span_lattice_basis(rays, n)
    cands = set()
    for simplex in _simplicial_cover(rays, d):
        for g in simplex:
            cands.add(tuple(g))
        for p in _parallelepiped_points(simplex, basis):
            if not _is_zero(p):
                cands.add(tuple(p))
    cands = sorted(cands)
    keep = []
    for x in cands:
        reducible = False
        for y in cands:
            if y == x:
                continue
            diff = [a - b for a, b in zip(x, y)]
            if not _is_zero(diff) and c.contains(diff):
                reducible = True
                break
        if not reducible:
            keep.append(list(x))
    return HilbertBasis(c, keep)


class SigmaPolyhedron:
    """conv(vertices) + tail, with rational vertices and a cone as tail."""

    def __init__(self, ambient_dim: int, vertices, tail: RationalCone = None):
        if not vertices:
            raise ValueError("empty polyhedra are not supported")
        self.ambient_dim = ambient_dim
        self.vertices = [tuple(as_fraction(x) for x in v) for v in vertices]
        for v in self.vertices:
            if len(v) != ambient_dim:
                raise ValueError("vertex has wrong length")
        self.tail = tail if tail is not None else RationalCone(ambient_dim, [])
        if self.tail.ambient_dim != ambient_dim:
            raise ValueError("tail cone has wrong dimension")

    @classmethod
    def from_points(cls, ambient_dim, points, tail=None):
        """Build from any finite point set, pruning non-vertices."""
        tail = tail if tail is not None else RationalCone(ambient_dim, [])
        pts = sorted(set(tuple(as_fraction(x) for x in p) for p in points))
        verts = [p for p in pts if _is_vertex(p, pts, tail)]
        return cls(ambient_dim, verts, tail)

    def __repr__(self):
        vs = ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in self.vertices)
        return f"SigmaPolyhedron([{vs}] + {self.tail.generators})"

    def __eq__(self, other):
        if not isinstance(other, SigmaPolyhedron):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim and self.tail == other.tail
                and sorted(self.vertices) == sorted(other.vertices))

    def is_integral(self):
        return all(x.denominator == 1 for v in self.vertices for x in v)

    def check_in_tail_dual(self, u):
        if any(dot(u, t) < 0 for t in self.tail.generators):
            raise UnboundedBelow(f"{list(u)} is negative on the tail cone")


def _is_vertex(p, pts, tail):
    gens = [[a - b for a, b in zip(q, p)] for q in pts if q != p]
    gens += tail.generators
    gens = [primitive(g) for g in gens if not _is_zero(g)]
    if not gens:
        return True
    return pointed_check(gens, len(p))


def support_value(p: SigmaPolyhedron, u) -> Fraction:
    """min of <u, v> over p; the minimum sits at a vertex."""
    u = [as_fraction(x) for x in u]
    p.check_in_tail_dual(u)
    return min(dot(u, v) for v in p.vertices)


def minkowski_sum(p: SigmaPolyhedron, q: SigmaPolyhedron) -> SigmaPolyhedron:
    if p.ambient_dim != q.ambient_dim or p.tail != q.tail:
        raise TailMismatch("Minkowski summands must share their tail cone")
    pts = [[a + b for a, b in zip(v, w)] for v in p.vertices for w in q.vertices]
    return SigmaPolyhedron.from_points(p.ambient_dim, pts, p.tail)


def face_at(p: SigmaPolyhedron, u) -> SigmaPolyhedron:
    """Face of p on which <u, .> is minimized."""
    u = [as_fraction(x) for x in u]
    p.check_in_tail_dual(u)
    m = min(dot(u, v) for v in p.vertices)
    verts = [v for v in p.vertices if dot(u, v) == m]
    tail = RationalCone(p.ambient_dim, [t for t in p.tail.generators if dot(u, t) == 0])
    return SigmaPolyhedron(p.ambient_dim, verts, tail)


def _normal_cone_constraints(p: SigmaPolyhedron, subset):
    """Constraints for {u in tail dual : every vertex of subset minimizes u}."""
    s0 = subset[0]
    ineq = [list(t) for t in p.tail.generators]
    eqs = []
    for s in subset[1:]:
        eqs.append([a - b for a, b in zip(s, s0)])
    for v in p.vertices:
        if v not in subset:
            ineq.append([a - b for a, b in zip(v, s0)])
    ineq = [primitive(a) for a in ineq if not _is_zero(a)]
    eqs = [primitive(e) for e in eqs if not _is_zero(e)]
    return ineq, eqs


def normal_fan(p: SigmaPolyhedron):
    """Closed normal cones of the faces of p, as (inequalities, equalities)."""
    out = []
    seen = set()
    verts = list(p.vertices)
    for k in range(1, len(verts) + 1):
        for subset in itertools.combinations(verts, k):
            ineq, eqs = _normal_cone_constraints(p, list(subset))
            cone = RationalCone.from_inequalities(p.ambient_dim, ineq, eqs)
            if not cone.generators and k > 1:
                continue
            key = (tuple(map(tuple, cone.hrep()[0])), tuple(map(tuple, cone.hrep()[1])))
            if key in seen:
                continue
            seen.add(key)
            out.append((ineq, eqs))
    return out


def refinement_representatives(polys: Sequence[SigmaPolyhedron]):
    """One integer relative-interior point for each cone of the common refinement
    of the normal fans of ``polys``, higher-dimensional cones first."""
    n = polys[0].ambient_dim
    fans = [normal_fan(p) for p in polys]
    reps = {}
    for choice in itertools.product(*fans):
        ineq = [a for c in choice for a in c[0]]
        eqs = [b for c in choice for b in c[1]]
        cone = RationalCone.from_inequalities(n, ineq, eqs)
        rays, lin = cone.vrep()
        u = cone.interior_point()
        key = tuple(map(tuple, cone.hrep()[0])), tuple(map(tuple, cone.hrep()[1]))
        if key not in reps:
            reps[key] = (len(rays) + 2 * len(lin), u)
    return [u for _, u in sorted(reps.values(), key=lambda t: (-t[0], t[1]))]


def is_admissable(polys: Sequence[SigmaPolyhedron]):
    """Decide whether at most one face_at(p, u) is non-integral for every u.

    Returns ``(flag, witness)``; the witness is an integer u with two or more
    non-integral faces, or None.
    """
    polys = list(polys)
    if not polys:
        return True, None
    tail = polys[0].tail
    for p in polys[1:]:
        if p.ambient_dim != polys[0].ambient_dim or p.tail != tail:
            raise TailMismatch("admissability needs a common tail cone")
    if len(polys) == 1:
        return True, None
    for u in refinement_representatives(polys):
        bad = sum(1 for p in polys if not face_at(p, u).is_integral())
        if bad >= 2:
            return False, list(u)
    return True, None


class PolyhedronByInequalities:
    """{x : <a, x> >= b for every (a, b)}."""

    def __init__(self, ambient_dim: int, inequalities=()):
        self.ambient_dim = ambient_dim
        self.inequalities = [(list(a), as_fraction(b)) for a, b in inequalities]
        for a, _ in self.inequalities:
            if len(a) != ambient_dim:
                raise ValueError("normal vector has wrong length")

    def __repr__(self):
        return f"PolyhedronByInequalities({self.ambient_dim}, {self.inequalities})"

    def contains(self, x) -> bool:
        return all(dot(a, x) >= b for a, b in self.inequalities)

    def homogenization(self) -> RationalCone:
        """Cone over P x {1}: {(x, s) : <a, x> - b s >= 0, s >= 0}."""
        n = self.ambient_dim
        cons = [primitive(list(a) + [-b]) for a, b in self.inequalities if not (_is_zero(a) and b == 0)]
        cons.append([0] * n + [1])
        return RationalCone.from_inequalities(n + 1, cons)

    def lattice_points_height_one(self):
        """Hilbert basis elements of the homogenization at last coordinate 1."""
        cone = self.homogenization()
        if not cone.generators:
            return []
        hb = hilbert_basis(cone)
        return sorted(h[:-1] for h in hb.elements if h[-1] == 1)

    def is_empty(self) -> bool:
        cone = self.homogenization()
        return all(g[-1] == 0 for g in cone.generators)


def convex_hull_scaled(points) -> PolyhedronByInequalities:
    """Inequality description of conv{v / deg}.

    ``points`` is a list of (vector, positive rational degree).  Equalities
    of the affine hull appear as pairs of opposite inequalities.
    """
    if not points:
        raise ValueError("convex hull of an empty set")
    scaled = []
    for v, deg in points:
        deg = as_fraction(deg)
        if deg <= 0:
            raise ValueError("degrees must be positive")
        scaled.append([as_fraction(x) / deg for x in v])
    n = len(scaled[0])
    gens = [primitive(s + [Fraction(1)]) for s in scaled]
    rays, lin = double_description(gens, n + 1)
    ineqs = []
    for r in rays + lin + [[-x for x in l] for l in lin]:
        a, b = r[:n], r[n]
        if _is_zero(a):
            continue
        ineqs.append((a, Fraction(-b)))
    return PolyhedronByInequalities(n, ineqs)
