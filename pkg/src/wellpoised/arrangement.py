"""Arrangement varieties: divisors supported on hyperplane arrangements.

The base is P^c embedded in P^m by linear forms l_0..l_m.  Weights on the
torus of P^m are written in R^m through t_i = x_i / x_0, so the class of
e_0 is -(e_1 + ... + e_m).
"""

import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import FrozenSet, List, Sequence

from .errors import NotGeneric, RankDeficient
from .exactmath import dot, nullspace, primitive, rank, rref
from .polyalg.ideals import PolynomialIdeal, support_minimal_vectors
from .polyalg.polynomial import Polynomial
from .polyhedra import (
    PolyhedronByInequalities, RationalCone, SigmaPolyhedron, is_admissable,
    refinement_representatives, support_value,
)
from .semicanonical import (
    PolyhedralDivisorSpec, cone_lift_check, semicanonical_presentation,
)


class ArrangementSpec:
    """Linear forms l_0..l_m in c+1 variables with coefficients Delta_0..Delta_m."""

    def __init__(self, c: int, linear_forms: Sequence[Polynomial],
                 coefficients: Sequence[SigmaPolyhedron], name: str = ""):
        self.c = c
        self.linear_forms = list(linear_forms)
        self.coefficients = list(coefficients)
        self.name = name
        if len(self.coefficients) != len(self.linear_forms):
            raise ValueError("need one coefficient per linear form")
        if not self.linear_forms:
            raise ValueError("no linear forms")
        self.vars = self.linear_forms[0].vars
        if len(self.vars) != c + 1:
            raise ValueError(f"linear forms must be in {c + 1} variables")
        rows = []
        for f in self.linear_forms:
            if f.vars != self.vars:
                raise ValueError("linear forms live in different rings")
            if f.is_zero() or any(sum(e) != 1 for e in f.terms):
                raise ValueError(f"{f} is not a nonzero linear form")
            rows.append([f.terms.get(tuple(int(i == j) for j in range(c + 1)), Fraction(0))
                         for i in range(c + 1)])
        self.matrix = rows  # row i holds the coefficients of l_i
        if rank(rows) != c + 1:
            raise RankDeficient("the linear forms do not have full rank")
        seen = set()
        for r in rows:
            key = tuple(_projective_key(r))
            if key in seen:
                warnings.warn("repeated linear form: the pullback divisor may fail to be normal")
            seen.add(key)

    @property
    def m(self):
        return len(self.linear_forms) - 1

    @property
    def tail(self):
        return self.coefficients[0].tail

    def rank_of(self, S) -> int:
        S = list(S)
        if not S:
            return 0
        return rank([self.matrix[i] for i in S])

    def is_uniform(self) -> bool:
        return all(self.rank_of(S) == self.c + 1
                   for S in itertools.combinations(range(self.m + 1), self.c + 1))


def _projective_key(r):
    k = next(x for x in r if x != 0)
    return [x / k for x in r]


def relation_vectors(a: ArrangementSpec):
    """Support-minimal linear relations sum lambda_i l_i = 0."""
    m = a.m
    # relations are the kernel of the transpose of the coefficient matrix
    A = [[a.matrix[i][j] for i in range(m + 1)] for j in range(a.c + 1)]
    ns = nullspace(A, m + 1)
    return support_minimal_vectors(ns, m + 1)


def torus_variables(m):
    return tuple(f"t{i}" for i in range(1, m + 1))


def arrangement_circuits(a: ArrangementSpec) -> List[Polynomial]:
    """Circuits as polynomials lambda_0 + sum lambda_i t_i on the torus of P^m."""
    V = torus_variables(a.m)
    out = []
    for lam in relation_vectors(a):
        t = {}
        if lam[0]:
            t[(0,) * a.m] = lam[0]
        for i in range(1, a.m + 1):
            if lam[i]:
                t[tuple(int(j == i - 1) for j in range(a.m))] = lam[i]
        out.append(Polynomial(V, t).normalized())
    return out


def arrangement_to_divisor(a: ArrangementSpec) -> PolyhedralDivisorSpec:
    V = torus_variables(a.m)
    G = arrangement_circuits(a)
    base = PolynomialIdeal(G, V)
    return PolyhedralDivisorSpec(base, a.coefficients, generating_set=G, name=a.name)


# matroid and Bergman fan

def closure(a: ArrangementSpec, S) -> FrozenSet[int]:
    r = a.rank_of(S)
    return frozenset(i for i in range(a.m + 1) if i in S or a.rank_of(list(S) + [i]) == r)


def flats(a: ArrangementSpec) -> List[FrozenSet[int]]:
    out = set()
    for k in range(a.m + 2):
        for S in itertools.combinations(range(a.m + 1), k):
            out.add(closure(a, S))
    return sorted(out, key=lambda F: (len(F), sorted(F)))


def connected_components(a: ArrangementSpec) -> List[FrozenSet[int]]:
    comp = {i: {i} for i in range(a.m + 1)}
    for lam in relation_vectors(a):
        supp = [i for i, x in enumerate(lam) if x]
        merged = set()
        for i in supp:
            merged |= comp[i]
        for i in merged:
            comp[i] = merged
    out = {frozenset(s) for s in comp.values()}
    return sorted(out, key=lambda F: sorted(F))


def indicator_to_torus(m, S) -> List[int]:
    """Image of e_S in R^{m+1} / R(1,..,1), written in R^m."""
    w = [int(i in S) for i in range(m + 1)]
    return [w[i] - w[0] for i in range(1, m + 1)]


@dataclass
class BergmanCone:
    flag: tuple                   # chain of flats, or tuple of singletons for coarse cones
    generators: List[List[int]]   # in R^m
    lineality: List[List[int]]
    representative: List[int]
    label: str = ""

    @property
    def dim(self):
        gens = self.generators + self.lineality
        return rank(gens) if gens else 0


def _lineality(a):
    m = a.m
    lin = [indicator_to_torus(m, C) for C in connected_components(a)]
    lin = [v for v in lin if any(v)]
    if not lin:
        return []
    R, piv = rref(lin)
    return [primitive(r) for r in R[:len(piv)]]


def bergman_cones(a: ArrangementSpec) -> List[BergmanCone]:
    """Cones of the Bergman fan, lowest dimension first.

    Uniform matroids use the coarse cones pos(e_i : i in S), |S| <= c.
    Otherwise cones are indexed by chains of proper nonempty flats.
    """
    m, c = a.m, a.c
    lin = _lineality(a)
    out = []
    full = (rank(lin) == m) if lin else (m == 0)
    if full:
        return [BergmanCone((), [], lin, [0] * m, label="lineality")]
    seen = set()

    def add(flag, gens, label):
        cone = RationalCone(m, gens + lin + [[-x for x in v] for v in lin])
        key = tuple(map(tuple, cone.hrep()[0])), tuple(map(tuple, cone.hrep()[1]))
        if key in seen:
            return
        seen.add(key)
        rep = [0] * m
        for g in gens:
            rep = [x + y for x, y in zip(rep, g)]
        out.append(BergmanCone(flag, gens, lin, rep, label))

    add((), [], "lineality")
    if a.is_uniform():
        for k in range(1, c + 1):
            for S in itertools.combinations(range(m + 1), k):
                gens = [indicator_to_torus(m, {i}) for i in S]
                add(tuple(frozenset({i}) for i in S), gens, "e" + ",".join(map(str, S)))
    else:
        ground = frozenset(range(m + 1))
        proper = [F for F in flats(a) if F and F != ground]
        chains = [[F] for F in proper]
        k = 0
        while k < len(chains):
            ch = chains[k]
            for F in proper:
                if ch[-1] < F:
                    chains.append(ch + [F])
            k += 1
        chains.sort(key=lambda ch: (len(ch), [sorted(F) for F in ch]))
        for ch in chains:
            gens = [indicator_to_torus(m, F) for F in ch]
            label = "<".join("{" + ",".join(map(str, sorted(F))) + "}" for F in ch)
            add(tuple(ch), gens, label)
    out.sort(key=lambda b: (b.dim, b.label))
    return out


def verify_well_poised(a: ArrangementSpec, parallel: int = 1):
    """Cone-lifting reports for one representative weight per Bergman cone."""
    spec = arrangement_to_divisor(a)
    pres = semicanonical_presentation(spec)
    G = spec.generating_set
    cones = bergman_cones(a)
    r = spec.lattice_rank

    def run(cone):
        w = list(cone.representative) + [0] * r
        return cone_lift_check(spec, G, w, pres, label=cone.label)

    if parallel and parallel > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(parallel) as ex:
            reports = list(ex.map(run, cones))
    else:
        reports = [run(cone) for cone in cones]
    return reports


# value semigroups for generic arrangements

def _floor(x: Fraction) -> int:
    return floor(x)


def _as_u(u):
    return [u] if isinstance(u, (int, Fraction)) else list(u)


@dataclass
class SemigroupDescription:
    """S_w = {(v, u) : v_j >= -floor(Delta_{i_j}(u)), sum v <= sum_{i in I} floor(Delta_i(u))}."""
    arrangement: ArrangementSpec
    index_set: tuple
    complement: tuple
    pieces: list = field(default_factory=list)

    def lower_bounds(self, u):
        u = _as_u(u)
        return [-_floor(support_value(self.arrangement.coefficients[i], u)) for i in self.complement]

    def upper_bound(self, u):
        u = _as_u(u)
        return sum(_floor(support_value(self.arrangement.coefficients[i], u)) for i in self.index_set)

    def contains(self, v, u) -> bool:
        u = _as_u(u)
        if any(dot(u, t) < 0 for t in self.arrangement.tail.generators):
            return False
        lo = self.lower_bounds(u)
        return all(x >= l for x, l in zip(v, lo)) and sum(v) <= self.upper_bound(u)

    def members(self, u):
        """All v with (v, u) in S_w, for an integer u (finite)."""
        lo = self.lower_bounds(u)
        hi = self.upper_bound(u)
        out = []
        slack = hi - sum(lo)
        if slack < 0:
            return out
        for extra in itertools.product(range(slack + 1), repeat=len(lo)):
            if sum(extra) <= slack:
                out.append(tuple(l + e for l, e in zip(lo, extra)))
        return sorted(out)


def _check_index_set(a: ArrangementSpec, I_set):
    I_set = tuple(sorted(set(I_set)))
    comp = tuple(i for i in range(a.m + 1) if i not in I_set)
    if any(i < 0 or i > a.m for i in I_set) or len(comp) != a.c:
        raise ValueError(f"index set must leave exactly {a.c} indices out")
    if not a.is_uniform():
        raise NotGeneric("value semigroups are only described for generic arrangements")
    return I_set, comp


def value_semigroup(a: ArrangementSpec, I_set) -> SemigroupDescription:
    I_set, comp = _check_index_set(a, I_set)
    desc = SemigroupDescription(a, I_set, comp)
    # on each cell of the common refinement every support function is linear
    for u in refinement_representatives(a.coefficients):
        mins = []
        for d in a.coefficients:
            val = support_value(d, u)
            mins.append([list(v) for v in d.vertices if dot(u, v) == val][0])
        desc.pieces.append({"representative": list(u), "minimizing_vertices": mins})
    return desc


def nok_cone(a: ArrangementSpec, I_set) -> PolyhedronByInequalities:
    """Closed cone in R^c x M_R cut out by the unfloored bounds."""
    I_set, comp = _check_index_set(a, I_set)
    c = a.c
    r = a.coefficients[0].ambient_dim
    ineqs = []
    for j, i in enumerate(comp):
        for w in a.coefficients[i].vertices:
            ineqs.append(([Fraction(int(k == j)) for k in range(c)] + list(w), 0))
    for choice in itertools.product(*[a.coefficients[i].vertices for i in I_set]):
        total = [sum(x) for x in zip(*choice)]
        ineqs.append(([Fraction(-1)] * c + total, 0))
    for t in a.tail.generators:
        ineqs.append(([0] * c + list(t), 0))
    out = []
    seen = set()
    for n, b in ineqs:
        p = tuple(primitive(n))
        if p not in seen:
            seen.add(p)
            out.append((list(p), Fraction(0)))
    return PolyhedronByInequalities(c + r, out)


def is_saturated(a: ArrangementSpec, I_set):
    I_set, _ = _check_index_set(a, I_set)
    return is_admissable([a.coefficients[i] for i in I_set])


def cm_sufficient(a: ArrangementSpec):
    """Some m - c + 1 coefficients form an admissable collection (sufficient only)."""
    k = a.m - a.c + 1
    for S in itertools.combinations(range(a.m + 1), k):
        ok, _ = is_admissable([a.coefficients[i] for i in S])
        if ok:
            return True, list(S)
    return False, None


def prime_cone_weight_matrix(a: ArrangementSpec, I_set, pres=None):
    """Rows: lifts of (e_{i_j}, 0) for the complement indices and (0, e_k)."""
    _, comp = _check_index_set(a, I_set)
    spec = arrangement_to_divisor(a)
    pres = pres or semicanonical_presentation(spec)
    m, r = spec.m, spec.lattice_rank
    rows = []
    for i in comp:
        w = indicator_to_torus(m, {i}) + [0] * r
        rows.append([dot(h, w) for h in pres.coordinates])
    for k in range(r):
        w = [0] * m + [int(j == k) for j in range(r)]
        rows.append([dot(h, w) for h in pres.coordinates])
    return rows
