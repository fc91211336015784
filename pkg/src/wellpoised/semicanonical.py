"""Semi-canonical embeddings of T-varieties given by polyhedral divisors.

Coordinates: the base lives in the torus with coordinates t_1..t_m (the
hyperplanes x_1..x_m of projective space, x_0 dehomogenized away), the
torus of the fibre has characters chi^u, u in M = Z^r.  A degree is a
vector (v, u) in Z^m x M.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import List, Sequence

from .errors import DimensionMismatch, ImproperDivisor, MonomialInInitial, NotFullRank, NotGroebner
from .exactmath import as_fraction, dot, mat_vec, primitive, rank, solve
from .polyalg.groebner import TermOrder, normal_form
from .polyalg.ideals import (
    PolynomialIdeal, algebra_map_kernel, fresh_names, ideal_equals,
    initial_form, initial_ideal, is_binomial_prime, saturate_variables, to_raw,
)
from .polyalg.polynomial import Polynomial
from .polyhedra import (
    PolyhedronByInequalities, RationalCone, SigmaPolyhedron, dual_cone, hilbert_basis,
    minkowski_sum,
)

TRUE, FALSE, UNKNOWN = "TRUE", "FALSE", "UNKNOWN"


def _laurent_clear(p: Polynomial) -> Polynomial:
    """Multiply by a monomial so every exponent is >= 0 and no variable divides p."""
    if p.is_zero():
        return p
    lo = p.min_exponent()
    return p.shift(tuple(-x for x in lo))


class PolyhedralDivisorSpec:
    """Polyhedral divisor sum_i Delta_i (x) V(x_i) on a subvariety Y of P^m.

    ``base_ideal`` holds the ideal of Y meet the torus, in the variables
    t_1..t_m.  It is made Laurent-saturated on construction.  Primality of
    the base is trusted, not checked.
    """

    def __init__(self, base_ideal: PolynomialIdeal, coefficients: Sequence[SigmaPolyhedron],
                 lattice_rank: int = None, generating_set: Sequence[Polynomial] = None,
                 name: str = ""):
        self.m = len(base_ideal.vars)
        if len(coefficients) != self.m + 1:
            raise ValueError(f"need {self.m + 1} coefficients, got {len(coefficients)}")
        self.coefficients = list(coefficients)
        self.lattice_rank = lattice_rank if lattice_rank is not None else coefficients[0].ambient_dim
        self.tail = coefficients[0].tail
        for d in coefficients:
            if d.ambient_dim != self.lattice_rank:
                raise DimensionMismatch("coefficient has the wrong dimension")
            if d.tail != self.tail:
                raise ImproperDivisor("coefficients must share one tail cone")
        if not self.tail.is_pointed():
            raise ImproperDivisor("tail cone must be pointed")
        cleared = [_laurent_clear(g) for g in base_ideal.generators]
        self.base_ideal = saturate_variables(PolynomialIdeal(cleared, base_ideal.vars))
        self.base_trusted_prime = True
        self.generating_set = list(generating_set) if generating_set is not None else None
        self.name = name
        self.check_proper()

    @property
    def base_vars(self):
        return self.base_ideal.vars

    def with_base(self, ideal: PolynomialIdeal, generating_set=None):
        return PolyhedralDivisorSpec(ideal, self.coefficients, self.lattice_rank,
                                     generating_set, self.name)

    def check_proper(self):
        """Sum of the coefficients must lie in the tail and miss the origin."""
        total = self.coefficients[0]
        for d in self.coefficients[1:]:
            total = minkowski_sum(total, d)
        r = self.lattice_rank
        for v in total.vertices:
            if not self.tail.contains(v):
                raise ImproperDivisor("sum of the coefficients is not contained in the tail cone")
        # 0 in conv(V) + tail  iff  (0, 1) in cone{(v, 1), (t, 0)}
        gens = [primitive(list(v) + [1]) for v in total.vertices]
        gens += [list(t) + [0] for t in self.tail.generators]
        if RationalCone(r + 1, gens).contains([0] * r + [1]):
            raise ImproperDivisor("sum of the coefficients equals the tail cone")


def build_delta(spec: PolyhedralDivisorSpec) -> RationalCone:
    """Positive hull of {0} x tail and {e_i} x Delta_i, e_0 = -(e_1 + ... + e_m)."""
    m, r = spec.m, spec.lattice_rank
    gens = []
    for t in spec.tail.generators:
        gens.append([0] * m + list(t))
    for i, d in enumerate(spec.coefficients):
        e = [-1] * m if i == 0 else [int(j == i - 1) for j in range(m)]
        for v in d.vertices:
            gens.append(primitive([Fraction(x) for x in e] + list(v)))
    delta = RationalCone(m + r, gens)
    if delta.dim() != m + r:
        raise ImproperDivisor("delta is not full dimensional, so its dual is not pointed")
    if not delta.is_pointed():
        raise ImproperDivisor("delta contains a line")
    return delta


def delta_dual_inequalities(spec):
    """The cone delta-dual by its defining inequalities (one per delta generator)."""
    return build_delta(spec).generators


@dataclass
class SemiCanonicalPresentation:
    spec: PolyhedralDivisorSpec
    delta: RationalCone
    coordinates: List[List[int]]          # the Hilbert basis H, fixed order
    variables: tuple                      # X1, X2, ...
    presentation_ideal: PolynomialIdeal   # J_D
    lift_matrix: List[List[int]]          # rows are the elements of H
    grading: List[List[int]]
    fibre_vars: tuple = ()
    metadata: dict = field(default_factory=dict)

    @property
    def hilbert_basis(self):
        return self.coordinates

    def decompose(self, p):
        """Write a lattice point of delta-dual as a sum of H elements
        (exponent vector over the X variables)."""
        H = self.coordinates
        exp = [0] * len(H)
        p = list(p)
        while any(p):
            for i, h in enumerate(H):
                q = [a - b for a, b in zip(p, h)]
                if self.delta_dual_contains(q):
                    exp[i] += 1
                    p = q
                    break
            else:
                raise ValueError(f"{p} is not in the semigroup of delta-dual")
        return tuple(exp)

    def delta_dual_contains(self, p):
        return all(dot(g, p) >= 0 for g in self.delta.generators)


def coordinate_names(k):
    return tuple(f"X{i + 1}" for i in range(k))


def hilbert_coordinates(delta: RationalCone) -> List[List[int]]:
    """Hilbert basis of the dual of delta, in descending lexicographic order."""
    return sorted(hilbert_basis(dual_cone(delta)).elements, reverse=True)


def _fibre_names(spec):
    return tuple(fresh_names(spec.base_vars + coordinate_names(64), "u", spec.lattice_rank)) \
        if spec.lattice_rank > 1 else tuple(fresh_names(spec.base_vars, "u", 1))


def kernel_presentation(spec: PolyhedralDivisorSpec, H: Sequence[Sequence[int]],
                        names=None) -> PolynomialIdeal:
    """J_D by elimination: kernel of X_h -> t^v chi^u modulo the base ideal."""
    fv = _fibre_names(spec)
    ring = spec.base_vars + fv
    names = names or coordinate_names(len(H))
    targets = [Polynomial(ring, {tuple(h): 1}) for h in H]
    modulo = spec.base_ideal.with_vars(ring)
    K = algebra_map_kernel(targets, modulo, names)
    return PolynomialIdeal(K.generators, names, fibre_grading(spec, H)).reduced()


def fibre_grading(spec, H):
    """M-degree of each coordinate.  The Z^m part is not a grading of J_D
    unless the base ideal is itself homogeneous."""
    return [list(h[spec.m:]) for h in H]


def semicanonical_presentation(spec: PolyhedralDivisorSpec) -> SemiCanonicalPresentation:
    delta = build_delta(spec)
    H = hilbert_coordinates(delta)
    names = coordinate_names(len(H))
    J = kernel_presentation(spec, H, names)
    return SemiCanonicalPresentation(
        spec=spec, delta=delta, coordinates=H, variables=names, presentation_ideal=J,
        lift_matrix=[list(h) for h in H], grading=fibre_grading(spec, H),
        fibre_vars=_fibre_names(spec),
        metadata={"route": "elimination"},
    )


def toric_ideal(H: Sequence[Sequence[int]], names) -> PolynomialIdeal:
    """Lattice ideal of the relations among the H (saturated, so prime)."""
    from .exactmath import kernel_lattice
    k = len(H)
    A = [[H[j][i] for j in range(k)] for i in range(len(H[0]))]
    gens = []
    for v in kernel_lattice(A, k):
        pos = tuple(max(x, 0) for x in v)
        neg = tuple(max(-x, 0) for x in v)
        gens.append(Polynomial(names, {pos: 1, neg: -1}))
    I = PolynomialIdeal(gens, names)
    return PolynomialIdeal(saturate_variables(I).generators, names)


# degree polyhedra

def _check_generating_set(spec, G):
    I = spec.base_ideal
    order = TermOrder()
    lms = []
    for g in G:
        if g.vars != spec.base_vars:
            g = g.embed(spec.base_vars)
        if not I.contains(g):
            raise NotGroebner(f"{g} is not in the base ideal")
        if any(x > 0 for x in g.min_exponent()):
            raise NotGroebner(f"{g} is divisible by a coordinate")
        lms.append(max(to_raw(g), key=order.key))
    for b in I.groebner():
        lb = max(b, key=order.key)
        if not any(all(x <= y for x, y in zip(a, lb)) for a in lms):
            raise NotGroebner("the set does not contain a Groebner basis of the base ideal")


def degree_polyhedron(spec: PolyhedralDivisorSpec, g: Polynomial) -> PolyhedronByInequalities:
    """P_g: the (v, u) with g t^v chi^u in the ambient toric algebra.

    Built from support-function inequalities: for i >= 1,
    v_i + min_alpha alpha_i + <w, u> >= 0 for each vertex w of Delta_i, and
    <w, u> - sum v - M_g >= 0 for each vertex w of Delta_0, where M_g is the
    total degree of g; plus u in the dual of the tail.
    """
    m, r = spec.m, spec.lattice_rank
    mins = g.min_exponent()
    Mg = g.total_degree()
    ineqs = []
    for i in range(1, m + 1):
        for w in spec.coefficients[i].vertices:
            L = 1
            for x in w:
                L = L * x.denominator // gcd(L, x.denominator)
            normal = [L * int(j == i - 1) for j in range(m)] + [int(x * L) for x in w]
            ineqs.append((normal, Fraction(-L * mins[i - 1])))
    for w in spec.coefficients[0].vertices:
        L = 1
        for x in w:
            L = L * x.denominator // gcd(L, x.denominator)
        normal = [-L] * m + [int(x * L) for x in w]
        ineqs.append((normal, Fraction(L * Mg)))
    for t in spec.tail.generators:
        ineqs.append(([0] * m + list(t), Fraction(0)))
    return PolyhedronByInequalities(m + r, ineqs)


def degree_polyhedron_membership_direct(spec, delta, g, point):
    """(v, u) in P_g iff (v + alpha, u) lies in delta-dual for each exponent alpha of g."""
    m = spec.m
    v, u = list(point[:m]), list(point[m:])
    for a in g.terms:
        p = [x + y for x, y in zip(v, a)] + u
        if any(dot(gen, p) < 0 for gen in delta.generators):
            return False
    return True


def generating_set(spec: PolyhedralDivisorSpec, G: Sequence[Polynomial]):
    """Triples (g, v, u): g t^v chi^u over the module generators of each P_g."""
    _check_generating_set(spec, G)
    m = spec.m
    out = []
    for g in G:
        if g.vars != spec.base_vars:
            g = g.embed(spec.base_vars)
        P = degree_polyhedron(spec, g)
        for pt in P.lattice_points_height_one():
            out.append((g, tuple(pt[:m]), tuple(pt[m:])))
    return out


def lift_relation(pres: SemiCanonicalPresentation, g: Polynomial, v, u) -> Polynomial:
    """The element g t^v chi^u written as a polynomial in the X variables."""
    terms = {}
    for a, c in g.terms.items():
        p = [x + y for x, y in zip(a, v)] + list(u)
        e = pres.decompose(p)
        terms[e] = terms.get(e, 0) + c
    return Polynomial(pres.variables, terms)


def presentation_from_generating_set(pres: SemiCanonicalPresentation, G) -> PolynomialIdeal:
    """J_D as the toric ideal of H plus the lifts of the generating set."""
    S = generating_set(pres.spec, G)
    T = toric_ideal(pres.coordinates, pres.variables)
    gens = list(T.generators) + [lift_relation(pres, g, v, u) for g, v, u in S]
    return PolynomialIdeal(gens, pres.variables, pres.grading).reduced()


def default_generating_set(spec: PolyhedralDivisorSpec):
    if spec.generating_set is not None:
        return list(spec.generating_set)
    return [g for g in spec.base_ideal.gb_polys()]


# tropical lift and degenerations

def lift_weight(pres: SemiCanonicalPresentation, w) -> List[Fraction]:
    w = [as_fraction(x) for x in w]
    if len(w) != pres.spec.m + pres.spec.lattice_rank:
        raise DimensionMismatch(f"weight must have length {pres.spec.m + pres.spec.lattice_rank}")
    return mat_vec(pres.lift_matrix, w)


def unlift_weight(pres: SemiCanonicalPresentation, W):
    """Inverse of lift_weight on its image, or None."""
    sol = solve(pres.lift_matrix, [as_fraction(x) for x in W])
    if sol is None:
        return None
    return sol


def _base_weight(spec, w):
    w = [as_fraction(x) for x in w]
    if len(w) == spec.m + spec.lattice_rank:
        return w[:spec.m]
    if len(w) == spec.m:
        return w
    raise DimensionMismatch("weight has the wrong length")


def degenerate_base(spec: PolyhedralDivisorSpec, w) -> PolynomialIdeal:
    """Ideal of Y_w in the torus: in_w of the base ideal, saturated."""
    wb = _base_weight(spec, w)
    ini = initial_ideal(spec.base_ideal, wb)
    if ini.metadata.get("contains_monomial"):
        raise MonomialInInitial(f"weight {[str(x) for x in wb]} is not in the tropical variety")
    return saturate_variables(ini)


def certify_irreducible(I: PolynomialIdeal):
    """Tri-state irreducibility of V(I) in the torus, with the route used."""
    if I.is_zero():
        return TRUE, "zero ideal"
    if I.is_unit():
        return FALSE, "empty"
    gb = I.gb_polys()
    if all(g.total_degree() <= 1 for g in gb):
        return TRUE, "linear"
    if all(len(g) <= 2 for g in gb):
        c = is_binomial_prime(I)
        if c.prime:
            return TRUE, "binomial"
        if c.refuted:
            return FALSE, "binomial: " + c.reason
        return UNKNOWN, "binomial: " + c.reason
    return UNKNOWN, "no certificate route applies"


@dataclass
class ConeLiftReport:
    weight: list
    lifted_weight: list
    degenerate_base: PolynomialIdeal
    condition_irreducible: str
    irreducible_route: str
    condition_initial_generates: bool
    condition_degree_polyhedra: bool
    in_w_JD: PolynomialIdeal
    JD_w: PolynomialIdeal
    ideals_equal: bool
    prime_certified: bool
    prime_route: str = ""
    label: str = ""

    @property
    def conditions_hold(self):
        return (self.condition_irreducible == TRUE and self.condition_initial_generates
                and self.condition_degree_polyhedra)


def cone_lift_check(spec: PolyhedralDivisorSpec, G, w, pres: SemiCanonicalPresentation = None,
                    label: str = "") -> ConeLiftReport:
    if pres is None:
        pres = semicanonical_presentation(spec)
    G = list(G) if G is not None else default_generating_set(spec)
    w = [as_fraction(x) for x in w]
    if len(w) == spec.m:
        w = w + [Fraction(0)] * spec.lattice_rank
    W = lift_weight(pres, w)
    wb = w[:spec.m]
    Yw = degenerate_base(spec, w)

    irr, route = certify_irreducible(Yw)
    if irr == UNKNOWN and spec.base_trusted_prime and ideal_equals(Yw, spec.base_ideal):
        irr, route = TRUE, "equals the base ideal, trusted prime"

    inG = PolynomialIdeal([initial_form(g.embed(spec.base_vars) if g.vars != spec.base_vars else g, wb)
                           for g in G], spec.base_vars)
    generates = ideal_equals(saturate_variables(inG), Yw)

    degree_ok = True
    for g in G:
        ig = initial_form(g, wb)
        if ig.total_degree() != g.total_degree() or ig.min_exponent() != g.min_exponent():
            degree_ok = False

    inJ = initial_ideal(pres.presentation_ideal, W)
    inJ = PolynomialIdeal(inJ.generators, pres.variables, pres.grading).reduced()
    Jw = kernel_presentation(spec.with_base(Yw), pres.coordinates, pres.variables)
    equal = ideal_equals(inJ, Jw)

    prime, proute = False, ""
    if equal and irr == TRUE:
        prime, proute = True, "kernel over irreducible degeneration"
    elif inJ.is_zero():
        prime, proute = True, "zero ideal"
    elif all(len(g) <= 2 for g in inJ.groebner()):
        c = is_binomial_prime(inJ)
        if c.prime:
            prime, proute = True, "binomial certificate"
        else:
            proute = "binomial: " + c.reason
    else:
        proute = "not certified"
    return ConeLiftReport(
        weight=w, lifted_weight=W, degenerate_base=Yw,
        condition_irreducible=irr, irreducible_route=route,
        condition_initial_generates=generates, condition_degree_polyhedra=degree_ok,
        in_w_JD=inJ, JD_w=Jw, ideals_equal=equal, prime_certified=prime,
        prime_route=proute, label=label,
    )


# valuations from weight matrices

def matrix_valuation(pres: SemiCanonicalPresentation, M_rows, f: Polynomial):
    """v_M(f): the largest M-value over all representatives of f mod J_D.

    The value of a polynomial is the lexicographic minimum of M a over its
    exponents a.  Returns None for f in J_D (the infinite value).
    """
    M = [[as_fraction(x) for x in row] for row in M_rows]
    k = len(pres.variables)
    if any(len(row) != k for row in M):
        raise DimensionMismatch("weight rows must have one entry per coordinate")
    if rank(M) != len(M):
        raise NotFullRank("weight matrix rows are dependent")
    J = pres.presentation_ideal
    if f.vars != pres.variables:
        f = f.embed(pres.variables)
    d = J.positive_degree_vector()
    comps = {}
    for e, c in f.terms.items():
        deg = sum(a * b for a, b in zip(d, e))
        comps.setdefault(deg, {})[e] = c
    order = _valuation_order(M, d)
    G = J.groebner(order)
    best = None
    for deg in sorted(comps):
        part = Polynomial(pres.variables, comps[deg])
        nf = normal_form(to_raw(part), G, order)
        if not nf:
            continue
        val = min(tuple(dot(row, e) for row in M) for e in nf)
        if best is None or val < best:
            best = val
    return list(best) if best is not None else None


def _valuation_order(M, d):
    rows = []
    for row in M:
        L = 1
        for x in row:
            L = L * x.denominator // gcd(L, x.denominator)
        lw = [int(x * L) for x in row]
        lam = 0
        for a, b in zip(lw, d):
            lam = max(lam, -(-a // b))
        rows.append([lam * b - a for a, b in zip(lw, d)])
    return TermOrder(rows, name="valuation")
