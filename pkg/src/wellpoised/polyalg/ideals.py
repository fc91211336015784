"""Ideals, initial ideals (min convention), elimination and certificates."""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import List, Sequence

from ..errors import NotBinomial, ZeroPolynomial
from ..exactmath import (
    as_fraction, dot, lattice_index_in_saturation, nullspace, primitive, rref,
)
from .groebner import TermOrder, groebner, normal_form
from .polynomial import Polynomial, format_polynomial, parse_polynomial


def to_raw(p: Polynomial):
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    return {e: int(c * den) for e, c in p.terms.items()}


def from_raw(variables, raw) -> Polynomial:
    return Polynomial(variables, {e: Fraction(c) for e, c in raw.items()})


def fresh_names(taken, base, count):
    out = []
    k = 0
    while len(out) < count:
        name = f"{base}{k}" if count > 1 or k else base
        if name not in taken and name not in out:
            out.append(name)
        k += 1
    return out


class PolynomialIdeal:
    """Finitely generated ideal of Q[vars], optionally multigraded.

    ``grading`` lists one integer degree vector per variable; when given,
    every generator must be homogeneous for it.
    """

    def __init__(self, generators: Sequence, variables: Sequence[str] = None, grading=None):
        gens = list(generators)
        if variables is None:
            if not gens or not isinstance(gens[0], Polynomial):
                raise ValueError("variables are required")
            variables = gens[0].vars
        self.vars = tuple(variables)
        polys = []
        for g in gens:
            if isinstance(g, str):
                g = parse_polynomial(g, self.vars)
            if g.vars != self.vars:
                g = g.embed(self.vars)
            if not g.is_zero():
                polys.append(g)
        self.generators = polys
        self.grading = [list(r) for r in grading] if grading is not None else None
        if self.grading is not None:
            if len(self.grading) != len(self.vars):
                raise ValueError("grading needs one degree per variable")
            for g in polys:
                if not g.is_homogeneous(self.grading):
                    raise ValueError(f"generator {g} is not homogeneous for the grading")
        self.metadata = {}
        self._gb = {}

    def __repr__(self):
        return f"PolynomialIdeal({[str(g) for g in self.generators]})"

    def __str__(self):
        return "<" + ", ".join(str(g) for g in self.gb_polys()) + ">"

    def groebner(self, order: TermOrder = None) -> List[dict]:
        order = order or TermOrder()
        k = (tuple(order.rows), order.name)
        if k not in self._gb:
            self._gb[k] = groebner([to_raw(g) for g in self.generators], order)
        return self._gb[k]

    def gb_polys(self, order: TermOrder = None) -> List[Polynomial]:
        return [from_raw(self.vars, g).normalized() if order is None else from_raw(self.vars, g)
                for g in self.groebner(order)]

    def reduced(self) -> "PolynomialIdeal":
        """Same ideal, generated by its reduced grevlex basis."""
        out = PolynomialIdeal(self.gb_polys(), self.vars, self.grading)
        out.metadata = dict(self.metadata)
        return out

    def contains(self, f: Polynomial) -> bool:
        if f.vars != self.vars:
            f = f.embed(self.vars)
        if f.is_zero():
            return True
        return not normal_form(to_raw(f), self.groebner(), TermOrder())

    def normal_form(self, f: Polynomial, order: TermOrder = None) -> Polynomial:
        order = order or TermOrder()
        return from_raw(self.vars, normal_form(to_raw(f), self.groebner(order), order))

    def is_unit(self) -> bool:
        gb = self.groebner()
        return any(len(g) == 1 and not any(next(iter(g))) for g in gb)

    def is_zero(self) -> bool:
        return not self.generators

    def __eq__(self, other):
        if not isinstance(other, PolynomialIdeal):
            return NotImplemented
        return ideal_equals(self, other)

    def __hash__(self):
        return hash(tuple(str(g) for g in self.gb_polys()))

    def with_vars(self, new_vars):
        """Embed into a larger ring."""
        return PolynomialIdeal([g.embed(new_vars) for g in self.generators], new_vars)

    def positive_degree_vector(self):
        """Integer degrees d_i > 0 making every generator homogeneous, or None."""
        n = len(self.vars)
        if all(g.is_homogeneous() for g in self.generators):
            return [1] * n
        if self.grading is None:
            return None
        from ..polyhedra import RationalCone
        k = len(self.grading[0])
        cone = RationalCone.from_inequalities(k, [list(r) for r in self.grading])
        c = cone.interior_point()
        d = [dot(r, c) for r in self.grading]
        if all(x > 0 for x in d):
            return d
        return None


def ideal_from_strings(gens, variables, grading=None):
    return PolynomialIdeal([parse_polynomial(g, variables) for g in gens], variables, grading)


def groebner_basis(I: PolynomialIdeal, order: TermOrder = None) -> List[Polynomial]:
    """Reduced Groebner basis (content 1, positive leading coefficient)."""
    return [from_raw(I.vars, g) for g in I.groebner(order)]


def ideal_equals(I: PolynomialIdeal, J: PolynomialIdeal) -> bool:
    if I.vars != J.vars:
        raise ValueError("ideals live in different rings")
    return I.groebner() == J.groebner()


def initial_form(f: Polynomial, w) -> Polynomial:
    """Sum of the terms of f minimizing <w, exponent>."""
    if f.is_zero():
        raise ZeroPolynomial("initial form of the zero polynomial")
    w = [as_fraction(x) for x in w]
    if len(w) != len(f.vars):
        raise ValueError("weight length does not match the ring")
    vals = {e: dot(w, e) for e in f.terms}
    m = min(vals.values())
    return Polynomial(f.vars, {e: c for e, c in f.terms.items() if vals[e] == m})


def _weight_order(w, d):
    """Integer weight row realizing 'minimize w' on d-homogeneous polynomials."""
    L = 1
    for x in w:
        L = L * x.denominator // gcd(L, x.denominator)
    lw = [int(x * L) for x in w]
    lam = 0
    for a, b in zip(lw, d):
        lam = max(lam, -(-a // b))
    return TermOrder([[lam * b - a for a, b in zip(lw, d)]], name="weight")


def homogenize(f: Polynomial, hname: str) -> Polynomial:
    nv = f.vars + (hname,)
    D = f.total_degree()
    return Polynomial(nv, {e + (D - sum(e),): c for e, c in f.terms.items()})


def initial_ideal(I: PolynomialIdeal, w) -> PolynomialIdeal:
    """in_w(I) with the min convention.

    For ideals homogeneous under a positive grading the weight is shifted
    along that grading to get a term order.  Otherwise the ideal is
    homogenized with a new variable of weight 0 and dehomogenized after.
    ``metadata['contains_monomial']`` records whether in_w(I) has a monomial.
    """
    w = [as_fraction(x) for x in w]
    if len(w) != len(I.vars):
        raise ValueError("weight length does not match the ring")
    if I.is_zero():
        out = PolynomialIdeal([], I.vars, I.grading)
        out.metadata["contains_monomial"] = False
        return out
    d = I.positive_degree_vector()
    if d is not None:
        order = _weight_order(w, d)
        G = [from_raw(I.vars, g) for g in I.groebner(order)]
        forms = [initial_form(g, w) for g in G]
        out = PolynomialIdeal(forms, I.vars, I.grading).reduced()
        out.metadata["homogenization"] = "none"
    else:
        h = fresh_names(I.vars, "h", 1)[0]
        base = [homogenize(from_raw(I.vars, g), h) for g in I.groebner()]
        Ih = PolynomialIdeal(base, I.vars + (h,))
        order = _weight_order(w + [Fraction(0)], [1] * (len(I.vars) + 1))
        G = [from_raw(Ih.vars, g) for g in Ih.groebner(order)]
        forms = [initial_form(g, w + [Fraction(0)]).substitute({h: 1}).restrict(I.vars)
                 for g in G]
        out = PolynomialIdeal(forms, I.vars, I.grading).reduced()
        out.metadata["homogenization"] = "weight 0 on new variable"
    out.metadata["contains_monomial"] = contains_monomial(out)
    return out


def eliminate(I: PolynomialIdeal, names: Sequence[str]) -> PolynomialIdeal:
    """I intersected with the subring in the variables not in ``names``."""
    idx = [I.vars.index(n) for n in names]
    order = TermOrder.elimination(len(I.vars), idx)
    keep = tuple(v for v in I.vars if v not in names)
    kept = []
    for g in I.groebner(order):
        if all(e[i] == 0 for e in g for i in idx):
            kept.append(from_raw(I.vars, g).restrict(keep))
    return PolynomialIdeal(kept, keep).reduced()


def _as_exp(I, m):
    if isinstance(m, Polynomial):
        if len(m.terms) != 1:
            raise ValueError("saturation needs a monomial")
        return next(iter(m.terms))
    return tuple(m)


def saturate(I: PolynomialIdeal, m) -> PolynomialIdeal:
    """I : m^infinity via I + <1 - y m>, eliminating y."""
    m = _as_exp(I, m)
    if not any(m) or I.is_zero():
        return PolynomialIdeal(I.generators, I.vars, I.grading).reduced()
    y = fresh_names(I.vars, "y", 1)[0]
    nv = I.vars + (y,)
    gens = [g.embed(nv) for g in I.generators]
    gens.append(Polynomial(nv, {(0,) * len(nv): 1, tuple(m) + (1,): -1}))
    out = eliminate(PolynomialIdeal(gens, nv), [y])
    return PolynomialIdeal(out.generators, I.vars, I.grading).reduced()


def saturate_variables(I: PolynomialIdeal) -> PolynomialIdeal:
    return saturate(I, (1,) * len(I.vars))


def contains_monomial(I: PolynomialIdeal) -> bool:
    if I.is_zero():
        return False
    return saturate_variables(I).is_unit()


def algebra_map_kernel(targets: Sequence[Polynomial], modulo: PolynomialIdeal = None,
                       target_names: Sequence[str] = None) -> PolynomialIdeal:
    """Kernel of Q[y_1..y_k] -> Q[z]/modulo, y_i -> targets[i].

    Targets may be Laurent polynomials; then one inverse variable s with
    s * prod(z) = 1 is adjoined and the modulo ideal is read in the Laurent
    ring (it should be saturated by the product of the z).
    """
    src = targets[0].vars if targets else (modulo.vars if modulo else ())
    k = len(targets)
    if target_names is None:
        target_names = fresh_names(src, "y", k) if k > 1 else fresh_names(src, "y", 1)
    target_names = tuple(target_names)
    if set(target_names) & set(src):
        raise ValueError("target names clash with source variables")
    K = 0
    for t in targets:
        for e in t.terms:
            K = max(K, -min(e) if e else 0)
    extra = ()
    if K > 0:
        extra = (fresh_names(src + target_names, "s", 1)[0],)
    nv = src + extra + target_names
    gens = []
    if modulo is not None:
        gens += [g.embed(nv) for g in modulo.generators]
    if extra:
        n = len(src)
        one = (0,) * len(nv)
        gens.append(Polynomial(nv, {one: -1, tuple([1] * n + [1] + [0] * k): 1}))
    for i, t in enumerate(targets):
        shifted = {}
        for e, c in t.terms.items():
            ne = tuple(x + K for x in e) + ((K,) if extra else ()) + (0,) * k
            shifted[ne] = c
        yi = [0] * len(nv)
        yi[len(src) + len(extra) + i] = 1
        shifted[tuple(yi)] = shifted.get(tuple(yi), 0) - 1
        gens.append(Polynomial(nv, shifted))
    out = eliminate(PolynomialIdeal(gens, nv), list(src + extra))
    return out


@dataclass
class BinomialCertificate:
    status: str  # "PRIME" or "NOT_CERTIFIED"
    reason: str = ""
    refuted: bool = False  # True when the ideal is certainly not prime
    lattice: List[List[int]] = field(default_factory=list)

    @property
    def prime(self):
        return self.status == "PRIME"

    def __bool__(self):
        return self.prime


def is_binomial_prime(I: PolynomialIdeal) -> BinomialCertificate:
    """Certify primality of a binomial ideal over C.

    A monomial-free binomial ideal equal to its saturation by the product
    of the variables is a lattice ideal; it is prime exactly when its
    lattice is saturated.  Failing either of the last two tests is a proof
    of non-primality, reported through ``refuted``.
    """
    for g in I.generators:
        if len(g.terms) > 2:
            raise NotBinomial(f"{g} has {len(g.terms)} terms")
    if I.is_zero():
        return BinomialCertificate("PRIME", "zero ideal")
    if I.is_unit():
        return BinomialCertificate("NOT_CERTIFIED", "unit ideal", refuted=True)
    gb = I.groebner()
    if any(len(g) == 1 for g in gb):
        return BinomialCertificate("NOT_CERTIFIED", "ideal contains a monomial")
    sat = saturate_variables(I)
    if sat.is_unit():
        return BinomialCertificate("NOT_CERTIFIED", "ideal contains a monomial")
    lattice = []
    for g in gb:
        a, b = sorted(g)
        lattice.append([x - y for x, y in zip(b, a)])
    if not ideal_equals(sat, I):
        return BinomialCertificate("NOT_CERTIFIED", "not saturated by the variables",
                                   refuted=True, lattice=lattice)
    idx = lattice_index_in_saturation(lattice)
    if idx != 1:
        return BinomialCertificate("NOT_CERTIFIED", f"lattice has index {idx} in its saturation",
                                   refuted=True, lattice=lattice)
    return BinomialCertificate("PRIME", "saturated lattice ideal", lattice=lattice)


def is_binomial_ideal(I: PolynomialIdeal) -> bool:
    return all(len(g) <= 2 for g in I.groebner())


def support_minimal_vectors(rows, n) -> List[List[int]]:
    """Support-minimal nonzero vectors of the row space of ``rows``,
    primitive, first nonzero entry positive, sorted."""
    rows = [r for r in rows if any(x != 0 for x in r)]
    if not rows:
        return []
    R, piv = rref(rows)
    B = R[:len(piv)]
    r = len(B)
    cands = set()
    for Z in itertools.combinations(range(n), r - 1):
        M = [[B[k][z] for k in range(r)] for z in Z]
        ns = nullspace(M, r) if M else [[Fraction(int(i == j)) for j in range(r)] for i in range(r)]
        if len(ns) != 1:
            continue
        v = [sum(ns[0][k] * B[k][j] for k in range(r)) for j in range(n)]
        if not any(v):
            continue
        v = primitive(v)
        first = next(x for x in v if x)
        if first < 0:
            v = [-x for x in v]
        cands.add(tuple(v))
    supp = {c: frozenset(i for i, x in enumerate(c) if x) for c in cands}
    out = [list(c) for c in cands if not any(supp[d] < supp[c] for d in cands)]
    return sorted(out)


def circuits(linear_forms: Sequence[Polynomial]) -> List[Polynomial]:
    """Circuits of the linear ideal generated by affine-linear forms."""
    if not linear_forms:
        return []
    variables = linear_forms[0].vars
    n = len(variables)
    rows = []
    for f in linear_forms:
        if f.total_degree() > 1:
            raise ValueError(f"{f} is not linear")
        row = [Fraction(0)] * (n + 1)
        for e, c in f.terms.items():
            if any(e):
                row[e.index(1)] = c
            else:
                row[n] = c
        rows.append(row)
    out = []
    for v in support_minimal_vectors(rows, n + 1):
        t = {}
        for i in range(n):
            if v[i]:
                e = [0] * n
                e[i] = 1
                t[tuple(e)] = v[i]
        if v[n]:
            t[(0,) * n] = v[n]
        out.append(Polynomial(variables, t).normalized())
    return out


def hypersurface_tropical_cones(f: Polynomial):
    """Cones of the tropical hypersurface of f (min convention).

    Returns a list of (cone, representative weight, tied exponents) with
    one entry for every set of at least two terms that is exactly the set of
    minimizing terms on the relative interior of its cone.
    """
    from ..polyhedra import RationalCone
    exps = sorted(f.terms)
    n = len(f.vars)
    out = []
    seen = set()
    for k in range(len(exps), 1, -1):
        for S in itertools.combinations(exps, k):
            s0 = S[0]
            eqs = [[a - b for a, b in zip(s, s0)] for s in S[1:]]
            ineq = [[a - b for a, b in zip(t, s0)] for t in exps if t not in S]
            cone = RationalCone.from_inequalities(n, ineq, eqs)
            w = cone.interior_point()
            vals = {e: dot(w, e) for e in exps}
            m = min(vals.values())
            tie = tuple(e for e in exps if vals[e] == m)
            if tie != S:
                continue
            key = tuple(map(tuple, cone.hrep()[0])), tuple(map(tuple, cone.hrep()[1]))
            if key in seen:
                continue
            seen.add(key)
            out.append((cone, w, S))
    return out


__all__ = [
    "PolynomialIdeal", "BinomialCertificate", "algebra_map_kernel", "circuits",
    "contains_monomial", "eliminate", "format_polynomial", "groebner_basis",
    "hypersurface_tropical_cones", "ideal_equals", "ideal_from_strings",
    "initial_form", "initial_ideal", "is_binomial_prime", "saturate",
    "saturate_variables", "support_minimal_vectors", "to_raw", "from_raw",
]
