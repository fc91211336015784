"""Quotients of graded presentations: Veronese, Segre, character quotients,
and the hypertoric total space as an arrangement variety."""

import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence

from .arrangement import ArrangementSpec, arrangement_to_divisor, verify_well_poised
from .errors import (
    BadBlockSizes, CapExceeded, DimensionMismatch, NotDegreeOneGenerated, RankDeficient,
)
from .exactmath import (
    determinant, identity, kernel_lattice, mat_mul, rank, transpose,
)
from .polyalg.groebner import TermOrder, leading, normal_form
from .polyalg.ideals import (
    PolynomialIdeal, algebra_map_kernel, fresh_names, ideal_equals, initial_ideal,
    is_binomial_prime, support_minimal_vectors,
)
from .polyalg.polynomial import Polynomial
from .polyhedra import RationalCone, SigmaPolyhedron, dual_cone, hilbert_basis
from .semicanonical import semicanonical_presentation


@dataclass
class GradedPresentation:
    """An ideal together with one degree vector per variable."""
    ideal: PolynomialIdeal
    grading: List[List[int]]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.grading = [list(map(int, g)) for g in self.grading]
        if len(self.grading) != len(self.ideal.vars):
            raise DimensionMismatch("grading needs one degree per variable")
        for g in self.ideal.generators:
            if not g.is_homogeneous(self.grading):
                raise ValueError(f"generator {g} is not homogeneous for the grading")

    @property
    def vars(self):
        return self.ideal.vars

    @classmethod
    def projective_space(cls, names):
        """Coordinate ring of P^n: zero ideal, every variable of degree 1."""
        names = tuple(names)
        return cls(PolynomialIdeal([], names), [[1]] * len(names))


def _require_degree_one(g: GradedPresentation, what="presentation"):
    if any(d != [1] for d in g.grading):
        raise NotDegreeOneGenerated(f"{what} is not Z-graded with all variables of degree 1")


def monomials_of_degree(n: int, d: int) -> List[tuple]:
    """Exponents of the degree-d monomials in n variables, descending lex."""
    out = [e for e in itertools.product(range(d, -1, -1), repeat=n) if sum(e) == d]
    return out


def _present(targets: Sequence[Polynomial], modulo, names) -> PolynomialIdeal:
    """Kernel of y_i -> targets[i] mod ``modulo``, in the variables ``names``."""
    src = targets[0].vars
    tmp = fresh_names(set(src) | set(names), "w_", len(targets))
    K = algebra_map_kernel(targets, modulo, tmp)
    return PolynomialIdeal([g.rename(tuple(names)) for g in K.generators], names).reduced()


def veronese_presentation(g: GradedPresentation, d: int, prefix: str = "y") -> GradedPresentation:
    """The d-th Veronese subring, presented by all degree-d monomials."""
    if d < 1:
        raise ValueError("Veronese degree must be positive")
    _require_degree_one(g)
    mons = monomials_of_degree(len(g.vars), d)
    targets = [Polynomial.monomial(g.vars, e) for e in mons]
    names = tuple(f"{prefix}{i}" for i in range(len(mons)))
    K = _present(targets, g.ideal, names)
    return GradedPresentation(PolynomialIdeal(K.generators, names, [[1]] * len(names)),
                              [[1]] * len(names),
                              {"veronese_degree": d, "monomials": mons})


def segre_name(prefix, i, j):
    return f"{prefix}{i}{j}" if i < 10 and j < 10 else f"{prefix}{i}_{j}"


def segre_presentation(g1: GradedPresentation, g2: GradedPresentation,
                       prefix: str = "z") -> GradedPresentation:
    """Segre product, presented by the products x_i y_j."""
    _require_degree_one(g1, "first factor")
    _require_degree_one(g2, "second factor")
    a = tuple(f"a{i}" for i in range(len(g1.vars)))
    b = tuple(f"b{j}" for j in range(len(g2.vars)))
    ring = a + b
    mod = [p.rename(a).embed(ring) for p in g1.ideal.generators]
    mod += [p.rename(b).embed(ring) for p in g2.ideal.generators]
    targets, names = [], []
    for i in range(len(a)):
        for j in range(len(b)):
            e = [0] * len(ring)
            e[i] = 1
            e[len(a) + j] = 1
            targets.append(Polynomial.monomial(ring, e))
            names.append(segre_name(prefix, i, j))
    names = tuple(names)
    K = _present(targets, PolynomialIdeal(mod, ring), names)
    return GradedPresentation(PolynomialIdeal(K.generators, names, [[1]] * len(names)),
                              [[1]] * len(names), {"factors": (g1.vars, g2.vars)})


# character quotients

def _positive_functional(grading):
    """Integer phi with phi(deg x_i) > 0 for every variable, or None."""
    k = len(grading[0]) if grading else 0
    if k == 0 or any(not any(d) for d in grading):
        return None
    C = RationalCone(k, grading)
    if not C.is_pointed():
        return None
    phi = dual_cone(C).interior_point()
    if any(sum(p * x for p, x in zip(phi, d)) <= 0 for d in grading):
        return None
    return phi


def graded_monomials(grading, target, phi=None) -> List[tuple]:
    """All exponents e >= 0 with sum e_i deg(x_i) = target, descending lex.

    Needs a positive functional on the variable degrees; None if there is none.
    """
    phi = phi or _positive_functional(grading)
    if phi is None:
        return None
    n = len(grading)
    w = [sum(p * x for p, x in zip(phi, d)) for d in grading]
    budget = sum(p * x for p, x in zip(phi, target))
    if budget < 0 or budget != int(budget):
        return []
    out = []

    def rec(i, left, e):
        if i == n:
            if left == 0:
                deg = [sum(e[v] * grading[v][j] for v in range(n)) for j in range(len(target))]
                if deg == list(target):
                    out.append(tuple(e))
            return
        for c in range(int(left // w[i]), -1, -1):
            e.append(c)
            rec(i + 1, left - c * w[i], e)
            e.pop()

    rec(0, budget, [])
    return sorted(out, reverse=True)


def _degree_monoid(grading, target):
    """Hilbert basis of {(e, t) : e >= 0, t >= 0, G e = t * target}, split by height."""
    n = len(grading)
    k = len(target)
    eqs = []
    for j in range(k):
        eqs.append([grading[i][j] for i in range(n)] + [-target[j]])
    ineq = [[int(i == j) for j in range(n + 1)] for i in range(n + 1)]
    cone = RationalCone.from_inequalities(n + 1, ineq, eqs)
    by_height = {}
    for h in hilbert_basis(cone):
        by_height.setdefault(h[-1], []).append(tuple(h[:-1]))
    for v in by_height.values():
        v.sort(reverse=True)
    return by_height


def _span_rank(polys, monomials):
    """Rank of the span of raw polynomials inside the span of ``monomials``."""
    index = {e: i for i, e in enumerate(monomials)}
    rows = []
    for p in polys:
        row = [Fraction(0)] * len(monomials)
        for e, c in p.items():
            row[index[e]] = Fraction(c)
        rows.append(row)
    return rank(rows) if rows else 0


def _khovanskii_degree_check(g, in_ideal, deg1, n, target, phi):
    """Products of n degree-one monomials span the degree-n piece mod in_ideal."""
    mons = graded_monomials(g.grading, target, phi)
    order = TermOrder()
    gb = in_ideal.groebner(order)
    lms = [leading(p, order) for p in gb]
    standard = [e for e in mons if not any(all(a <= b for a, b in zip(lm, e)) for lm in lms)]
    prods = set()
    for combo in itertools.combinations_with_replacement(deg1, n):
        prods.add(tuple(map(sum, zip(*combo))))
    nfs = [normal_form({e: 1}, gb, order) for e in sorted(prods)]
    nfs = [p for p in nfs if p]
    return _span_rank(nfs, standard) == len(standard)


def git_quotient_presentation(g: GradedPresentation, beta, veronese_cap: int = 4,
                              test_weights: Sequence = (), prefix: str = "y",
                              check_degrees=(2, 3)) -> GradedPresentation:
    """Presentation of S = sum_n R_{n k beta} for the smallest workable k <= cap.

    k works when every element of the Hilbert basis of the degree monoid
    {(e, n) : deg x^e = n k beta} has height at most one, and products of
    degree-k beta monomials span the low degree pieces of R and of each
    in_w(R) for the supplied test weights.
    """
    beta = [int(b) for b in beta]
    kdim = len(g.grading[0]) if g.grading else 0
    if len(beta) != kdim:
        raise DimensionMismatch(f"beta must have length {kdim}")
    if veronese_cap < 1:
        raise ValueError("cap must be positive")
    phi = _positive_functional(g.grading)
    initials = [(list(w), initial_ideal(g.ideal, w)) for w in test_weights]

    if not any(beta):
        # the invariant ring R_0 itself
        parts = _degree_monoid(g.grading, beta)
        gens = sorted({e for h, v in parts.items() for e in v if any(e)}, reverse=True)
        return _finish(g, gens, [0] * len(gens), 1, prefix,
                       {"r0_trivial": not gens, "checks": []})

    for k in range(1, veronese_cap + 1):
        target = [k * b for b in beta]
        parts = _degree_monoid(g.grading, target)
        if any(h > 1 for h in parts):
            continue
        deg0 = parts.get(0, [])
        deg1 = parts.get(1, [])
        if not deg1:
            continue
        checks = []
        ok = True
        if phi is not None:
            for d in check_degrees:
                tgt = [d * x for x in target]
                mons = set(graded_monomials(g.grading, tgt, phi))
                prods = {tuple(map(sum, zip(*c)))
                         for c in itertools.combinations_with_replacement(deg1, d)}
                amb = prods == mons
                checks.append(("ambient", d, amb))
                ok = ok and amb
                for w, ini in initials:
                    kv = _khovanskii_degree_check(g, ini, deg1, d, tgt, phi)
                    checks.append((tuple(w), d, kv))
                    ok = ok and kv
        if not ok:
            continue
        gens = list(deg0) + list(deg1)
        heights = [0] * len(deg0) + [1] * len(deg1)
        return _finish(g, gens, heights, k, prefix,
                       {"r0_trivial": not deg0, "checks": checks})
    raise CapExceeded(f"no k <= {veronese_cap} gives degree-one generation")


def _finish(g, gens, heights, k, prefix, meta):
    names = tuple(f"{prefix}{i}" for i in range(len(gens)))
    if not gens:
        ideal = PolynomialIdeal([], names)
    else:
        targets = [Polynomial.monomial(g.vars, e) for e in gens]
        ideal = _present(targets, g.ideal, names)
    grading = [[h] for h in heights]
    meta = dict(meta)
    meta.update({"k": k, "generators": [list(e) for e in gens], "source_vars": g.vars})
    return GradedPresentation(PolynomialIdeal(ideal.generators, names, grading), grading, meta)


def quotient_weight(q: GradedPresentation, w) -> List[Fraction]:
    """Image of an ambient weight on the quotient's generating monomials."""
    return [sum(Fraction(a) * b for a, b in zip(w, e)) for e in q.metadata["generators"]]


def quotient_weight_report(q: GradedPresentation, w):
    """(image weight, in_W of the quotient ideal, certified prime, route)."""
    W = quotient_weight(q, w)
    ini = initial_ideal(q.ideal, W)
    if ini.is_zero():
        return W, ini, True, "zero ideal"
    if all(len(p) <= 2 for p in ini.groebner()):
        c = is_binomial_prime(ini)
        return W, ini, c.prime, "binomial certificate" if c.prime else "binomial: " + c.reason
    return W, ini, False, "not certified"


# hypertoric varieties

@dataclass
class HypertoricSpec:
    """Vectors a_1..a_d in N = Z^n (columns of a: Z^d -> N) and offsets r."""
    a: List[List[int]]
    r: List[int] = None

    def __post_init__(self):
        self.a = [[int(x) for x in v] for v in self.a]
        if not self.a:
            raise ValueError("need at least one vector")
        n = len(self.a[0])
        if any(len(v) != n for v in self.a):
            raise DimensionMismatch("vectors of different lengths")
        if self.r is None:
            self.r = [0] * len(self.a)
        self.r = [int(x) for x in self.r]
        if len(self.r) != len(self.a):
            raise DimensionMismatch("need one offset per vector")
        if rank(self.matrix) != n:
            raise RankDeficient("the arrangement is not full rank")

    @property
    def d(self):
        return len(self.a)

    @property
    def matrix(self):
        """The n x d matrix with columns a_i."""
        return transpose(self.a)

    def kernel(self):
        """Basis of Lambda = ker(a), as rows."""
        return kernel_lattice(self.matrix, self.d)

    def variables(self):
        d = self.d
        return tuple(f"x{i}" for i in range(1, d + 1)) + tuple(f"y{i}" for i in range(1, d + 1))

    def grading(self):
        """Lambda^* degrees: deg x_i = i^*(e_i), deg y_i = -i^*(e_i)."""
        K = self.kernel()
        dx = [[lam[i] for lam in K] for i in range(self.d)]
        return dx + [[-x for x in v] for v in dx]

    def character(self):
        """i^*(r) in Lambda^*."""
        return [sum(l * x for l, x in zip(lam, self.r)) for lam in self.kernel()]


@dataclass
class HypertoricMatrices:
    blocks: tuple
    F: list
    P: list
    s: list
    A: list
    B: list
    column_order: list     # variable index of each column of A
    det_A: int


def hypertoric_matrices(blocks) -> HypertoricMatrices:
    """F, P, s, A, B for blocks (i_1, ..., i_n), each i_k >= 2.

    A HypertoricSpec stands for the blocks (2, ..., 2), one per hyperplane.
    """
    if isinstance(blocks, HypertoricSpec):
        blocks = (2,) * blocks.d
    blocks = tuple(int(b) for b in blocks)
    if not blocks or any(b < 2 for b in blocks):
        raise BadBlockSizes("need at least one block and every block size >= 2")
    n = len(blocks)
    N = sum(blocks)
    R = N - n + 1
    rofs = [sum(blocks[:k]) for k in range(n)]
    cofs = [sum(b - 1 for b in blocks[:k]) for k in range(n)]

    F = [[0] * R for _ in range(N)]
    for k, ik in enumerate(blocks):
        for p in range(ik):
            for q in range(ik - 1):
                if p == q:
                    F[rofs[k] + p][cofs[k] + q] = -1
                elif p == q + 1:
                    F[rofs[k] + p][cofs[k] + q] = 1
        F[rofs[k] + ik - 1][R - 1] = 1

    P = [[0] * N for _ in range(n - 1)]
    for q in range(n - 1):
        for j in range(blocks[0]):
            P[q][j] = -1
        for j in range(blocks[q + 1]):
            P[q][rofs[q + 1] + j] = 1

    s = [[0] * N for _ in range(R)]
    for k, ik in enumerate(blocks):
        for p in range(ik - 1):
            for q in range(ik):
                if p >= q:
                    s[cofs[k] + p][rofs[k] + q] = -1
    for j in range(blocks[0]):
        s[R - 1][j] = 1

    if mat_mul(s, F) != identity(R):
        raise AssertionError("s F is not the identity")
    if n > 1 and any(any(row) for row in mat_mul(P, F)):
        raise AssertionError("P F is not zero")

    zero_cols = [j for j in range(N) if not any(s[i][j] for i in range(R))]
    keep = [j for j in range(N) if j not in zero_cols]
    s_hat = [[s[i][j] for j in keep] for i in range(R)]
    F_hat = [F[j] for j in keep]
    P_hat = [[-1 if keep[j] < blocks[0] else 0 for j in range(R)] for _ in range(n - 1)]

    A = [P_hat[i] + identity(n - 1)[i] for i in range(n - 1)]
    A += [s_hat[i] + [0] * (n - 1) for i in range(R)]
    PF = mat_mul(P_hat, F_hat) if n > 1 else []
    B = [[0] * (n - 1) + F_hat[i] for i in range(R)]
    B += [identity(n - 1)[i] + [-x for x in PF[i]] for i in range(n - 1)]
    if mat_mul(A, B) != identity(N):
        raise AssertionError("A B is not the identity")
    det = determinant(A)
    if abs(det) != 1:
        raise AssertionError("A is not unimodular")
    return HypertoricMatrices(blocks, F, P, s, A, B, keep + zero_cols, int(det))


def moment_ideal(spec: HypertoricSpec) -> PolynomialIdeal:
    """Image of the linear ideal of L_{A_0} under t_i -> x_i y_i."""
    V = spec.variables()
    d = spec.d
    gens = []
    for lam in support_minimal_vectors(spec.kernel(), d):
        t = {}
        for i, c in enumerate(lam):
            if c:
                e = [0] * (2 * d)
                e[i] = e[d + i] = 1
                t[tuple(e)] = c
        gens.append(Polynomial(V, t).normalized())
    return PolynomialIdeal(gens, V, spec.grading())


def total_space_arrangement(spec: HypertoricSpec, mats: HypertoricMatrices = None) -> ArrangementSpec:
    """The arrangement A_0 on P(M_R) whose divisor gives the total space.

    The tail is the preimage of the orthant under F, and Delta_k is the hull
    of the columns of s in block k plus the tail.
    """
    mats = mats or hypertoric_matrices(spec)
    n_N = len(spec.a[0])
    u = tuple(f"u{j}" for j in range(n_N))
    forms = []
    for v in spec.a:
        t = {}
        for j, c in enumerate(v):
            if c:
                t[tuple(int(i == j) for i in range(n_N))] = c
        forms.append(Polynomial(u, t))
    s = mats.s
    R = len(s)
    cols = [[s[i][j] for i in range(R)] for j in range(len(s[0]))]
    tail = RationalCone.from_inequalities(R, mats.F)
    coeffs = [SigmaPolyhedron.from_points(R, cols[2 * k:2 * k + 2], tail) for k in range(spec.d)]
    with warnings.catch_warnings():
        # parallel vectors a_i give repeated forms; the blocks account for them
        warnings.simplefilter("ignore")
        return ArrangementSpec(n_N - 1, forms, coeffs, name="hypertoric total space")


def _sign_twists(J: PolynomialIdeal, target: PolynomialIdeal):
    """Signs eps with J(eps x) = target, or None."""
    V = J.vars
    for eps in itertools.product((1, -1), repeat=len(V)):
        sub = {v: Polynomial.var(V, v) * e for v, e in zip(V, eps) if e < 0}
        Jt = PolynomialIdeal([g.substitute(sub) for g in J.generators], V)
        if ideal_equals(Jt, target):
            return list(eps)
    return None


def hypertoric_total_space(spec: HypertoricSpec, parallel: int = 1):
    """Semi-canonical presentation of the total space and its cone-lift reports.

    Coordinates are matched to the variables x_i, y_i through their torus
    weights (the fibre degree of a coordinate equals a row of F).  The
    metadata records whether delta is smooth, whether it is the cone over
    the columns of A, and whether J_D is the moment ideal after the match,
    exactly or after rescaling some variables by -1.
    """
    mats = hypertoric_matrices(spec)
    arr = total_space_arrangement(spec, mats)
    div = arrangement_to_divisor(arr)
    pres = semicanonical_presentation(div)
    N = 2 * spec.d
    rays = pres.delta.rays()
    smooth = len(rays) == N and abs(determinant(rays)) == 1
    A_cols = [list(c) for c in transpose(mats.A)]
    V = spec.variables()
    block_vars = []
    for k in range(spec.d):
        block_vars += [V[k], V[spec.d + k]]
    m = div.m
    rename = {}
    for h, X in zip(pres.coordinates, pres.variables):
        for j, row in enumerate(mats.F):
            if list(h[m:]) == list(row):
                rename[X] = block_vars[j]
    mu = PolynomialIdeal(moment_ideal(spec).generators, V)
    exact, twist = False, None
    if len(rename) == N and len(set(rename.values())) == N:
        target = tuple(rename[X] for X in pres.variables)
        J = PolynomialIdeal([g.rename(target).embed(V) for g in pres.presentation_ideal.generators], V)
        exact = ideal_equals(J, mu)
        twist = [1] * N if exact else _sign_twists(J, mu)
    pres.metadata.update({
        "arrangement": arr,
        "matrices": mats,
        "delta_smooth": smooth,
        "delta_is_cone_over_A": RationalCone(N, A_cols) == pres.delta,
        "coordinate_to_variable": rename,
        "matches_moment_ideal": exact,
        "sign_twist": twist,
    })
    reports = verify_well_poised(arr, parallel=parallel)
    return pres, reports


def total_space_presentation(spec: HypertoricSpec) -> GradedPresentation:
    return GradedPresentation(moment_ideal(spec), spec.grading())


def hypertoric_quotient(spec: HypertoricSpec, beta=None, veronese_cap: int = 4,
                        test_weights=()) -> GradedPresentation:
    """GIT quotient of the total space at the character beta (default i^*(r))."""
    g = total_space_presentation(spec)
    beta = spec.character() if beta is None else list(beta)
    if not g.grading[0]:
        # Lambda = 0: nothing to divide by
        names = tuple(f"y{i}" for i in range(len(g.vars)))
        return GradedPresentation(PolynomialIdeal([p.rename(names) for p in g.ideal.generators], names),
                                  [[0]] * len(names),
                                  {"k": 1, "generators": identity(len(names)), "r0_trivial": False})
    return git_quotient_presentation(g, beta, veronese_cap, test_weights)
