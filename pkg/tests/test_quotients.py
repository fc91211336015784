import warnings

import pytest
from hypothesis import given, settings, strategies as st

from wellpoised.errors import BadBlockSizes, CapExceeded, NotDegreeOneGenerated, RankDeficient
from wellpoised.exactmath import determinant, identity, mat_mul, rank
from wellpoised.polyalg import (
    PolynomialIdeal, eliminate, ideal_equals, initial_ideal, is_binomial_prime,
    parse_polynomial,
)
from wellpoised.quotients import (
    GradedPresentation, HypertoricSpec, git_quotient_presentation, graded_monomials,
    hypertoric_matrices, hypertoric_quotient, hypertoric_total_space, moment_ideal,
    quotient_weight_report, segre_presentation, veronese_presentation,
)

P1 = GradedPresentation.projective_space(["x0", "x1"])


def rename(I, names):
    return PolynomialIdeal([g.rename(tuple(names)) for g in I.generators], names)


def elimination_oracle(src_vars, images, names):
    """Graph ideal y_i - m_i, eliminate the source variables (direct build)."""
    ring = tuple(src_vars) + tuple(names)
    gens = []
    for n, img in zip(names, images):
        gens.append(parse_polynomial(n, ring) - parse_polynomial(img, ring))
    return eliminate(PolynomialIdeal(gens, ring), list(src_vars))


def test_veronese_twisted_cubic():
    v = veronese_presentation(P1, 3)
    assert [str(g) for g in v.ideal.gb_polys()] == [
        "y0*y2 - y1^2", "y0*y3 - y1*y2", "y1*y3 - y2^2"]
    oracle = elimination_oracle(("x0", "x1"), ["x0^3", "x0^2*x1", "x0*x1^2", "x1^3"],
                                ("y0", "y1", "y2", "y3"))
    assert ideal_equals(oracle, PolynomialIdeal(v.ideal.generators, oracle.vars))


def test_veronese_small_cases():
    v2 = veronese_presentation(P1, 2)
    assert [str(g) for g in v2.ideal.gb_polys()] == ["y0*y2 - y1^2"]
    conic = GradedPresentation(PolynomialIdeal(["x*z - y^2"], ("x", "y", "z")), [[1]] * 3)
    v1 = veronese_presentation(conic, 1)
    assert ideal_equals(v1.ideal, rename(conic.ideal, v1.vars))
    bad = GradedPresentation(PolynomialIdeal([], ("x", "y")), [[1], [2]])
    with pytest.raises(NotDegreeOneGenerated):
        veronese_presentation(bad, 2)


@pytest.mark.parametrize("d, e", [(2, 2), (2, 3), (3, 2)])
def test_veronese_composes(d, e):
    twice = veronese_presentation(veronese_presentation(P1, d), e)
    once = veronese_presentation(P1, d * e)
    # compare through the monomials each variable stands for
    inner = veronese_presentation(P1, d).metadata["monomials"]
    outer = twice.metadata["monomials"]
    exps = [tuple(sum(k * m[i] for k, m in zip(o, inner)) for i in range(2)) for o in outer]
    assert set(exps) == set(once.metadata["monomials"])
    # variables that stand for the same monomial are identified: the rest are linear relations
    first = {}
    lin = []
    for name, ex in zip(twice.vars, exps):
        if ex in first:
            lin.append(parse_polynomial(name, twice.vars) - parse_polynomial(first[ex], twice.vars))
        else:
            first[ex] = name
    assert all(twice.ideal.contains(p) for p in lin)
    keep = tuple(first[ex] for ex in once.metadata["monomials"])
    reduced = eliminate(PolynomialIdeal(twice.ideal.generators + lin, twice.vars),
                        [v for v in twice.vars if v not in keep])
    assert ideal_equals(PolynomialIdeal(reduced.generators, keep), rename(once.ideal, keep))


def test_segre_quadric():
    s = segre_presentation(P1, P1)
    assert [str(g) for g in s.ideal.gb_polys()] == ["z00*z11 - z01*z10"]
    oracle = elimination_oracle(("a0", "a1", "b0", "b1"), ["a0*b0", "a0*b1", "a1*b0", "a1*b1"],
                                ("z00", "z01", "z10", "z11"))
    assert ideal_equals(oracle, PolynomialIdeal(s.ideal.generators, oracle.vars))


def test_segre_with_point_and_conic():
    point = GradedPresentation.projective_space(["w"])
    conic = GradedPresentation(PolynomialIdeal(["x*z - y^2"], ("x", "y", "z")), [[1]] * 3)
    s = segre_presentation(conic, point)
    assert ideal_equals(s.ideal, rename(conic.ideal, s.vars))
    big = segre_presentation(conic, P1)
    # no relation supported on one factor beyond the images of the factor's ideal
    col0 = [v for v in big.vars if v.endswith("0")]
    only = eliminate(big.ideal, [v for v in big.vars if v not in col0])
    assert ideal_equals(PolynomialIdeal(only.generators, tuple(col0)),
                        rename(conic.ideal, tuple(col0)))


def test_segre_tropical_product():
    s = segre_presentation(P1, P1)
    w1, w2 = [0, 1], [0, 2]
    W = [a + b for a in w1 for b in w2]
    ini = initial_ideal(s.ideal, W)
    # weights of the form w1_i + w2_j are tropical for every Segre product
    assert ideal_equals(ini, s.ideal) and is_binomial_prime(ini).prime


# character quotients

def test_git_affine_plane():
    g = GradedPresentation(PolynomialIdeal([], ("x", "y")), [[1], [1]])
    q = git_quotient_presentation(g, [1])
    assert q.ideal.is_zero() and q.metadata["k"] == 1
    assert q.metadata["generators"] == [[1, 0], [0, 1]]


def test_git_conic_is_itself():
    conic = GradedPresentation(PolynomialIdeal(["x*z - y^2"], ("x", "y", "z")), [[1]] * 3)
    q = git_quotient_presentation(conic, [1], test_weights=[[0, 1, 2]])
    assert ideal_equals(q.ideal, rename(conic.ideal, q.vars))
    assert all(ok for *_, ok in q.metadata["checks"])


def test_git_weighted_needs_veronese():
    g = GradedPresentation(PolynomialIdeal([], ("x", "y")), [[1], [2]])
    q = git_quotient_presentation(g, [1])
    assert q.metadata["k"] == 2
    assert [str(p) for p in q.ideal.gb_polys()] == []
    assert q.metadata["generators"] == [[2, 0], [0, 1]]
    h = GradedPresentation(PolynomialIdeal([], ("x", "y")), [[2], [3]])
    with pytest.raises(CapExceeded):
        git_quotient_presentation(h, [1], veronese_cap=2)
    assert git_quotient_presentation(h, [1], veronese_cap=6).metadata["k"] == 6


def _hilbert_count(g, target):
    """dim R_target by counting standard monomials (ambient oracle)."""
    mons = graded_monomials(g.grading, target)
    gb = g.ideal.gb_polys()
    from wellpoised.polyalg.groebner import TermOrder, leading
    from wellpoised.polyalg.ideals import to_raw
    lms = [leading(to_raw(p), TermOrder()) for p in gb]
    return sum(1 for e in mons if not any(all(a <= b for a, b in zip(l, e)) for l in lms))


@settings(max_examples=12, deadline=None)
@given(weights=st.lists(st.integers(1, 3), min_size=2, max_size=3), beta=st.integers(1, 3))
def test_git_graded_dimensions(weights, beta):
    names = tuple(f"x{i}" for i in range(len(weights)))
    g = GradedPresentation(PolynomialIdeal([], names), [[w] for w in weights])
    try:
        q = git_quotient_presentation(g, [beta], veronese_cap=6)
    except CapExceeded:
        return
    k = q.metadata["k"]
    for n in (1, 2):
        expect = _hilbert_count(g, [n * k * beta])
        got = _hilbert_count(q, [n])
        assert got == expect


def test_git_graded_dimensions_with_relation():
    g = GradedPresentation(PolynomialIdeal(["x^2*z - y^2"], ("x", "y", "z")), [[1], [2], [2]])
    q = git_quotient_presentation(g, [2])
    k = q.metadata["k"]
    for n in (1, 2, 3):
        assert _hilbert_count(q, [n]) == _hilbert_count(g, [n * k * 2])
    for p in q.ideal.generators:
        assert p.is_homogeneous(q.grading)


# hypertoric

def test_matrices_22():
    M = hypertoric_matrices((2, 2))
    assert len(M.F) == 4 and len(M.F[0]) == 3
    assert M.F == [[-1, 0, 0], [1, 0, 1], [0, -1, 0], [0, 1, 1]]
    assert M.s == [[-1, 0, 0, 0], [0, 0, -1, 0], [1, 1, 0, 0]]
    assert mat_mul(M.s, M.F) == identity(3)
    assert mat_mul(M.A, M.B) == identity(4)
    assert abs(determinant(M.A)) == 1


def test_matrices_23_blocks():
    M = hypertoric_matrices((2, 3))
    assert len(M.F) == 5 and len(M.F[0]) == 4
    # F_3 block and l_3 column
    assert [row[1:3] for row in M.F[2:5]] == [[-1, 0], [1, -1], [0, 1]]
    assert [row[3] for row in M.F] == [0, 1, 0, 0, 1]
    # s_3 block
    assert [row[2:5] for row in M.s[1:3]] == [[-1, 0, 0], [-1, -1, 0]]
    assert M.P == [[-1, -1, 1, 1, 1]]
    assert mat_mul(M.s, M.F) == identity(4)


def test_matrices_degenerate_and_bad():
    M = hypertoric_matrices((3,))
    assert M.P == [] and len(M.A) == 3
    with pytest.raises(BadBlockSizes):
        hypertoric_matrices((2, 1))


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(2, 4), min_size=1, max_size=4))
def test_matrices_identities(blocks):
    M = hypertoric_matrices(blocks)
    R = sum(blocks) - len(blocks) + 1
    assert mat_mul(M.s, M.F) == identity(R)
    assert mat_mul(M.A, M.B) == identity(sum(blocks))
    assert abs(M.det_A) == 1
    assert rank(M.F) == R


def test_moment_ideals():
    assert [str(g) for g in moment_ideal(HypertoricSpec([[1], [1]])).gb_polys()] == ["x1*y1 - x2*y2"]
    assert moment_ideal(HypertoricSpec([[1, 0], [0, 1]])).is_zero()
    three = moment_ideal(HypertoricSpec([[1], [1], [1]]))
    assert len(three.generators) == 3
    V = three.vars
    two = PolynomialIdeal(["x1*y1 - x2*y2", "x2*y2 - x3*y3"], V)
    assert ideal_equals(three, two)
    with pytest.raises(RankDeficient):
        HypertoricSpec([[1, 1], [2, 2]])


@pytest.mark.parametrize("a", [[[1], [1]], [[1], [1], [1]], [[1, 0], [0, 1]], [[1, 0], [0, 1], [1, 1]]])
def test_total_space(a):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        pres, reports = hypertoric_total_space(HypertoricSpec(a))
    assert pres.metadata["delta_smooth"]
    assert pres.metadata["matches_moment_ideal"]
    assert reports and all(r.prime_certified for r in reports)


def test_total_space_rank_two_cones():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        pres, reports = hypertoric_total_space(HypertoricSpec([[1, 0], [0, 1], [1, 1]]))
    assert [r.label for r in reports] == ["lineality", "e0", "e1", "e2"]


def test_hypertoric_quotient_a11():
    spec = HypertoricSpec([[1], [1]])
    assert spec.character() == [0]
    q = hypertoric_quotient(spec)
    assert is_binomial_prime(q.ideal).prime
    assert q.metadata["generators"] == [[1, 1, 0, 0], [1, 0, 1, 0], [0, 1, 0, 1], [0, 0, 1, 1]]
    assert ideal_equals(q.ideal, PolynomialIdeal(["y1 - y2", "y0*y3 - y2^2"], q.vars))
    W, ini, ok, route = quotient_weight_report(q, [1, 0, -1, 0])
    assert W == [1, 0, 0, -1] and ok
    W, ini, ok, route = quotient_weight_report(q, [1, 0, 0, 0])
    assert not ok
