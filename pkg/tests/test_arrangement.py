import pytest

from conftest import generic_planes, half_lines
from oracles import delta_dual_points, laurent, orders
from wellpoised.arrangement import (
    ArrangementSpec, arrangement_circuits, arrangement_to_divisor, bergman_cones, cm_sufficient,
    is_saturated, nok_cone, value_semigroup, verify_well_poised,
)
from wellpoised.errors import NotGeneric, RankDeficient
from wellpoised.polyalg import hypersurface_tropical_cones, parse_polynomial
from wellpoised.polyhedra import RationalCone
from wellpoised.semicanonical import semicanonical_presentation


def forms(strings, V):
    return [parse_polynomial(s, V) for s in strings]


def test_e8_circuit_and_presentation(e8):
    assert [str(g) for g in arrangement_circuits(e8)] == ["t1 - t2 + 1"]
    pres = semicanonical_presentation(arrangement_to_divisor(e8))
    (g,) = pres.presentation_ideal.gb_polys()
    assert all(sum(1 for x in e if x) == 1 for e in g.terms)
    assert sorted(max(e) for e in g.terms) == [2, 3, 5]


def test_rank_deficient_rejected():
    V = ("x", "y", "z")
    with pytest.raises(RankDeficient):
        ArrangementSpec(2, forms(["x", "y", "x + y"], V), half_lines("1", "0", "0"))


def test_repeated_forms_warn():
    with pytest.warns(UserWarning):
        ArrangementSpec(0, forms(["u", "u"], ("u",)), half_lines("1", "0"))


def test_bergman_counts(e8):
    cones = bergman_cones(e8)
    assert [c.label for c in cones] == ["lineality", "e0", "e1", "e2"]
    assert [c.dim for c in cones] == [0, 1, 1, 1]
    g = bergman_cones(generic_planes())
    assert sum(1 for c in g if c.dim == 2) == 10
    assert len(g) == 1 + 5 + 10
    line = ArrangementSpec(1, forms(["x", "y"], ("x", "y")), half_lines("1", "0"))
    assert [c.label for c in bergman_cones(line)] == ["lineality"]


def test_bergman_non_uniform_matches_hypersurface():
    V = ("x", "y", "z")
    a = ArrangementSpec(2, forms(["x", "y", "z", "x + y"], V), half_lines("1", "0", "0", "0"))
    (circ,) = arrangement_circuits(a)
    cones = bergman_cones(a)
    top = max(c.dim for c in cones)
    mine = {RationalCone(3, c.generators + c.lineality + [[-x for x in v] for v in c.lineality])
            for c in cones if c.dim == top}
    theirs = {c for c, w, S in hypersurface_tropical_cones(circ) if c.dim() == top}
    assert top == 2 and mine == theirs and len(mine) == 3


def test_verify_e8(e8):
    reports = verify_well_poised(e8)
    assert [r.label for r in reports] == ["lineality", "e0", "e1", "e2"]
    assert all(r.prime_certified for r in reports)
    initials = sorted(str(r.in_w_JD.gb_polys()[0]) for r in reports[1:])
    assert len(set(initials)) == 3
    assert all(len(r.in_w_JD.gb_polys()[0].terms) == 2 for r in reports[1:])


def test_verify_parallel_is_deterministic():
    a = generic_planes()
    r1 = verify_well_poised(a, parallel=1)
    r4 = verify_well_poised(a, parallel=4)
    assert [(r.label, str(r.in_w_JD)) for r in r1] == [(r.label, str(r.in_w_JD)) for r in r4]
    assert all(r.prime_certified for r in r1)


@pytest.mark.parametrize("I_set", [(0, 1), (0, 2), (1, 2)])
def test_value_semigroup_oracle(e8, I_set):
    pres = semicanonical_presentation(arrangement_to_divisor(e8))
    desc = value_semigroup(e8, I_set)
    (i1,) = desc.complement
    for u in range(0, 9):
        funcs = [laurent(v, i1) for v in delta_dual_points(pres, u)]
        assert {(o,) for o in orders(funcs)} == set(desc.members(u)), u


def test_value_semigroup_e8_shape(e8):
    d = value_semigroup(e8, (0, 2))
    assert d.complement == (1,)
    assert d.members(6) == [(3,)]
    assert d.lower_bounds(15) == [8] and d.upper_bound(15) == 18 - 10
    assert not d.contains((2,), 6)


def test_nok_cone_e8(e8):
    C = nok_cone(e8, (0, 2))
    assert C.contains([8, 15]) and not C.contains([7, 15]) and not C.contains([9, 15])
    d = value_semigroup(e8, (0, 2))
    for u in range(12):
        for v in d.members(u):
            assert C.contains(list(v) + [u])


def test_not_generic():
    V = ("x", "y", "z")
    a = ArrangementSpec(2, forms(["x", "y", "z", "x + y"], V), half_lines("1", "0", "0", "0"))
    with pytest.raises(NotGeneric):
        value_semigroup(a, (0, 1))


def test_saturation_and_gap(e8):
    for I_set in [(0, 1), (0, 2), (1, 2)]:
        ok, witness = is_saturated(e8, I_set)
        assert not ok and witness is not None
    d = value_semigroup(e8, (0, 2))
    C = nok_cone(e8, (0, 2))
    gap = None
    for u in range(1, 31):
        for v in range(-5, 40):
            if C.contains([v, u]) and not d.contains((v,), u):
                if any(d.contains((k * v,), k * u) for k in range(2, 7)):
                    gap = (v, u)
                    break
        if gap:
            break
    assert gap is not None


def test_integral_coefficients_saturated():
    V = ("x", "y")
    a = ArrangementSpec(1, forms(["x", "y", "x + y"], V), half_lines("2", "-1", "0"))
    assert all(is_saturated(a, I)[0] for I in [(0, 1), (0, 2), (1, 2)])
    assert cm_sufficient(a)[0]
    d = value_semigroup(a, (0, 1))
    # saturated: closed under addition and no dilation gaps in a small window
    for u in range(1, 8):
        for (v,) in d.members(u):
            for (w,) in d.members(1):
                assert d.contains((v + w,), u + 1)


def test_cm_sufficient_e8(e8):
    assert cm_sufficient(e8) == (False, None)
