import pytest
from hypothesis import given, settings, strategies as st

from edgecontract.affine_a import BLAlgebra
from edgecontract.affine_general import (
    READINGS,
    PhiAff,
    ThetaAlgebra,
    theta_to_bl,
    verify_phi_aff_v,
    verify_theta_algebra,
)
from edgecontract.errors import NoBranch, UnsupportedBond
from edgecontract.scalars import q
from edgecontract.systems import Edge, dihedral, type_A, type_B, type_D, type_H3

A2 = ThetaAlgebra(type_A(2))
A3 = ThetaAlgebra(type_A(3))
B2 = ThetaAlgebra(dihedral(4))


def test_commuting_generators():
    alg = ThetaAlgebra(type_A(3))
    assert alg.theta_gen(2) * alg.gen(0) == alg.gen(0) * alg.theta_gen(2)


def test_neighbour_commutation():
    alg = A2
    lhs = alg.theta_gen(1) * alg.gen(0)
    both = alg.theta((1, 1))
    assert lhs == alg.gen(0) * both - both.scale(q)


def test_h5_rhs_matches_product():
    for lam in [(1, 0), (0, 1), (2, -1), (-1, 3)]:
        for s in range(2):
            assert A2.h5_rhs(lam, s) == A2.theta(lam) * A2.gen(s)


def test_own_root_round_trip():
    for s in range(2):
        lhs = A2.h5_rhs(A2.alpha(s), s) * A2.inv_gen(s)
        assert lhs == A2.theta_gen(s)


def test_fixed_vector_commutes():
    # s_1 fixes alpha_1 + 2 alpha_2 in type A2
    lam = (1, 2)
    assert A2.reflect(0, lam) == lam
    assert A2.theta(lam) * A2.gen(0) == A2.gen(0) * A2.theta(lam)


def test_theta_inverse_and_commutation():
    x, xi = A3.theta_gen(1), A3.theta_gen(1, -1)
    assert x * xi == A3.one() and xi * x == A3.one()
    assert A3.theta_gen(0) * A3.theta_gen(2) == A3.theta_gen(2) * A3.theta_gen(0)


def test_rendering():
    assert str(A2.theta_gen(0) * A2.gen(1)) == "(1) Theta^[1,0] T[2]"


def test_crystallographic_only():
    with pytest.raises(UnsupportedBond):
        ThetaAlgebra(type_H3())


@pytest.mark.parametrize("sysm", [type_A(2), type_A(3), dihedral(4), type_B(3), type_D(4)])
def test_identity_satisfies_relations(sysm):
    rep = verify_theta_algebra(sysm)
    assert all(c.passed for c in rep.checks if c.name != "H5.verbatim_indices")


def test_b2_verbatim_indices_differ():
    # with an asymmetric K the relation only closes with the reflection coefficient
    rep = verify_theta_algebra(dihedral(4))
    verbatim = rep.find("H5.verbatim_indices")
    assert verbatim and not any(c.passed for c in verbatim)


def test_theta_commute_times_inverse():
    for lam in [(1, 0), (0, 2), (-1, 1)]:
        for s in range(2):
            lhs = A2.inv_gen(s) * A2.theta_commute(lam, s)
            assert lhs == A2.theta(lam)
            assert A2.theta_commute(lam, s) == A2.gen(s) * A2.theta(lam)


# -- associativity and the BL cross-representation -------------------------------


@st.composite
def theta_elements(draw, alg):
    ball = alg.group.ball(6)
    n = draw(st.integers(1, 2))
    out = alg.zero()
    for _ in range(n):
        lam = draw(st.lists(st.integers(-2, 2), min_size=alg.rank, max_size=alg.rank))
        w = draw(st.sampled_from(ball))
        c = draw(st.integers(-2, 2))
        out = out + alg.monomial((tuple(lam), w), c)
    return out


@st.composite
def triples(draw):
    alg = draw(st.sampled_from([A2, A3, B2]))
    return tuple(draw(theta_elements(alg)) for _ in range(3))


@settings(max_examples=40, deadline=None)
@given(triples())
def test_associativity(t):
    a, b, c = t
    assert (a * b) * c == a * (b * c)


BL3 = BLAlgebra(3)


@st.composite
def a2_pairs(draw):
    return draw(theta_elements(A2)), draw(theta_elements(A2))


@settings(max_examples=60, deadline=None)
@given(a2_pairs())
def test_theta_product_matches_bl(pair):
    # the coordinate change is an algebra map into the BL presentation
    a, b = pair
    assert theta_to_bl(a * b, BL3) == theta_to_bl(a, BL3) * theta_to_bl(b, BL3)


# -- phi^aff_v ---------------------------------------------------------------


def test_s0_theta_image():
    phi = PhiAff(type_A(3), Edge("2", "1"))
    tgt = phi.target
    c = phi.contraction
    ip, im = c.ip, c.im
    expected = tgt.theta_gen(ip) * tgt.theta_gen(im) - (tgt.gen(ip) * tgt.theta_gen(im)).scale(q)
    assert phi.theta_images[c.s0] == expected


def test_off_branch_theta_fixed():
    phi = PhiAff(type_D(4), Edge("1", "2"))
    c = phi.contraction
    for a, src in enumerate(c.source_of):
        if src is not None and src not in phi.nodes:
            assert phi.theta_images[a] == phi.target.theta_gen(src)


def test_s0_theta_image_inverts():
    phi = PhiAff(type_A(4), Edge("2", "1"))
    s0 = phi.contraction.s0
    x = phi.source.theta_gen(s0) * phi.source.theta_gen(s0, -1)
    assert phi(x) == phi.target.one()


@pytest.mark.parametrize("sysm, e", [
    (type_A(3), Edge("2", "1")),
    (type_A(4), Edge("3", "2")),
    (type_B(3), Edge("1", "2")),
    (type_D(4), Edge("1", "2")),
])
def test_phi_aff_v_relations(sysm, e):
    rep = verify_phi_aff_v(sysm, e)
    for prefix in ("H1", "H2", "H3", "H4", "H5.commutation"):
        found = [c for c in rep.checks if c.name.startswith(prefix)]
        assert found and all(c.passed for c in found), prefix
    assert all(c.parameters["reading"] == "s_plus" for c in rep.find("H1.quadratic"))


@pytest.mark.parametrize("sysm, e", [(type_A(3), Edge("2", "1")), (type_A(4), Edge("2", "1"))])
def test_theta_inverse_readings(sysm, e):
    rep = verify_phi_aff_v(sysm, e, cross_check=False)
    plus = rep.find("phi_aff.theta_inverse_displayed", reading="s_plus")
    minus = rep.find("phi_aff.theta_inverse_displayed", reading="s_minus")
    assert all(c.passed for c in plus)
    assert [c.parameters["generator"] for c in minus if not c.passed] == ["2+1"]


@pytest.mark.parametrize("sysm, e", [(type_A(3), Edge("2", "1")), (type_A(4), Edge("3", "2"))])
def test_cross_check_with_bl(sysm, e):
    rep = verify_phi_aff_v(sysm, e)
    checks = rep.find("phi_aff.cross_check_bl")
    assert checks and all(c.passed for c in checks)
    assert {c.parameters["route"] for c in checks} == {"literal", "composite"}


def test_no_branch():
    with pytest.raises(NoBranch):
        PhiAff(type_D(4), Edge("2", "1"))


def test_readings_constant():
    assert READINGS == ("s_plus", "s_minus")
    with pytest.raises(ValueError):
        PhiAff(type_A(3), Edge("2", "1"), reading="other")
