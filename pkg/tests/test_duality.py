import itertools

import pytest
from hypothesis import given, settings, strategies as st

from edgecontract.duality import (
    OperatorRecipe,
    act_E,
    act_F,
    act_K,
    act_T,
    act_T_inv,
    admissible_iplus,
    check_bimodule,
    check_comm,
    check_H_relations,
    check_prop_H,
    check_prop_U,
    check_U_relations,
    phi_epsilon,
    phi_T,
    phi_T1,
    phi_v_recipe,
    space,
    verify_duality,
)
from edgecontract.errors import IndexOutOfRange
from edgecontract.scalars import LaurentPoly, q, v

vinv = LaurentPoly.monomial(-1)


def _k_weight(letters, i):
    return LaurentPoly.monomial(letters.count(i) - letters.count(i + 1))


def _coproduct_E(i, word):
    """``Delta(E) = E (x) K + 1 (x) E`` applied recursively from the left."""
    if not word:
        return {}
    head, rest = word[0], word[1:]
    out = {}
    if head == i + 1:
        out[(i,) + rest] = _k_weight(rest, i)
    for w, c in _coproduct_E(i, rest).items():
        key = (head,) + w
        out[key] = out.get(key, LaurentPoly(0)) + c
    return out


def _coproduct_F(i, word):
    """``Delta(F) = F (x) 1 + K^{-1} (x) F`` applied recursively from the right."""
    if not word:
        return {}
    init, last = word[:-1], word[-1]
    out = {}
    if last == i:
        k = _k_weight(init, i)
        out[init + (i + 1,)] = LaurentPoly({-e: c for e, c in k.coeffs.items()})
    for w, c in _coproduct_F(i, init).items():
        key = w + (last,)
        out[key] = out.get(key, LaurentPoly(0)) + c
    return out


# -- actions -------------------------------------------------------------------


def test_E_example():
    sp = space(2, 2)
    assert act_E(1, sp.word([2, 2])) == sp.word([1, 2], vinv) + sp.word([2, 1])


def test_K_example():
    sp = space(2, 2)
    assert act_K(1, sp.word([1, 2])) == sp.word([1, 2])


def test_E_kills_lowest():
    sp = space(2, 2)
    assert act_E(1, sp.word([1, 1])).is_zero()


def test_T_cases():
    sp = space(2, 2)
    assert act_T(1, sp.word([1, 2])) == sp.word([2, 1])
    assert act_T(1, sp.word([2, 2])) == sp.word([2, 2], v)
    assert act_T(1, sp.word([2, 1])) == sp.word([2, 1], q) + sp.word([1, 2])


def test_T_inverse():
    sp = space(3, 3)
    for w in sp.basis():
        x = sp.monomial(w)
        assert act_T_inv(2, act_T(2, x)) == x


def test_index_errors():
    sp = space(2, 2)
    with pytest.raises(IndexOutOfRange):
        act_E(2, sp.word([1, 1]))
    with pytest.raises(IndexOutOfRange):
        act_T(2, sp.word([1, 1]))
    with pytest.raises(IndexOutOfRange):
        sp.word([3, 1])


def test_rendering():
    sp = space(2, 2)
    assert str(act_E(1, sp.word([2, 2]))) == "(v^-1) [1,2] + (1) [2,1]"


shapes = st.sampled_from([(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)])


@settings(max_examples=100)
@given(shapes, st.data())
def test_actions_match_coproduct(shape, data):
    n, d = shape
    sp = space(n, d)
    word = tuple(data.draw(st.lists(st.integers(1, n), min_size=d, max_size=d)))
    i = data.draw(st.integers(1, n - 1))
    x = sp.monomial(word)
    assert act_E(i, x) == sp.element(_coproduct_E(i, word))
    assert act_F(i, x) == sp.element(_coproduct_F(i, word))


@settings(max_examples=60)
@given(shapes, st.data())
def test_T_at_v_one_permutes_letters(shape, data):
    n, d = shape
    if d < 2:
        return
    sp = space(n, d)
    word = tuple(data.draw(st.lists(st.integers(1, n), min_size=d, max_size=d)))
    j = data.draw(st.integers(1, d - 1))
    got = {w: c.eval_at_one() for w, c in act_T(j, sp.monomial(word)).terms.items()}
    swapped = list(word)
    swapped[j - 1], swapped[j] = swapped[j], swapped[j - 1]
    assert {w: c for w, c in got.items() if c} == {tuple(swapped): 1}


# -- relations ------------------------------------------------------------------


@pytest.mark.parametrize("n, d", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_U_relations(n, d):
    rep = check_U_relations(n, d)
    assert rep.passed, rep.to_table()


def test_serre_relations_are_exercised():
    rep = check_U_relations(3, 3)
    assert rep.find("U.serre_E") and rep.find("U.serre_F")


@pytest.mark.parametrize("n, d", [(2, 3), (3, 3), (2, 4)])
def test_H_relations(n, d):
    assert check_H_relations(n, d).passed


@pytest.mark.parametrize("n, d", [(2, 2), (3, 3)])
def test_bimodule(n, d):
    rep = check_bimodule(n, d)
    assert rep.passed and len(rep.checks) == 4 * (n - 1) * (d - 1)


# -- phi_eps ---------------------------------------------------------------------


def test_phi_epsilon_cases():
    assert str(phi_epsilon("E", 1, 2, 1)) == "(1) E1"
    assert str(phi_epsilon("F", 3, 2, 1)) == "(1) F4"
    assert str(phi_epsilon("K", 2, 2, -1)) == "(1) K2*K3"
    assert str(phi_epsilon("E", 2, 2, 1)) == "(1) E2*E3 + (-v) E3*E2"
    assert str(phi_epsilon("F", 2, 2, 1)) == "(1) F3*F2 + (-v^-1) F2*F3"


def test_phi_epsilon_bad_sign():
    with pytest.raises(ValueError):
        phi_epsilon("E", 1, 1, 0)


def _phi_eps_relations(n, d, i_plus, eps):
    """The ``U_n`` relations on ``phi_eps`` images, as operators on ``T_{n+1,d}``."""
    sp = space(n + 1, d)
    img = {(k, i): phi_epsilon(k, i, i_plus, eps) for k in ("E", "F", "K", "Kinv") for i in range(1, n)}
    one = OperatorRecipe.one()
    vv = v + vinv
    bad = []
    for i, j in itertools.product(range(1, n), repeat=2):
        a = 2 * (i == j) - (abs(i - j) == 1)
        pairs = [
            (img["K", i] * img["Kinv", i], one),
            (img["K", i] * img["E", j], (img["E", j] * img["K", i]).scale(LaurentPoly.monomial(a))),
            (img["K", i] * img["F", j], (img["F", j] * img["K", i]).scale(LaurentPoly.monomial(-a))),
            ((img["E", i] * img["F", j] - img["F", j] * img["E", i]).scale(q),
             (img["K", i] - img["Kinv", i]) if i == j else OperatorRecipe([], "left")),
        ]
        if abs(i - j) == 1:
            for X in ("E", "F"):
                lhs = (img[X, i] * img[X, i] * img[X, j] - (img[X, i] * img[X, j] * img[X, i]).scale(vv)
                       + img[X, j] * img[X, i] * img[X, i])
                pairs.append((lhs, OperatorRecipe([], "left")))
        for lhs, rhs in pairs:
            for w in sp.basis():
                x = sp.monomial(w)
                if lhs.apply(x) != rhs.apply(x):
                    bad.append((i, j, w))
                    break
    return bad


@pytest.mark.parametrize("eps", [1, -1])
@pytest.mark.parametrize("n, d, i_plus", [(2, 2, 1), (3, 2, 1), (3, 2, 2)])
def test_phi_epsilon_images_satisfy_relations(n, d, i_plus, eps):
    assert _phi_eps_relations(n, d, i_plus, eps) == []


# -- phi^T and phi^T_1 -----------------------------------------------------------


def test_phi_T_examples():
    sp = space(2, 2)
    big = space(3, 3)
    assert phi_T(sp.word([1, 1]), 1) == big.word([1, 2, 1])
    assert phi_T(sp.word([2, 1]), 1) == big.word([3, 2, 1])


def test_phi_T1_examples():
    sp = space(2, 2)
    big = space(3, 3)
    assert phi_T1(sp.word([2, 1]), 1) == big.word([2, 3, 1])
    assert phi_T1(sp.word([2, 1]), 1, relabel=True) == big.word([3, 3, 1])


def test_insertion_must_exist():
    sp = space(4, 1)
    with pytest.raises(IndexOutOfRange):
        phi_T(sp.word([1]), 2)


@pytest.mark.parametrize("n, d", [(2, 2), (3, 2), (3, 3)])
def test_phi_T_and_phi_T1_injective_on_words(n, d):
    sp = space(n, d)
    for ip in admissible_iplus(n, d, "U"):
        for f in (lambda x: phi_T(x, ip), lambda x: phi_T1(x, ip), lambda x: phi_T1(x, ip, relabel=True)):
            images = [next(iter(f(sp.monomial(w)).terms)) for w in sp.basis()]
            assert len(set(images)) == len(images)


def test_admissible_values():
    assert admissible_iplus(3, 2, "U") == [1, 2]
    assert admissible_iplus(3, 2, "H") == [1]
    assert admissible_iplus(2, 1, "H") == []


def test_phi_v_recipe_contracted_generator():
    assert str(phi_v_recipe(1, 1)) == "(1) T1*T2*Tinv1"
    assert str(phi_v_recipe(2, 1)) == "(1) T3"


# -- compatibility squares ----------------------------------------------------


@pytest.mark.parametrize("eps", [1, -1])
@pytest.mark.parametrize("n, d, i_plus", [(2, 2, 1), (3, 2, 1), (3, 3, 2)])
def test_U_square_literal_insertion(n, d, i_plus, eps):
    rep = check_prop_U(n, d, i_plus, eps)
    failed = sorted(c.parameters["generator"] for c in rep.failures())
    # the square commutes except for E_{i_+} and F_{i_+}
    assert failed == [f"E{i_plus}", f"F{i_plus}"]
    assert all(c.passed for c in rep.find("prop_U.square_edge_insertion"))


@pytest.mark.parametrize("n, d, i_plus", [(2, 3, 1), (3, 3, 1), (3, 3, 2)])
def test_H_square(n, d, i_plus):
    rep = check_prop_H(n, d, i_plus)
    for name in ("prop_H.square", "prop_H.routes_agree"):
        found = rep.find(name)
        assert found and all(c.passed for c in found)


def test_H_square_relabelled_fails_on_contracted_generator():
    rep = check_prop_H(2, 3, 1)
    failed = rep.failures()
    assert failed and all(c.name == "prop_H.square_relabelled" for c in failed)
    assert {c.parameters["j"] for c in failed} == {1}


@pytest.mark.parametrize("n, d, i_plus", [(2, 2, 1), (3, 3, 1), (3, 3, 2)])
def test_comm_identities(n, d, i_plus):
    rep = check_comm(n, d, i_plus)
    assert all(c.status in ("pass", "skipped") for c in rep.checks)


def test_comm_cases_all_occur():
    rep = check_comm(2, 2, 1)
    assert [c.status for c in rep.sorted_checks()] == ["pass", "pass", "pass"]


def test_verify_duality_rejects_bad_iplus():
    with pytest.raises(IndexOutOfRange):
        verify_duality(2, 2, i_plus=2)


def test_verify_duality_outcome():
    rep = verify_duality(2, 2, 1, 1)
    assert {c.name for c in rep.failures()} == {"prop_U.square", "prop_H.square_relabelled"}
