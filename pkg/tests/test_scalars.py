import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from edgecontract.errors import NotDivisible
from edgecontract.scalars import (
    LaurentPoly,
    QuadScalar,
    geometric_quotient,
    parse_laurent,
    q,
    rank_over_fraction_field,
    sign,
    sqrt_int,
    two_cos_pi_over,
    v,
)
from edgecontract.scalars.monomial import multiply_back

vinv = LaurentPoly.monomial(-1)

laurents = st.dictionaries(st.integers(-4, 4), st.integers(-5, 5), max_size=5).map(LaurentPoly)


# -- Laurent polynomials ---------------------------------------------------


def test_difference_of_squares():
    assert (v - vinv) * (v + vinv) == LaurentPoly({2: 1, -2: -1})


def test_square_of_q():
    assert q * q == LaurentPoly({2: 1, 0: -2, -2: 1})


def test_eval_at_one_kills_q():
    assert q.eval_at_one() == 0


def test_zero_is_empty_map():
    assert LaurentPoly({3: 0}).coeffs == {}
    assert not (v - v)


def test_rendering_is_ascending():
    assert str(LaurentPoly({4: 1, 0: 3, -2: -1})) == "-v^-2 + 3 + v^4"


@given(laurents)
def test_render_parse_round_trip(a):
    assert parse_laurent(str(a)) == a


@given(laurents, laurents)
def test_eval_at_one_is_multiplicative(a, b):
    assert (a * b).eval_at_one() == a.eval_at_one() * b.eval_at_one()


@given(laurents, laurents, laurents)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a - a == LaurentPoly(0)


@given(laurents, st.integers(-3, 3))
def test_evaluation_matches_floats(a, x):
    if x == 0:
        return
    expected = sum(Fraction(c) * Fraction(x) ** e for e, c in a.coeffs.items())
    assert a.evaluate(Fraction(x)) == expected


# -- quadratic scalars ------------------------------------------------------


def test_sign_sqrt2_minus_one():
    assert sign(two_cos_pi_over(4) - 1) == 1


def test_sqrt6_equals_sqrt2_sqrt3():
    assert sign(sqrt_int(6) - sqrt_int(2) * sqrt_int(3)) == 0


def test_one_minus_golden_ratio_is_negative():
    assert sign(1 - two_cos_pi_over(5)) == -1


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_two_cos_matches_floats(m):
    x = two_cos_pi_over(m)
    assert abs(float(x) - 2 * math.cos(math.pi / m)) < 1e-12


def test_two_cos_infinity_convention():
    assert two_cos_pi_over(math.inf) == 2


quads = st.dictionaries(st.sampled_from([1, 2, 3, 5, 6, 10, 15, 30]),
                        st.fractions(min_value=-5, max_value=5, max_denominator=6),
                        max_size=4).map(QuadScalar.from_radicals)


@settings(max_examples=60)
@given(quads, quads)
def test_sign_is_multiplicative(x, y):
    assert sign(x * y) == sign(x) * sign(y)


@settings(max_examples=60)
@given(quads)
def test_sign_zero_iff_zero(x):
    assert (sign(x) == 0) == (x == 0)


@settings(max_examples=60)
@given(quads)
def test_sign_agrees_with_float_when_far_from_zero(x):
    f = float(x)
    if abs(f) > 1e-6:
        assert sign(x) == (1 if f > 0 else -1)


# -- geometric quotient -----------------------------------------------------


def test_quotient_two_steps():
    assert geometric_quotient((1, 0), (1, 2), (0, 1)) == {(1, 1): -1, (1, 2): -1}


def test_quotient_zero_numerator():
    assert geometric_quotient((2, 1), (2, 1), (0, 1)) == {}


def test_quotient_one_step():
    assert geometric_quotient((1, 0), (1, 1), (0, 1)) == {(1, 1): -1}


def test_quotient_not_divisible():
    with pytest.raises(NotDivisible):
        geometric_quotient((1, 0), (0, 1), (0, 1))


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3),
       st.lists(st.integers(-2, 2), min_size=3, max_size=3).filter(any),
       st.integers(-6, 6))
def test_quotient_multiplies_back(lam, delta, k):
    lam, delta = tuple(lam), tuple(delta)
    mu = tuple(a - k * d for a, d in zip(lam, delta))
    got = multiply_back(geometric_quotient(lam, mu, delta), delta)
    expected = {} if lam == mu else {lam: 1, mu: -1}
    assert got == expected


# -- rank -------------------------------------------------------------------


def test_rank_identity():
    one, zero = LaurentPoly(1), LaurentPoly(0)
    assert rank_over_fraction_field([[one, zero, zero], [zero, one, zero], [zero, zero, one]]) == 3


def test_rank_dependent_rows():
    assert rank_over_fraction_field([[v, v * v], [LaurentPoly(1), v]]) == 1


def test_rank_nonzero_determinant():
    assert rank_over_fraction_field([[q, LaurentPoly(1)], [LaurentPoly(0), v]]) == 2


@settings(max_examples=40)
@given(st.lists(st.lists(laurents, min_size=3, max_size=3), min_size=1, max_size=4),
       st.integers(-3, 3), st.data())
def test_rank_invariant_under_row_ops(rows, k, data):
    r = rank_over_fraction_field(rows)
    i = data.draw(st.integers(0, len(rows) - 1))
    j = data.draw(st.integers(0, len(rows) - 1))
    swapped = list(rows)
    swapped[i], swapped[j] = swapped[j], swapped[i]
    assert rank_over_fraction_field(swapped) == r
    scaled = list(rows)
    scaled[i] = [c * LaurentPoly.monomial(k) for c in scaled[i]]
    assert rank_over_fraction_field(scaled) == r
