from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conigap.series import (
    CompositionDomain,
    DivisionByZeroSeries,
    ExpLogDomain,
    InsufficientOrder,
    NotReversible,
    ThetaIntegrationConstant,
    TruncatedLaurentSeries as TLS,
    VariableMismatch,
    arith,
)


def S(coeffs, offset=0, var="x", order=None):
    return TLS.from_coeffs(var, [Fr(c) for c in coeffs], offset, order)


def test_difference_of_squares():
    a = S([1, 1], order=8)
    b = S([1, -1], order=8)
    assert arith(a, b, "mul") == S([1, 0, -1], order=8)


def test_geometric_series():
    one = S([1], order=8)
    g = arith(one, S([1, -1], order=8), "div")
    assert g.coeff_list(0, 8) == [Fr(1)] * 8


def test_laurent_division_by_variable():
    # (y - 6y^2 + 63y^3)/y = 1 - 6y + 63y^2
    num = S([1, -6, 63], offset=1, var="y")
    quot = num / TLS.identity("y", 4)
    assert quot.coeff_list(0, 3) == [Fr(1), Fr(-6), Fr(63)]


def test_division_by_zero_series():
    with pytest.raises(DivisionByZeroSeries):
        S([1, 2]) / TLS.zero("x", 5)


def test_variable_mismatch():
    with pytest.raises(VariableMismatch):
        S([1]) + S([1], var="y")


def test_compose_square():
    outer = S([0, 0, 1], order=6)
    inner = S([0, 1, 1], order=6)
    assert outer.compose(inner).coeff_list(0, 5) == [0, 0, 1, 2, 1]


def test_compose_identity():
    s = S([0, 2, -5, 7], order=7)
    assert TLS.identity("x", 7).compose(s) == s


def test_compose_rejects_constant_term():
    with pytest.raises(CompositionDomain):
        S([0, 1]).compose(S([1, 1]))


def test_revert_identity():
    x = TLS.identity("x", 9)
    assert x.revert() == x


def test_revert_catalan():
    # inverse of x - x^2 has Catalan coefficients 1, 1, 2, 5, 14
    g = S([0, 1, -1], order=6).revert()
    assert g.coeff_list(1, 6) == [Fr(1), Fr(1), Fr(2), Fr(5), Fr(14)]


def test_revert_needs_linear_term():
    with pytest.raises(NotReversible):
        S([0, 0, 1]).revert()


def test_exp_zero_and_log_mercator():
    z = TLS.zero("x", 6)
    assert z.exp() == TLS.constant("x", 1, 6)
    lg = S([1, 1], order=7).log()
    assert lg.coeff_list(1, 7) == [Fr(1), Fr(-1, 2), Fr(1, 3), Fr(-1, 4), Fr(1, 5), Fr(-1, 6)]


def test_exp_log_roundtrip():
    s = S([1, -6, 90], var="y", order=9)
    assert s.log().exp() == s
    t = S([0, 3, -5, 7], var="y", order=9)
    assert t.exp().log() == t


def test_exp_log_domain_errors():
    with pytest.raises(ExpLogDomain):
        S([1, 1]).exp()
    with pytest.raises(ExpLogDomain):
        S([2, 1]).log()


def test_theta_basics():
    y = TLS.identity("y", 5)
    assert y.theta() == y
    assert TLS.constant("y", 7, 5).theta() == TLS.zero("y", 5)


def test_theta_of_log_hypergeometric_head():
    # C = 1 - 6y + 90y^2 - 1680y^3: theta log C = -6y + 144y^2 - 4326y^3
    c = S([1, -6, 90, -1680], var="y", order=4)
    tl = c.log().theta()
    assert tl.coeff_list(1, 3) == [Fr(-6), Fr(144)]


def test_integrate_theta_roundtrip_and_domain():
    s = S([0, 5, -7, 11], order=6)
    assert s.theta().integrate_theta() == s
    with pytest.raises(ThetaIntegrationConstant):
        S([1, 1]).integrate_theta()


def test_coeff_beyond_order_raises():
    s = S([1, 2, 3], order=3)
    with pytest.raises(InsufficientOrder):
        s.coeff(3)


def test_json_roundtrip():
    s = S([Fr(1, 3), -2, Fr(7, 5)], offset=-1, var="w")
    data = s.to_json()
    assert data["coeffs"][0] == "1/3"
    assert TLS.from_json(data) == s


small_rat = st.fractions(min_value=-4, max_value=4, max_denominator=6)
small_series = st.builds(
    lambda cs, off: TLS.from_coeffs("x", cs, off),
    st.lists(small_rat, min_size=1, max_size=5),
    st.integers(min_value=-2, max_value=2),
)


@settings(max_examples=60, deadline=None)
@given(small_series, small_series, small_series)
def test_ring_axioms_exact(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a


@settings(max_examples=40, deadline=None)
@given(st.lists(small_rat, min_size=1, max_size=4), st.lists(small_rat, min_size=1, max_size=4))
def test_truncation_monotonicity(ca, cb):
    hi, lo = 9, 5
    a_hi, b_hi = S(ca, 1, order=hi), S(cb, 0, order=hi)
    a_lo, b_lo = S(ca, 1, order=lo), S(cb, 0, order=lo)
    prod_hi = (a_hi * b_hi).truncate((a_lo * b_lo).order)
    assert prod_hi == a_lo * b_lo


@settings(max_examples=40, deadline=None)
@given(st.lists(small_rat, min_size=2, max_size=5))
def test_revert_roundtrip(cs):
    if cs[0] == 0:
        cs[0] = Fr(1)
    s = S([0] + cs, order=len(cs) + 1)
    g = s.revert()
    assert s.compose(g) == TLS.identity("x", g.order)
    assert g.compose(s).coeff_list(0, g.order) == TLS.identity("x", g.order).coeff_list(0, g.order)


def test_determinism():
    a = S([1, Fr(1, 2), 3], order=9)
    b = S([0, 2, -1], order=9)
    assert a * b == a * b
    assert a.compose(b) == a.compose(b)
