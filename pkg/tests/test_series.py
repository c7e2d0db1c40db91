import random
from fractions import Fraction

import pytest

from hilb.series import (
    EpsLaurent,
    SeriesError,
    TruncSeries,
    eps_limit,
    exp_eps,
    series_exp,
    series_mul,
)

F = Fraction


def S(order, *coeffs, var="Q"):
    cs = [F(c) for c in coeffs] + [F(0)] * (order + 1 - len(coeffs))
    return TruncSeries(var, order, cs)


def series_log(s):
    """log(s) for s with constant term 1; test-side inverse of series_exp."""
    assert s.coeffs[0] == 1
    n = s.order
    out = [F(0)] * (n + 1)
    for k in range(1, n + 1):
        acc = k * s.coeffs[k]
        for i in range(1, k):
            acc -= i * out[i] * s.coeffs[k - i]
        out[k] = acc / k
    return TruncSeries(s.var, n, out)


def test_mul_difference_of_squares():
    a = S(2, 1, 1)
    b = S(2, 1, -1)
    assert series_mul(a, b) == S(2, 1, 0, -1)


def test_mul_identity():
    s = S(3, 5, -2, 7, F(1, 3))
    assert series_mul(S(3, 1), s) == s


def test_mul_hand_cauchy():
    a = S(2, 1, 1, 1)
    b = S(1, 1, 1)
    assert series_mul(a, b) == S(1, 1, 2)


def test_mul_truncates_to_min_order():
    prod = S(5, 1, 1) * S(2, 1)
    assert prod.order == 2


def test_var_mismatch_rejected():
    with pytest.raises(SeriesError):
        series_mul(S(2, 1), S(2, 1, var="t"))


def test_exp_of_Q():
    q = TruncSeries.gen("Q", 3)
    assert series_exp(q) == S(3, 1, 1, F(1, 2), F(1, 6))


def test_exp_of_zero():
    z = TruncSeries.constant("Q", 4, 0)
    assert series_exp(z) == S(4, 1)


def test_exp_hand_expansion():
    assert series_exp(S(2, 0, 1, 1)) == S(2, 1, 1, F(3, 2))


def test_exp_rejects_constant_term():
    with pytest.raises(SeriesError):
        series_exp(S(2, 1, 1))


def test_exp_log_roundtrip():
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randint(1, 8)
        coeffs = [F(0)] + [F(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n)]
        s = TruncSeries("Q", n, coeffs)
        e = series_exp(s)
        assert series_log(e) == s
        one_plus = S(n, 1) + s
        assert series_exp(series_log(one_plus)) == one_plus


def test_rat_ring_axioms():
    rng = random.Random(11)
    for _ in range(50):
        a, b, c = (F(rng.randint(-50, 50), rng.randint(1, 30)) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_eps_limit_trivial():
    eps = TruncSeries.gen("eps", 3)
    assert eps_limit(eps, eps) == 1


def test_eps_limit_leading_coeffs():
    num = S(3, 0, 0, 1, 1, var="eps")
    den = S(3, 0, 0, 2, var="eps")
    assert eps_limit(num, den) == F(1, 2)


def test_eps_limit_one_minus_exp():
    # (1 - e^{-eps}) / (eps * (e^{eps}-1)/eps ... ) -> here den = eps - eps^2/2 + eps^3/6 - ...
    order = 5
    num = TruncSeries.constant("eps", order, 1) - exp_eps(-1, order)
    den = S(order, 0, 1, F(-1, 2), F(1, 6), F(-1, 24), F(1, 120), var="eps")
    assert eps_limit(num, den) == 1


def test_eps_limit_pole_detected():
    eps = TruncSeries.gen("eps", 4)
    one = TruncSeries.constant("eps", 4, 1)
    with pytest.raises(SeriesError):
        eps_limit(one, eps)


def test_eps_limit_zero_denominator_detected():
    z = TruncSeries.constant("eps", 4, 0)
    with pytest.raises(SeriesError):
        eps_limit(TruncSeries.gen("eps", 4), z)


def test_eps_limit_unit_invariance():
    rng = random.Random(3)
    order = 6
    num = TruncSeries("eps", order, [F(0), F(0)] + [F(rng.randint(-5, 5)) for _ in range(order - 1)])
    den = TruncSeries("eps", order, [F(0), F(0), F(3)] + [F(rng.randint(-5, 5)) for _ in range(order - 2)])
    base = eps_limit(num, den)
    unit = TruncSeries("eps", order, [F(2)] + [F(rng.randint(-4, 4)) for _ in range(order)])
    assert eps_limit(num * unit, den * unit) == base


def test_eps_laurent_division_and_limit():
    a = EpsLaurent(2, [F(1), F(1)])
    b = EpsLaurent(2, [F(2)])
    q = a / b
    assert q.shift == 0 and q.coeffs[0] == F(1, 2)
    assert q.limit() == F(1, 2)
    assert (a - a).limit() == 0
    with pytest.raises(SeriesError):
        (b / a / b).limit()  # pole: eps^{-2} leading term
