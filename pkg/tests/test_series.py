import pytest

from koszul.series import (SeriesTrunc, region_rect, region_total, univariate,
                           univariate_binomial, univariate_mul)


def geometric_st(region, step=1):
    """sum (st)^(step*k) on the region."""
    coeffs = {}
    k = 0
    while (step * k, step * k) in region:
        coeffs[(step * k, step * k)] = 1
        k += 1
    return SeriesTrunc(coeffs, region, check=False)


def test_regions_are_downward_closed():
    SeriesTrunc({(0, 0): 1}, region_rect(3, 4))
    SeriesTrunc({(0, 0): 1}, region_total(5))
    with pytest.raises(ValueError):
        SeriesTrunc({}, frozenset({(1, 1)}))


def test_out_of_region_coefficient_rejected():
    with pytest.raises(ValueError):
        SeriesTrunc({(5, 5): 1}, region_rect(2, 2))
    with pytest.raises(KeyError):
        SeriesTrunc({}, region_rect(2, 2)).coefficient(3, 0)


def test_multiplication_truncates_exactly():
    region = region_rect(4, 4)
    a = geometric_st(region)
    b = SeriesTrunc.binomial_power(2, region)
    product = a * b
    # (1 + st)^2 * sum (st)^k: coefficient of (st)^2 is 1 + 2 + 1
    assert product.coefficient(2, 2) == 4


def test_division_inverts_multiplication():
    region = region_rect(6, 6)
    p = geometric_st(region)
    q = SeriesTrunc.binomial_power(3, region)
    assert (p * q).divide_exact(q) == p


def test_hypersurface_division():
    # P^R for k[x]/(x^2) is sum (st)^i; dividing by (1 + st) leaves
    # the even diagonal sum (st)^{2i}
    region = region_rect(8, 8)
    p_r = geometric_st(region)
    p_k = p_r.divide_exact(SeriesTrunc.binomial_power(1, region))
    assert p_k == geometric_st(region, step=2)


def test_inexact_division_raises():
    region = region_rect(3, 3)
    p = SeriesTrunc({(0, 0): 1, (1, 1): 3}, region)
    q = SeriesTrunc({(0, 0): 2, (1, 1): 1}, region)
    with pytest.raises(ValueError):
        p.divide_exact(q)


def test_division_needs_unit():
    region = region_rect(2, 2)
    p = SeriesTrunc({(1, 1): 1}, region)
    with pytest.raises(ValueError):
        p.divide_exact(SeriesTrunc({(1, 1): 1}, region))


def test_eval_at_minus_one():
    region = region_rect(4, 4)
    p = SeriesTrunc({(0, 0): 1, (1, 1): 2, (2, 2): 3, (1, 3): 5}, region)
    values = p.eval_first_at_minus_one(4)
    assert values == [1, -2, 3, -5, 0]


def test_first_difference_ordering():
    region = region_rect(3, 3)
    a = SeriesTrunc({(0, 0): 1, (2, 1): 4}, region)
    b = SeriesTrunc({(0, 0): 1, (2, 1): 5, (0, 2): 1}, region)
    assert a.first_difference(b) == (0, 2)
    assert a.first_difference(a) is None


def test_coefficientwise_le():
    region = region_rect(2, 2)
    small = SeriesTrunc({(1, 1): 1}, region)
    big = SeriesTrunc({(1, 1): 2, (0, 1): 1}, region)
    assert small.coefficientwise_le(big)
    assert not big.coefficientwise_le(small)


def test_univariate_helpers():
    assert univariate({0: 1, 2: 5}, 3) == [1, 0, 5, 0]
    assert univariate_binomial(2, -1, 3) == [1, -2, 1, 0]
    a = [1, 1, 0, 0]
    b = [1, -1, 0, 0]
    assert univariate_mul(a, b, 3) == [1, 0, -1, 0]
