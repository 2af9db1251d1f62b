from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from koszul import QQ, Field, QuotientRing, parse_polynomial, poly_to_string
from koszul.polyring import (ParseError, grevlex_key, groebner_basis,
                             is_homogeneous, leading_monomial, normal_form,
                             poly_add, poly_mul)

from conftest import make_63ne, ring_from_strings


def test_grevlex_on_classic_example():
    # x*z < y^2 in grevlex with x > y > z
    assert grevlex_key((1, 0, 1)) < grevlex_key((0, 2, 0))
    assert grevlex_key((1, 1, 0)) > grevlex_key((0, 2, 0))
    assert grevlex_key((0, 0, 3)) > grevlex_key((0, 2, 0))


def test_monomial_ideal_is_its_own_basis():
    rels = [{(1, 1, 0): 1}, {(0, 1, 1): 1}]
    basis, trusted = groebner_basis(rels, QQ)
    assert {leading_monomial(g) for g in basis} == {(1, 1, 0), (0, 1, 1)}
    assert all(len(g) == 1 for g in basis)


def test_empty_relations_give_empty_basis():
    basis, _ = groebner_basis([], QQ)
    assert basis == []


def test_non_homogeneous_rejected():
    with pytest.raises(ValueError):
        groebner_basis([{(2, 0): 1, (1, 0): 1}], QQ)
    with pytest.raises(ValueError):
        QuotientRing(2, [{(2, 0): 1, (0, 1): 1}])


def test_low_degree_relations_rejected():
    with pytest.raises(ValueError):
        QuotientRing(2, [{(1, 0): 1}])


def test_63ne_groebner_dimensions():
    # independently: degree-2 monomials modulo the span of the six quadrics
    ring = make_63ne()
    assert ring.dim(1) == 4
    assert ring.dim(2) == 4
    monos = [m for m in ring.std_monomials(2)]
    from oracles import dense_rank_kernel
    all_deg2 = sorted(
        (tuple(m) for m in _monomials(4, 2)), key=grevlex_key)
    index = {m: k for k, m in enumerate(all_deg2)}
    cols = [{index[m]: Fraction(c) for m, c in rel.items()}
            for rel in ring.relations]
    rank, _ = dense_rank_kernel(cols, len(all_deg2))
    assert len(all_deg2) - rank == 4


def _monomials(n, d):
    if n == 1:
        yield (d,)
        return
    for first in range(d + 1):
        for rest in _monomials(n - 1, d - first):
            yield (first,) + rest


def test_std_monomials_univariate():
    ring = ring_from_strings(["x"], ["x^2"])
    assert ring.std_monomials(1) == ((1,),)
    assert ring.std_monomials(2) == ()


def test_std_monomials_path3():
    ring = ring_from_strings(["x1", "x2", "x3"], ["x1*x2", "x2*x3"])
    assert set(ring.std_monomials(2)) == {(2, 0, 0), (1, 0, 1), (0, 2, 0),
                                          (0, 0, 2)}


def test_std_monomials_polynomial_ring_counts():
    ring = QuotientRing(3, [])
    for d in range(6):
        assert ring.dim(d) == comb(3 + d - 1, d)


def test_hilbert_examples():
    assert ring_from_strings(["x"], ["x^2"]).hilbert_coeffs(4) == [1, 1, 0, 0, 0]
    path3 = ring_from_strings(["x1", "x2", "x3"], ["x1*x2", "x2*x3"])
    assert path3.hilbert_coeffs(2) == [1, 3, 4]
    assert QuotientRing(2, []).hilbert_coeffs(3) == [1, 2, 3, 4]


def test_multiply_mod_examples():
    ring = ring_from_strings(["x"], ["x^2"])
    x = {(1,): Fraction(1)}
    assert ring.multiply_mod(x, x) == {}
    ring63 = make_63ne()
    x_ = parse_polynomial("x", ring63.names)
    z_ = parse_polynomial("z", ring63.names)
    assert ring63.multiply_mod(x_, z_) == parse_polynomial("-u^2", ring63.names)
    f = parse_polynomial("x*z + 3*y^2", ring63.names)
    one = parse_polynomial("1", ring63.names)
    assert ring63.multiply_mod(one, f) == ring63.normal_form(f)


def test_normal_form_idempotent_and_difference_in_ideal():
    ring = make_63ne()
    f = parse_polynomial("x*z*u + y^2*z - u^3 + x^2*y", ring.names)
    nf = ring.normal_form(f)
    assert ring.normal_form(nf) == nf
    difference = poly_add(f, {m: -c for m, c in nf.items()})
    assert ring.contains(difference)


def test_difference_expressible_in_groebner_elements():
    # run the division with quotient tracking and reconstruct exactly
    from koszul.polyring import (grevlex_key, leading_monomial, mono_div,
                                 mono_divides, mono_mul)
    ring = make_63ne()
    basis = ring.groebner(5)
    f = parse_polynomial("x*z*u^2 + y^2*z^2 - u*x*z*u + x^2*y*u", ring.names)
    work = dict(f)
    quotients = [dict() for _ in basis]
    remainder = {}
    while work:
        m = max(work, key=grevlex_key)
        c = work.pop(m)
        for k, g in enumerate(basis):
            lm = leading_monomial(g)
            if mono_divides(lm, m):
                shift = mono_div(m, lm)
                quotients[k][shift] = quotients[k].get(shift, 0) + c
                for m2, c2 in g.items():
                    if m2 == lm:
                        continue
                    m3 = mono_mul(m2, shift)
                    acc = work.get(m3, 0) - c * c2
                    if acc:
                        work[m3] = acc
                    else:
                        work.pop(m3, None)
                break
        else:
            remainder[m] = c
    assert remainder == ring.normal_form(f)
    rebuilt = dict(remainder)
    for quotient, g in zip(quotients, basis):
        rebuilt = poly_add(rebuilt, poly_mul(quotient, g))
    assert rebuilt == {m: c for m, c in f.items() if c}


def test_normal_form_linear():
    ring = make_63ne()
    f = parse_polynomial("x*z + y*u", ring.names)
    g = parse_polynomial("z*u - y^2", ring.names)
    lhs = ring.normal_form(poly_add(f, g))
    rhs = poly_add(ring.normal_form(f), ring.normal_form(g))
    assert lhs == rhs


def test_monomial_ideal_std_is_divisibility_complement():
    ring = ring_from_strings(["x1", "x2", "x3"], ["x1*x2", "x2*x3"])
    lms = [next(iter(rel)) for rel in ring.relations]
    for d in range(5):
        expected = {m for m in map(tuple, _monomials(3, d))
                    if not any(all(a <= b for a, b in zip(lm, m)) for lm in lms)}
        assert set(ring.std_monomials(d)) == expected


def test_hilbert_matches_std_monomials():
    ring = make_63ne()
    assert ring.hilbert_coeffs(6) == [len(ring.std_monomials(d))
                                      for d in range(7)]


NAMES = ["x1", "x2", "x3"]


@st.composite
def polynomials(draw):
    terms = draw(st.integers(1, 4))
    poly = {}
    for _ in range(terms):
        mono = tuple(draw(st.integers(0, 2)) for _ in NAMES)
        coeff = Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 3)))
        if coeff:
            poly[mono] = poly.get(mono, Fraction(0)) + coeff
    return {m: c for m, c in poly.items() if c}


@settings(max_examples=80, deadline=None)
@given(polynomials())
def test_parser_round_trip(poly):
    text = poly_to_string(poly, NAMES)
    assert parse_polynomial(text, NAMES) == poly


def test_parse_error_positions():
    with pytest.raises(ParseError) as err:
        parse_polynomial("x1 + x9", NAMES)
    assert "x9" in str(err.value)
    with pytest.raises(ParseError):
        parse_polynomial("3 ** x1", NAMES)
    with pytest.raises(ParseError):
        parse_polynomial("x1 $ x2", NAMES)
    with pytest.raises(ParseError):
        parse_polynomial("1/0", NAMES)


def test_parse_rational_coefficients():
    poly = parse_polynomial("1/2*x1^2 - 3*x2*x3", NAMES)
    assert poly == {(2, 0, 0): Fraction(1, 2), (0, 1, 1): Fraction(-3)}


def test_parse_prime_field():
    field = Field(5)
    poly = parse_polynomial("3*x1 + 7*x2", NAMES, field)
    assert poly == {(1, 0, 0): 3, (0, 1, 0): 2}


def test_degree_truncated_groebner_extends():
    ring = make_63ne()
    ring.std_monomials(2)
    trusted_before = ring._gb_trusted
    ring.std_monomials(6)
    assert ring._gb_trusted >= 6 >= 2
    assert trusted_before <= ring._gb_trusted
