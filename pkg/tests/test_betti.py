from math import comb

import pytest

from koszul import QQ, QuotientRing
from koszul.betti import (BarEngine, betti_table, is_koszul_up_to,
                          is_strand_koszul_up_to, poincare_K_from_R,
                          shape_check, trigraded_betti)
from koszul.families import build_path_ring
from koszul.graded import GradedAlgebraData, ring_algebra_data, strand_totalize
from koszul.homology import homology
from koszul.series import SeriesTrunc, region_rect

from conftest import make_63ne, ring_from_strings, suite_rings


def exterior_algebra_data(c):
    """The exterior algebra on c degree-1 generators as graded data."""
    import itertools
    subsets = {d: sorted(itertools.combinations(range(c), d))
               for d in range(c + 1)}
    index = {d: {s: k for k, s in enumerate(subsets[d])} for d in subsets}

    def mult(g1, a, g2, b):
        s1, s2 = subsets[g1[0]][a], subsets[g2[0]][b]
        if set(s1) & set(s2):
            return {}
        inversions = sum(1 for x in s1 for y in s2 if x > y)
        merged = tuple(sorted(s1 + s2))
        sign = QQ(-1) if inversions % 2 else QQ(1)
        return {index[len(merged)][merged]: sign}

    components = {(d,): comb(c, d) for d in range(1, c + 1)}
    return GradedAlgebraData(QQ, components, mult, lambda g: g[0], bound=10)


def test_bar_betti_hypersurface():
    ring = ring_from_strings(["x"], ["x^2"])
    A = ring_algebra_data(ring, 6)
    table = betti_table(A, 6, 6, engine="bar")
    assert dict(table.items()) == {(p, (p,)): 1 for p in range(7)}


def test_bar_betti_exterior_algebras():
    # Koszul dual of the exterior algebra is a polynomial ring:
    # beta_{p,p} = C(c + p - 1, p)
    for c in (1, 2, 3):
        A = exterior_algebra_data(c)
        table = betti_table(A, 4, 4, engine="bar")
        for p in range(5):
            assert table.get(p, (p,)) == comb(c + p - 1, p)
            for q in range(5):
                if q != p:
                    assert table.get(p, (q,)) == 0


def test_bar_betti_trivial_algebra():
    A = GradedAlgebraData(QQ, {}, lambda *a: {}, lambda g: g[0], bound=5)
    table = betti_table(A, 3, 5, engine="bar")
    assert dict(table.items()) == {(0, (0,)): 1}


def test_bar_differential_squares_to_zero():
    ring = build_path_ring(3)
    A = ring_algebra_data(ring, 5)
    eng = BarEngine(A)
    for p in range(2, 5):
        for q in range(p, 6):
            assert eng.d_squared_is_zero(p, (q,))


def test_engines_agree_across_suite():
    for name, ring in suite_rings().items():
        A = ring_algebra_data(ring, 5)
        bar = betti_table(A, 4, 5, engine="bar")
        res = betti_table(A, 4, 5, engine="resolution")
        assert bar.entries == res.entries, name


def test_engines_agree_trigraded():
    ring = make_63ne()
    H = homology(ring, 4, 7)
    bar = trigraded_betti(H, 3, 7, engine="bar")
    res = trigraded_betti(H, 3, 7, engine="resolution")
    assert bar == res


def test_koszul_verdict_polynomial_ring():
    ring = QuotientRing(3, [])
    A = ring_algebra_data(ring, 5)
    v = is_koszul_up_to(A, 4, 5)
    assert v.status == "KOSZUL-UP-TO-BOUND"
    table = betti_table(A, 4, 5)
    for p in range(5):
        assert table.get(p, (p,)) == comb(3, p)


def test_koszul_verdict_cubic_hypersurface():
    ring = ring_from_strings(["x"], ["x^3"])
    A = ring_algebra_data(ring, 6)
    v = is_koszul_up_to(A, 4, 6)
    assert v.status == "NOT-KOSZUL" and v.witness == (2, 3)


def test_koszul_verdict_63ne(ring_63ne):
    A = ring_algebra_data(ring_63ne, 7)
    v = is_koszul_up_to(A, 5, 7)
    assert v.status == "KOSZUL-UP-TO-BOUND"


def test_strand_koszul_verdicts(ring_63ne, ring_ci_xy):
    H = homology(ring_63ne, 4, 8)
    v = is_strand_koszul_up_to(H, 3, 8, trigraded=True)
    assert v.status == "NOT-STRAND-KOSZUL"
    p, i, j = v.witness
    assert p != j - i
    Hc = homology(ring_ci_xy, 2, 6)
    assert is_strand_koszul_up_to(Hc, 3, 6,
                                  trigraded=True).status == "STRAND-KOSZUL-UP-TO-BOUND"
    assert is_strand_koszul_up_to(Hc, 3, 3).status == "STRAND-KOSZUL-UP-TO-BOUND"
    Hp = homology(build_path_ring(4), 4, 4)
    assert is_strand_koszul_up_to(Hp, 3, 3).status == "STRAND-KOSZUL-UP-TO-BOUND"


def test_strand_consistency_identity(ring_63ne):
    # sum over j - i = q of beta^H_{pij} equals beta^{H'}_{pq}; the trigraded
    # side needs internal degrees up to p*n + q to cover a whole strand
    p_max, q_max = 3, 3
    j_max = p_max * 4 + q_max
    H = homology(ring_63ne, 4, j_max)
    tri = trigraded_betti(H, p_max, j_max, engine="resolution")
    A = strand_totalize(H)
    strand = betti_table(A, p_max, q_max, engine="resolution")
    for p in range(p_max + 1):
        for q in range(q_max + 1):
            total = sum(v for (pp, i, j), v in tri.items()
                        if pp == p and j - i == q)
            assert total == strand.get(p, (q,)), (p, q)


def test_trigraded_examples(ring_ci_xy):
    H = homology(ring_ci_xy, 2, 6)
    tri = trigraded_betti(H, 2, 6)
    assert tri.get((1, 1, 2)) == 2          # c generators in bidegree (1, 2)
    assert tri.get((0, 0, 0)) == 1
    trivial = QuotientRing(2, [])
    Ht = homology(trivial, 2, 4)
    assert trigraded_betti(Ht, 2, 4) == {(0, 0, 0): 1}


def test_shape_check_pass_and_hypothesis_violation(ring_63ne):
    H = homology(ring_63ne, 4, 7)
    report = shape_check(H.algebra_data("bigraded"), 3, 7)
    assert report.status == "PASS" and report.hypothesis_ok
    # synthetic: a generator in homological degree 0 violates the hypothesis
    bad = GradedAlgebraData(QQ, {(0, 1): 1}, lambda *a: {},
                            lambda g: g[1], bound=4)
    report = shape_check(bad, 2, 4)
    assert report.status == "HYPOTHESIS-VIOLATED" and not report.hypothesis_ok


def test_poincare_K_from_R_examples():
    # hypersurface: P^K = sum (st)^{2i}
    ring = ring_from_strings(["x"], ["x^2"])
    A = ring_algebra_data(ring, 8)
    P_R = betti_table(A, 8, 8, engine="resolution").series()
    P_K = poincare_K_from_R(P_R, 1)
    assert P_K.coeffs == {(2 * k, 2 * k): 1 for k in range(5)}
    # polynomial ring: P^K = 1
    poly = QuotientRing(2, [])
    P_R = betti_table(ring_algebra_data(poly, 4), 4, 4).series()
    assert poincare_K_from_R(P_R, 2).coeffs == {(0, 0): 1}


def test_poincare_K_negative_coefficient_rejected():
    region = region_rect(2, 2)
    bogus = SeriesTrunc({(0, 0): 1, (1, 1): 1}, region)
    with pytest.raises(ValueError):
        poincare_K_from_R(bogus, 2)


def test_bound_validation():
    ring = ring_from_strings(["x"], ["x^2"])
    A = ring_algebra_data(ring, 3)
    with pytest.raises(ValueError):
        betti_table(A, 2, 5)
