import pytest

from koszul import QQ, QuotientRing, parse_polynomial
from koszul.families import build_cycle_ring, build_path_ring


def ring_from_strings(names, relations, field=QQ):
    return QuotientRing(len(names), [parse_polynomial(s, names, field)
                                     for s in relations], field, names)


def make_63ne(field=QQ):
    return ring_from_strings(
        ["x", "y", "z", "u"],
        ["x^2", "x*y", "x*z + u^2", "x*u", "y^2 + z^2", "z*u"], field)


@pytest.fixture(scope="session")
def ring_63ne():
    return make_63ne()


@pytest.fixture(scope="session")
def ring_ci_xy():
    return ring_from_strings(["x", "y"], ["x^2", "y^2"])


@pytest.fixture(scope="session")
def ring_x2():
    return ring_from_strings(["x"], ["x^2"])


@pytest.fixture(scope="session")
def ring_x3():
    return ring_from_strings(["x"], ["x^3"])


@pytest.fixture(scope="session")
def ring_m2zero():
    return ring_from_strings(["x", "y"], ["x^2", "x*y", "y^2"])


def suite_rings():
    """The standing test suite of rings used by the series identities."""
    return {
        "poly1": QuotientRing(1, []),
        "poly2": QuotientRing(2, []),
        "poly3": QuotientRing(3, []),
        "x2": ring_from_strings(["x"], ["x^2"]),
        "x3": ring_from_strings(["x"], ["x^3"]),
        "path3": build_path_ring(3),
        "path4": build_path_ring(4),
        "ci_xy": ring_from_strings(["x", "y"], ["x^2", "y^2"]),
        "63ne": make_63ne(),
    }


@pytest.fixture(scope="session")
def suite():
    return suite_rings()


@pytest.fixture(scope="session")
def cycle9():
    return build_cycle_ring(9)
