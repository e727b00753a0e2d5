import pytest

from ciext import Field, Ideal, Module, PolyRing, QuotientRing


@pytest.fixture(scope="session")
def ex_ring():
    """F_101[u,x]/(ux)."""
    return QuotientRing(PolyRing(Field(101), ["u", "x"]), ["u*x"])


@pytest.fixture(scope="session")
def ex_module(ex_ring):
    return Module.quotient_ring(Ideal(ex_ring, ["u"]))


@pytest.fixture(scope="session")
def ci_ring():
    """Q[x,y]/(x^2, y^2)."""
    return QuotientRing(PolyRing(Field(0), ["x", "y"]), ["x^2", "y^2"])


@pytest.fixture(scope="session")
def ci_k(ci_ring):
    return Module.quotient_ring(Ideal.maximal(ci_ring))


@pytest.fixture(scope="session")
def hyp_ring():
    """Q[x]/(x^2)."""
    return QuotientRing(PolyRing(Field(0), ["x"]), ["x^2"])


@pytest.fixture(scope="session")
def plane():
    """Q[x,y] with no modulus."""
    return QuotientRing(PolyRing(Field(0), ["x", "y"]))


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
