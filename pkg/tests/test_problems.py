import numpy as np
import pytest
import sympy as sp

from bvpnewton import problems
from bvpnewton.bvp import rhs_partials
from bvpnewton.errors import UnknownProblem
from bvpnewton.expr import compile_rhs, parse


def test_required_entries_present():
    assert {"paper-eq1", "paper-system5", "linear-zero", "quadratic"} <= set(problems.names())


def test_paper_eq1_boundary_data():
    p = problems.get_problem("paper-eq1")
    assert p.domain == (1.0, 3.0)
    assert p.bc.alpha == 17.0
    assert p.bc.beta == pytest.approx(14.333333, abs=5e-7)


def test_paper_system5_uses_printed_boundary_value():
    assert problems.get_problem("paper-system5").bc.beta == 14.333333
    assert problems.get_problem("paper-system5").exact is None


def test_linear_zero_exact():
    assert problems.get_problem("linear-zero").exact(0.5) == 0.5


def test_unknown_problem_lists_names():
    with pytest.raises(UnknownProblem, match="paper-eq1"):
        problems.get_problem("no-such")


def test_exact_solution_symbolically():
    x = sp.symbols("x", positive=True)
    y = x**2 + 16 / x
    lhs = sp.diff(y, x, 2)
    rhs = sp.Rational(1, 8) * (32 + 2 * x**3 - y * sp.diff(y, x))
    assert sp.simplify(lhs - rhs) == 0
    assert sp.simplify(lhs - (2 + 32 / x**3)) == 0


def test_exact_solution_sampled(rng):
    p = problems.get_problem("paper-eq1")
    xs = rng.uniform(1, 3, 50)
    y = p.exact(xs)
    yp = 2 * xs - 16 / xs**2
    ypp = 2 + 32 / xs**3
    np.testing.assert_allclose(p.rhs(xs, y, yp), ypp, atol=1e-9, rtol=0)


@pytest.mark.parametrize("name", [n for n, e in problems.REGISTRY.items() if e.problem.exact])
def test_exact_hits_boundary_values(name):
    p = problems.get_problem(name)
    a, b = p.domain
    assert abs(p.exact(a) - p.bc.alpha) <= 1e-9
    assert abs(p.exact(b) - p.bc.beta) <= 1e-9


@pytest.mark.parametrize("name", problems.names())
def test_analytic_partials_match_differences(name, rng):
    p = problems.get_problem(name)
    x = rng.uniform(*p.domain, 50)
    y = rng.uniform(5, 20, 50)
    yp = rng.uniform(-15, 5, 50)
    fy, fyp = p.rhs_dy(x, y, yp), p.rhs_dyp(x, y, yp)
    stripped = type(p)(p.domain, p.bc, p.rhs)
    fy_fd, fyp_fd = rhs_partials(stripped, x, y, yp)
    np.testing.assert_allclose(np.broadcast_to(fy, x.shape), fy_fd, rtol=1e-6, atol=1e-8)
    np.testing.assert_allclose(np.broadcast_to(fyp, x.shape), fyp_fd, rtol=1e-6, atol=1e-8)


@pytest.mark.parametrize("name", problems.names())
def test_textual_rhs_round_trip(name, rng):
    entry = problems.get_entry(name)
    f = compile_rhs(parse(entry.rhs_text))
    for _ in range(100):
        x, y, yp = rng.uniform(*entry.problem.domain), rng.uniform(-20, 20), rng.uniform(-20, 20)
        native = float(entry.problem.rhs(np.array([x]), np.array([y]), np.array([yp]))[0])
        assert abs(f(x, y, yp) - native) <= 1e-12 * max(1.0, abs(native))


def test_registry_metadata():
    for e in problems.REGISTRY.values():
        assert e.provenance in ("paper", "control")
        if e.provenance == "paper":
            assert "Burden" in e.description or "printed" in e.description
