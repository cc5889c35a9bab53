import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symred.demos import sage_example
from symred.errors import PreconditionError
from symred.fixtures import trivial_group
from symred.groups import symmetric_group
from symred.sage import (AGECandidate, Signomial, age_feasible, check_exponent_invariance, entropy_minimum,
                         identify_coefficients, orbit_decompose, orbit_sum, relative_interior, sage_bound,
                         sage_feasible)


@given(st.fractions(Fraction(1, 4), 8), st.fractions(Fraction(1, 4), 8))
@settings(max_examples=30)
def test_entropy_matches_am_gm(c1, c2):
    # c1 + c2 e^{2x} + d e^x >= 0 iff d >= -2 sqrt(c1 c2)
    cert = entropy_minimum([(0,), (2,)], [c1, c2], (1,))
    assert abs(cert.entropy + 2 * math.sqrt(c1 * c2)) < 1e-8
    assert cert.balance_residual < 1e-8 and cert.kkt_residual < 1e-6


def test_age_candidate_validation():
    with pytest.raises(PreconditionError):
        AGECandidate([(0,), (2,)], [1, -1], (1,), -1)
    with pytest.raises(PreconditionError):
        AGECandidate([(0,), (2,)], [1, 1], (0,), -1)


def test_relative_interior():
    sq = [(0, 0), (2, 0), (0, 2)]
    assert relative_interior(sq, (Fraction(1, 2), Fraction(1, 2))) == (True, True)
    assert relative_interior(sq, (1, 0)) == (True, False)
    assert relative_interior(sq, (2, 2)) == (False, False)


def test_age_boundary_rejected():
    res = age_feasible(AGECandidate([(0,), (2,)], [1, 1], (2 + 1,), -1))
    assert not res.feasible and "outside" in res.reason


def test_age_entropy_is_dual_minimum():
    # -entropy equals min_y sum_a c_a e^{<a - beta, y>}
    from scipy.optimize import minimize

    support, c, beta = [(6, 0, 0), (0, 6, 0), (0, 0, 6), (0, 0, 0)], [1, 1, 3, 2], (1, 1, 2)
    res = age_feasible(AGECandidate(support, c, beta, -1))
    assert res.feasible
    shifts = np.array(support, dtype=float) - np.array(beta, dtype=float)
    h = lambda y: float(np.sum(np.array(c) * np.exp(shifts @ y)))
    best = minimize(h, np.zeros(3), method="BFGS", options={"gtol": 1e-12})
    assert abs(best.fun + res.entropy) < 1e-7


def test_sage_example_structure():
    f = sage_example()
    rep = symmetric_group(3)
    assert check_exponent_invariance(f, rep)
    templates = orbit_decompose(f, rep)
    assert len(templates) == 1 and templates[0].beta == (1, 1, 2)
    ident = identify_coefficients(f, templates, rep)
    assert ident.status in ("unique", "underdetermined")
    # every solution of the identification reproduces f
    vals = ident.values or ident.split(ident.particular)
    g = orbit_sum(templates, vals, rep)
    assert all(g.coefficient(a) == f.coefficient(a) for a in f.terms if f.coefficient(a) > 0)


def test_sage_example_feasible_with_certificate():
    f = sage_example()
    rep = symmetric_group(3)
    res = sage_feasible(f, rep)
    assert res.feasible and res.certificate.verify(f, rep)


def test_non_invariant_rejected():
    f = Signomial([(1, 0, 0), (0, 0, 0)], [1, -1])
    with pytest.raises(PreconditionError):
        orbit_decompose(f, symmetric_group(3))


def test_cosh_bound():
    f = Signomial([(1,), (-1,)], [1, 1])
    assert abs(sage_bound(f, trivial_group(1)) - 2) < 1e-6


def test_sage_bound_is_lower_bound():
    f = sage_example()
    lam = sage_bound(f, symmetric_group(3), tol=1e-5)
    rng = np.random.default_rng(1)
    assert min(f(rng.normal(size=3)) for _ in range(500)) >= lam - 1e-9


def test_signomial_json_round_trip():
    f = sage_example()
    g = Signomial.from_json(f.to_json())
    assert g.terms == f.terms
