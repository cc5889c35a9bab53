from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symred.algebra import Polynomial, power_sum, variables
from symred.errors import PreconditionError, UnsupportedError
from symred.fixtures import motzkin
from symred.groups import cyclic_group, dihedral_group, symmetric_group
from symred.sos import (block_sos, gram_feasibility, in_convex_hull, invariant_sos_blocks, negative_point,
                        newton_half_monomials, quartic_coordinates, quartic_from_params, symmetric_quadratic,
                        symmetric_quadratic_decomposition, symmetric_quartic_form, symmetric_quartic_polynomial,
                        verify_certificate)


def test_convex_hull():
    assert in_convex_hull((1, 1), [(0, 0), (2, 0), (0, 2)])
    assert not in_convex_hull((2, 2), [(0, 0), (2, 0), (0, 2)])


def test_newton_polytope_of_motzkin():
    # half of conv{0, (4,2), (2,4)} holds only 1, xy, x^2y, xy^2
    assert sorted(newton_half_monomials(motzkin())) == [(0, 0), (1, 1), (1, 2), (2, 1)]


def test_gram_feasible_with_squares():
    x, y = variables(2)
    f = (x * x - y) ** 2 + (x + y) ** 2 + y ** 2 * 3
    res = gram_feasibility(f)
    assert res.feasible
    total = Polynomial(2)
    for w, l in res.squares():
        assert w >= 0
        total = total + l * l * w
    assert total == f


def test_motzkin_not_sos():
    res = gram_feasibility(motzkin())
    assert res.status == "infeasible"
    assert res.forced is not None and res.forced[1] == -3


def test_negative_point_certificate():
    x, y = variables(2)
    f = x ** 2 - y ** 2
    pt = negative_point(f)
    assert pt is not None and f.evaluate(pt) < 0


@given(st.integers(-6, 6), st.integers(1, 4), st.integers(-6, 6), st.integers(1, 4), st.integers(2, 5))
@settings(max_examples=25)
def test_quadratic_closed_form_agrees(an, ad, bn, bd, n):
    a, b = Fraction(an, ad), Fraction(bn, bd)
    dec = symmetric_quadratic_decomposition(a, b, n)
    x = variables(n)
    s = sum(x, Polynomial(n))
    pairs = Polynomial(n)
    for i in range(n):
        for j in range(i + 1, n):
            pairs = pairs + (x[i] - x[j]) ** 2
    assert s * s * dec.alpha + pairs * dec.beta == symmetric_quadratic(a, b, n)
    f = symmetric_quadratic(a, b, n)
    if not f.is_zero():
        assert block_sos(symmetric_group(n), f).feasible == dec.sos


def test_quadratic_beta_at_1_3():
    # a = 1, b = 3, n = 3
    assert symmetric_quadratic_decomposition(1, 3, 3).beta == Fraction(-1, 6)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_block_certificate_verifies(n):
    f = power_sum(4, n) + power_sum(2, n) ** 2
    res = block_sos(symmetric_group(n), f)
    assert res.feasible and verify_certificate(res.certificate, f)
    assert res.certificate.polynomial() == f


def _cycle_form():
    x = variables(4)
    f = Polynomial(4)
    for i in range(4):
        f = f + (x[i] - x[(i + 1) % 4]) ** 2
    return f


def test_block_sos_dihedral():
    assert block_sos(dihedral_group(4, "vertices"), _cycle_form()).feasible


def test_block_sos_needs_rational_irreps():
    # C4 has irreps over Q(i) only
    with pytest.raises(UnsupportedError):
        block_sos(cyclic_group(4), _cycle_form())


def test_gram_with_group_matches_plain():
    f = power_sum(4, 3) - power_sum(2, 3) * Fraction(1, 10)
    assert gram_feasibility(f, symmetric_group(3)).feasible == gram_feasibility(f).feasible


@pytest.mark.parametrize("n", [4, 5, 6])
def test_quartic_block_sizes_stable(n):
    f = power_sum(4, n) + power_sum(2, n) ** 2 + power_sum(1, n) ** 4
    assert invariant_sos_blocks(symmetric_group(n), f).sizes == [2, 2, 1]


@given(st.lists(st.integers(-3, 3), min_size=6, max_size=6), st.integers(0, 3), st.integers(4, 5))
@settings(max_examples=15)
def test_quartic_from_psd_params_is_sos(v, gamma, n):
    # A = u u^T, B = w w^T plus a multiple of the identity
    a = [v[0] ** 2 + 1, v[0] * v[1], v[1] ** 2 + 1]
    b = [v[2] ** 2 + 1, v[2] * v[3], v[3] ** 2 + 1]
    p = dict(zip(["alpha11", "alpha12", "alpha22", "beta11", "beta12", "beta22"], map(Fraction, a + b)))
    p["gamma"] = Fraction(gamma)
    f = quartic_from_params(p, n)
    dec = symmetric_quartic_form(f)
    assert dec.sos is True
    assert dec.polynomial() == f


def test_quartic_coordinates_round_trip():
    coords = [Fraction(1), Fraction(-2, 3), Fraction(5), Fraction(1, 2), Fraction(3)]
    f = symmetric_quartic_polynomial(coords, 4)
    assert quartic_coordinates(f) == coords


def test_quartic_needs_n4():
    with pytest.raises(PreconditionError):
        quartic_coordinates(power_sum(4, 3))


def test_negative_quartic_rejected():
    dec = symmetric_quartic_form([-1, 0, 0, 0, 0], 4)
    assert dec.sos is False and dec.margin < 0
