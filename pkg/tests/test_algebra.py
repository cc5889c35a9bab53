from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from symred.algebra import (MatrixPolynomial, Polynomial, elementary_symmetric, exact_matrix, ldlt_psd_check,
                            monomials_up_to, nullspace_exact, power_sum, quadratic_form, rank_exact, solve_exact,
                            sym_eigenvalues, variables, verify_ldlt)
from symred.errors import PreconditionError

from conftest import polynomials, rational_points, small_fractions


@given(polynomials(), polynomials(), polynomials())
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert f * (g + h) == f * g + f * h
    assert (f - f).is_zero()


@given(polynomials(), polynomials(), rational_points(2))
def test_evaluation_is_a_homomorphism(f, g, x):
    assert (f * g).evaluate(x) == f.evaluate(x) * g.evaluate(x)
    assert (f + g).evaluate(x) == f.evaluate(x) + g.evaluate(x)


@given(polynomials(), polynomials(nvars=3, max_degree=2), polynomials(nvars=3, max_degree=2), rational_points(3))
def test_compose_matches_evaluation(f, a, b, x):
    comp = f.compose([a, b])
    assert comp.evaluate(x) == f.evaluate([a.evaluate(x), b.evaluate(x)])


@given(polynomials(nvars=3), st.permutations([0, 1, 2]), rational_points(3))
def test_permute_sends_xi_to_xpi(f, p, x):
    # f.permute(p) evaluated at x equals f at (x[p[0]], x[p[1]], ...)
    assert f.permute(p).evaluate(x) == f.evaluate([x[p[i]] for i in range(3)])


@given(polynomials(nvars=3))
def test_json_round_trip(f):
    assert Polynomial.from_json(f.to_json()) == f


@given(polynomials(), st.integers(0, 1))
def test_derivative_product_rule(f, i):
    g = variables(2)[0] + 2
    assert (f * g).derivative(i) == f.derivative(i) * g + f * g.derivative(i)


def test_symmetric_basics():
    x = variables(3)
    assert elementary_symmetric(2, 3) == x[0] * x[1] + x[0] * x[2] + x[1] * x[2]
    assert power_sum(3, 3) == x[0] ** 3 + x[1] ** 3 + x[2] ** 3
    assert len(monomials_up_to(3, 2)) == 10


def test_format_and_errors():
    x, y = variables(2)
    assert (x**2 - 3 * x * y + Fraction(1, 2)).format() == "X1^2 - 3*X1*X2 + 1/2"
    with pytest.raises(PreconditionError):
        Polynomial.from_json({"vars": 2})
    with pytest.raises(PreconditionError):
        x.compose([y])


@st.composite
def rational_matrices(draw, rows, cols):
    return [[draw(small_fractions) for _ in range(cols)] for _ in range(rows)]


@given(rational_matrices(3, 4), rational_points(4))
def test_solve_exact_against_numpy(a, x0):
    b = [sum(ai * xi for ai, xi in zip(row, x0)) for row in a]
    sol = solve_exact(a, b)
    assert sol is not None
    for t in range(3):
        x = sol.point([Fraction(t)] * sol.dof)
        assert [sum(ai * xi for ai, xi in zip(row, x)) for row in a] == b
    assert rank_exact(a) == np.linalg.matrix_rank(np.array(a, dtype=float))
    for v in nullspace_exact(a):
        assert all(sum(ai * vi for ai, vi in zip(row, v)) == 0 for row in a)


def test_inconsistent_system():
    assert solve_exact([[1, 1], [2, 2]], [1, 3]) is None


@given(rational_matrices(4, 2))
def test_ldlt_on_gram_matrices(b):
    # B B^T is psd; subtracting a large multiple of e1 e1^T is not
    m = exact_matrix([[sum(x * y for x, y in zip(r, s)) for s in b] for r in b])
    res = ldlt_psd_check(m)
    assert res.psd and verify_ldlt(m, res)
    m2 = m.copy()
    m2[0, 0] -= 1
    res2 = ldlt_psd_check(m2)
    lam = np.linalg.eigvalsh(np.array(m2, dtype=float)).min()
    assert res2.psd == (lam >= -1e-12) or abs(lam) < 1e-9
    if not res2.psd:
        assert res2.value < 0 and quadratic_form(m2, res2.witness) == res2.value


@given(st.integers(1, 8), st.integers(0, 1000))
def test_sym_eigenvalues_against_numpy(n, seed):
    a = np.random.default_rng(seed).normal(size=(n, n))
    a = a + a.T
    assert np.allclose(np.sort(sym_eigenvalues(a)), np.linalg.eigvalsh(a), atol=1e-9)


def test_matrix_polynomial():
    x, y = variables(2)
    m = MatrixPolynomial([[x, y], [y, x * y]])
    assert m.is_symmetric()
    assert MatrixPolynomial.from_json(m.to_json()) == m
    assert (m.evaluate([2, 3]) == exact_matrix([[2, 3], [3, 6]])).all()
