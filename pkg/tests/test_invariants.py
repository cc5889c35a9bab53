import math
from fractions import Fraction

import pytest
from hypothesis import given, settings

from symred.algebra import Polynomial, elementary_symmetric, power_sum, rank_exact, variables
from symred.errors import CapacityError, PreconditionError
from symred.fixtures import motzkin
from symred.groups import Tableau, dihedral_group, partitions, standard_tableaux, symmetric_group
from symred.invariants import (InvariantBasis, RewriteError, charge, column_superstandard, dihedral_generators,
                               dihedral_h_matrices, h_matrix, higher_specht, higher_specht_basis, is_symmetric,
                               multiplicity_in_degree, newton_convert, pairing_gram, rewrite_in_invariants,
                               symmetric_h_matrices, symmetric_reynolds, vandermonde)

from conftest import polynomials


@given(polynomials(3, 4, 4))
@settings(max_examples=25)
def test_rewrite_round_trip_elementary(f):
    g = symmetric_reynolds(f)
    assert is_symmetric(g)
    eb = InvariantBasis.elementary(3)
    assert eb.substitute(rewrite_in_invariants(g, eb)) == g


@given(polynomials(3, 4, 4))
@settings(max_examples=25)
def test_rewrite_round_trip_powersum(f):
    g = symmetric_reynolds(f)
    pb = InvariantBasis.powersum(3)
    assert pb.substitute(rewrite_in_invariants(g, pb)) == g


def test_rewrite_rejects_non_symmetric():
    x = variables(2)
    with pytest.raises(PreconditionError):
        rewrite_in_invariants(x[0], InvariantBasis.elementary(2))
    with pytest.raises(RewriteError):
        rewrite_in_invariants(x[0], InvariantBasis.custom([x[0] + x[1]]))


def test_motzkin_in_elementary():
    z1, z2 = variables(2)
    eb = InvariantBasis.elementary(2)
    want = z1 ** 2 * z2 ** 2 - z2 ** 3 * 2 - z2 ** 2 * 3 + 1
    assert rewrite_in_invariants(motzkin(), eb) == want


def test_custom_basis_rewrite():
    x = variables(2)
    basis = InvariantBasis.custom([x[0] + x[1], x[0] ** 2 + x[1] ** 2])
    f = (x[0] + x[1]) ** 3 + x[0] ** 2 + x[1] ** 2
    assert basis.substitute(rewrite_in_invariants(f, basis)) == f


@pytest.mark.parametrize("n", range(1, 6))
def test_newton_identities(n):
    p = [power_sum(k, n) for k in range(1, n + 1)]
    e = [elementary_symmetric(k, n) for k in range(1, n + 1)]
    z = variables(n)
    for k in range(1, n + 1):
        assert newton_convert(z[k - 1], "e2p", n).compose(p) == e[k - 1]
        assert newton_convert(z[k - 1], "p2e", n).compose(e) == p[k - 1]


def test_newton_bad_direction():
    with pytest.raises(PreconditionError):
        newton_convert(variables(2)[0], "sideways", 2)


def test_higher_specht_example_word():
    hs = higher_specht(Tableau(((1, 2, 4), (3, 5))), Tableau(((1, 3, 5), (2, 4))))
    assert "".join(map(str, hs.word)) == "31524"
    assert hs.charge == sum(hs.index)


@pytest.mark.parametrize("n", range(2, 6))
def test_higher_specht_basis_is_coinvariant_basis(n):
    basis = higher_specht_basis(n)
    assert len(basis) == math.factorial(n)
    assert rank_exact(pairing_gram([h.polynomial for h in basis])) == len(basis)


def test_higher_specht_capacity():
    with pytest.raises(CapacityError):
        higher_specht_basis(7)


@pytest.mark.parametrize("n", [3, 4])
def test_charge_counts_match_multiplicities(n):
    # copies of each Specht module in the coinvariant space: f^lambda
    for lam in partitions(n):
        tabs = standard_tableaux(lam)
        charges = sorted(charge(t) for t in tabs)
        assert len(charges) == len(tabs)
        assert multiplicity_in_degree(lam, max(charges)) >= len(tabs)


def test_column_superstandard():
    assert column_superstandard((2, 1)).rows == ((1, 3), (2,))


def test_vandermonde_alternates():
    v = vandermonde(3)
    assert v.permute((1, 0, 2)) == -v


@pytest.mark.parametrize("n", [2, 3, 4])
def test_symmetric_h_matrices_check(n):
    rep = symmetric_group(n)
    for lam, h in symmetric_h_matrices(n).items():
        assert h.size == len(standard_tableaux(lam))
        assert h.check(rep)


def test_s3_standard_h_matrix_entry():
    x = variables(3)
    pb = InvariantBasis.powersum(3)
    h = h_matrix(symmetric_group(3), [x[1] - x[0], x[2] * (x[1] - x[0])], pb)
    p1, p2, _ = variables(3)
    assert h.entries[0][0] == p2 - p1 ** 2 * Fraction(1, 3)
    assert h.check(symmetric_group(3))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_dihedral_h_matrices_check(n):
    rep = dihedral_group(n)
    for h in dihedral_h_matrices(n).values():
        assert h.check(rep)


def test_dihedral_generators_invariant():
    rep = dihedral_group(5)
    from symred.groups import reynolds
    for p in dihedral_generators(5).polys:
        assert reynolds(rep, p) == p


def test_h_matrix_capacity():
    with pytest.raises(CapacityError):
        h_matrix(symmetric_group(7), [Polynomial.constant(7, 1)], InvariantBasis.powersum(7))
