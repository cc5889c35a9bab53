from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from symred.algebra import Polynomial, variables
from symred.errors import PreconditionError
from symred.groups import (SymmetricGroup, Tableau, act_on_polynomial, compose, cycle_type, cyclic_group,
                           dihedral_group, explicit_group, invert, is_invariant, parse_group_spec, partitions,
                           perm_sign, polynomial_representation, reynolds, standard_tableaux, symmetric_group)

from conftest import polynomials

GROUPS = [symmetric_group(3), symmetric_group(4), cyclic_group(5), cyclic_group(6), dihedral_group(4),
          dihedral_group(5), dihedral_group(6, "vertices")]


@pytest.mark.parametrize("rep", GROUPS, ids=lambda r: r.name)
def test_character_table_orthogonality(rep):
    g = rep.group
    table = g.character_table
    assert sum(d * d for d in table.dims) == g.order
    for a in range(g.num_irreps):
        for b in range(g.num_irreps):
            s = sum(complex(g.character(a, i)) * complex(g.character(b, i)).conjugate() for i in range(g.order))
            assert abs(s / g.order - (a == b)) < 1e-9


@pytest.mark.parametrize("rep", GROUPS, ids=lambda r: r.name)
def test_representation_is_homomorphism(rep):
    g = rep.group
    for i in range(g.order):
        for j in range(g.order):
            lhs = np.asarray(rep.matrix(g.mul(i, j)), dtype=complex)
            rhs = np.asarray(rep.matrix(i), dtype=complex) @ np.asarray(rep.matrix(j), dtype=complex)
            assert np.allclose(lhs, rhs)


def test_s3_character_table_oracle():
    # rows on classes identity, transpositions, 3-cycles
    g = SymmetricGroup(3)
    table = g.character_table
    got = sorted(tuple(int(v) for v in row) for row in table.values)
    assert got == sorted([(1, 1, 1), (2, 0, -1), (1, -1, 1)])


@given(st.permutations(range(5)), st.permutations(range(5)))
def test_permutation_helpers(p, q):
    assert compose(p, invert(p)) == tuple(range(5))
    assert perm_sign(compose(p, q)) == perm_sign(p) * perm_sign(q)
    assert sum(cycle_type(p)) == 5


def test_partitions_and_tableaux():
    assert len(partitions(5)) == 7
    assert len(standard_tableaux((3, 2))) == 5
    assert len(standard_tableaux((2, 2, 1))) == 5
    t = Tableau(((1, 2, 4), (3, 5)))
    assert t.is_standard() and t.columns == ((1, 3), (2, 5), (4,))
    with pytest.raises(PreconditionError):
        Tableau(((1,), (2, 3)))


def test_hook_length_count():
    # number of standard tableaux equals the irreducible dimension
    g = SymmetricGroup(5)
    dims = sorted(g.character_table.dims)
    assert dims == sorted(len(standard_tableaux(lam)) for lam in partitions(5))


@given(polynomials(nvars=3, max_degree=3))
def test_reynolds_oracle_s3(f):
    # brute-force average over all permutations
    want = Polynomial(3)
    for p in permutations(range(3)):
        want = want + f.permute(p)
    want = want * Fraction(1, 6)
    r = reynolds(symmetric_group(3), f)
    assert r == want
    assert is_invariant(symmetric_group(3), r)


@given(polynomials(nvars=2, max_degree=3))
def test_reynolds_is_idempotent_dihedral(f):
    rep = dihedral_group(4)
    r = reynolds(rep, f)
    assert reynolds(rep, r).almost_equal(r)


def test_act_on_polynomial_matches_convention():
    # f^g(x) = f(M(g) x) with M(g) = rho(g^{-1})
    rep = dihedral_group(3)
    x, y = variables(2)
    f = x**2 * y
    for i in range(rep.order):
        m = np.asarray(rep.action_matrix(i), dtype=float)
        pt = np.array([0.3, -1.2])
        img = act_on_polynomial(rep, i, f)
        assert abs(float(np.real(complex(img.to_float().evaluate(list(pt))))) - f.to_float().evaluate(list(m @ pt))) < 1e-9


def test_polynomial_representation_dimension():
    rep = polynomial_representation(symmetric_group(3), 2)
    assert rep.degree == 10
    assert rep.multiplicities()[0] >= 1


def test_group_specs():
    assert parse_group_spec("S:4").order == 24
    assert parse_group_spec("C:7").order == 7
    assert parse_group_spec("D:5").order == 10
    assert parse_group_spec("Dv:5").degree == 5
    with pytest.raises(PreconditionError):
        parse_group_spec("Q:3")


def test_explicit_group_closure():
    swap = np.array([[0, 1], [1, 0]], dtype=object)
    rep = explicit_group([swap])
    assert rep.order == 2
