from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from symred.algebra import exact_matrix
from symred.errors import PreconditionError
from symred.groups import cyclic_group, dihedral_group, polynomial_representation, symmetric_group
from symred.sdp import group_action
from symred.symmetry_adapted import (SymmetryAdaptedBasis, adapted_generators, block_diagonalize,
                                     isotypic_decomposition, isotypic_projector, reconstruct_from_blocks,
                                     serre_projector, symmetry_adapted_basis, zonal_matrices)

REPS = [symmetric_group(3), symmetric_group(4), cyclic_group(4), cyclic_group(5), dihedral_group(4, "vertices"),
        dihedral_group(5), polynomial_representation(symmetric_group(3), 2)]


def averaged(rep, seed):
    a = np.random.default_rng(seed).normal(size=(rep.degree, rep.degree))
    a = a + a.T
    return sum(np.asarray(group_action(rep, i, a), dtype=float) for i in range(rep.order)) / rep.order


@pytest.mark.parametrize("rep", REPS, ids=lambda r: r.name)
def test_projectors_partition_identity(rep):
    ps = [np.asarray(isotypic_projector(rep, l), dtype=complex) for l in range(rep.group.num_irreps)]
    assert np.allclose(sum(ps), np.eye(rep.degree))
    for i, a in enumerate(ps):
        for j, b in enumerate(ps):
            assert np.allclose(a @ b, a if i == j else 0)


@pytest.mark.parametrize("rep", REPS, ids=lambda r: r.name)
def test_ranks_match_multiplicities(rep):
    dims = rep.group.character_table.dims
    for l, m, p in isotypic_decomposition(rep):
        assert np.linalg.matrix_rank(np.asarray(p, dtype=complex)) == m * dims[l]


@pytest.mark.parametrize("rep", REPS, ids=lambda r: r.name)
@pytest.mark.parametrize("flavor", ["complex", "real"])
def test_basis_is_orthonormal_and_blocks_repeat(rep, flavor):
    sab = symmetry_adapted_basis(rep, flavor)
    b = sab.vectors
    assert np.allclose(b.conj().T @ b, np.eye(rep.degree), atol=1e-9)
    x = averaged(rep, 7)
    bd = block_diagonalize(rep, x, sab)
    assert bd.off_block_mass < 1e-9
    assert np.allclose(bd.spectrum(), np.linalg.eigvalsh(x), atol=1e-8)


@given(st.integers(0, 10**6))
def test_spectrum_preserved_random(seed):
    rep = symmetric_group(4)
    x = averaged(rep, seed)
    bd = block_diagonalize(rep, x)
    assert np.allclose(bd.spectrum(), np.linalg.eigvalsh(x), atol=1e-8)


def test_block_sizes_are_multiplicities():
    rep = polynomial_representation(symmetric_group(3), 2)
    sab = symmetry_adapted_basis(rep)
    assert sorted(c.multiplicity for c in sab.components) == sorted(m for m in rep.multiplicities() if m)
    assert sum(c.multiplicity * c.dim for c in sab.components) == rep.degree


def test_c4_complex_diagonal():
    a, b, c, d = (Fraction(v) for v in (2, -1, 3, 5))
    x = exact_matrix([[a, b, c, d], [d, a, b, c], [c, d, a, b], [b, c, d, a]])
    bd = block_diagonalize(cyclic_group(4), x, symmetry_adapted_basis(cyclic_group(4)))
    got = sorted((complex(blk[0, 0]) for blk in bd.blocks), key=lambda z: (z.real, z.imag))
    want = sorted([a + b + c + d, a + 1j * b - c - 1j * d, a - b + c - d, a - 1j * b - c + 1j * d],
                  key=lambda z: (complex(z).real, complex(z).imag))
    assert np.allclose(got, [complex(w) for w in want])


def test_c4_real_block_trace():
    # the real block of the conjugate pair has trace 2(a - c)
    a, b, c, d = 2.0, -1.0, 3.0, 5.0
    x = np.array([[a, b, c, d], [d, a, b, c], [c, d, a, b], [b, c, d, a]])
    bd = block_diagonalize(cyclic_group(4), x, symmetry_adapted_basis(cyclic_group(4), "real"))
    two = [blk for blk in bd.blocks if blk.shape[0] == 2][0]
    assert abs(np.trace(two) - 2 * (a - c)) < 1e-12
    assert np.allclose(np.sort(np.linalg.eigvals(two).imag), sorted([-(b - d), b - d]))


def test_zonal_reconstruction():
    rep = dihedral_group(4, "vertices")
    sab = symmetry_adapted_basis(rep)
    x = averaged(rep, 3)
    bd = block_diagonalize(rep, x, sab)
    back = reconstruct_from_blocks(zonal_matrices(sab), bd.blocks)
    assert np.allclose(back, x)


def test_serre_projectors_exact_for_symmetric_group():
    rep = symmetric_group(3)
    for l in range(3):
        f = serre_projector(rep, l, 0, 0, unitary=False)
        assert f.dtype == object
        gens = adapted_generators(rep, l)
        assert len(gens) == rep.multiplicities()[l]


def test_json_round_trip(tmp_path):
    sab = symmetry_adapted_basis(cyclic_group(4), "real")
    back = SymmetryAdaptedBasis.from_json(sab.to_json())
    assert np.allclose(back.vectors, sab.vectors)
    assert [c.columns for c in back.components] == [c.columns for c in sab.components]


def test_non_commuting_matrix_rejected():
    x = np.diag([1.0, 2.0, 3.0])
    with pytest.raises(PreconditionError):
        block_diagonalize(symmetric_group(3), x)
