import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from symred.algebra import ldlt_psd_check, power_sum, variables
from symred.degree_principle import compute_r, enumerate_partitions, minimize_all, substitute_partition
from symred.errors import PreconditionError
from symred.fixtures import motzkin, nonreflection_s2
from symred.groups import partitions, symmetric_group
from symred.invariants import InvariantBasis
from symred.orbit_space import HilbertMap, check_j_identity, grid_minimize, j_matrix, moment_relaxation_qk, reformulate
from symred.sdp import parse_sdpa

from conftest import rational_points


@pytest.mark.parametrize("kind", ["elementary", "powersum"])
@pytest.mark.parametrize("n", [2, 3])
def test_j_identity(kind, n):
    basis = getattr(InvariantBasis, kind)(n)
    hm = HilbertMap(basis.polys, symmetric_group(n))
    assert check_j_identity(hm, j_matrix(hm))


def test_j_matrix_s2_elementary():
    hm = HilbertMap(InvariantBasis.elementary(2).polys, symmetric_group(2))
    j = j_matrix(hm)
    z1, z2 = variables(2)
    assert j[0, 0] == z1 * 0 + 2 and j[0, 1] == z1 and j[1, 1] == z1 ** 2 - z2 * 2


@given(rational_points(3))
@settings(max_examples=30)
def test_j_psd_on_image(x):
    hm = HilbertMap(InvariantBasis.powersum(3).polys, symmetric_group(3))
    j = j_matrix(hm)
    assert ldlt_psd_check(j.evaluate(hm(x))).psd
    assert np.allclose(np.asarray(j.evaluate(hm(x)), dtype=float), np.asarray(hm.differential_gram(x), dtype=float))


def test_j_detects_points_off_image():
    # z = (0, 1): x1 + x2 = 0, x1 x2 = 1 has no real solution
    hm = HilbertMap(InvariantBasis.elementary(2).polys, symmetric_group(2))
    prob = reformulate(hm, motzkin())
    assert not prob.is_feasible([0, 1])
    assert prob.is_feasible([0, -1])


def test_non_invariant_generator_rejected():
    x = variables(2)
    with pytest.raises(PreconditionError):
        HilbertMap([x[0]], symmetric_group(2))


def test_nonreflection_relation():
    rep, taus, rel = nonreflection_s2()
    assert rel.compose(taus).is_zero()
    hm = HilbertMap(taus, rep, [rel])
    assert hm.m == 4


def test_motzkin_orbit_minimum():
    hm = HilbertMap(InvariantBasis.elementary(2).polys, symmetric_group(2))
    res = grid_minimize(reformulate(hm, motzkin()), [(-3.0, 3.0), (-3.0, 3.0)])
    assert abs(res.value) < 1e-4


def test_qk_relaxation_blocks_and_round_trip():
    hm = HilbertMap(InvariantBasis.elementary(2).polys, symmetric_group(2))
    prob = reformulate(hm, motzkin())
    rel = moment_relaxation_qk(prob, 3)
    assert rel.blocks[0] == "moment" and rel.blocks[-1] == "J"
    text = rel.data.write()
    assert parse_sdpa(text).write() == text
    with pytest.raises(PreconditionError):
        moment_relaxation_qk(prob, 1)


def test_compute_r():
    assert compute_r(power_sum(4, 5) - power_sum(2, 5)) == 2
    assert compute_r(power_sum(6, 5)) == 3
    assert compute_r(power_sum(2, 5), [power_sum(4, 5)]) == 4


@pytest.mark.parametrize("n", range(2, 8))
def test_partition_count(n):
    for r in range(1, n + 1):
        parts = enumerate_partitions(n, r)
        assert len(parts) == sum(1 for p in partitions(n) if len(p) <= r)
        assert len(parts) <= math.comb(n + r, r)


def test_substitute_partition():
    f = power_sum(2, 4)
    t1, t2 = variables(2)
    assert substitute_partition(f, (3, 1)) == t1 ** 2 * 3 + t2 ** 2


@pytest.mark.parametrize("n", [3, 4, 5])
def test_degree_principle_minimum(n):
    f = power_sum(4, n) - power_sum(2, n)
    res = minimize_all(f)
    assert abs(res.value + n / 4) < 1e-6
    assert abs(float(f.to_float().evaluate(res.point)) - res.value) < 1e-9
    # brute force: no sampled point beats the reported minimum
    rng = np.random.default_rng(n)
    pts = rng.uniform(-1.5, 1.5, size=(4000, n))
    vals = np.sum(pts ** 4, axis=1) - np.sum(pts ** 2, axis=1)
    assert vals.min() >= res.value - 1e-9


def test_degree_principle_constrained():
    n = 3
    f = power_sum(1, n)
    g = Fraction(1) - power_sum(2, n)
    res = minimize_all(f, [g], box=2.0)
    assert abs(res.value + math.sqrt(3)) < 1e-4


def test_degree_needs_symmetric():
    x = variables(3)
    with pytest.raises(PreconditionError):
        minimize_all(x[0] ** 2)
