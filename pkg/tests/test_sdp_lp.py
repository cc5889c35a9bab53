import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from symred.algebra import exact_matrix
from symred.errors import PreconditionError
from symred.groups import cyclic_group, dihedral_group, symmetric_group
from symred.lp import LPProblem, simplex_solve
from symred.sdp import (SDPAData, SDPProblem, check_invariance, cycle_edges, export_sdpa, independence_number,
                        invariant_matrix_basis, parse_sdpa, read_sdpa, reduce_sdp, solve_sdp, theta_cycle_closed_form,
                        theta_cyclic_lp, theta_sdp, to_sdpa)


def test_simplex_small_exact():
    # max x + y, x + 2y <= 4, 3x + y <= 6
    res = simplex_solve(LPProblem([1, 1], a_ub=[[1, 2], [3, 1]], b_ub=[4, 6], sense="max"))
    assert res.optimal and res.value == Fraction(14, 5) and res.x == [Fraction(8, 5), Fraction(6, 5)]


def test_simplex_infeasible_and_unbounded():
    assert simplex_solve(LPProblem([1], a_eq=[[1]], b_eq=[-1])).status == "infeasible"
    assert simplex_solve(LPProblem([1], sense="max")).status == "unbounded"


@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3), st.integers(0, 10**6))
def test_simplex_against_scipy(c, seed):
    from scipy.optimize import linprog

    rng = np.random.default_rng(seed)
    a = rng.integers(0, 4, size=(3, 3))
    b = rng.integers(1, 6, size=3)
    res = simplex_solve(LPProblem([Fraction(v) for v in c], a_ub=a.tolist(), b_ub=b.tolist()))
    ref = linprog(c, A_ub=a, b_ub=b, bounds=[(0, None)] * 3)
    if ref.status == 0:
        assert res.optimal and abs(float(res.value) - ref.fun) < 1e-8
    elif ref.status == 3:
        assert res.status == "unbounded"


@pytest.mark.parametrize("k", range(3, 17))
def test_theta_cycle_closed_form(k):
    res = simplex_solve(theta_cyclic_lp(k))
    assert abs(float(res.value) - theta_cycle_closed_form(k)) < 1e-6


def test_theta_c7_value():
    # k cos(pi/k) / (1 + cos(pi/k)) at k = 7
    want = 7 * math.cos(math.pi / 7) / (1 + math.cos(math.pi / 7))
    assert abs(float(simplex_solve(theta_cyclic_lp(7)).value) - want) < 1e-9
    assert abs(want - 3.3176672) < 1e-7


def test_theta_sandwich():
    # alpha <= theta for cycles
    for k in (5, 6, 7):
        alpha = independence_number(cycle_edges(k), k)
        assert alpha <= theta_cycle_closed_form(k) + 1e-9


@pytest.mark.parametrize("k", [5, 6, 8])
def test_theta_sdp_reduction(k):
    sdp = theta_sdp(cycle_edges(k), k)
    assert sdp.group is not None and check_invariance(sdp).invariant
    red = reduce_sdp(sdp)
    assert red.is_lp
    sol = red.solve()
    assert abs(float(sol.value) - theta_cycle_closed_form(k)) < 1e-8
    assert sdp.is_feasible(sol.x, 1e-8)


def test_solve_sdp_dispatch():
    sol = solve_sdp(theta_sdp(cycle_edges(6), 6))
    assert abs(float(sol.value) - 3) < 1e-9


def test_invariance_detects_broken_symmetry():
    sdp = theta_sdp(cycle_edges(5), 5)
    bad = SDPProblem(sdp.objective, sdp.constraints[:-1], "max", cyclic_group(5))
    assert not check_invariance(bad).invariant


def test_invariant_matrix_basis_dimension():
    # S_n on R^n: span{I, J}
    assert len(invariant_matrix_basis(symmetric_group(4), 4)) == 2
    assert len(invariant_matrix_basis(cyclic_group(6), 6)) == 4


@pytest.mark.parametrize("k", [5, 7])
def test_sdpa_round_trip(k, tmp_path):
    sdp = theta_sdp(cycle_edges(k), k).with_group(dihedral_group(k, "vertices"))
    for problem in (sdp, reduce_sdp(sdp)):
        text = export_sdpa(problem, tmp_path / "p.dat-s")
        again = read_sdpa(tmp_path / "p.dat-s")
        assert again.write() == text
        assert parse_sdpa(again.write()).write() == text


def test_sdpa_header_and_sign():
    sdp = SDPProblem(exact_matrix([[1, 0], [0, 2]]), [(exact_matrix([[1, 0], [0, 1]]), Fraction(1))], "min")
    data = to_sdpa(sdp)
    assert data.block_struct == [2] and data.c == [1.0]
    # minimisation flips F0
    assert (0, 1, 1, 1, -1.0) in data.entries
    back = data.to_sdp()
    assert back.dim == 2


def test_sdpa_parse_errors():
    with pytest.raises(PreconditionError):
        parse_sdpa("1\n1\n2\n")
    assert isinstance(parse_sdpa('"comment"\n1\n1\n{2}\n{1.0}\n1 1 1 1 1.0\n'), SDPAData)
