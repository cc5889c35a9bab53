"""The fifteen end-to-end acceptance checks.

Each test runs the matching demo at full size, prints one PASS/FAIL line
(run with ``-s`` to see them, or ``symred demo --all``) and asserts it.
"""

import pytest

from symred.demos import (check_c4, check_degree, check_hmatrices, check_higher_specht, check_jmatrix,
                          check_motzkin, check_newton, check_orbit_motzkin, check_projectors, check_quadratics,
                          check_quartics, check_sage, check_sdpa, check_spectra, check_theta)

CRITERIA = [
    (1, lambda: check_theta(kmax=16)),
    (2, lambda: check_c4(samples=20)),
    (3, lambda: check_projectors(max_s=5, max_c=12, max_d=8, degree=3)),
    (4, lambda: check_spectra(samples=50)),
    (5, check_motzkin),
    (6, lambda: check_quadratics(samples=100)),
    (7, check_hmatrices),
    (8, check_higher_specht),
    (9, lambda: check_newton(nmax=6, kmax=6)),
    (10, lambda: check_jmatrix(samples=200)),
    (11, check_orbit_motzkin),
    (12, lambda: check_degree(nmin=3, nmax=6)),
    (13, check_sage),
    (14, lambda: check_quartics(samples=50)),
    (15, check_sdpa),
]

# read by the terminal summary hook in conftest
LINES: dict[int, str] = {}


@pytest.mark.parametrize("number,check", CRITERIA, ids=[f"criterion_{n:02d}" for n, _ in CRITERIA])
def test_criterion(number, check):
    result = check()
    assert result.criterion == number
    print()
    print(result.line())
    LINES[number] = result.line()
    for line in result.details:
        print("    " + line)
    assert result.passed, "\n".join([result.line(), *result.details])
