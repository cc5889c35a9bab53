"""Named polynomials and group actions used by demos and tests."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .algebra import Polynomial, variables
from .groups import GroupRepresentation, CyclicGroup, explicit_group


def motzkin() -> Polynomial:
    x, y = variables(2)
    return x**4 * y**2 + x**2 * y**4 - 3 * x**2 * y**2 + 1


def robinson() -> Polynomial:
    x, y, z = variables(3)
    return (x**6 + y**6 + z**6 - (x**4 * y**2 + x**2 * y**4 + x**4 * z**2 + x**2 * z**4 + y**4 * z**2 + y**2 * z**4)
            + 3 * x**2 * y**2 * z**2)


def choi_lam() -> Polynomial:
    x, y, z = variables(3)
    return x**4 * y**2 + y**4 * z**2 + z**4 * x**2 - 3 * x**2 * y**2 * z**2


def trivial_group(n: int) -> GroupRepresentation:
    """The one-element group acting on R^n."""
    return GroupRepresentation(CyclicGroup(1), n, perms=lambda k: tuple(range(n)), name="trivial")


def nonreflection_s2() -> tuple[GroupRepresentation, list[Polynomial], Polynomial]:
    """S_2 on R^3 by (x1, x2, x3) -> (x2, x1, -x3).

    Returns the action, the invariants tau_1..tau_4 and their relation
    in z_1..z_4.
    """
    swap = np.array([[0, 1, 0], [1, 0, 0], [0, 0, -1]], dtype=object)
    swap = np.vectorize(Fraction)(swap).astype(object)
    rep = explicit_group([swap])
    x1, x2, x3 = variables(3)
    taus = [x1 + x2, x1 * x2, x3**2, x3 * (x1 - x2)]
    z1, z2, z3, z4 = variables(4)
    relation = z1**2 * z3 - 4 * z2 * z3 - z4**2
    return rep, taus, relation
