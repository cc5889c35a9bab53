"""Dense two-phase simplex with Bland's rule.

Runs in exact rational arithmetic when every datum is rational and in
floating point (with a small pivot tolerance) otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import as_scalar
from .errors import PreconditionError


@dataclass
class LPProblem:
    """``sense`` c.x subject to A_eq x = b_eq, A_ub x <= b_ub.

    ``nonneg[j]`` says whether variable j is constrained to be >= 0;
    other variables are free.
    """

    c: Sequence
    a_eq: Sequence[Sequence] = ()
    b_eq: Sequence = ()
    a_ub: Sequence[Sequence] = ()
    b_ub: Sequence = ()
    sense: str = "min"
    nonneg: Sequence[bool] | None = None
    names: list[str] = field(default_factory=list)

    @property
    def nvars(self) -> int:
        return len(self.c)

    @property
    def exact(self) -> bool:
        data = list(self.c) + list(self.b_eq) + list(self.b_ub)
        data += [v for r in self.a_eq for v in r] + [v for r in self.a_ub for v in r]
        return all(isinstance(as_scalar(v), Fraction) for v in data)


@dataclass
class LPResult:
    status: str  # "optimal", "infeasible", "unbounded"
    value: Fraction | float | None = None
    x: list | None = None
    duals: list | None = None  # multipliers of the equality then inequality rows
    exact: bool = True

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


def simplex_solve(lp: LPProblem, tol: float = 1e-10, max_iter: int = 100000) -> LPResult:
    """Solve an LP; see :class:`LPProblem`."""
    if lp.sense not in ("min", "max"):
        raise PreconditionError("sense must be 'min' or 'max'")
    n = lp.nvars
    exact = lp.exact
    conv = (lambda v: Fraction(as_scalar(v))) if exact else (lambda v: float(as_scalar(v).real if isinstance(as_scalar(v), complex) else as_scalar(v)))
    eps = 0 if exact else tol
    nonneg = list(lp.nonneg) if lp.nonneg is not None else [True] * n
    for r in list(lp.a_eq) + list(lp.a_ub):
        if len(r) != n:
            raise PreconditionError("constraint row has wrong length")

    # columns: split free variables, add slacks for <= rows
    colmap = []  # (original var, sign)
    for j in range(n):
        colmap.append((j, 1))
        if not nonneg[j]:
            colmap.append((j, -1))
    n_struct = len(colmap)
    rows = []
    rhs = []
    for r, b in zip(lp.a_eq, lp.b_eq):
        rows.append([conv(r[j]) * s for j, s in colmap])
        rhs.append(conv(b))
    n_eq = len(rows)
    for k, (r, b) in enumerate(zip(lp.a_ub, lp.b_ub)):
        rows.append([conv(r[j]) * s for j, s in colmap])
        rhs.append(conv(b))
    m = len(rows)
    n_slack = m - n_eq
    for i in range(m):
        rows[i] += [conv(1) if (i >= n_eq and i - n_eq == k) else conv(0) for k in range(n_slack)]
    row_sign = []
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
            row_sign.append(-1)
        else:
            row_sign.append(1)
    n_real = n_struct + n_slack
    # artificials
    for i in range(m):
        rows[i] += [conv(1) if k == i else conv(0) for k in range(m)]
    ncol = n_real + m
    tab = [rows[i] + [rhs[i]] for i in range(m)]
    basis = [n_real + i for i in range(m)]

    sign = 1 if lp.sense == "min" else -1
    cost = [sign * conv(lp.c[j]) * s for j, s in colmap] + [conv(0)] * n_slack

    def pivot(r, c):
        pv = tab[r][c]
        tab[r] = [v / pv for v in tab[r]]
        prow = tab[r]
        nz = [k for k, v in enumerate(prow) if v != 0]
        for i in range(m):
            if i != r:
                f = tab[i][c]
                if f != 0:
                    row = tab[i]
                    for k in nz:
                        row[k] -= f * prow[k]
        basis[r] = c

    def run(costs, allowed):
        for _ in range(max_iter):
            # reduced costs
            cb = [costs[b] for b in basis]
            enter = None
            for c in range(ncol):
                if not allowed(c) or c in basis:
                    continue
                red = costs[c] - sum(cb[i] * tab[i][c] for i in range(m) if tab[i][c] != 0)
                if red < -eps:
                    enter = c
                    break
            if enter is None:
                return "optimal"
            best = None
            for i in range(m):
                a = tab[i][enter]
                if a > eps:
                    ratio = tab[i][-1] / a
                    if best is None or ratio < best[0] - eps or (abs(ratio - best[0]) <= eps and basis[i] < basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                return "unbounded"
            pivot(best[1], enter)
        raise ArithmeticError("simplex iteration cap reached")

    phase1 = [conv(0)] * n_real + [conv(1)] * m
    run(phase1, lambda c: True)
    infeas = sum(tab[i][-1] for i in range(m) if basis[i] >= n_real)
    if infeas > (eps * 100 if not exact else 0):
        return LPResult("infeasible", exact=exact)
    # drive remaining artificials out of the basis
    for i in range(m):
        if basis[i] >= n_real:
            c = next((k for k in range(n_real) if abs(tab[i][k]) > eps), None)
            if c is not None:
                pivot(i, c)
    full_cost = cost + [conv(0)] * m
    status = run(full_cost, lambda c: c < n_real)
    if status == "unbounded":
        return LPResult("unbounded", exact=exact)
    xs = [conv(0)] * ncol
    for i, b in enumerate(basis):
        xs[b] = tab[i][-1]
    x = [conv(0)] * n
    for k, (j, s) in enumerate(colmap):
        x[j] += s * xs[k]
    value = sum(conv(lp.c[j]) * x[j] for j in range(n))
    # duals from the artificial columns: y = c_B B^{-1}
    cb = [full_cost[b] for b in basis]
    duals = []
    for i in range(m):
        y = sum(cb[r] * tab[r][n_real + i] for r in range(m))
        duals.append(sign * row_sign[i] * y)
    return LPResult("optimal", value, x, duals, exact)
