"""Degree principle for S_n-invariant polynomial optimisation.

A symmetric problem whose data have low degree attains its optimum on
points with at most r distinct coordinates.  Each orbit type
lambda = (l_1 >= ... >= l_k) gives a k-variable subproblem obtained by
repeating T_j exactly l_j times.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import Polynomial, variables
from .errors import PreconditionError
from .groups import partitions
from .invariants import is_symmetric

UNBOUNDED = -1e12


def _check_symmetric(polys: Sequence[Polynomial]):
    for k, p in enumerate(polys):
        if not is_symmetric(p):
            raise PreconditionError("objective is not symmetric" if k == 0 else f"constraint {k} is not symmetric")


def compute_r(f: Polynomial, constraints: Sequence[Polynomial] = ()) -> int:
    """max(2, floor(deg f / 2), deg g_1, ..., deg g_m)."""
    _check_symmetric([f, *constraints])
    return max([2, max(f.degree, 0) // 2] + [g.degree for g in constraints])


def enumerate_partitions(n: int, r: int, exact: bool = False) -> list[tuple[int, ...]]:
    """Partitions of n into at most r parts (exactly r with ``exact``)."""
    if not 1 <= r <= n:
        raise PreconditionError(f"need 1 <= r <= n, got r={r}, n={n}")
    out = [p for p in partitions(n) if (len(p) == r if exact else len(p) <= r)]
    return sorted(out, key=lambda p: (len(p), tuple(-v for v in p)))


@dataclass
class SubProblem:
    partition: tuple[int, ...]
    objective: Polynomial
    constraints: list[Polynomial]

    def expand(self, t: Sequence) -> list:
        """The n-point repeating t_j with multiplicity l_j."""
        return [v for v, l in zip(t, self.partition) for _ in range(l)]


def substitute_partition(f: Polynomial, lam: Sequence[int]) -> Polynomial:
    lam = tuple(int(v) for v in lam)
    if sum(lam) != f.nvars or any(v <= 0 for v in lam):
        raise PreconditionError(f"{lam} is not a partition of {f.nvars}")
    t = variables(len(lam))
    subs = [t[j] for j, l in enumerate(lam) for _ in range(l)]
    return f.compose(subs)


def subproblem(f: Polynomial, constraints: Sequence[Polynomial], lam: Sequence[int]) -> SubProblem:
    lam = tuple(lam)
    return SubProblem(lam, substitute_partition(f, lam), [substitute_partition(g, lam) for g in constraints])


@dataclass
class SubResult:
    partition: tuple[int, ...]
    value: float
    point: list[float]
    boundary: bool = False
    unbounded: bool = False


@dataclass
class DegreeResult:
    value: float
    partition: tuple[int, ...]
    point: list[float]
    r: int
    subresults: list[SubResult] = field(default_factory=list)
    unbounded: bool = False
    boundary: bool = False

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "partition": list(self.partition),
            "point": self.point,
            "r": self.r,
            "unbounded": self.unbounded,
            "boundary": self.boundary,
        }


def _feasible(cons, t, tol):
    return all(float(g.evaluate(t)) >= -tol for g in cons)


def minimize_subproblem(sub: SubProblem, box: float = 10.0, points: int = 41, tol: float = 1e-6,
                        rounds: int = 2000) -> SubResult | None:
    """Grid search followed by coordinate descent with step halving."""
    k = len(sub.partition)
    obj = sub.objective.to_float()
    cons = [g.to_float() for g in sub.constraints]
    axis = np.linspace(-box, box, points)
    grid = np.stack([g.ravel() for g in np.meshgrid(*([axis] * k), indexing="ij")], axis=1)
    vals = obj.evaluate_many(grid)
    if cons:
        ok = np.ones(len(grid), dtype=bool)
        for g in cons:
            ok &= g.evaluate_many(grid) >= -tol
        if not ok.any():
            return None
        vals = np.where(ok, vals, np.inf)
    i = int(np.argmin(vals))
    t = list(map(float, grid[i]))
    value = float(vals[i])
    step = 2 * box / (points - 1)
    for _ in range(rounds):
        improved = False
        for j in range(k):
            for sgn in (1.0, -1.0):
                cand = list(t)
                cand[j] = min(box, max(-box, cand[j] + sgn * step))
                if cons and not _feasible(cons, cand, tol):
                    continue
                v = float(obj.evaluate(cand))
                if v < value:
                    value, t, improved = v, cand, True
        if value < UNBOUNDED:
            return SubResult(sub.partition, value, t, unbounded=True)
        if not improved:
            step /= 2
            if step < 1e-10:
                break
    boundary = any(abs(abs(v) - box) < 1e-9 for v in t)
    return SubResult(sub.partition, value, t, boundary=boundary)


def sos_lower_bound(f: Polynomial, lo: float = -1e3, hi: float | None = None, tol: float = 1e-6) -> float | None:
    """Largest gamma (by bisection) with f - gamma certified SOS; None if none in range."""
    from .sos import gram_feasibility

    if hi is None:
        hi = float(f.to_float().evaluate([0.0] * f.nvars))

    def ok(gamma):
        from .algebra import rationalize

        return gram_feasibility(f - rationalize(gamma, 10**6)).status == "feasible"

    if not ok(lo):
        return None
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo


def minimize_all(f: Polynomial, constraints: Sequence[Polynomial] = (), box: float = 10.0, points: int = 41,
                 exact_r: bool = False, via: str = "grid") -> DegreeResult:
    """Minimum over all orbit-type subproblems."""
    constraints = list(constraints)
    n = f.nvars
    r = min(compute_r(f, constraints), n)
    results = []
    for lam in enumerate_partitions(n, r, exact_r):
        sub = subproblem(f, constraints, lam)
        res = minimize_subproblem(sub, box, points)
        if res is None:
            continue
        if via == "sos" and not constraints and sub.objective.degree <= 4:
            bound = sos_lower_bound(sub.objective, hi=res.value)
            if bound is not None:
                res = SubResult(lam, bound, res.point, res.boundary)
        elif via not in ("grid", "sos"):
            raise PreconditionError(f"unknown method {via!r}")
        results.append(res)
    if not results:
        raise PreconditionError("no feasible point found on any orbit type")
    best = min(results, key=lambda s: (s.value, s.partition))
    point = [v for v, l in zip(best.point, best.partition) for _ in range(l)]
    return DegreeResult(best.value, best.partition, point, r, results,
                        unbounded=any(s.unbounded for s in results), boundary=best.boundary)
