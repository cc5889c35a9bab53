"""Invariant semidefinite programs and their block reduction.

An SDP here is

    optimise <C, X>  subject to  <A_i, X> = b_i,  X psd,

with ``<A, X> = trace(A X)`` for symmetric ``A``.  A group acts on
``X`` by ``X^g = M(g) X M(g)^T``.  When the objective is fixed by the
group and the constraint set is permuted by it, the optimum may be
sought among invariant matrices, and those are block diagonal in a
symmetry-adapted basis: one Hermitian block ``N_l`` of size ``m_l`` per
isotypic component.  The reduced constraint data are

    A_l[u, v] = sum_h conj(e[u][h])^T A e[v][h],

so that ``<A, X> = sum_l Re trace(A_l N_l)``.  Complex conjugate pairs
of irreducibles are tied together (the block for the conjugate label is
the conjugate of the other), which gives their data a weight of two.

There is no interior-point solver.  Reduced problems whose blocks are
all ``1 x 1`` are linear programs and go to the exact simplex solver;
invariant problems whose feasible set has at most two free parameters
are solved by bisection with exact-or-float psd tests; everything else
is written out in SDPA sparse format.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .algebra import (
    as_scalar,
    exact_matrix,
    matrix_is_exact,
    matrix_to_json,
    matrix_from_json,
    scalar_from_json,
    scalar_to_json,
    solve_exact,
    sym_eigenvalues,
    to_float_matrix,
)
from .errors import PreconditionError, UnsupportedError
from .groups import GroupRepresentation, cyclic_group
from .lp import LPProblem, LPResult, simplex_solve
from .symmetry_adapted import SymmetryAdaptedBasis, symmetry_adapted_basis

# ---------------------------------------------------------------------------
# problems


def _as_matrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=object) if not isinstance(m, np.ndarray) else m
    if matrix_is_exact(m):
        return exact_matrix(m)
    return np.asarray(to_float_matrix(m), dtype=float)


def _is_symmetric(m: np.ndarray, tol: float = 1e-12) -> bool:
    if m.dtype == object:
        return bool((m == m.T).all())
    return bool(np.max(np.abs(m - m.T), initial=0.0) <= tol)


def _inner(a: np.ndarray, x: np.ndarray):
    """``trace(a x)`` for symmetric ``a``; exact when both are exact."""
    if a.dtype == object and x.dtype == object:
        return sum((a * x).ravel(), Fraction(0))
    return float(np.sum(np.asarray(a, dtype=float) * np.asarray(x, dtype=float)))


@dataclass
class SDPProblem:
    """``sense <C, X>`` subject to ``<A_i, X> = b_i`` and ``X`` psd."""

    objective: np.ndarray
    constraints: list[tuple[np.ndarray, object]]
    sense: str = "max"
    group: GroupRepresentation | None = None
    name: str = ""

    def __post_init__(self):
        self.objective = _as_matrix(self.objective)
        self.constraints = [(_as_matrix(a), as_scalar(b)) for a, b in self.constraints]
        n = self.objective.shape[0]
        if self.objective.shape != (n, n):
            raise PreconditionError("objective must be square")
        for k, (a, _) in enumerate(self.constraints):
            if a.shape != (n, n):
                raise PreconditionError(f"constraint {k} has shape {a.shape}, expected {(n, n)}")
            if not _is_symmetric(a):
                raise PreconditionError(f"constraint {k} is not symmetric")
        if not _is_symmetric(self.objective):
            raise PreconditionError("objective is not symmetric")
        if self.sense not in ("min", "max"):
            raise PreconditionError("sense must be 'min' or 'max'")
        if self.group is not None and self.group.degree != n:
            raise PreconditionError("group degree does not match the matrix size")

    @property
    def dim(self) -> int:
        return self.objective.shape[0]

    @property
    def exact(self) -> bool:
        return self.objective.dtype == object and all(a.dtype == object for a, _ in self.constraints) \
            and all(isinstance(b, Fraction) for _, b in self.constraints)

    def objective_value(self, x):
        return _inner(self.objective, _as_matrix(x))

    def residuals(self, x) -> list:
        xm = _as_matrix(x)
        return [_inner(a, xm) - b for a, b in self.constraints]

    def is_feasible(self, x, tol: float = 1e-9) -> bool:
        xm = _as_matrix(x)
        if any(abs(r) > tol for r in self.residuals(xm)):
            return False
        return min(sym_eigenvalues(np.asarray(xm, dtype=float))) >= -tol

    def with_group(self, group: GroupRepresentation) -> "SDPProblem":
        return SDPProblem(self.objective, self.constraints, self.sense, group, self.name)

    def to_json(self) -> dict:
        return {
            "sense": self.sense,
            "objective": matrix_to_json(self.objective),
            "constraints": [{"A": matrix_to_json(a), "b": scalar_to_json(b)} for a, b in self.constraints],
        }

    @classmethod
    def from_json(cls, data: dict, group: GroupRepresentation | None = None) -> "SDPProblem":
        try:
            cons = [(matrix_from_json(c["A"]), scalar_from_json(c["b"])) for c in data["constraints"]]
            return cls(matrix_from_json(data["objective"]), cons, data.get("sense", "max"), group, data.get("name", ""))
        except (KeyError, TypeError) as exc:
            raise PreconditionError(f"malformed SDP description: {exc}") from exc


def _transform(m: np.ndarray, a: np.ndarray) -> np.ndarray:
    if m.dtype != object and a.dtype == object and matrix_is_exact(m):
        m = exact_matrix(m)
    if a.dtype == object and m.dtype == object:
        return m.dot(a).dot(m.T)
    return np.asarray(m, dtype=float) @ np.asarray(a, dtype=float) @ np.asarray(m, dtype=float).T


def group_action(rep: GroupRepresentation, i: int, x) -> np.ndarray:
    """``X^g = M(g) X M(g)^T`` for the element with index ``i``."""
    return _transform(np.asarray(rep.action_matrix(i)), _as_matrix(x))


def average_invariant(sdp: SDPProblem, x) -> np.ndarray:
    """Group average ``(1/|G|) sum_g X^g``."""
    rep = sdp.group
    if rep is None:
        raise PreconditionError("no group attached to the SDP")
    xm = _as_matrix(x)
    exact = xm.dtype == object and rep.is_exact
    acc = None
    for i in range(rep.order):
        t = group_action(rep, i, xm)
        acc = t if acc is None else acc + t
    if exact:
        return acc * Fraction(1, rep.order)
    return np.asarray(acc, dtype=float) / rep.order


def _canonical(a: np.ndarray, b, tol: float):
    """Scale ``(A, b)`` so that its first nonzero entry is one."""
    flat = list(a.ravel()) + [b]
    for v in flat:
        if (v != 0) if isinstance(v, Fraction) else abs(v) > tol:
            return [w / v for w in flat]
    return [0 * w for w in flat]


def _same(u: list, v: list, tol: float) -> bool:
    if all(isinstance(x, Fraction) for x in u + v):
        return u == v
    return max(abs(float(x) - float(y)) for x, y in zip(u, v)) <= tol


@dataclass
class InvarianceReport:
    invariant: bool
    generator: int | None = None
    constraint: int | None = None  # None with a generator means the objective
    message: str = ""


def check_invariance(sdp: SDPProblem, tol: float = 1e-9) -> InvarianceReport:
    """Objective fixed and constraint list permuted (after scaling) by every generator."""
    rep = sdp.group
    if rep is None:
        raise PreconditionError("no group attached to the SDP")
    canon = [_canonical(a, b, tol) for a, b in sdp.constraints]
    for g in rep.generators:
        c2 = group_action(rep, g, sdp.objective)
        if not _same(list(c2.ravel()), list(sdp.objective.ravel()), tol):
            return InvarianceReport(False, g, None, f"objective is not fixed by generator {g}")
        for k, (a, b) in enumerate(sdp.constraints):
            img = _canonical(group_action(rep, g, a), b, tol)
            if not any(_same(img, c, tol) for c in canon):
                return InvarianceReport(False, g, k, f"image of constraint {k} under generator {g} is not a constraint")
    return InvarianceReport(True)


# ---------------------------------------------------------------------------
# reduction


def _snap(v: complex, tol: float = 1e-11) -> complex:
    """Round tiny parts to zero and near-rationals (denominator <= 64) exactly."""
    out = []
    for part in (v.real, v.imag):
        if abs(part) < tol:
            out.append(0.0)
            continue
        q = Fraction(part).limit_denominator(64)
        out.append(float(q) if abs(float(q) - part) < tol else part)
    return complex(out[0], out[1])


@dataclass
class ReducedBlock:
    """One block ``N`` of the reduced problem."""

    component: int  # index into the symmetry-adapted basis components
    size: int
    weight: int  # 2 for a block standing for a conjugate pair
    objective: np.ndarray  # Hermitian, weight already applied
    constraints: list[np.ndarray]  # one Hermitian matrix per kept row, weight applied
    name: str = ""

    @property
    def real(self) -> bool:
        mats = [self.objective] + self.constraints
        return all(np.max(np.abs(np.imag(m)), initial=0.0) == 0 for m in mats)


@dataclass
class ReducedSDP:
    """The block form of an invariant SDP.

    ``rows`` maps each kept reduced constraint to the original indices
    that collapsed onto it; duplicate rows after reduction are merged.
    """

    sense: str
    blocks: list[ReducedBlock]
    rhs: list
    rows: list[list[int]]
    basis: SymmetryAdaptedBasis
    original: SDPProblem
    tied: dict[int, int] = field(default_factory=dict)  # dropped component -> kept partner

    @property
    def block_sizes(self) -> list[int]:
        return [b.size for b in self.blocks]

    @property
    def is_lp(self) -> bool:
        return all(b.size == 1 for b in self.blocks)

    def objective_value(self, blocks: Sequence) -> float:
        return sum(float(np.real(np.trace(b.objective @ np.asarray(n)))) for b, n in zip(self.blocks, blocks))

    def reconstruct(self, blocks: Sequence) -> np.ndarray:
        """Original matrix ``X = sum_l sum_uv N_l[u, v] sum_h e[u][h] e[v][h]^*``, tied pairs added back."""
        sab = self.basis
        n = sab.dim
        x = np.zeros((n, n), dtype=complex)
        for blk, nmat in zip(self.blocks, blocks):
            comp = sab.components[blk.component]
            nmat = np.atleast_2d(np.asarray(nmat, dtype=complex))
            part = np.zeros((n, n), dtype=complex)
            for h in range(comp.dim):
                e = np.array([sab.vectors[:, comp.columns[u][h]] for u in range(comp.multiplicity)])
                part += e.T @ nmat @ e.conj()
            x += part
            if blk.weight == 2:
                x += part.conj()
        return np.real(x) if np.max(np.abs(x.imag), initial=0.0) < 1e-9 else x

    def to_lp(self) -> LPProblem:
        """The reduced problem as an LP; requires all blocks to be ``1 x 1``."""
        if not self.is_lp:
            raise UnsupportedError("reduced problem has blocks larger than 1x1")
        c = [_real_scalar(b.objective[0, 0]) for b in self.blocks]
        rows = [[_real_scalar(b.constraints[k][0, 0]) for b in self.blocks] for k in range(len(self.rhs))]
        return LPProblem(c, rows, list(self.rhs), sense=self.sense,
                         names=[b.name for b in self.blocks])

    def solve(self) -> "SDPSolution":
        if not self.is_lp:
            raise UnsupportedError("only reduced problems with 1x1 blocks are solved; export the rest")
        res = simplex_solve(self.to_lp())
        if not res.optimal:
            return SDPSolution(res.status, None, None, method="reduced-lp", lp=res)
        blocks = [np.array([[complex(float(v))]]) for v in res.x]
        return SDPSolution("optimal", res.value, self.reconstruct(blocks), method="reduced-lp", lp=res,
                           blocks=[float(v) for v in res.x])


def _real_scalar(v):
    v = _snap(complex(v))
    if v.imag != 0:
        raise ArithmeticError("1x1 block data must be real")
    q = Fraction(v.real).limit_denominator(64)
    return q if float(q) == v.real else v.real


def reduce_sdp(sdp: SDPProblem, tol: float = 1e-9) -> ReducedSDP:
    """Block form of an invariant SDP; see the module docstring."""
    rep = sdp.group
    if rep is None:
        raise PreconditionError("no group attached to the SDP")
    rep_check = check_invariance(sdp, tol)
    if not rep_check.invariant:
        raise PreconditionError("SDP is not invariant: " + rep_check.message)
    sab = symmetry_adapted_basis(rep, "complex", tol)
    g = rep.group
    conj = g.conjugate_irrep
    comp_of_irrep = {c.irreps[0]: k for k, c in enumerate(sab.components)}
    b_vecs = sab.vectors.astype(complex)
    tied: dict[int, int] = {}
    kept: list[tuple[int, int]] = []
    for k, comp in enumerate(sab.components):
        l = comp.irreps[0]
        partner = conj[l]
        if partner == l:
            kept.append((k, 1))
        elif partner > l:
            kept.append((k, 2))
        else:
            tied[k] = comp_of_irrep[partner]

    mats = [np.asarray(to_float_matrix(sdp.objective), dtype=float)]
    mats += [np.asarray(to_float_matrix(a), dtype=float) for a, _ in sdp.constraints]
    reduced = []  # per kept block, per matrix
    for k, w in kept:
        comp = sab.components[k]
        m = comp.multiplicity
        per = []
        for a in mats:
            out = np.zeros((m, m), dtype=complex)
            for h in range(comp.dim):
                e = np.array([b_vecs[:, comp.columns[u][h]] for u in range(m)])  # m x n
                out += e.conj() @ a @ e.T
            out = w * out
            per.append(np.vectorize(_snap)(out) if out.size else out)
        reduced.append(per)

    # merge rows that became identical, drop empty ones
    rows: list[list[int]] = []
    rhs: list = []
    row_data: list[list[complex]] = []
    for i, (_, b) in enumerate(sdp.constraints):
        vec = [complex(v) for per in reduced for v in per[i + 1].ravel()]
        if max((abs(v) for v in vec), default=0.0) <= tol:
            if abs(complex(b)) > tol:
                raise PreconditionError(f"constraint {i} reduces to 0 = {b}; the SDP is infeasible")
            continue
        merged = False
        for r, (other, ob) in enumerate(zip(row_data, rhs)):
            piv = next(j for j, v in enumerate(other) if abs(v) > tol)
            s = vec[piv] / other[piv]
            if max(abs(v - s * o) for v, o in zip(vec, other)) <= tol * max(1.0, max(abs(v) for v in vec)):
                if abs(complex(b) - s * complex(ob)) > tol * max(1.0, abs(complex(b))):
                    raise PreconditionError(f"constraint {i} contradicts constraint {rows[r][0]} after reduction")
                rows[r].append(i)
                merged = True
                break
        if not merged:
            rows.append([i])
            rhs.append(b)
            row_data.append(vec)

    blocks = []
    for (k, w), per in zip(kept, reduced):
        comp = sab.components[k]
        blocks.append(ReducedBlock(
            component=k,
            size=comp.multiplicity,
            weight=w,
            objective=per[0],
            constraints=[per[r[0] + 1] for r in rows],
            name=sab.names[k] + (f"+{sab.names[tied_k]}" if (tied_k := _partner_of(k, tied)) is not None else ""),
        ))
    return ReducedSDP(sdp.sense, blocks, rhs, rows, sab, sdp, tied)


def _partner_of(k: int, tied: dict[int, int]):
    for dropped, keep in tied.items():
        if keep == k:
            return dropped
    return None


# ---------------------------------------------------------------------------
# small invariant problems solved directly


@dataclass
class SDPSolution:
    status: str  # "optimal", "infeasible", "unbounded"
    value: object
    x: np.ndarray | None
    method: str = ""
    lp: LPResult | None = None
    blocks: list | None = None
    params: list | None = None


def invariant_matrix_basis(rep: GroupRepresentation, n: int) -> list[np.ndarray]:
    """Basis of symmetric matrices fixed by ``X -> M(g) X M(g)^T``.

    Permutation actions use orbit sums of matrix units (exact); other
    actions average matrix units and keep an independent subset.
    """
    if rep.is_permutation:
        seen = set()
        out = []
        for i in range(n):
            for j in range(i, n):
                if (i, j) in seen:
                    continue
                orbit = set()
                for gi in range(rep.order):
                    p = rep.perm(gi)
                    a, b = sorted((p[i], p[j]))
                    orbit.add((a, b))
                seen |= orbit
                m = exact_matrix(np.zeros((n, n), dtype=int))
                for a, b in orbit:
                    m[a, b] = Fraction(1)
                    m[b, a] = Fraction(1)
                out.append(m)
        return out
    cands = []
    dummy = SDPProblem(np.zeros((n, n)), [], "max", rep)
    for i in range(n):
        for j in range(i, n):
            e = np.zeros((n, n))
            e[i, j] = e[j, i] = 1.0
            cands.append(average_invariant(dummy, e))
    out = []
    stack = np.zeros((0, n * n))
    for c in cands:
        trial = np.vstack([stack, c.ravel()])
        if np.linalg.matrix_rank(trial, tol=1e-9) > stack.shape[0]:
            stack = trial
            out.append(c)
    return out


def _lam_min(m: np.ndarray) -> float:
    return float(min(sym_eigenvalues(np.asarray(m, dtype=float))))


def solve_invariant_small(sdp: SDPProblem, tol: float = 1e-11, bound: float = 1e6) -> SDPSolution:
    """Optimise over invariant feasible matrices when they form a family of <= 2 parameters.

    The affine family ``X(t) = X0 + sum_k t_k Z_k`` is found exactly;
    the psd region is convex and the objective linear, so the optimum
    is located by bisection on the level of the objective.
    """
    rep = sdp.group
    if rep is None:
        raise PreconditionError("no group attached to the SDP")
    n = sdp.dim
    basis = invariant_matrix_basis(rep, n)
    exact = sdp.exact and all(b.dtype == object for b in basis)
    if exact:
        rows = [[_inner(a, bm) for bm in basis] for a, _ in sdp.constraints]
        sol = solve_exact(rows, [b for _, b in sdp.constraints]) if rows else None
        if rows and sol is None:
            return SDPSolution("infeasible", None, None, method="invariant-family")
        if not rows:
            part = [Fraction(0)] * len(basis)
            null = [[Fraction(int(i == k)) for i in range(len(basis))] for k in range(len(basis))]
        else:
            part, null = sol.particular, sol.nullspace
        x0 = sum((c * bm for c, bm in zip(part, basis)), exact_matrix(np.zeros((n, n), dtype=int)))
        dirs = [sum((c * bm for c, bm in zip(v, basis)), exact_matrix(np.zeros((n, n), dtype=int))) for v in null]
    else:
        fb = [np.asarray(to_float_matrix(bm), dtype=float) for bm in basis]
        a_mat = np.array([[_inner(np.asarray(to_float_matrix(a), dtype=float), bm) for bm in fb] for a, _ in sdp.constraints])
        bvec = np.array([float(b) for _, b in sdp.constraints])
        part_f, *_ = np.linalg.lstsq(a_mat, bvec, rcond=None)
        if np.max(np.abs(a_mat @ part_f - bvec), initial=0.0) > 1e-9:
            return SDPSolution("infeasible", None, None, method="invariant-family")
        _, s, vt = np.linalg.svd(a_mat)
        rank = int(np.sum(s > 1e-10))
        null_f = vt[rank:]
        x0 = sum(c * bm for c, bm in zip(part_f, fb))
        dirs = [sum(c * bm for c, bm in zip(v, fb)) for v in null_f]
    k = len(dirs)
    if k > 2:
        raise UnsupportedError(f"invariant family has {k} free parameters; only <= 2 are handled")
    sign = 1.0 if sdp.sense == "max" else -1.0
    c0 = float(_inner(sdp.objective, x0))
    cd = [float(_inner(sdp.objective, d)) for d in dirs]
    x0f = np.asarray(to_float_matrix(x0), dtype=float)
    df = [np.asarray(to_float_matrix(d), dtype=float) for d in dirs]

    def mat(t):
        return x0f + sum(ti * d for ti, d in zip(t, df))

    if k == 0:
        if _lam_min(x0f) < -1e-9:
            return SDPSolution("infeasible", None, None, method="invariant-family")
        return SDPSolution("optimal", _inner(sdp.objective, x0), x0, "invariant-family", params=[])

    # rotate so that the objective is the first coordinate
    dvec = np.array(cd)
    if np.linalg.norm(dvec) > 1e-14:
        u1 = sign * dvec / np.linalg.norm(dvec)
    else:
        u1 = np.eye(k)[0]
    u2 = np.array([-u1[1], u1[0]]) if k == 2 else None

    def inner_best(s):
        """``max_r lam_min(X(s u1 + r u2))`` and the maximiser."""
        if u2 is None:
            return _lam_min(mat(s * u1)), s * u1
        res = minimize_scalar(lambda r: -_lam_min(mat(s * u1 + r * u2)), bounds=(-bound, bound),
                              method="bounded", options={"xatol": 1e-12})
        r = _refine_max(lambda r: _lam_min(mat(s * u1 + r * u2)), res.x, bound)
        return _lam_min(mat(s * u1 + r * u2)), s * u1 + r * u2

    # a feasible starting point: maximise lam_min along u1 as well
    res = minimize_scalar(lambda s: -inner_best(s)[0], bounds=(-bound, bound), method="bounded",
                          options={"xatol": 1e-12})
    s0 = _refine_max(lambda s: inner_best(s)[0], res.x, bound)
    lam0, t0 = inner_best(s0)
    if lam0 < -1e-9:
        return SDPSolution("infeasible", None, None, method="invariant-family")
    if np.linalg.norm(dvec) <= 1e-14:
        x = mat(t0)
        return SDPSolution("optimal", c0, x, "invariant-family", params=list(t0))
    lo, hi = s0, s0 + 1.0
    while inner_best(hi)[0] >= -tol:
        lo, hi = hi, s0 + 2 * (hi - s0)
        if hi - s0 > bound:
            return SDPSolution("unbounded", None, None, method="invariant-family")
    while hi - lo > 1e-12 * max(1.0, abs(lo)):
        mid = 0.5 * (lo + hi)
        if inner_best(mid)[0] >= -tol:
            lo = mid
        else:
            hi = mid
    _, t = inner_best(lo)
    x = mat(t)
    return SDPSolution("optimal", float(np.sum(np.asarray(to_float_matrix(sdp.objective), dtype=float) * x)),
                       x, "invariant-family", params=list(t))


def _refine_max(fn, x0: float, bound: float) -> float:
    """Golden-section polish of a concave maximiser around ``x0``."""
    step = max(1.0, abs(x0)) * 1e-3
    a, b = x0 - step, x0 + step
    while fn(a) > fn(x0) and a > -bound:
        a -= 2 * step
        step *= 2
    step = max(1.0, abs(x0)) * 1e-3
    while fn(b) > fn(x0) and b < bound:
        b += 2 * step
        step *= 2
    res = minimize_scalar(lambda r: -fn(r), bounds=(a, b), method="bounded", options={"xatol": 1e-13})
    return float(res.x)


def solve_sdp(sdp: SDPProblem) -> SDPSolution:
    """Reduce and run the simplex when blocks are 1x1, else try the small-family method."""
    if sdp.group is not None:
        red = reduce_sdp(sdp)
        if red.is_lp:
            return red.solve()
        return solve_invariant_small(sdp)
    raise UnsupportedError("attach a group or export the problem in SDPA format")


# ---------------------------------------------------------------------------
# theta numbers


def _normalise_edges(edges: Sequence[Sequence[int]], n: int) -> list[tuple[int, int]]:
    out = set()
    for e in edges:
        i, j = int(e[0]), int(e[1])
        if i == j:
            raise PreconditionError(f"self-loop at vertex {i}")
        if not (0 <= i < n and 0 <= j < n):
            raise PreconditionError(f"edge {(i, j)} out of range for {n} vertices")
        out.add((min(i, j), max(i, j)))
    return sorted(out)


def cycle_edges(n: int) -> list[tuple[int, int]]:
    return [(i, (i + 1) % n) for i in range(n)]


def is_circulant(edges: Sequence[tuple[int, int]], n: int) -> bool:
    es = set(edges)
    return all((min((i + 1) % n, (j + 1) % n), max((i + 1) % n, (j + 1) % n)) in es for i, j in es)


def theta_sdp(edges: Sequence[Sequence[int]], n: int) -> SDPProblem:
    """Lovasz theta: maximise sum B_ij with trace B = 1, B_ij = 0 on edges, B psd.

    Circulant graphs get the cyclic shift attached as their group.
    """
    if n < 1:
        raise PreconditionError("need at least one vertex")
    es = _normalise_edges(edges, n)
    one = Fraction(1)
    objective = exact_matrix(np.ones((n, n), dtype=int))
    cons = [(exact_matrix(np.eye(n, dtype=int)), one)]
    for i, j in es:
        a = exact_matrix(np.zeros((n, n), dtype=int))
        a[i, j] = a[j, i] = Fraction(1, 2)
        cons.append((a, Fraction(0)))
    group = cyclic_group(n) if is_circulant(es, n) else None
    return SDPProblem(objective, cons, "max", group, name=f"theta({n} vertices, {len(es)} edges)")


def exact_cos_2pi(j: int, n: int):
    """``cos(2 pi j / n)`` as a Fraction when rational, else a float."""
    q = Fraction(j, n) % 1
    table = {Fraction(0): 1, Fraction(1, 2): -1, Fraction(1, 4): 0, Fraction(3, 4): 0,
             Fraction(1, 6): Fraction(1, 2), Fraction(5, 6): Fraction(1, 2),
             Fraction(1, 3): Fraction(-1, 2), Fraction(2, 3): Fraction(-1, 2)}
    if q in table:
        return Fraction(table[q])
    return math.cos(2 * math.pi * j / n)


def theta_cyclic_lp(n: int) -> LPProblem:
    """Linear program for theta of the n-cycle over x_0..x_{n//2} >= 0:
    maximise n x_0 with sum x_j = 1 and sum x_j cos(2 pi j / n) = 0."""
    if n < 3:
        raise PreconditionError("the cycle needs at least 3 vertices")
    k = n // 2 + 1
    return LPProblem(
        c=[Fraction(n)] + [Fraction(0)] * (k - 1),
        a_eq=[[Fraction(1)] * k, [exact_cos_2pi(j, n) for j in range(k)]],
        b_eq=[Fraction(1), Fraction(0)],
        sense="max",
        names=[f"x{j}" for j in range(k)],
    )


def theta_cycle_closed_form(k: int) -> float:
    if k % 2 == 0:
        return k / 2
    c = math.cos(math.pi / k)
    return k * c / (1 + c)


def independence_number(edges: Sequence[Sequence[int]], n: int) -> int:
    """Brute force over vertex subsets, largest first."""
    if n > 20:
        raise PreconditionError("brute-force independence number limited to 20 vertices")
    es = _normalise_edges(edges, n)
    adj = [0] * n
    for i, j in es:
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    for size in range(n, 0, -1):
        for sub in combinations(range(n), size):
            mask = sum(1 << v for v in sub)
            if all(not (adj[v] & mask) for v in sub):
                return size
    return 0


# ---------------------------------------------------------------------------
# SDPA sparse format


@dataclass
class SDPAData:
    """Dual-form SDPA data: maximise <F0, Y> s.t. <F_i, Y> = c_i, Y psd.

    ``entries`` holds ``(matno, block, i, j, value)`` with 1-based
    ``i <= j``; negative block sizes denote diagonal blocks.
    """

    c: list[float]
    block_struct: list[int]
    entries: list[tuple[int, int, int, int, float]]

    @property
    def m(self) -> int:
        return len(self.c)

    def write(self) -> str:
        lines = [str(self.m), str(len(self.block_struct)), " ".join(str(s) for s in self.block_struct),
                 " ".join(repr(float(v)) for v in self.c)]
        for mat, blk, i, j, v in sorted(self.entries):
            lines.append(f"{mat} {blk} {i} {j} {float(v)!r}")
        return "\n".join(lines) + "\n"

    def block_matrices(self) -> list[list[np.ndarray]]:
        """``out[matno][block]`` as dense symmetric arrays."""
        out = [[np.zeros((abs(s), abs(s))) for s in self.block_struct] for _ in range(self.m + 1)]
        for mat, blk, i, j, v in self.entries:
            out[mat][blk - 1][i - 1, j - 1] = v
            out[mat][blk - 1][j - 1, i - 1] = v
        return out

    def to_sdp(self) -> SDPProblem:
        """Back to a single-block SDP in maximisation form."""
        mats = self.block_matrices()
        from scipy.linalg import block_diag

        full = [block_diag(*bl) for bl in mats]
        return SDPProblem(full[0], [(full[i + 1], float(self.c[i])) for i in range(self.m)], "max")


def parse_sdpa(text: str) -> SDPAData:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith(('"', "*"))]
    try:
        m = int(lines[0].split()[0])
        nb = int(lines[1].split()[0])
        struct = [int(float(t)) for t in lines[2].replace(",", " ").replace("{", " ").replace("}", " ").split()]
        c = [float(t) for t in lines[3].replace(",", " ").replace("{", " ").replace("}", " ").split()]
        if len(struct) != nb or len(c) != m:
            raise ValueError("header sizes disagree")
        entries = []
        for ln in lines[4:]:
            p = ln.split()
            entries.append((int(p[0]), int(p[1]), int(p[2]), int(p[3]), float(p[4])))
    except (IndexError, ValueError) as exc:
        raise PreconditionError(f"malformed SDPA data: {exc}") from exc
    return SDPAData(c, struct, entries)


def _sym_entries(mat: np.ndarray, matno: int, blk: int, offset: int = 0, diag_only: bool = False):
    out = []
    n = mat.shape[0]
    for i in range(n):
        for j in range(i, n):
            if diag_only and i != j:
                continue
            v = float(mat[i, j])
            if v != 0.0:
                out.append((matno, blk, i + 1 + offset, j + 1 + offset, v))
    return out


def to_sdpa(problem: SDPProblem | ReducedSDP) -> SDPAData:
    """Map ``sense <C, X>, <A_i, X> = b_i`` onto SDPA: F0 = C (max) or -C (min), F_i = A_i, c = b."""
    sign = 1.0 if problem.sense == "max" else -1.0
    if isinstance(problem, SDPProblem):
        mats = [sign * np.asarray(to_float_matrix(problem.objective), dtype=float)]
        mats += [np.asarray(to_float_matrix(a), dtype=float) for a, _ in problem.constraints]
        entries = []
        for k, m in enumerate(mats):
            entries += _sym_entries(m, k, 1)
        return SDPAData([float(b) for _, b in problem.constraints], [problem.dim], entries)
    # reduced: 1x1 real blocks are collected into one diagonal block first
    diag = [b for b in problem.blocks if b.size == 1 and b.real]
    rest = [b for b in problem.blocks if not (b.size == 1 and b.real)]
    struct = []
    entries = []
    nrows = len(problem.rhs)
    if diag:
        struct.append(-len(diag))
        for pos, b in enumerate(diag):
            for k in range(nrows + 1):
                m = b.objective * sign if k == 0 else b.constraints[k - 1]
                v = float(np.real(m[0, 0]))
                if v != 0.0:
                    entries.append((k, 1, pos + 1, pos + 1, v))
    for b in rest:
        struct.append(b.size if b.real else 2 * b.size)
        blk = len(struct)
        for k in range(nrows + 1):
            m = b.objective * sign if k == 0 else b.constraints[k - 1]
            if b.real:
                entries += _sym_entries(np.real(m), k, blk)
            else:
                emb = 0.5 * np.block([[m.real, -m.imag], [m.imag, m.real]])
                entries += _sym_entries(emb, k, blk)
    return SDPAData([float(v) for v in problem.rhs], struct, entries)


def export_sdpa(problem: SDPProblem | ReducedSDP | SDPAData, path) -> str:
    """Write SDPA sparse text to ``path`` (``None`` skips writing); returns the text."""
    text = (problem if isinstance(problem, SDPAData) else to_sdpa(problem)).write()
    if path is not None:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)
    return text


def read_sdpa(path) -> SDPAData:
    with open(path, encoding="ascii") as fh:
        return parse_sdpa(fh.read())
