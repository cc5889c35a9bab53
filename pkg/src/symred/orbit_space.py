"""Hilbert maps, differential Gram matrices and orbit-space problems.

For generators pi_1..pi_m of an invariant ring, J(z) is the matrix
polynomial with J(Pi(x))_{ij} = sum_k d pi_i / d x_k * d pi_j / d x_k.
The image of the real Hilbert map is cut out by J(z) psd together
with the relations among the generators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import MatrixPolynomial, Polynomial, monomials_up_to, grlex_key, sym_eigenvalues
from .errors import PreconditionError
from .groups import GroupRepresentation, is_invariant
from .invariants import InvariantBasis, rewrite_in_invariants
from .sdp import SDPAData, SDPProblem, export_sdpa


@dataclass
class HilbertMap:
    """x -> (pi_1(x), ..., pi_m(x)) with optional relations in z."""

    generators: list[Polynomial]
    group: GroupRepresentation | None = None
    relations: list[Polynomial] = field(default_factory=list)
    names: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.generators = list(self.generators)
        if not self.generators:
            raise PreconditionError("a Hilbert map needs at least one generator")
        n = self.generators[0].nvars
        if any(p.nvars != n for p in self.generators):
            raise PreconditionError("generators must share the variable count")
        if self.group is not None:
            for k, p in enumerate(self.generators):
                if not is_invariant(self.group, p):
                    raise PreconditionError(f"generator {k + 1} is not invariant")
        for r in self.relations:
            if r.nvars != self.m:
                raise PreconditionError("relations must be polynomials in the generator variables")
        if not self.names:
            self.names = [f"z{i + 1}" for i in range(self.m)]

    @property
    def n(self) -> int:
        return self.generators[0].nvars

    @property
    def m(self) -> int:
        return len(self.generators)

    @property
    def basis(self) -> InvariantBasis:
        b = InvariantBasis.detect(self.generators)
        b.names = list(self.names)
        return b

    def __call__(self, x: Sequence) -> list:
        return [p.evaluate(x) for p in self.generators]

    def differential_gram(self, x: Sequence) -> np.ndarray:
        """(<d pi_i, d pi_j>) evaluated at x."""
        grads = [[d.evaluate(x) for d in p.gradient()] for p in self.generators]
        m = self.m
        out = np.empty((m, m), dtype=object)
        for i in range(m):
            for j in range(m):
                out[i, j] = sum((a * b for a, b in zip(grads[i], grads[j])), Fraction(0))
        return out


def j_matrix(hmap: HilbertMap) -> MatrixPolynomial:
    """Gram matrix of differentials rewritten in the generator variables."""
    basis = hmap.basis
    grads = [p.gradient() for p in hmap.generators]
    m = hmap.m
    entries = [[None] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            g = Polynomial(hmap.n)
            for a, b in zip(grads[i], grads[j]):
                g = g + a * b
            entries[i][j] = entries[j][i] = rewrite_in_invariants(g, basis)
    return MatrixPolynomial(entries)


def check_j_identity(hmap: HilbertMap, j: MatrixPolynomial) -> bool:
    """J(Pi(x)) equals the differential Gram matrix as polynomials in x."""
    grads = [p.gradient() for p in hmap.generators]
    for i in range(hmap.m):
        for k in range(hmap.m):
            g = Polynomial(hmap.n)
            for a, b in zip(grads[i], grads[k]):
                g = g + a * b
            if j[i, k].compose(hmap.generators) != g:
                return False
    return True


@dataclass
class OrbitSpaceProblem:
    """inf p(z) s.t. g_i(z) >= 0, relations(z) = 0, J(z) psd."""

    hmap: HilbertMap
    objective: Polynomial
    constraints: list[Polynomial]
    j: MatrixPolynomial
    original_objective: Polynomial
    original_constraints: list[Polynomial]

    @property
    def relations(self) -> list[Polynomial]:
        return self.hmap.relations

    def is_feasible(self, z: Sequence, tol: float = 1e-9) -> bool:
        zf = [float(v) for v in z]
        if any(float(g.evaluate(zf)) < -tol for g in self.constraints):
            return False
        if any(abs(float(r.evaluate(zf))) > tol for r in self.relations):
            return False
        jm = np.asarray(self.j.evaluate(zf), dtype=float)
        return float(np.min(sym_eigenvalues(jm))) >= -tol

    def value(self, z: Sequence):
        return self.objective.evaluate(z)


def reformulate(hmap: HilbertMap, objective: Polynomial, constraints: Sequence[Polynomial] = ()) -> OrbitSpaceProblem:
    """Rewrite an invariant problem in the generators of the invariant ring."""
    basis = hmap.basis
    for k, f in enumerate([objective, *constraints]):
        if f.nvars != hmap.n:
            raise PreconditionError("polynomial variable count does not match the Hilbert map")
        if hmap.group is not None and not is_invariant(hmap.group, f):
            raise PreconditionError("objective is not invariant" if k == 0 else f"constraint {k} is not invariant")
    p = rewrite_in_invariants(objective, basis)
    gs = [rewrite_in_invariants(g, basis) for g in constraints]
    return OrbitSpaceProblem(hmap, p, gs, j_matrix(hmap), objective, list(constraints))


@dataclass
class GridResult:
    value: float
    point: list[float]
    evaluated: int


def grid_minimize(problem: OrbitSpaceProblem, box: Sequence[tuple[float, float]], points: int = 41,
                  tol: float = 1e-9, rounds: int = 200) -> GridResult:
    """Uniform grid over the box filtered by feasibility, then coordinate descent."""
    m = problem.hmap.m
    if len(box) != m:
        raise PreconditionError(f"box needs {m} intervals")
    axes = [np.linspace(lo, hi, points) for lo, hi in box]
    mesh = np.meshgrid(*axes, indexing="ij")
    flat = np.stack([g.ravel() for g in mesh], axis=1)
    obj = problem.objective.to_float()
    vals = obj.evaluate_many(flat)
    order = np.argsort(vals)
    best = None
    count = 0
    for idx in order:
        count += 1
        z = flat[idx]
        if problem.is_feasible(z, tol):
            best = (float(vals[idx]), list(map(float, z)))
            break
    if best is None:
        raise PreconditionError("no feasible grid point in the box")
    value, z = best
    step = max((hi - lo) / (points - 1) for lo, hi in box)
    for _ in range(rounds):
        improved = False
        for i in range(m):
            for sgn in (1.0, -1.0):
                cand = list(z)
                cand[i] += sgn * step
                if problem.is_feasible(cand, tol):
                    v = float(obj.evaluate(cand))
                    count += 1
                    if v < value:
                        value, z, improved = v, cand, True
        if not improved:
            step /= 2
            if step < 1e-12:
                break
    return GridResult(value, z, count)


# ---------------------------------------------------------------------------
# moment relaxation


@dataclass
class MomentRelaxation:
    """SDPA primal form: min sum c_a y_a s.t. sum y_a F_a - F_0 psd, y_0 = 1."""

    data: SDPAData
    moments: list[tuple[int, ...]]
    offset: Fraction
    blocks: list[str]

    def to_sdp(self) -> SDPProblem:
        return self.data.to_sdp()

    def export(self, path=None) -> str:
        return export_sdpa(self.data, path)


def _ceil_half(d: int) -> int:
    return max(0, math.ceil(d / 2))


def moment_relaxation_qk(problem: OrbitSpaceProblem, k: int, m: int | None = None) -> MomentRelaxation:
    """Moment matrix, localizing matrices and the J block of order k.

    The J block uses the basis of degree k - m; m defaults to the number
    of generators.
    """
    nz = problem.hmap.m
    m = nz if m is None else m
    jdeg = max(e.degree for row in problem.j.entries for e in row)
    need = max([_ceil_half(problem.objective.degree), _ceil_half(jdeg)]
               + [_ceil_half(g.degree) for g in problem.constraints] + [m])
    if k < need:
        raise PreconditionError(f"relaxation order {k} is too small; need at least {need}")

    blocks: list[tuple[str, list[list[Polynomial]]]] = []

    def loc(weights: list[list[Polynomial]], order: int) -> list[list[Polynomial]]:
        mons = monomials_up_to(nz, order)
        size = len(weights)
        out = []
        for l in range(size):
            for a in mons:
                row = []
                for q in range(size):
                    for b in mons:
                        e = tuple(x + y for x, y in zip(a, b))
                        row.append(weights[l][q] * Polynomial.monomial(e))
                out.append(row)
        return out

    one = Polynomial.constant(1, nz)
    blocks.append(("moment", loc([[one]], k)))
    for i, g in enumerate(problem.constraints):
        blocks.append((f"g{i + 1}", loc([[g]], k - _ceil_half(g.degree))))
    blocks.append(("J", loc(problem.j.entries, k - m)))

    moments = sorted({e for _, mat in blocks for row in mat for p in row for e in p.terms}, key=grlex_key)
    zero = (0,) * nz
    if zero not in moments:
        moments.insert(0, zero)
    moments.remove(zero)
    index = {e: i + 1 for i, e in enumerate(moments)}
    entries = []
    for bi, (_, mat) in enumerate(blocks):
        size = len(mat)
        for r in range(size):
            for c in range(r, size):
                for e, v in mat[r][c].terms.items():
                    if e == zero:
                        entries.append((0, bi + 1, r + 1, c + 1, -float(v)))
                    else:
                        entries.append((index[e], bi + 1, r + 1, c + 1, float(v)))
    merged: dict[tuple, float] = {}
    for mat, blk, i, j, v in entries:
        merged[(mat, blk, i, j)] = merged.get((mat, blk, i, j), 0.0) + v
    entries = [(*key, v) for key, v in merged.items() if v != 0.0]
    c = [float(problem.objective.coefficient(e)) for e in moments]
    data = SDPAData(c, [len(mat) for _, mat in blocks], entries)
    return MomentRelaxation(data, moments, problem.objective.coefficient(zero), [name for name, _ in blocks])
