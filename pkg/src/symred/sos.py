"""Sums of squares through Gram matrices, with and without symmetry.

``f`` is a sum of squares iff ``f = Y^T Q Y`` for a psd ``Q`` over a
monomial vector ``Y``.  Monomials outside half the Newton polytope of
``f`` can never occur and are filtered first.  For an invariant ``f``
the Gram matrix may be taken invariant, which splits the search into
blocks: with generators ``f_{j1}, ..., f_{j eta_j}`` of each isotypic
component (one per irreducible copy, all images of each other under
equivariant maps) one has ``f`` SOS iff ``f = sum_j <A_j, B_j>`` with
``A_j`` psd and ``B_j[u, v] = sum_g f_ju^g f_jv^g``.

Every search below ends in one of three ways:

* ``feasible`` with exact psd blocks and an exact polynomial identity;
* ``infeasible`` with an exact reason: an inconsistent identification,
  a diagonal entry forced negative (or forced zero with a non-zero row),
  a unique Gram matrix with a negative direction, or a rational dual
  vector ``y`` whose moment matrix is psd while ``<y, f> < 0``;
* ``undecided`` when the numeric search did not produce either kind of
  certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from . import _kernels
from .algebra import (
    MatrixPolynomial,
    Polynomial,
    exact_matrix,
    ldlt_psd_check,
    matrix_to_json,
    monomials_up_to,
    nullspace_exact,
    rationalize,
    solve_exact,
    sym_eigenvalues,
    verify_ldlt,
)
from .errors import PreconditionError, UnsupportedError
from .groups import (
    GroupRepresentation,
    act_on_polynomial,
    is_invariant,
    polynomial_representation,
    vector_to_polynomial,
)
from .lp import LPProblem, simplex_solve
from .sdp import SDPAData
from .symmetry_adapted import adapted_generators

MAX_ITER = 5000
RATIONAL_CAPS = (10**2, 10**4, 10**6)

# ---------------------------------------------------------------------------
# Newton polytope


def in_convex_hull(point: Sequence, points: Sequence[Sequence]) -> bool:
    """Exact LP test of ``point in conv(points)``."""
    pts = [tuple(p) for p in points]
    if tuple(point) in pts:
        return True
    k = len(pts)
    rows = [[Fraction(1)] * k] + [[Fraction(p[i]) for p in pts] for i in range(len(point))]
    rhs = [Fraction(1)] + [Fraction(v) for v in point]
    res = simplex_solve(LPProblem([Fraction(0)] * k, rows, rhs))
    return res.optimal


def newton_half_monomials(f: Polynomial) -> list[tuple[int, ...]]:
    """Lattice points ``a`` with ``2a`` in the Newton polytope of ``f``."""
    if f.degree < 0:
        return []
    if f.degree % 2:
        raise PreconditionError("a sum of squares has even degree")
    supp = list(f.support)
    n = f.nvars
    lo = [min(s[i] for s in supp) for i in range(n)]
    hi = [max(s[i] for s in supp) for i in range(n)]
    dmin = min(sum(s) for s in supp)
    out = []
    for m in monomials_up_to(n, f.degree // 2):
        if 2 * sum(m) < dmin:
            continue
        if any(2 * m[i] < lo[i] or 2 * m[i] > hi[i] for i in range(n)):
            continue
        if in_convex_hull([2 * v for v in m], supp):
            out.append(m)
    out.sort(key=lambda e: (sum(e), tuple(-v for v in e)))
    return out


# ---------------------------------------------------------------------------
# generic block psd identification


@dataclass
class PSDSystem:
    """Find psd blocks ``Q_b`` with ``sum_k rows[r][k] * q_k = rhs[r]``.

    The unknowns ``q_k`` are the upper-triangular entries ``(b, i, j)``
    of the blocks, ``i <= j``.  ``labels[r]`` names row ``r`` (usually a
    monomial).
    """

    sizes: list[int]
    rows: list[dict[int, Fraction]]
    rhs: list[Fraction]
    labels: list = field(default_factory=list)
    # (zero p, directions v) -> pairs (b, w) with Q_b w = 0 for every psd solution
    kernel_vectors: Callable | None = None

    def __post_init__(self):
        self.vars = [(b, i, j) for b, s in enumerate(self.sizes) for i in range(s) for j in range(i, s)]
        self.var_index = {v: k for k, v in enumerate(self.vars)}

    def assemble(self, q: Sequence) -> list[np.ndarray]:
        exact = all(isinstance(v, Fraction) for v in q)
        out = []
        for s in self.sizes:
            m = np.zeros((s, s), dtype=object if exact else float)
            if exact:
                m.fill(Fraction(0))
            out.append(m)
        for (b, i, j), v in zip(self.vars, q):
            out[b][i, j] = v
            out[b][j, i] = v
        return out

    def row_matrices(self, rows: Sequence[dict]) -> list[list[np.ndarray]]:
        """Symmetric ``A_r`` with ``<A_r, Q> = rows[r] . q``."""
        out = []
        for row in rows:
            mats = [exact_matrix(np.zeros((s, s), dtype=int)) for s in self.sizes]
            for k, c in row.items():
                b, i, j = self.vars[k]
                if i == j:
                    mats[b][i, i] += c
                else:
                    mats[b][i, j] += c / 2
                    mats[b][j, i] += c / 2
            out.append(mats)
        return out

    def to_sdpa(self) -> SDPAData:
        """Feasibility problem in SDPA form: F0 = 0, F_r = A_r, c_r = rhs_r."""
        entries = []
        for r, mats in enumerate(self.row_matrices(self.rows)):
            for b, m in enumerate(mats):
                for i in range(m.shape[0]):
                    for j in range(i, m.shape[0]):
                        if m[i, j] != 0:
                            entries.append((r + 1, b + 1, i + 1, j + 1, float(m[i, j])))
        return SDPAData([float(v) for v in self.rhs], list(self.sizes), entries)


@dataclass
class PSDResultSet:
    status: str  # "feasible", "infeasible", "undecided"
    blocks: list[np.ndarray] | None = None
    reason: str = ""
    forced: tuple | None = None  # (block, index, value) of a forced diagonal entry
    dual: list[Fraction] | None = None  # y with psd moment blocks and <y, rhs> < 0
    dof: int = 0
    margin: float | None = None
    point: list[Fraction] | None = None  # rational point where the target is negative


def _dense(rows: Sequence[dict], nvars: int) -> list[list[Fraction]]:
    out = []
    for row in rows:
        r = [Fraction(0)] * nvars
        for k, c in row.items():
            r[k] = Fraction(c)
        out.append(r)
    return out


def _all_psd(blocks: Sequence[np.ndarray]) -> bool:
    return all(ldlt_psd_check(b).psd for b in blocks if b.shape[0])


def _interior_search(q0: np.ndarray, dirs: np.ndarray, sizes: list[int], max_iter: int):
    """Alternating projection over the affine family, targeting a margin that shrinks."""
    if dirs.shape[0] == 0:
        return None
    gram = np.einsum("kij,lij->kl", dirs, dirs)
    gram_inv = np.linalg.pinv(gram)
    scale = max(float(np.max(np.abs(q0))), float(np.max(np.abs(dirs))), 1e-300)
    levels = (1e-2, 1e-4, 1e-6, 1e-9)
    for eps in levels:
        t, lam, _, it = _kernels.alternating_projection(q0, dirs, gram_inv, max_iter // len(levels), eps * scale)
        if lam >= eps * scale:
            return t
    return None


def _block_diag(mats: Sequence[np.ndarray]) -> np.ndarray:
    n = sum(m.shape[0] for m in mats)
    out = np.zeros((n, n))
    k = 0
    for m in mats:
        s = m.shape[0]
        out[k:k + s, k:k + s] = np.asarray(m, dtype=float)
        k += s
    return out


def solve_psd_system(system: PSDSystem, max_iter: int = MAX_ITER, dual: bool = True,
                     target: Polynomial | None = None, kernel: list | None = None) -> PSDResultSet:
    """Decide the system exactly when possible; see the module docstring.

    ``target`` (the polynomial being certified) enables facial reduction
    through its rational zeros and the search for a rational point where
    it is negative, the simplest dual certificate.  ``kernel`` lists
    pairs ``(b, w)`` known to satisfy ``Q_b w = 0``; the numeric search
    runs on the compression of each block to the complement of these.
    """
    kernel = list(kernel or [])
    nv = len(system.vars)
    rows = [dict(r) for r in system.rows]
    rhs = [Fraction(v) for v in system.rhs]
    extra: list[dict] = []
    zeroed: set[tuple[int, int]] = set()
    while True:
        dense = _dense(rows + extra, nv)
        sol = solve_exact(dense, rhs + [Fraction(0)] * len(extra)) if dense else None
        if dense and sol is None:
            if extra:
                return PSDResultSet("infeasible", reason="a diagonal entry forced to zero forces a non-zero entry in its row")
            bad = _inconsistent_label(system, rows, rhs)
            return PSDResultSet("infeasible", reason=f"identification is inconsistent{bad}")
        if sol is None:
            part = [Fraction(0)] * nv
            null = [[Fraction(int(i == k)) for i in range(nv)] for k in range(nv)]
        else:
            part, null = sol.particular, sol.nullspace
        fixed = [all(v[k] == 0 for v in null) for k in range(nv)]
        changed = False
        for k, (b, i, j) in enumerate(system.vars):
            if i != j or not fixed[k]:
                continue
            if part[k] < 0:
                return PSDResultSet("infeasible", reason=f"diagonal entry {i} of block {b} is forced to {part[k]}",
                                    forced=(b, i, part[k]), dof=len(null))
            if part[k] == 0 and (b, i) not in zeroed:
                zeroed.add((b, i))
                kernel.append((b, [Fraction(int(r == i)) for r in range(system.sizes[b])]))
                for jj in range(system.sizes[b]):
                    if jj != i:
                        key = system.var_index[(b, min(i, jj), max(i, jj))]
                        extra.append({key: Fraction(1)})
                        changed = True
        if not changed:
            break
    blocks = system.assemble(part)
    if _all_psd(blocks):
        return PSDResultSet("feasible", blocks, dof=len(null))
    if not null:
        for b, m in enumerate(blocks):
            res = ldlt_psd_check(m)
            if not res.psd:
                return PSDResultSet("infeasible", reason=f"the Gram matrix is unique and block {b} has "
                                    f"a direction with value {res.value}", dof=0)
    # numeric search for an interior point
    sizes = system.sizes
    comp = _complements(sizes, kernel)
    q0 = _compressed(system.assemble([float(v) for v in part]), comp)
    dirs = np.array([_compressed(system.assemble([float(v) for v in vec]), comp) for vec in null]) \
        if null else np.zeros((0,) + q0.shape)
    t = _interior_search(q0, dirs, sizes, max_iter) if q0.shape[0] else np.zeros(len(null))
    if t is not None:
        for cap in RATIONAL_CAPS:
            tq = [rationalize(v, cap) for v in t]
            q = sol.point(tq) if sol is not None else tq
            blocks = system.assemble(q)
            if _all_psd(blocks):
                return PSDResultSet("feasible", blocks, dof=len(null))
    if target is not None and system.kernel_vectors is not None:
        face, kvecs = _facial_rows(system, target)
        if face:
            reduced = PSDSystem(system.sizes, system.rows + face, system.rhs + [Fraction(0)] * len(face),
                                system.labels + [("zero",)] * len(face), system.kernel_vectors)
            res = solve_psd_system(reduced, max_iter, dual=False, target=None, kernel=kernel + kvecs)
            if res.status == "infeasible":
                res.reason = "after facial reduction at rational zeros of the target: " + res.reason
            if res.status != "undecided":
                return res
    if dual and target is not None:
        pt = negative_point(target)
        if pt is not None:
            return PSDResultSet("infeasible", reason=f"the target is negative at {_fmt_point(pt)}",
                                dof=len(null), point=pt)
    if dual:
        y = _dual_search(system, rows + extra, rhs + [Fraction(0)] * len(extra), max_iter)
        if y is not None:
            return PSDResultSet("infeasible", reason="a psd dual functional is negative on the target",
                                dual=y, dof=len(null))
    return PSDResultSet("undecided", reason="numeric search found neither a psd Gram matrix nor a dual certificate",
                        dof=len(null))


def _fmt_point(pt) -> str:
    return "(" + ", ".join(str(v) for v in pt) + ")"


def negative_point(f: Polynomial, starts: int = 24, seed: int = 0) -> list[Fraction] | None:
    """Rational point with ``f < 0`` found by local minimisation, or None."""
    from scipy.optimize import minimize

    if f.nvars == 0 or f.degree <= 0:
        return None
    ff = f.to_float()
    grad = [ff.derivative(i) for i in range(f.nvars)]
    rng = np.random.default_rng(seed)
    for k in range(starts):
        x0 = rng.normal(scale=1.0 + k / 4, size=f.nvars)
        res = minimize(lambda x: float(ff(x)), x0, jac=lambda x: np.array([float(g(x)) for g in grad]),
                       method="BFGS", options={"maxiter": 200})
        if not np.all(np.isfinite(res.x)) or float(res.fun) >= 0:
            continue
        for cap in RATIONAL_CAPS:
            pt = [rationalize(v, cap) for v in res.x]
            if f(pt) < 0:
                return pt
    return None


def rational_zeros(f: Polynomial, starts: int = 24, seed: int = 1) -> list[list[Fraction]]:
    """Rational points with ``f = 0`` exactly near numeric local minima (origin excluded)."""
    from scipy.optimize import minimize

    if f.nvars == 0 or f.degree <= 0:
        return []
    ff = f.to_float()
    homog = f.is_homogeneous()
    deg = f.degree
    rng = np.random.default_rng(seed)
    found: list[list[Fraction]] = []

    def obj(x):
        v = float(ff(x))
        return v / float(np.dot(x, x)) ** (deg / 2) if homog else v

    for _ in range(starts):
        x0 = rng.normal(size=f.nvars)
        res = minimize(obj, x0, method="BFGS", options={"maxiter": 400, "gtol": 1e-12})
        x = res.x
        if not np.all(np.isfinite(x)) or abs(float(res.fun)) > 1e-7:
            continue
        if homog:
            big = np.max(np.abs(x))
            if big < 1e-12:
                continue
            x = x / big
        for cap in RATIONAL_CAPS:
            pt = [rationalize(v, cap) for v in x]
            if any(pt) and f(pt) == 0:
                if pt not in found:
                    found.append(pt)
                break
    return found


def hessian_null_directions(f: Polynomial, pt: Sequence[Fraction]) -> list[list[Fraction]]:
    """Exact null space of the Hessian of ``f`` at ``pt``."""
    n = f.nvars
    grads = [f.derivative(i) for i in range(n)]
    hess = [[grads[i].derivative(j)(pt) for j in range(n)] for i in range(n)]
    return nullspace_exact(hess)


def _complements(sizes: list[int], kernel: list) -> list[np.ndarray]:
    """Orthonormal bases of the complements of the known kernel vectors, per block."""
    from scipy.linalg import null_space

    out = []
    for b, s in enumerate(sizes):
        ws = [np.array([float(x) for x in w]) for bb, w in kernel if bb == b]
        out.append(null_space(np.array(ws)) if ws else np.eye(s))
    return out


def _compressed(blocks: Sequence[np.ndarray], comp: Sequence[np.ndarray]) -> np.ndarray:
    return _block_diag([v.T @ np.asarray(m, dtype=float) @ v for m, v in zip(blocks, comp)])


def _facial_rows(system: PSDSystem, target: Polynomial) -> tuple[list[dict], list]:
    """Rows ``Q_b w = 0`` from exact rational zeros of the target.

    At a zero ``p`` every square vanishes, and so does the derivative of
    every square along the null directions of the Hessian of the target.
    """
    out = []
    kvecs = []
    for pt in rational_zeros(target):
        dirs = hessian_null_directions(target, pt)
        for b, w in system.kernel_vectors(pt, dirs):
            kvecs.append((b, w))
            s = system.sizes[b]
            for i in range(s):
                row: dict[int, Fraction] = {}
                for j in range(s):
                    if w[j] != 0:
                        k = system.var_index[(b, min(i, j), max(i, j))]
                        row[k] = row.get(k, Fraction(0)) + w[j]
                row = {k: v for k, v in row.items() if v != 0}
                if row:
                    out.append(row)
    return out, kvecs


def _jet_vectors(polys: Sequence[Polynomial], pt, dirs) -> list[list[Fraction]]:
    """Value vector of ``polys`` at ``pt`` and its derivatives along ``dirs``."""
    out = [[p(pt) for p in polys]]
    n = len(pt)
    for v in dirs:
        out.append([sum((p.derivative(i)(pt) * v[i] for i in range(n) if v[i] != 0), Fraction(0)) for p in polys])
    return [w for w in out if any(x != 0 for x in w)]


def _inconsistent_label(system: PSDSystem, rows, rhs) -> str:
    for r, row in enumerate(rows):
        if not row and rhs[r] != 0 and r < len(system.labels):
            return f": {system.labels[r]} cannot be produced"
    return ""


def _dual_search(system: PSDSystem, rows, rhs, max_iter: int):
    """Look for rational ``y`` with ``sum_r y_r A_r`` psd and ``y . rhs < 0``."""
    if all(v == 0 for v in rhs):
        return None
    mats = system.row_matrices(rows)
    amats = np.array([_block_diag(m) for m in mats])
    rv = np.array([float(v) for v in rhs])
    y0 = -rv / float(rv @ rv)
    _, s, vt = np.linalg.svd(rv[None, :])
    comp = vt[1:]  # orthonormal complement of rhs
    q0 = np.tensordot(y0, amats, axes=1)
    dirs = np.tensordot(comp, amats, axes=1) if comp.shape[0] else np.zeros((0,) + q0.shape)
    if dirs.shape[0] == 0:
        t = np.zeros(0)
        if min(sym_eigenvalues(q0)) < 0:
            return None
    else:
        t = _interior_search(q0, dirs, system.sizes, max_iter)
        if t is None:
            return None
    yf = y0 + t @ comp if comp.shape[0] else y0
    big = max(1.0, float(np.max(np.abs(yf))))
    for cap in RATIONAL_CAPS:
        y = [rationalize(v / big, cap) for v in yf]
        if sum(a * b for a, b in zip(y, rhs)) >= 0:
            continue
        blocks = [sum((yr * m[b] for yr, m in zip(y, mats)), exact_matrix(np.zeros((s, s), dtype=int)))
                  for b, s in enumerate(system.sizes)]
        if _all_psd(blocks):
            return y
    return None


# ---------------------------------------------------------------------------
# Gram method


@dataclass
class GramProblem:
    """``f = Y^T Q Y`` with ``Y`` the filtered monomials."""

    f: Polynomial
    basis: list[tuple[int, ...]]
    system: PSDSystem

    @property
    def size(self) -> int:
        return len(self.basis)


def _gram_system(f: Polynomial, basis: list[tuple[int, ...]], ties: list[list[tuple[int, int]]] | None = None) -> PSDSystem:
    k = len(basis)
    system = PSDSystem([k], [], [])
    rowmap: dict[tuple, dict[int, Fraction]] = {}
    for i in range(k):
        for j in range(i, k):
            mono = tuple(a + b for a, b in zip(basis[i], basis[j]))
            row = rowmap.setdefault(mono, {})
            var = system.var_index[(0, i, j)]
            row[var] = row.get(var, Fraction(0)) + (1 if i == j else 2)
    monos = sorted(set(rowmap) | set(f.support), key=lambda e: (sum(e), e), reverse=True)
    for m in monos:
        system.rows.append(rowmap.get(m, {}))
        system.rhs.append(Fraction(f.coefficient(m)))
        system.labels.append(m)
    ys = [Polynomial.monomial(m) for m in basis]
    system.kernel_vectors = lambda pt, dirs: [(0, w) for w in _jet_vectors(ys, pt, dirs)]
    for tie in ties or []:
        first = system.var_index[(0,) + tie[0]]
        for other in tie[1:]:
            system.rows.append({first: Fraction(1), system.var_index[(0,) + other]: Fraction(-1)})
            system.rhs.append(Fraction(0))
            system.labels.append(("tie",) + tie[0] + other)
    return system


def gram_setup(f: Polynomial, newton: bool = True) -> GramProblem:
    if not f.is_exact():
        raise PreconditionError("the Gram method needs rational coefficients")
    if f.degree % 2:
        raise PreconditionError("polynomial has odd degree")
    if f.degree < 0:
        basis = [tuple([0] * f.nvars)]
    elif newton:
        basis = newton_half_monomials(f)
    else:
        basis = monomials_up_to(f.nvars, f.degree // 2)
    return GramProblem(f, basis, _gram_system(f, basis))


def _orbit_ties(rep: GroupRepresentation, basis: list[tuple[int, ...]]) -> list[list[tuple[int, int]]]:
    """Orbits of index pairs ``(i, j)`` under a permutation action on monomials."""
    if not rep.is_permutation:
        raise UnsupportedError("invariant Gram ties need a permutation action")
    prep = polynomial_representation(rep, 0, monomials=basis)
    seen = set()
    orbits = []
    for i in range(len(basis)):
        for j in range(i, len(basis)):
            if (i, j) in seen:
                continue
            orb = {(i, j)}
            stack = [(i, j)]
            while stack:
                a, b = stack.pop()
                for g in rep.generators:
                    p = prep.perm(g)
                    img = tuple(sorted((p[a], p[b])))
                    if img not in orb:
                        orb.add(img)
                        stack.append(img)
            seen |= orb
            if len(orb) > 1:
                orbits.append(sorted(orb))
    return orbits


@dataclass
class GramResult:
    status: str
    basis: list[tuple[int, ...]]
    q: np.ndarray | None = None
    reason: str = ""
    forced: tuple | None = None
    dual: list | None = None
    labels: list = field(default_factory=list)
    dof: int = 0
    point: list | None = None

    @property
    def feasible(self) -> bool | None:
        return {"feasible": True, "infeasible": False}.get(self.status)

    def squares(self) -> list[tuple[Fraction, Polynomial]]:
        """``f = sum w_k l_k^2`` read off an exact LDL^T of ``Q``."""
        if self.q is None:
            return []
        res = ldlt_psd_check(self.q)
        nv = len(self.basis[0])
        out = []
        for k, w in enumerate(res.diag):
            if w == 0:
                continue
            terms = {}
            for i in range(len(self.basis)):
                c = res.lower[i, k]
                if c != 0:
                    terms[self.basis[res.perm[i]]] = c
            out.append((w, Polynomial(nv, terms)))
        return out


def gram_feasibility(problem: GramProblem | Polynomial, group: GroupRepresentation | None = None,
                     max_iter: int = MAX_ITER) -> GramResult:
    """Decide ``f`` SOS by the Gram method.

    With a permutation ``group`` the Gram matrix is restricted to the
    invariant ones (equal entries along orbits of index pairs).
    """
    if isinstance(problem, Polynomial):
        problem = gram_setup(problem)
    system = problem.system
    if group is not None:
        system = _gram_system(problem.f, problem.basis, _orbit_ties(group, problem.basis))
    res = solve_psd_system(system, max_iter, target=problem.f)
    labels = [m for m in system.labels if not (m and m[0] == "tie")]
    forced = None
    if res.forced is not None:
        _, i, v = res.forced
        forced = (problem.basis[i], v)
    q = res.blocks[0] if res.blocks else None
    return GramResult(res.status, problem.basis, q, res.reason, forced, res.dual, labels, res.dof, res.point)


def average_gram(rep: GroupRepresentation, q, basis: list[tuple[int, ...]]) -> np.ndarray:
    """``(1/|G|) sum_g M(g)^T Q M(g)`` for the induced action on ``basis``."""
    prep = polynomial_representation(rep, 0, monomials=basis)
    q = np.asarray(q)
    exact = q.dtype == object or all(isinstance(v, (int, Fraction, np.integer)) for v in q.ravel())
    qm = exact_matrix(q) if exact else np.asarray(q, dtype=float)
    acc = None
    for i in range(prep.order):
        m = prep.action_matrix(i)
        m = exact_matrix(m) if exact else np.asarray(m, dtype=float)
        t = m.T.dot(qm).dot(m)
        acc = t if acc is None else acc + t
    return acc * Fraction(1, prep.order) if exact else acc / prep.order


def gram_polynomial(q, basis: list[tuple[int, ...]]) -> Polynomial:
    nv = len(basis[0])
    out = Polynomial(nv)
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            c = q[i, j]
            if c != 0:
                out = out + Polynomial.monomial(tuple(x + y for x, y in zip(a, b)), c)
    return out


# ---------------------------------------------------------------------------
# invariant block method


def group_sum(rep: GroupRepresentation, f: Polynomial) -> Polynomial:
    """``sum_g f^g``; orbit counting for permutation actions."""
    if rep.is_permutation:
        out: dict[tuple, Fraction] = {}
        cache: dict[tuple, list[tuple]] = {}
        gens = [rep.perm(g) for g in rep.generators]
        for mono, c in f.terms.items():
            if mono not in cache:
                orb = {mono}
                stack = [mono]
                while stack:
                    e = stack.pop()
                    for p in gens:
                        img = [0] * len(e)
                        for j, k in enumerate(e):
                            img[p[j]] = k
                        img = tuple(img)
                        if img not in orb:
                            orb.add(img)
                            stack.append(img)
                cache[mono] = sorted(orb)
            orb = cache[mono]
            w = Fraction(rep.order, len(orb))
            for m in orb:
                out[m] = out.get(m, 0) + w * c
        return Polynomial(f.nvars, out)
    total = Polynomial(f.nvars)
    for i in range(rep.order):
        total = total + act_on_polynomial(rep, i, f)
    return total


def _primitive(p: Polynomial) -> Polynomial:
    """Scale a rational polynomial to coprime integer coefficients."""
    if not p.is_exact() or not len(p):
        return p
    coeffs = [Fraction(c) for c in p.terms.values()]
    den = math.lcm(*(c.denominator for c in coeffs))
    num = math.gcd(*(int(c * den) for c in coeffs))
    lead = p.leading_term()[1]
    sign = -1 if Fraction(lead) < 0 else 1
    return p * Fraction(sign * den, num)


@dataclass
class InvariantSOSBlocks:
    """Data of ``f = sum_j <A_j, B_j>``: one matrix polynomial per component."""

    f: Polynomial
    names: list[str]
    generators: list[list[Polynomial]]
    b: list[MatrixPolynomial]
    group: GroupRepresentation | None = None

    @property
    def sizes(self) -> list[int]:
        return [len(g) for g in self.generators]

    def system(self) -> PSDSystem:
        sizes = self.sizes
        system = PSDSystem(sizes, [], [])
        rowmap: dict[tuple, dict[int, Fraction]] = {}
        for bi, bm in enumerate(self.b):
            s = sizes[bi]
            for u in range(s):
                for v in range(u, s):
                    var = system.var_index[(bi, u, v)]
                    w = 1 if u == v else 2
                    for mono, c in bm[u, v].terms.items():
                        row = rowmap.setdefault(mono, {})
                        row[var] = row.get(var, Fraction(0)) + w * c
        monos = sorted(set(rowmap) | set(self.f.support), key=lambda e: (sum(e), e), reverse=True)
        for m in monos:
            system.rows.append({k: v for k, v in rowmap.get(m, {}).items() if v != 0})
            system.rhs.append(Fraction(self.f.coefficient(m)))
            system.labels.append(m)
        system.kernel_vectors = self._kernel_vectors
        return system

    def _kernel_vectors(self, pt, dirs):
        out = []
        rep = self.group
        for b, fam in enumerate(self.generators):
            for i in range(rep.order if rep is not None else 1):
                imgs = [act_on_polynomial(rep, i, p) for p in fam] if rep is not None else fam
                out.extend((b, w) for w in _jet_vectors(imgs, pt, dirs))
        return out


def invariant_sos_blocks(rep: GroupRepresentation, f: Polynomial, generators: Sequence[Sequence[Polynomial]] | None = None,
                         names: Sequence[str] | None = None, newton: bool = True) -> InvariantSOSBlocks:
    """Block data ``B_j[u, v] = sum_g f_ju^g f_jv^g``.

    Without explicit generators they come from the isotypic components of
    the induced action on half-degree polynomials (restricted to the
    Newton half polytope for permutation actions).  Components of complex
    type contribute real and imaginary parts of their generators.
    """
    if not f.is_exact():
        raise PreconditionError("the block method needs rational coefficients")
    if not is_invariant(rep, f):
        raise PreconditionError("polynomial is not invariant under the group")
    if f.degree % 2:
        raise PreconditionError("polynomial has odd degree")
    if generators is None:
        d = f.degree // 2
        mons = newton_half_monomials(f) if (newton and rep.is_permutation) else monomials_up_to(f.nvars, d)
        prep = polynomial_representation(rep, d, monomials=mons)
        g = prep.group
        table = g.character_table
        fs = g.frobenius_schur
        conj = g.conjugate_irrep
        gens = []
        gnames = []
        for l, m in enumerate(prep.multiplicities()):
            if not m:
                continue
            if fs[l] == -1:
                raise UnsupportedError(f"irreducible {table.irrep_names[l]} is quaternionic")
            if fs[l] == 0 and conj[l] < l:
                continue
            vecs = adapted_generators(prep, l)
            if len(vecs) != m:
                raise ArithmeticError("adapted generators do not match the multiplicity")
            polys = [_primitive(vector_to_polynomial(v, mons, f.nvars)) for v in vecs]
            if fs[l] == 0:
                polys = [p.map_coefficients(lambda c: complex(c).real) for p in polys] + \
                        [p.map_coefficients(lambda c: complex(c).imag) for p in polys]
            gens.append(polys)
            gnames.append(table.irrep_names[l] + (f"+{table.irrep_names[conj[l]]}" if fs[l] == 0 else ""))
    else:
        gens = [list(fam) for fam in generators]
        gnames = list(names) if names else [f"block{j}" for j in range(len(gens))]
        for fam in gens:
            if not fam:
                raise PreconditionError("empty generator family")
    bmats = []
    for fam in gens:
        s = len(fam)
        entries = [[None] * s for _ in range(s)]
        for u in range(s):
            for v in range(u, s):
                entries[u][v] = entries[v][u] = group_sum(rep, fam[u] * fam[v])
        bmats.append(MatrixPolynomial(entries))
    return InvariantSOSBlocks(f, gnames, gens, bmats, rep)


@dataclass
class BlockGramCertificate:
    """``f = sum_j <A_j, B_j>`` with every ``A_j`` psd."""

    a: list[np.ndarray]
    b: list[MatrixPolynomial]
    names: list[str] = field(default_factory=list)

    def polynomial(self) -> Polynomial:
        nv = self.b[0].nvars if self.b else 0
        out = Polynomial(nv)
        for a, b in zip(self.a, self.b):
            s = a.shape[0]
            for u in range(s):
                for v in range(s):
                    if a[u, v] != 0:
                        out = out + b[u, v] * a[u, v]
        return out

    def to_json(self) -> dict:
        return {"blocks": [{"name": n, "A": matrix_to_json(a), "B": b.to_json()}
                           for n, a, b in zip(self.names or [""] * len(self.a), self.a, self.b)]}


def verify_certificate(cert: BlockGramCertificate, f: Polynomial) -> bool:
    """Exact identity and exact psd of every block."""
    try:
        blocks = [exact_matrix(a) for a in cert.a]
    except (TypeError, ValueError):
        return False
    for a in blocks:
        if a.shape[0] and not (a == a.T).all():
            return False
        if a.shape[0]:
            res = ldlt_psd_check(a)
            if not res.psd or not verify_ldlt(a, res):
                return False
    cert = BlockGramCertificate(blocks, cert.b, cert.names)
    return cert.polynomial() == f


@dataclass
class BlockSOSResult:
    status: str
    certificate: BlockGramCertificate | None
    data: InvariantSOSBlocks
    reason: str = ""
    dual: list | None = None
    point: list | None = None

    @property
    def feasible(self) -> bool | None:
        return {"feasible": True, "infeasible": False}.get(self.status)


def block_sos(rep: GroupRepresentation, f: Polynomial, generators=None, names=None,
              max_iter: int = MAX_ITER) -> BlockSOSResult:
    data = invariant_sos_blocks(rep, f, generators, names)
    res = solve_psd_system(data.system(), max_iter, target=f)
    cert = None
    if res.status == "feasible":
        cert = BlockGramCertificate(res.blocks, data.b, data.names)
        if not verify_certificate(cert, f):
            raise ArithmeticError("block certificate failed exact verification")
    return BlockSOSResult(res.status, cert, data, res.reason, res.dual, res.point)


def gram_certificate(result: GramResult) -> BlockGramCertificate:
    """A Gram result as a one-block certificate with ``B = Y Y^T``."""
    if result.q is None:
        raise PreconditionError("no Gram matrix to wrap")
    ys = [Polynomial.monomial(m) for m in result.basis]
    b = MatrixPolynomial([[yi * yj for yj in ys] for yi in ys])
    return BlockGramCertificate([result.q], [b], ["gram"])


# ---------------------------------------------------------------------------
# symmetric quadratics and quartics


@dataclass
class QuadraticDecomposition:
    """``p = alpha (sum X_i)^2 + beta sum_{i<j} (X_i - X_j)^2``."""

    alpha: Fraction
    beta: Fraction

    @property
    def sos(self) -> bool:
        return self.alpha >= 0 and self.beta >= 0


def symmetric_quadratic_decomposition(a, b, n: int) -> QuadraticDecomposition:
    """Solve ``a = alpha + (n-1) beta`` and ``b = 2 (alpha - beta)``."""
    if n < 2:
        raise PreconditionError("need n >= 2")
    a, b = Fraction(a), Fraction(b)
    beta = (2 * a - b) / (2 * n)
    alpha = a - (n - 1) * beta
    return QuadraticDecomposition(alpha, beta)


def symmetric_quadratic(a, b, n: int) -> Polynomial:
    """``a sum X_i^2 + b sum_{i<j} X_i X_j``."""
    terms = {}
    for i in range(n):
        e = [0] * n
        e[i] = 2
        terms[tuple(e)] = Fraction(a)
        for j in range(i + 1, n):
            e = [0] * n
            e[i] = e[j] = 1
            terms[tuple(e)] = Fraction(b)
    return Polynomial(n, terms)


QUARTIC_BASIS = ("pi1^4", "pi1^2*pi2", "pi2^2", "pi1*pi3", "pi4")


def _pi(j: int, n: int) -> Polynomial:
    terms = {}
    for i in range(n):
        e = [0] * n
        e[i] = j
        terms[tuple(e)] = Fraction(1, n)
    return Polynomial(n, terms)


def quartic_basis(n: int) -> list[Polynomial]:
    """``pi1^4, pi1^2 pi2, pi2^2, pi1 pi3, pi4`` with ``pi_j = (1/n) sum X_i^j``."""
    p1, p2, p3, p4 = (_pi(j, n) for j in range(1, 5))
    return [p1 ** 4, p1 ** 2 * p2, p2 ** 2, p1 * p3, p4]


def quartic_coordinates(f: Polynomial) -> list[Fraction]:
    """Coordinates of a symmetric quartic form in :func:`quartic_basis`."""
    n = f.nvars
    if n < 4:
        raise PreconditionError("the quartic basis is independent only for n >= 4")
    if not f.is_exact() or f.degree != 4 or not f.is_homogeneous():
        raise PreconditionError("need a homogeneous rational quartic")
    basis = quartic_basis(n)
    monos = sorted({m for p in basis for m in p.support} | set(f.support))
    rows = [[p.coefficient(m) for p in basis] for m in monos]
    sol = solve_exact(rows, [f.coefficient(m) for m in monos])
    if sol is None:
        raise PreconditionError("polynomial is not a symmetric quartic form")
    return sol.particular


@dataclass
class QuarticDecision:
    """Outcome of the symmetric-quartic test.

    ``params`` holds exact ``alpha11, alpha12, alpha22, beta11, beta12,
    beta22, gamma`` when ``sos`` is true.  ``margin`` is the numeric
    maximum of ``min(gamma, lam_min(A), lam_min(B))``.
    """

    sos: bool | None
    params: dict[str, Fraction] | None
    margin: float
    n: int

    def polynomial(self) -> Polynomial:
        if self.params is None:
            raise PreconditionError("no parameters")
        return quartic_from_params(self.params, self.n)


def quartic_from_params(p: dict, n: int) -> Polynomial:
    """Expand the parametrised representation."""
    p1, p2, p3, p4 = (_pi(j, n) for j in range(1, 5))
    g = p["gamma"]
    nn = Fraction(n * n)
    gamma_part = (p1 ** 4) * Fraction(1, 2) - p1 ** 2 * p2 + p2 ** 2 * (Fraction(n * n - 3 * n + 3) / (2 * nn)) \
        + p1 * p3 * (Fraction(2 * n - 2) / nn) + p4 * (Fraction(1 - n) / (2 * nn))
    return (p1 ** 4 * p["alpha11"] + p1 ** 2 * p2 * (2 * p["alpha12"]) + p2 ** 2 * p["alpha22"]
            + (p1 ** 2 * p2 - p1 ** 4) * p["beta11"] + (p1 * p3 - p1 ** 2 * p2) * (2 * p["beta12"])
            + (p4 - p2 ** 2) * p["beta22"] + gamma_part * g)


def _quartic_params(c: Sequence, n: int, gamma, beta11) -> dict:
    c1111, c112, c22, c13, c4 = c
    nn = n * n
    beta22 = c4 + gamma * (n - 1) / (2 * nn)
    beta12 = c13 / 2 - gamma * (n - 1) / nn
    alpha22 = c22 + beta22 - gamma * (nn - 3 * n + 3) / (2 * nn)
    alpha11 = c1111 + beta11 - gamma / 2
    alpha12 = (c112 - beta11 + 2 * beta12 + gamma) / 2
    return {"alpha11": alpha11, "alpha12": alpha12, "alpha22": alpha22,
            "beta11": beta11, "beta12": beta12, "beta22": beta22, "gamma": gamma}


def _lam2(a, b, c) -> float:
    """Smaller eigenvalue of ``[[a, b], [b, c]]``."""
    return 0.5 * (a + c) - math.hypot(0.5 * (a - c), b)


def symmetric_quartic_form(f: Polynomial | Sequence, n: int | None = None) -> QuarticDecision:
    """Decide a symmetric quartic through the two-by-two parametrisation.

    The identification leaves ``gamma`` and ``beta11`` free; the margin
    ``min(gamma, lam_min(A), lam_min(B))`` is concave in them and is
    maximised by nested golden-section search.  A non-negative maximum is
    turned into exact parameters and verified; a negative one means the
    psd conditions cannot hold.
    """
    if isinstance(f, Polynomial):
        c = quartic_coordinates(f)
        n = f.nvars
    else:
        if n is None or n < 4:
            raise PreconditionError("coordinates need n >= 4")
        c = [Fraction(v) for v in f]
        if len(c) != 5:
            raise PreconditionError("expected five coordinates")
    cf = [float(v) for v in c]
    gmax = 2 * n * n * (cf[2] + cf[4]) / (n - 2) ** 2 if n > 2 else 1.0
    if gmax < 0:
        gmax = 0.0
    scale = 1.0 + sum(abs(v) for v in cf)
    bmax = 8 * scale

    def margin(gamma, beta11):
        p = _quartic_params(cf, n, gamma, beta11)
        return min(gamma, _lam2(p["alpha11"], p["alpha12"], p["alpha22"]),
                   _lam2(p["beta11"], p["beta12"], p["beta22"]))

    def best_beta(gamma):
        res = minimize_scalar(lambda b: -margin(gamma, b), bounds=(-bmax, bmax), method="bounded",
                              options={"xatol": 1e-13})
        return -res.fun, res.x

    res = minimize_scalar(lambda g: -best_beta(g)[0], bounds=(0.0, max(gmax, 1e-12)), method="bounded",
                          options={"xatol": 1e-13})
    g_opt = float(res.x)
    for cand in (g_opt, 0.0, gmax):
        if best_beta(cand)[0] > best_beta(g_opt)[0]:
            g_opt = cand
    m_opt, b_opt = best_beta(g_opt)
    for cap in RATIONAL_CAPS:
        gq, bq = rationalize(g_opt, cap), rationalize(b_opt, cap)
        if gq < 0:
            gq = Fraction(0)
        p = _quartic_params(c, n, gq, bq)
        a = exact_matrix([[p["alpha11"], p["alpha12"]], [p["alpha12"], p["alpha22"]]])
        b = exact_matrix([[p["beta11"], p["beta12"]], [p["beta12"], p["beta22"]]])
        if ldlt_psd_check(a).psd and ldlt_psd_check(b).psd:
            return QuarticDecision(True, p, m_opt, n)
    if m_opt < -1e-9:
        return QuarticDecision(False, None, m_opt, n)
    return QuarticDecision(None, None, m_opt, n)


def symmetric_quartic_polynomial(coords: Sequence, n: int) -> Polynomial:
    out = Polynomial(n)
    for c, p in zip(coords, quartic_basis(n)):
        out = out + p * Fraction(c)
    return out
