"""Signomials, AGE certificates and orbit decomposition of SAGE problems.

An AGE signomial sum_a c_a e^<a,x> + d e^<b,x> with c > 0 is
nonnegative iff min_x sum_a c_a e^<a-b,x> >= -d.  The relative-entropy
formulation minimises sum_a v_a ln(v_a / (e c_a)) over v >= 0 with
sum_a v_a (a - b) = 0; its optimum equals -min_x sum_a c_a e^<a-b,x>,
reached at v_a = c_a e^<a-b,x*>.  We run damped Newton on the smooth
convex x-problem and recover v from its minimiser.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.optimize import minimize

from .algebra import as_scalar, scalar_from_json, scalar_to_json, solve_exact
from .errors import ConvergenceError, PreconditionError
from .groups import GroupRepresentation
from .lp import LPProblem, simplex_solve

Exponent = tuple


def _exp(a) -> tuple:
    return tuple(Fraction(as_scalar(v)) if not isinstance(v, float) else Fraction(v).limit_denominator(10**9) for v in a)


@dataclass
class Signomial:
    """sum_a c_a exp(<a, x>) with pairwise distinct exponents."""

    exponents: list[tuple]
    coeffs: list

    def __post_init__(self):
        if len(self.exponents) != len(self.coeffs):
            raise PreconditionError("need one coefficient per exponent")
        terms: dict[tuple, object] = {}
        for a, c in zip(self.exponents, self.coeffs):
            a = _exp(a)
            if a in terms:
                raise PreconditionError(f"duplicate exponent {a}")
            terms[a] = as_scalar(c)
        dims = {len(a) for a in terms}
        if len(dims) > 1:
            raise PreconditionError("exponents have different lengths")
        self.exponents = list(terms)
        self.coeffs = [terms[a] for a in self.exponents]

    @classmethod
    def from_terms(cls, terms: dict, n: int | None = None) -> "Signomial":
        items = [(a, c) for a, c in terms.items() if c != 0]
        sig = cls([a for a, _ in items], [c for _, c in items])
        return sig

    @property
    def n(self) -> int:
        return len(self.exponents[0]) if self.exponents else 0

    @property
    def terms(self) -> dict:
        return dict(zip(self.exponents, self.coeffs))

    def coefficient(self, a) -> object:
        return self.terms.get(_exp(a), Fraction(0))

    def __call__(self, x: Sequence[float]) -> float:
        x = np.asarray(x, dtype=float)
        return float(sum(float(c) * math.exp(float(np.dot([float(v) for v in a], x))) for a, c in self.terms.items()))

    def shift(self, lam) -> "Signomial":
        """f - lam."""
        terms = self.terms
        zero = tuple(Fraction(0) for _ in range(self.n))
        terms[zero] = terms.get(zero, Fraction(0)) - as_scalar(lam)
        return Signomial.from_terms(terms)

    def scale(self, s) -> "Signomial":
        return Signomial(self.exponents, [c * as_scalar(s) for c in self.coeffs])

    def act(self, mat: np.ndarray) -> "Signomial":
        """Apply an exponent map a -> mat a."""
        return Signomial([_apply(mat, a) for a in self.exponents], list(self.coeffs))

    def __eq__(self, other):
        return isinstance(other, Signomial) and self.terms == other.terms

    def to_json(self) -> dict:
        return {"exponents": [[scalar_to_json(v) for v in a] for a in self.exponents],
                "coeffs": [scalar_to_json(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "Signomial":
        try:
            exps = [tuple(scalar_from_json(v) for v in a) for a in data["exponents"]]
            return cls(exps, [scalar_from_json(c) for c in data["coeffs"]])
        except (KeyError, TypeError) as exc:
            raise PreconditionError(f"malformed signomial JSON: {exc}") from exc

    def format(self, names: Sequence[str] | None = None) -> str:
        names = names or ["x", "y", "z"][: self.n] if self.n <= 3 else [f"x{i + 1}" for i in range(self.n)]
        parts = []
        for a, c in sorted(self.terms.items(), key=lambda t: tuple(-v for v in t[0])):
            lin = "+".join(f"{v}{nm}" if v != 1 else nm for v, nm in zip(a, names) if v != 0)
            parts.append(f"{c}" if not lin else f"{c}*e^({lin})")
        return " + ".join(parts) if parts else "0"


def _apply(mat, a) -> tuple:
    out = []
    for i in range(len(a)):
        s = Fraction(0)
        for j, v in enumerate(a):
            m = mat[i][j]
            if m != 0:
                s += Fraction(m) * v if not isinstance(m, float) else Fraction(m).limit_denominator(10**9) * v
        out.append(s)
    return tuple(out)


# ---------------------------------------------------------------------------
# AGE feasibility


@dataclass
class AGECandidate:
    support: list[tuple]
    coeffs: list
    beta: tuple
    d: object

    def __post_init__(self):
        self.support = [_exp(a) for a in self.support]
        self.beta = _exp(self.beta)
        if any(float(c) <= 0 for c in self.coeffs):
            raise PreconditionError("AGE coefficients on the positive support must be > 0")
        if self.beta in self.support:
            raise PreconditionError("beta must not belong to the positive support")

    def signomial(self) -> Signomial:
        return Signomial(self.support + [self.beta], list(self.coeffs) + [self.d])


@dataclass
class EntropyCertificate:
    nu: list[float]
    entropy: float
    point: list[float]
    balance_residual: float
    kkt_residual: float


@dataclass
class AGEResult:
    feasible: bool
    certificate: EntropyCertificate | None
    entropy: float | None
    reason: str = ""


def relative_interior(support: Sequence[tuple], beta: tuple, margin: float = 1e-9) -> tuple[bool, bool]:
    """(beta in conv(support), beta in its relative interior), by exact LPs."""
    k = len(support)
    n = len(beta)
    a_eq = [[Fraction(1)] * k] + [[a[i] for a in support] for i in range(n)]
    b_eq = [Fraction(1)] + list(beta)
    inside = simplex_solve(LPProblem([0] * k, a_eq, b_eq)).optimal
    if not inside:
        return False, False
    # maximise t with lambda_a >= t for all a
    c = [0] * k + [1]
    a_eq2 = [r + [0] for r in a_eq]
    a_ub = [[Fraction(-1) if j == i else 0 for j in range(k)] + [1] for i in range(k)]
    res = simplex_solve(LPProblem(c, a_eq2, b_eq, a_ub, [0] * k, "max", [True] * k + [False]))
    return True, res.optimal and float(res.value) > margin


def _entropy(nu, c) -> float:
    return float(sum(v * math.log(v / (math.e * ci)) for v, ci in zip(nu, c) if v > 0))


def entropy_minimum(support: Sequence[tuple], coeffs: Sequence, beta: tuple, max_iter: int = 200,
                    tol: float = 1e-9) -> EntropyCertificate:
    """Minimise the relative entropy on the balance slice via damped Newton on the dual."""
    c = np.array([float(v) for v in coeffs])
    shifts = np.array([[float(a_i - b_i) for a_i, b_i in zip(a, beta)] for a in support])
    if not shifts.size or np.allclose(shifts, 0):
        nu = c.copy()
        return EntropyCertificate(list(nu), _entropy(nu, c), [0.0] * len(beta), 0.0, 0.0)
    # coordinates on the span of the shifted exponents
    _, s, vt = np.linalg.svd(shifts, full_matrices=False)
    rank = int(np.sum(s > 1e-12 * s[0]))
    basis = vt[:rank]
    w = shifts @ basis.T

    def parts(y):
        e = c * np.exp(w @ y)
        return float(e.sum()), w.T @ e, (w.T * e) @ w

    y = np.zeros(rank)
    for _ in range(max_iter):
        val, grad, hess = parts(y)
        step = np.linalg.solve(hess + 1e-14 * np.eye(rank), -grad)
        decrement = float(-grad @ step)
        if np.linalg.norm(grad) <= 1e-13 * max(1.0, val) or np.linalg.norm(step) <= 1e-12 * (1.0 + np.linalg.norm(y)):
            break
        t = 1.0
        # inside the quadratic region the full step is safe and roundoff would stall the search
        while decrement > 1e-8 * max(1.0, val) and parts(y + t * step)[0] > val - 1e-4 * t * decrement and t > 1e-12:
            t /= 2
        if t <= 1e-12:
            # no further decrease representable; accept if stationary to working precision
            if np.linalg.norm(grad) <= 1e-6 * max(1.0, val):
                break
            raise ConvergenceError("entropy Newton line search failed")
        y = y + t * step
    else:
        raise ConvergenceError("entropy Newton iteration did not converge (beta may lie on the boundary)")
    nu = c * np.exp(w @ y)
    bal = float(np.linalg.norm(nu @ shifts))
    # KKT: ln(nu / (e c)) + 1 + <shift, x> = 0 with x = -basis^T y
    x = -(basis.T @ y)
    kkt = float(np.max(np.abs(np.log(nu / c) + shifts @ x))) if len(nu) else 0.0
    return EntropyCertificate(list(map(float, nu)), _entropy(nu, c), list(map(float, x)), bal, kkt)


def age_feasible(cand: AGECandidate, tol: float = 1e-9) -> AGEResult:
    inside, relint = relative_interior(cand.support, cand.beta)
    if not relint:
        where = "on the boundary of" if inside else "outside"
        return AGEResult(False, None, None, f"beta lies {where} the convex hull of the positive support")
    cert = entropy_minimum(cand.support, cand.coeffs, cand.beta)
    feasible = cert.entropy <= float(cand.d) + tol
    return AGEResult(feasible, cert, cert.entropy, "" if feasible else "minimum entropy exceeds d")


# ---------------------------------------------------------------------------
# orbit decomposition


def _exponent_matrices(rep: GroupRepresentation) -> list[np.ndarray]:
    return [rep.matrix(i) for i in range(rep.order)]


def check_exponent_invariance(f: Signomial, rep: GroupRepresentation) -> bool:
    terms = f.terms
    for i in rep.generators:
        m = rep.matrix(i)
        for a, c in terms.items():
            if terms.get(_apply(m, a), Fraction(0)) != c:
                return False
    return True


@dataclass
class AGETemplate:
    """AGE signomial h_beta with coefficients tied on stabiliser orbits."""

    beta: tuple
    stabilizer: list[int]
    cosets: list[int]  # one group element per orbit point of beta
    support: list[tuple]
    classes: list[list[int]]  # indices into support sharing one unknown
    d: object

    def signomial(self, values: Sequence) -> Signomial:
        coeffs = [None] * len(self.support)
        for cls, v in zip(self.classes, values):
            for k in cls:
                coeffs[k] = v
        return Signomial(self.support + [self.beta], coeffs + [self.d])


def orbit_decompose(f: Signomial, rep: GroupRepresentation) -> list[AGETemplate]:
    if rep.degree != f.n and f.exponents:
        raise PreconditionError("group degree does not match the exponent dimension")
    if not check_exponent_invariance(f, rep):
        raise PreconditionError("signomial is not invariant under the exponent action")
    mats = _exponent_matrices(rep)
    terms = f.terms
    neg = sorted(a for a, c in terms.items() if float(c) < 0)
    pos = sorted(a for a, c in terms.items() if float(c) > 0)
    seen = set()
    out = []
    for b in neg:
        if b in seen:
            continue
        orbit: dict[tuple, int] = {}
        stab = []
        for i, m in enumerate(mats):
            img = _apply(m, b)
            orbit.setdefault(img, i)
            if img == b:
                stab.append(i)
        seen.update(orbit)
        rep_b = min(orbit)
        stab = [i for i, m in enumerate(mats) if _apply(m, rep_b) == rep_b]
        cosets = {}
        for i, m in enumerate(mats):
            cosets.setdefault(_apply(m, rep_b), i)
        classes = []
        assigned = {}
        for a in pos:
            if a in assigned:
                continue
            cls = sorted({pos.index(_apply(mats[s], a)) for s in stab})
            for j in cls:
                assigned[pos[j]] = len(classes)
            classes.append(cls)
        out.append(AGETemplate(rep_b, stab, [cosets[p] for p in sorted(cosets)], list(pos), classes, terms[rep_b]))
    return out


@dataclass
class Identification:
    status: str  # "unique", "underdetermined", "inconsistent"
    templates: list[AGETemplate]
    values: list[list] | None = None
    dof: int = 0
    particular: list | None = None
    nullspace: list | None = None

    def signomials(self) -> list[Signomial]:
        if self.values is None:
            raise PreconditionError("coefficients are not determined")
        return [t.signomial(v) for t, v in zip(self.templates, self.values)]

    def split(self, flat: Sequence) -> list[list]:
        out, k = [], 0
        for t in self.templates:
            out.append(list(flat[k:k + len(t.classes)]))
            k += len(t.classes)
        return out


def _orbit_sum_rows(f: Signomial, rep: GroupRepresentation, templates: list[AGETemplate]):
    """Linear map from template unknowns to the coefficients of the orbit sum."""
    mats = _exponent_matrices(rep)
    cols = []
    for t in templates:
        for cls in t.classes:
            contrib: dict[tuple, Fraction] = {}
            for g in t.cosets:
                for k in cls:
                    img = _apply(mats[g], t.support[k])
                    contrib[img] = contrib.get(img, Fraction(0)) + 1
            cols.append(contrib)
    rows = sorted({a for col in cols for a in col} | {a for a, c in f.terms.items() if float(c) > 0})
    a = [[col.get(r, Fraction(0)) for col in cols] for r in rows]
    b = [f.coefficient(r) if float(f.coefficient(r)) > 0 else Fraction(0) for r in rows]
    return rows, a, b


def identify_coefficients(f: Signomial, templates: list[AGETemplate], rep: GroupRepresentation) -> Identification:
    """Match f against sum over representatives and cosets of rho h_beta."""
    if not templates:
        return Identification("unique", [], [])
    _, a, b = _orbit_sum_rows(f, rep, templates)
    sol = solve_exact(a, b)
    if sol is None:
        return Identification("inconsistent", templates)
    ident = Identification("unique" if sol.dof == 0 else "underdetermined", templates, dof=sol.dof,
                           particular=sol.particular, nullspace=sol.nullspace)
    if sol.dof == 0:
        ident.values = ident.split(sol.particular)
    return ident


def orbit_sum(templates: list[AGETemplate], values: list[list], rep: GroupRepresentation) -> Signomial:
    mats = _exponent_matrices(rep)
    total: dict[tuple, Fraction] = {}
    for t, v in zip(templates, values):
        h = t.signomial(v)
        for g in t.cosets:
            for a, c in h.act(mats[g]).terms.items():
                total[a] = total.get(a, Fraction(0)) + c
    return Signomial.from_terms(total)


# ---------------------------------------------------------------------------
# SAGE feasibility and bounds


@dataclass
class SAGECertificate:
    templates: list[AGETemplate]
    values: list[list]
    results: list[AGEResult]

    def verify(self, f: Signomial, rep: GroupRepresentation, tol: float = 1e-7) -> bool:
        g = orbit_sum(self.templates, self.values, rep)
        diff = {a: float(f.coefficient(a)) - float(g.coefficient(a)) for a in set(f.terms) | set(g.terms)}
        if any(abs(v) > 1e-9 for v in diff.values()):
            return False
        for t, v, r in zip(self.templates, self.values, self.results):
            cert = r.certificate
            if cert is None:
                return False
            c = [None] * len(t.support)
            for cls, val in zip(t.classes, v):
                for k in cls:
                    c[k] = val
            if _entropy(cert.nu, [float(x) for x in c]) > float(t.d) + tol:
                return False
        return True


@dataclass
class SAGEResult:
    feasible: bool
    certificate: SAGECertificate | None
    margin: float
    reason: str = ""
    dof: int = 0


def _margin(t: AGETemplate, values) -> tuple[float, AGEResult | None]:
    c = []
    for k in range(len(t.support)):
        c.append(next(v for cls, v in zip(t.classes, values) if k in cls))
    if any(float(v) <= 0 for v in c):
        return -math.inf, None
    cand = AGECandidate(t.support, c, t.beta, t.d)
    res = age_feasible(cand)
    if res.certificate is None:
        return -math.inf, res
    return float(t.d) - res.entropy, res


def sage_feasible(f: Signomial, rep: GroupRepresentation, tol: float = 1e-9) -> SAGEResult:
    """Decide SAGE membership via orbit decomposition.

    Free coefficients left by the identification are chosen by
    maximising the smallest AGE margin d - entropy, which is concave in
    the template coefficients.
    """
    templates = orbit_decompose(f, rep)
    if not templates:
        return SAGEResult(True, SAGECertificate([], [], []), math.inf)
    ident = identify_coefficients(f, templates, rep)
    if ident.status == "inconsistent":
        return SAGEResult(False, None, -math.inf, "coefficient identification is inconsistent")

    def evaluate(flat):
        vals = ident.split(flat)
        worst, results = math.inf, []
        for t, v in zip(templates, vals):
            m, r = _margin(t, v)
            worst = min(worst, m)
            results.append(r)
        return worst, vals, results

    if ident.status == "unique":
        flat = ident.particular
    else:
        p0 = np.array([float(v) for v in ident.particular])
        ns = np.array([[float(v) for v in row] for row in ident.nullspace])

        def neg(t):
            m, _, _ = evaluate(p0 + t @ ns)
            return 1e6 if not math.isfinite(m) else -m

        best = minimize(neg, np.zeros(len(ns)), method="Nelder-Mead",
                        options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 4000})
        # stay on the exact affine solution family
        flat = list(ident.particular)
        t_exact = [Fraction(v).limit_denominator(10**9) for v in best.x]
        for tv, row in zip(t_exact, ident.nullspace):
            flat = [a + tv * b for a, b in zip(flat, row)]
    margin, vals, results = evaluate(flat)
    ok = margin >= -tol
    cert = SAGECertificate(templates, vals, results) if all(r is not None and r.certificate for r in results) else None
    return SAGEResult(ok, cert, margin, "" if ok else "an AGE condition fails", ident.dof)


def sage_bound(f: Signomial, rep: GroupRepresentation, bound: float = 1e3, tol: float = 1e-7,
               samples: int = 200, seed: int = 0) -> float:
    """Largest lam (by bisection) with f - lam SAGE; -inf when none in range."""
    rng = np.random.default_rng(seed)
    pts = [np.zeros(f.n)] + [rng.normal(size=f.n) for _ in range(samples)]
    hi = min(f(p) for p in pts)
    lo = -bound
    if not sage_feasible(f.shift(Fraction(lo).limit_denominator(10**9)), rep).feasible:
        return -math.inf
    if sage_feasible(f.shift(Fraction(hi).limit_denominator(10**12)), rep).feasible:
        return hi
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if sage_feasible(f.shift(Fraction(mid).limit_denominator(10**12)), rep).feasible:
            lo = mid
        else:
            hi = mid
    return lo
