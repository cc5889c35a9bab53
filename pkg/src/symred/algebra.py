"""Scalars, sparse polynomials, dense matrices and exact linear algebra.

Exact scalars are :class:`fractions.Fraction`; inexact ones are Python
floats or complex numbers.  Polynomials are sparse dictionaries from
exponent tuples to coefficients and print in graded lexicographic order
(higher degree first, ties broken lexicographically with X1 > X2 > ...).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from numbers import Number
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _kernels
from .errors import ConvergenceError, PreconditionError

Scalar = Fraction | float | complex
Monomial = tuple[int, ...]


# ---------------------------------------------------------------------------
# scalars


def as_scalar(x) -> Scalar:
    """Normalise ``x`` to Fraction (exact) or float/complex (inexact)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (bool, int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, (complex, np.complexfloating)):
        return complex(x)
    if isinstance(x, Number):
        return Fraction(x)
    raise TypeError(f"not a scalar: {x!r}")


def is_exact(x) -> bool:
    return isinstance(x, (Fraction, int, np.integer))


def scalar_to_json(x):
    x = as_scalar(x)
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    x = complex(x)
    return [x.real, x.imag]


def scalar_from_json(v) -> Scalar:
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, bool):
        raise PreconditionError(f"bad scalar {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        return v
    if isinstance(v, (list, tuple)) and len(v) == 2:
        re, im = float(v[0]), float(v[1])
        return re if im == 0 else complex(re, im)
    raise PreconditionError(f"bad scalar {v!r}")


def to_float(x) -> float | complex:
    if isinstance(x, complex):
        return x
    return float(x)


def rationalize(x, max_den: int = 10**6) -> Fraction:
    """Nearest fraction with denominator at most ``max_den``."""
    if isinstance(x, complex):
        x = x.real
    return Fraction(float(x)).limit_denominator(max_den)


# ---------------------------------------------------------------------------
# monomials


def grlex_key(e: Monomial):
    return (sum(e), e)


def monomials_of_degree(nvars: int, d: int) -> list[Monomial]:
    """All exponent vectors of total degree ``d`` in grlex descending order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


def monomials_up_to(nvars: int, d: int, homogeneous: bool = False) -> list[Monomial]:
    """Monomials of degree <= d (or == d) in ascending grlex order."""
    degs = [d] if homogeneous else range(d + 1)
    out = []
    for k in degs:
        out.extend(reversed(monomials_of_degree(nvars, k)))
    return out


def _fmt_monomial(e: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, k in zip(names, e):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Sparse polynomial in ``nvars`` variables.

    Instances are treated as immutable.  Zero coefficients are never
    stored, so structural equality is coefficient equality.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping | Iterable | None = None):
        if nvars < 0:
            raise PreconditionError("nvars must be non-negative")
        self.nvars = nvars
        self._hash = None
        clean: dict[Monomial, Scalar] = {}
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for e, c in items:
            e = tuple(int(v) for v in e)
            if len(e) != nvars:
                raise PreconditionError(f"exponent {e} has wrong length for {nvars} variables")
            if any(v < 0 for v in e):
                raise PreconditionError(f"negative exponent in {e}")
            c = as_scalar(c)
            s = clean.get(e, 0) + c
            if s == 0:
                clean.pop(e, None)
            else:
                clean[e] = s
        self._terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    # constructors

    @classmethod
    def constant(cls, c, nvars: int) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, i: int, nvars: int) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, e: Monomial, c=1) -> "Polynomial":
        return cls(len(e), {tuple(e): c})

    # inspection

    @property
    def terms(self) -> dict[Monomial, Scalar]:
        return dict(self._terms)

    def items(self):
        """Terms in grlex descending order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def coefficient(self, e: Monomial) -> Scalar:
        return self._terms.get(tuple(e), Fraction(0))

    @property
    def support(self) -> list[Monomial]:
        return [e for e, _ in self.items()]

    def is_zero(self) -> bool:
        return not self._terms

    def is_exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self._terms.values())

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial._raw(self.nvars, {e: c for e, c in self._terms.items() if sum(e) == d})

    def leading_term(self) -> tuple[Monomial, Scalar]:
        if not self._terms:
            raise PreconditionError("zero polynomial has no leading term")
        e = max(self._terms, key=grlex_key)
        return e, self._terms[e]

    def __len__(self):
        return len(self._terms)

    # arithmetic

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise PreconditionError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        return Polynomial.constant(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = as_scalar(other)
            if c == 0:
                return Polynomial._raw(self.nvars, {})
            return Polynomial._raw(self.nvars, {e: v * c for e, v in self._terms.items()})
        other = self._coerce(other)
        out: dict[Monomial, Scalar] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial._raw(self.nvars, {e: c for e, c in out.items() if c != 0})

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = as_scalar(other)
        if isinstance(c, Fraction):
            return self * (1 / c)
        return self * (1.0 / c)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise PreconditionError("exponent must be a non-negative integer")
        result = Polynomial.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, Number):
            return self == Polynomial.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def almost_equal(self, other: "Polynomial", tol: float = 1e-9) -> bool:
        diff = self - other
        return all(abs(complex(c)) <= tol for c in diff._terms.values())

    # evaluation and substitution

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple, np.ndarray)):
            point = tuple(point[0])
        return self.evaluate(point)

    def evaluate(self, point: Sequence):
        if len(point) != self.nvars:
            raise PreconditionError("point has wrong dimension")
        total = 0
        for e, c in self._terms.items():
            m = c
            for x, k in zip(point, e):
                if k:
                    m = m * x**k
            total = total + m
        return total

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """Float evaluation at many points (rows of ``points``)."""
        coeffs, exps = self.to_arrays()
        pts = np.ascontiguousarray(points, dtype=np.float64).reshape(-1, self.nvars)
        return _kernels.eval_polynomial(coeffs, exps, pts)

    def to_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        items = self.items()
        coeffs = np.array([float(complex(c).real) for _, c in items], dtype=np.float64)
        exps = np.array([e for e, _ in items], dtype=np.int64).reshape(len(items), self.nvars)
        return coeffs, exps

    def compose(self, subs: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute ``subs[i]`` for variable i."""
        if len(subs) != self.nvars:
            raise PreconditionError("need one substitute per variable")
        if not subs:
            return self
        m = subs[0].nvars
        powers: list[dict[int, Polynomial]] = [{0: Polynomial.constant(1, m)} for _ in subs]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * subs[i]
            return cache[k]

        out = Polynomial._raw(m, {})
        for e, c in self._terms.items():
            term = Polynomial.constant(c, m)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def permute(self, perm: Sequence[int]) -> "Polynomial":
        """Replace X_i by X_{perm[i]} (0-based)."""
        out = {}
        for e, c in self._terms.items():
            f = [0] * self.nvars
            for i, k in enumerate(e):
                f[perm[i]] = k
            out[tuple(f)] = c
        return Polynomial._raw(self.nvars, out)

    def linear_substitution(self, mat) -> "Polynomial":
        """Return f(M x), i.e. replace X_i by sum_j M[i][j] X_j."""
        mat = np.asarray(mat, dtype=object)
        n = self.nvars
        lin = []
        for i in range(n):
            lin.append(Polynomial(n, {tuple(int(k == j) for k in range(n)): mat[i, j] for j in range(n) if mat[i, j] != 0}))
        return self.compose(lin)

    def derivative(self, i: int, k: int = 1) -> "Polynomial":
        out = {}
        for e, c in self._terms.items():
            if e[i] >= k:
                f = list(e)
                f[i] -= k
                out[tuple(f)] = c * math.perm(e[i], k)
        return Polynomial._raw(self.nvars, out)

    def gradient(self) -> list["Polynomial"]:
        return [self.derivative(i) for i in range(self.nvars)]

    def map_coefficients(self, fn) -> "Polynomial":
        return Polynomial(self.nvars, {e: fn(c) for e, c in self._terms.items()})

    def to_float(self) -> "Polynomial":
        return self.map_coefficients(to_float)

    def embed(self, nvars: int, positions: Sequence[int] | None = None) -> "Polynomial":
        """View as a polynomial in ``nvars`` variables."""
        positions = list(range(self.nvars)) if positions is None else list(positions)
        out = {}
        for e, c in self._terms.items():
            f = [0] * nvars
            for i, k in zip(positions, e):
                f[i] = k
            out[tuple(f)] = c
        return Polynomial._raw(nvars, out)

    # serialisation

    def to_json(self) -> dict:
        return {
            "vars": self.nvars,
            "terms": [{"c": scalar_to_json(c), "e": list(e)} for e, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Polynomial":
        try:
            n = int(data["vars"])
            terms = [(tuple(t["e"]), scalar_from_json(t["c"])) for t in data["terms"]]
        except (KeyError, TypeError) as exc:
            raise PreconditionError(f"malformed polynomial JSON: {exc}") from exc
        return cls(n, terms)

    def format(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"X{i + 1}" for i in range(self.nvars)]
        if not self._terms:
            return "0"
        out = []
        for e, c in self.items():
            mono = _fmt_monomial(e, names)
            if isinstance(c, Fraction):
                sign = "-" if c < 0 else "+"
                a = abs(c)
                if mono and a == 1:
                    body = mono
                elif mono:
                    body = f"{a}*{mono}"
                else:
                    body = str(a)
            else:
                sign = "+"
                body = f"({c})*{mono}" if mono else f"({c})"
            out.append((sign, body))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Polynomial({self.nvars}, {self.format()!r})"


def variables(n: int) -> list[Polynomial]:
    return [Polynomial.variable(i, n) for i in range(n)]


def elementary_symmetric(k: int, n: int) -> Polynomial:
    from itertools import combinations

    terms = {}
    for idx in combinations(range(n), k):
        e = [0] * n
        for i in idx:
            e[i] = 1
        terms[tuple(e)] = Fraction(1)
    return Polynomial(n, terms)


def power_sum(k: int, n: int) -> Polynomial:
    terms = {}
    for i in range(n):
        e = [0] * n
        e[i] = k
        terms[tuple(e)] = Fraction(1)
    return Polynomial(n, terms)


# ---------------------------------------------------------------------------
# dense matrices


def exact_matrix(rows) -> np.ndarray:
    """Object array of Fractions."""
    arr = np.array(rows, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        v = as_scalar(v)
        if not isinstance(v, Fraction):
            raise PreconditionError("exact_matrix needs rational entries")
        out[idx] = v
    return out


def matrix_is_exact(m) -> bool:
    m = np.asarray(m)
    if m.dtype.kind in "iub":
        return True
    if m.dtype == object:
        return all(is_exact(v) for v in m.flat)
    return False


def matrix_to_json(m) -> list:
    m = np.asarray(m)
    return [[scalar_to_json(v) for v in row] for row in m]


def matrix_from_json(data) -> np.ndarray:
    rows = [[scalar_from_json(v) for v in row] for row in data]
    if rows and len({len(r) for r in rows}) != 1:
        raise PreconditionError("ragged matrix")
    if all(isinstance(v, Fraction) for r in rows for v in r):
        return exact_matrix(rows) if rows else np.empty((0, 0), dtype=object)
    return np.array([[complex(v) for v in r] for r in rows])


def to_float_matrix(m) -> np.ndarray:
    m = np.asarray(m)
    if m.dtype == object:
        if any(isinstance(v, complex) for v in m.flat):
            return m.astype(complex)
        return m.astype(float)
    return m


# ---------------------------------------------------------------------------
# exact linear algebra over Q


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals."""
    a = [[Fraction(v) for v in r] for r in rows]
    if not a:
        return a, []
    ncols = len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        if inv != 1:
            a[r] = [v * inv for v in a[r]]
        row_r = a[r]
        nz = [j for j in range(c, ncols) if row_r[j] != 0]
        for i in range(len(a)):
            if i != r:
                f = a[i][c]
                if f != 0:
                    row_i = a[i]
                    for j in nz:
                        row_i[j] -= f * row_r[j]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank_exact(rows) -> int:
    return len(rref(rows)[1])


@dataclass
class LinearSolution:
    """Affine solution set ``particular + span(nullspace)``."""

    particular: list[Fraction]
    nullspace: list[list[Fraction]]

    @property
    def dof(self) -> int:
        return len(self.nullspace)

    def point(self, params: Sequence) -> list[Fraction]:
        x = list(self.particular)
        for t, v in zip(params, self.nullspace):
            for i, vi in enumerate(v):
                x[i] += t * vi
        return x


def solve_exact(a: Sequence[Sequence], b: Sequence) -> LinearSolution | None:
    """Solve ``a x = b`` over Q; None when inconsistent."""
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    aug = [list(a[i]) + [b[i]] for i in range(nrows)]
    red, piv = rref(aug)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(piv):
        x[c] = red[i][ncols]
    free = [c for c in range(ncols) if c not in set(piv)]
    null = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(piv):
            v[c] = -red[i][f]
        null.append(v)
    return LinearSolution(x, null)


def nullspace_exact(a: Sequence[Sequence]) -> list[list[Fraction]]:
    if not a:
        return []
    sol = solve_exact(a, [0] * len(a))
    return sol.nullspace if sol else []


def inverse_exact(m) -> np.ndarray:
    m = exact_matrix(m)
    n = m.shape[0]
    aug = [list(m[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise PreconditionError("matrix is singular")
    return exact_matrix([row[n:] for row in red])


# ---------------------------------------------------------------------------
# PSD certificates


@dataclass
class PSDResult:
    """Outcome of :func:`ldlt_psd_check`.

    When ``psd`` is true, ``perm``, ``lower`` and ``diag`` satisfy
    ``M[perm][:, perm] == lower @ diag(diag) @ lower.T`` exactly with a
    non-negative ``diag``.  Otherwise ``witness`` is a rational vector
    with ``witness @ M @ witness == value < 0``.
    """

    psd: bool
    perm: list[int] | None = None
    lower: np.ndarray | None = None
    diag: list[Fraction] | None = None
    witness: list[Fraction] | None = None
    value: Fraction | None = None

    def __bool__(self):
        return self.psd


def quadratic_form(m, v) -> Fraction:
    m = np.asarray(m, dtype=object)
    n = len(v)
    return sum(v[i] * m[i, j] * v[j] for i in range(n) for j in range(n) if v[i] and v[j])


def ldlt_psd_check(m) -> PSDResult:
    """Exact PSD test of a rational symmetric matrix.

    Cheap 1x1 and 2x2 witnesses are tried first, then a symmetrically
    pivoted LDL^T factorisation.  A zero pivot with a non-zero row yields
    a 2x2 witness; a negative pivot yields a witness lifted back through
    the eliminated coordinates.
    """
    a = exact_matrix(m)
    n = a.shape[0]
    if a.shape != (n, n):
        raise PreconditionError("matrix must be square")
    for i in range(n):
        for j in range(i + 1, n):
            if a[i, j] != a[j, i]:
                raise PreconditionError("matrix must be symmetric")
    zero = Fraction(0)
    for i in range(n):
        if a[i, i] < 0:
            w = [zero] * n
            w[i] = Fraction(1)
            return PSDResult(False, witness=w, value=a[i, i])
    for i in range(n):
        for j in range(i + 1, n):
            if a[i, j] != 0 and a[i, i] + a[j, j] - 2 * abs(a[i, j]) < 0:
                w = [zero] * n
                w[i] = Fraction(1)
                w[j] = Fraction(-1 if a[i, j] > 0 else 1)
                return PSDResult(False, witness=w, value=quadratic_form(a, w))

    s = [[a[i, j] for j in range(n)] for i in range(n)]  # working Schur complement
    remaining = list(range(n))
    eliminated: list[int] = []
    cols: dict[int, dict[int, Fraction]] = {}
    diag: dict[int, Fraction] = {}
    while remaining:
        piv = max(remaining, key=lambda k: s[k][k])
        d = s[piv][piv]
        if d < 0:
            return _lifted_witness(a, eliminated, {piv: Fraction(1)})
        if d == 0:
            neg = next((k for k in remaining if s[k][k] < 0), None)
            if neg is not None:
                return _lifted_witness(a, eliminated, {neg: Fraction(1)})
            bad = next(((k, l) for k in remaining for l in remaining if s[k][l] != 0), None)
            if bad is None:
                break
            k, l = bad
            w = {k: Fraction(1), l: Fraction(-1 if s[k][l] > 0 else 1)}
            return _lifted_witness(a, eliminated, w)
        remaining.remove(piv)
        col = {k: s[k][piv] / d for k in remaining}
        for k in remaining:
            if col[k] != 0:
                f = col[k] * d
                for l in remaining:
                    if s[piv][l] != 0:
                        s[k][l] -= f * s[piv][l] / d
        cols[piv] = col
        diag[piv] = d
        eliminated.append(piv)
    perm = eliminated + remaining
    pos = {p: i for i, p in enumerate(perm)}
    lower = np.empty((n, n), dtype=object)
    lower.fill(zero)
    for i in range(n):
        lower[i, i] = Fraction(1)
    for piv, col in cols.items():
        for k, v in col.items():
            lower[pos[k], pos[piv]] = v
    dvec = [diag.get(p, zero) for p in perm]
    return PSDResult(True, perm=perm, lower=lower, diag=dvec)


def _lifted_witness(a, eliminated: list[int], tail: dict[int, Fraction]) -> PSDResult:
    n = a.shape[0]
    w = [Fraction(0)] * n
    for k, v in tail.items():
        w[k] = v
    if eliminated:
        # choose w_P to minimise the form: A_PP w_P = -A_PR w_R
        p = eliminated
        rhs = [-sum(a[i, k] * v for k, v in tail.items()) for i in p]
        sol = solve_exact([[a[i, j] for j in p] for i in p], rhs)
        for i, v in zip(p, sol.particular):
            w[i] = v
    val = quadratic_form(a, w)
    return PSDResult(False, witness=w, value=val)


def verify_ldlt(m, res: PSDResult) -> bool:
    """Re-check an LDL^T certificate exactly."""
    a = exact_matrix(m)
    if not res.psd:
        return res.witness is not None and quadratic_form(a, res.witness) < 0
    if any(d < 0 for d in res.diag):
        return False
    p = res.perm
    prod = res.lower.dot(np.diag(np.array(res.diag, dtype=object))).dot(res.lower.T)
    return all(prod[i, j] == a[p[i], p[j]] for i in range(len(p)) for j in range(len(p)))


# ---------------------------------------------------------------------------
# eigenvalues


def sym_eigenvalues(m, tol: float = 1e-12, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi sweeps."""
    a = np.asarray(to_float_matrix(np.asarray(m)), dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise PreconditionError("matrix must be square")
    if a.size and np.max(np.abs(a - a.T)) > 1e-9 * max(1.0, np.max(np.abs(a))):
        raise PreconditionError("matrix must be symmetric")
    if a.shape[0] == 0:
        return np.zeros(0)
    w, sweeps = _kernels.jacobi_eigenvalues(np.ascontiguousarray(a), tol, max_sweeps)
    if sweeps < 0:
        raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")
    return w


def hermitian_eigenvalues(m, tol: float = 1e-12) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix via its real 2n x 2n embedding."""
    m = np.asarray(m, dtype=complex)
    if np.max(np.abs(m.imag), initial=0.0) == 0:
        return sym_eigenvalues(m.real, tol)
    big = np.block([[m.real, -m.imag], [m.imag, m.real]])
    big = (big + big.T) / 2
    return sym_eigenvalues(big, tol)[::2]


# ---------------------------------------------------------------------------
# matrix polynomials


class MatrixPolynomial:
    """Dense matrix whose entries are polynomials in a common ring."""

    __slots__ = ("entries", "nvars")

    def __init__(self, entries: Sequence[Sequence[Polynomial]]):
        rows = [tuple(r) for r in entries]
        if not rows or len({len(r) for r in rows}) != 1:
            raise PreconditionError("matrix polynomial must be a non-empty rectangle")
        nv = {p.nvars for r in rows for p in r}
        if len(nv) != 1:
            raise PreconditionError("entries live in different rings")
        self.entries = tuple(rows)
        self.nvars = nv.pop()

    @property
    def shape(self):
        return len(self.entries), len(self.entries[0])

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def is_symmetric(self) -> bool:
        r, c = self.shape
        return r == c and all(self.entries[i][j] == self.entries[j][i] for i in range(r) for j in range(i))

    def evaluate(self, point) -> np.ndarray:
        vals = [[p.evaluate(point) for p in row] for row in self.entries]
        if all(isinstance(v, Fraction) for r in vals for v in r):
            return exact_matrix(vals)
        return np.array([[complex(v).real for v in r] for r in vals])

    def substitute(self, subs: Sequence[Polynomial]) -> "MatrixPolynomial":
        return MatrixPolynomial([[p.compose(subs) for p in row] for row in self.entries])

    def max_degree(self) -> int:
        return max(p.degree for r in self.entries for p in r)

    def __eq__(self, other):
        return isinstance(other, MatrixPolynomial) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def to_json(self) -> dict:
        return {"vars": self.nvars, "entries": [[p.to_json() for p in r] for r in self.entries]}

    @classmethod
    def from_json(cls, data) -> "MatrixPolynomial":
        return cls([[Polynomial.from_json(p) for p in r] for r in data["entries"]])

    def format(self, names=None) -> str:
        return "[" + ",\n ".join("[" + ", ".join(p.format(names) for p in r) + "]" for r in self.entries) + "]"

    def __repr__(self):
        return f"MatrixPolynomial({self.format()})"
