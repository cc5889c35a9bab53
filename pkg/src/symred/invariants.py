"""Symmetric-function bases, Specht polynomials and H-matrices.

Rewriting works by leading-term elimination in graded lex order.  For
the elementary basis the leading exponent ``a`` of a symmetric
polynomial is a partition and ``e_1^(a1-a2) ... e_n^an`` has the same
leading monomial, so each step strictly lowers the leading term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Sequence

import numpy as np

from .algebra import (
    MatrixPolynomial,
    Polynomial,
    elementary_symmetric,
    grlex_key,
    power_sum,
    rref,
    solve_exact,
    variables,
)
from .errors import CapacityError, PreconditionError, SymredError
from .groups import (
    DihedralGroup,
    GroupRepresentation,
    SymmetricGroup,
    Tableau,
    act_on_polynomial,
    partitions,
    perm_sign,
    reynolds,
    standard_tableaux,
)

MAX_NEWTON = 12
MAX_STEPS = 10**5


class RewriteError(SymredError):
    """A polynomial could not be written in the given invariants."""


# ---------------------------------------------------------------------------
# invariant bases


@dataclass
class InvariantBasis:
    """Generators pi_1..pi_m of an invariant ring in n variables."""

    kind: str  # "elementary", "powersum" or "custom"
    n: int
    polys: list[Polynomial]
    names: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.names:
            prefix = {"elementary": "e", "powersum": "p"}.get(self.kind, "z")
            self.names = [f"{prefix}{i + 1}" for i in range(len(self.polys))]

    @classmethod
    def elementary(cls, n: int) -> "InvariantBasis":
        return cls("elementary", n, [elementary_symmetric(k, n) for k in range(1, n + 1)])

    @classmethod
    def powersum(cls, n: int) -> "InvariantBasis":
        return cls("powersum", n, [power_sum(k, n) for k in range(1, n + 1)])

    @classmethod
    def custom(cls, polys: Sequence[Polynomial], names: Sequence[str] | None = None) -> "InvariantBasis":
        polys = list(polys)
        if not polys:
            raise PreconditionError("need at least one generator")
        n = polys[0].nvars
        if any(p.nvars != n for p in polys):
            raise PreconditionError("generators must share the variable count")
        return cls("custom", n, polys, list(names or []))

    @classmethod
    def detect(cls, polys: Sequence[Polynomial]) -> "InvariantBasis":
        """Recognise the elementary or power-sum families, else custom."""
        polys = list(polys)
        n = polys[0].nvars
        if len(polys) == n:
            if all(p == elementary_symmetric(k + 1, n) for k, p in enumerate(polys)):
                return cls.elementary(n)
            if all(p == power_sum(k + 1, n) for k, p in enumerate(polys)):
                return cls.powersum(n)
        return cls.custom(polys)

    def substitute(self, g: Polynomial) -> Polynomial:
        """Expand g(pi_1, ..., pi_m)."""
        return g.compose(self.polys)


def is_symmetric(f: Polynomial) -> bool:
    n = f.nvars
    if n < 2:
        return True
    swap = (1, 0) + tuple(range(2, n))
    cycle = tuple((i + 1) % n for i in range(n))
    return f.permute(swap) == f and f.permute(cycle) == f


def symmetric_reynolds(f: Polynomial) -> Polynomial:
    """S_n average through orbit sums of exponents."""
    n = f.nvars
    sums: dict[tuple, Fraction] = {}
    for e, c in f.terms.items():
        lam = tuple(sorted(e, reverse=True))
        sums[lam] = sums.get(lam, 0) + c
    out = {}
    for lam, c in sums.items():
        if c == 0:
            continue
        orbit = set(permutations(lam))
        w = c / len(orbit) if isinstance(c, Fraction) else c / len(orbit)
        for e in orbit:
            out[e] = w
    return Polynomial(n, out)


# ---------------------------------------------------------------------------
# Newton identities


@lru_cache(maxsize=None)
def _e_in_p(k: int, m: int) -> Polynomial:
    """e_k as a polynomial in p_1..p_m (k <= m)."""
    if k == 0:
        return Polynomial.constant(1, m)
    z = variables(m)
    # k e_k = sum_{i=1}^k (-1)^(i-1) e_{k-i} p_i
    acc = Polynomial(m)
    for i in range(1, k + 1):
        acc = acc + _e_in_p(k - i, m) * z[i - 1] * (-1) ** (i - 1)
    return acc * Fraction(1, k)


@lru_cache(maxsize=None)
def _p_in_e(k: int, m: int) -> Polynomial:
    """p_k as a polynomial in e_1..e_m (k <= m)."""
    z = variables(m)
    # p_k = (-1)^(k-1) k e_k + sum_{i=1}^{k-1} (-1)^(k-1-i) e_{k-i} p_i
    acc = z[k - 1] * ((-1) ** (k - 1) * k)
    for i in range(1, k):
        acc = acc + z[k - i - 1] * _p_in_e(i, m) * (-1) ** (k - 1 - i)
    return acc


def newton_convert(expr: Polynomial, direction: str, n: int | None = None) -> Polynomial:
    """Convert between the elementary and power-sum bases.

    ``expr`` is a polynomial in z_1..z_m standing for e_1..e_m
    (``direction="e2p"``) or p_1..p_m (``"p2e"``).  The identities are
    used for k <= n only, where n defaults to m.
    """
    m = expr.nvars
    n = m if n is None else n
    if n > MAX_NEWTON:
        raise CapacityError(f"Newton conversion supports n <= {MAX_NEWTON}")
    used = max((k + 1 for e in expr.terms for k, v in enumerate(e) if v), default=0)
    if used > n:
        raise PreconditionError(f"basis element {used} exceeds n = {n}")
    if direction in ("e2p", "e->p"):
        table = [_e_in_p(k, m) for k in range(1, m + 1)]
    elif direction in ("p2e", "p->e"):
        table = [_p_in_e(k, m) for k in range(1, m + 1)]
    else:
        raise PreconditionError(f"unknown direction {direction!r}")
    return expr.compose(table)


# ---------------------------------------------------------------------------
# rewriting in invariants


def _rewrite_elementary(f: Polynomial, max_steps: int) -> Polynomial:
    n = f.nvars
    es = [elementary_symmetric(k, n) for k in range(1, n + 1)]
    powers: dict[tuple[int, int], Polynomial] = {}

    def epow(i, k):
        if (i, k) not in powers:
            powers[(i, k)] = Polynomial.constant(1, n) if k == 0 else epow(i, k - 1) * es[i]
        return powers[(i, k)]

    out = {}
    rest = f
    for _ in range(max_steps):
        if rest.is_zero():
            return Polynomial(n, out)
        a, c = rest.leading_term()
        if any(x < y for x, y in zip(a, a[1:])):
            raise PreconditionError("polynomial is not symmetric")
        z = tuple(a[i] - (a[i + 1] if i + 1 < n else 0) for i in range(n))
        prod = Polynomial.constant(c, n)
        for i, k in enumerate(z):
            if k:
                prod = prod * epow(i, k)
        rest = rest - prod
        out[z] = out.get(z, 0) + c
    raise RewriteError("elimination step cap reached")


def _leading(p: Polynomial):
    return max(p.terms, key=grlex_key)


def _match_exponent(target, leads, bound):
    """Non-negative m with sum m_i leads_i = target, by depth-first search."""
    k = len(leads)

    def rec(i, rem):
        if all(v == 0 for v in rem):
            return [0] * (k - i)
        if i == k:
            return None
        lead = leads[i]
        top = min((r // l for r, l in zip(rem, lead) if l), default=0)
        if all(l == 0 for l in lead):
            top = 0
        for m in range(min(top, bound), -1, -1):
            nxt = tuple(r - m * l for r, l in zip(rem, lead))
            sub = rec(i + 1, nxt)
            if sub is not None:
                return [m] + sub
        return None

    return rec(0, tuple(target))


def _weighted_exponents(degrees: Sequence[int], d: int) -> list[tuple[int, ...]]:
    out = []

    def rec(i, rem, cur):
        if i == len(degrees):
            if rem == 0:
                out.append(tuple(cur))
            return
        for m in range(rem // degrees[i] + 1):
            cur.append(m)
            rec(i + 1, rem - m * degrees[i], cur)
            cur.pop()

    rec(0, d, [])
    return out


def _rewrite_linear(f: Polynomial, basis: InvariantBasis) -> Polynomial:
    """Degree-by-degree linear solve for homogeneous generators."""
    degs = [p.degree for p in basis.polys]
    if any(not p.is_homogeneous() or d <= 0 for p, d in zip(basis.polys, degs)):
        raise RewriteError("linear fallback needs homogeneous generators of positive degree")
    m = len(basis.polys)
    out = Polynomial(m)
    for d in range(f.degree + 1):
        part = f.homogeneous_part(d)
        if part.is_zero():
            continue
        exps = _weighted_exponents(degs, d)
        cols = [Polynomial.monomial(e).compose(basis.polys) for e in exps]
        monos = sorted({e for c in cols for e in c.terms} | set(part.terms), key=grlex_key)
        a = [[c.coefficient(mo) for c in cols] for mo in monos]
        b = [part.coefficient(mo) for mo in monos]
        sol = solve_exact(a, b) if cols else None
        if sol is None:
            raise RewriteError(f"degree-{d} part is not in the span of generator products")
        out = out + Polynomial(m, {e: v for e, v in zip(exps, sol.particular) if v != 0})
    return out


def _rewrite_custom(f: Polynomial, basis: InvariantBasis, max_steps: int) -> Polynomial:
    polys = basis.polys
    m = len(polys)
    leads = [_leading(p) for p in polys]
    lcs = [p.coefficient(l) for p, l in zip(polys, leads)]
    out = {}
    rest = f
    cache: dict[tuple, Polynomial] = {}
    for _ in range(max_steps):
        if rest.is_zero():
            return Polynomial(m, out)
        a, c = rest.leading_term()
        z = _match_exponent(a, leads, max(a) + 1 if a else 0)
        if z is None:
            # leading terms do not generate; finish by linear algebra
            return Polynomial(m, out) + _rewrite_linear(rest, basis)
        z = tuple(z)
        if z not in cache:
            cache[z] = Polynomial.monomial(z).compose(polys)
        coef = c / math.prod(l**k for l, k in zip(lcs, z))
        rest = rest - cache[z] * coef
        out[z] = out.get(z, 0) + coef
    raise RewriteError("elimination step cap reached")


def rewrite_in_invariants(f: Polynomial, basis: InvariantBasis, max_steps: int = MAX_STEPS) -> Polynomial:
    """Return g with g(pi_1, ..., pi_m) = f exactly."""
    if f.nvars != basis.n:
        raise PreconditionError(f"polynomial has {f.nvars} variables, basis expects {basis.n}")
    if not f.is_exact():
        raise PreconditionError("rewriting needs exact coefficients")
    if basis.kind in ("elementary", "powersum"):
        if not is_symmetric(f):
            raise PreconditionError("polynomial is not symmetric")
        g = _rewrite_elementary(f, max_steps)
        if basis.kind == "powersum":
            g = newton_convert(g, "e2p", basis.n)
    else:
        g = _rewrite_custom(f, basis, max_steps)
    if basis.substitute(g) != f:
        raise RewriteError("substitution check failed")
    return g


# ---------------------------------------------------------------------------
# Specht and higher Specht polynomials


def _column_vandermonde(cols: Sequence[Sequence[int]], n: int) -> Polynomial:
    x = variables(n)
    out = Polynomial.constant(1, n)
    for col in cols:
        for j in range(len(col)):
            for l in range(j + 1, len(col)):
                out = out * (x[col[j] - 1] - x[col[l] - 1])
    return out


def specht_polynomial(t: Tableau) -> Polynomial:
    """Product over the columns of the Vandermonde of their entries."""
    return _column_vandermonde(t.columns, t.n)


def vandermonde(n: int) -> Polynomial:
    """prod_{i<j} (X_i - X_j)."""
    return _column_vandermonde([tuple(range(1, n + 1))], n)


def index_word(w: Sequence[int]) -> tuple[int, ...]:
    """Index of a permutation word (entries 1..n)."""
    n = len(w)
    if sorted(w) != list(range(1, n + 1)):
        raise PreconditionError(f"{tuple(w)} is not a permutation word")
    pos = {v: i for i, v in enumerate(w)}
    out = [0] * n
    for k in range(1, n):
        c, d = pos[k], pos[k + 1]
        out[d] = out[c] if d > c else out[c] + 1
    return tuple(out)


def charge(t: Tableau) -> int:
    return sum(index_word(t.word()))


def column_superstandard(shape: Sequence[int]) -> Tableau:
    """Standard tableau filled column by column."""
    shape = tuple(shape)
    rows = [[] for _ in shape]
    k = 1
    for c in range(shape[0]):
        for r in range(len(shape)):
            if shape[r] > c:
                rows[r].append(k)
                k += 1
    return Tableau(tuple(tuple(r) for r in rows))


@dataclass
class HigherSpecht:
    t: Tableau
    v: Tableau
    word: tuple[int, ...]
    index: tuple[int, ...]
    charge: int
    monomial: Polynomial
    polynomial: Polynomial


def young_symmetrizer(v: Tableau, f: Polynomial) -> Polynomial:
    """sum over row stabiliser s and column stabiliser t of sgn(t) t s f."""
    rows = Polynomial(f.nvars)
    for s in v.row_stabilizer():
        rows = rows + f.permute(s)
    out = Polynomial(f.nvars)
    for t in v.column_stabilizer():
        out = out + rows.permute(t) * perm_sign(t)
    return out


def higher_specht(t: Tableau, v: Tableau) -> HigherSpecht:
    if t.shape != v.shape:
        raise PreconditionError(f"shape mismatch {t.shape} vs {v.shape}")
    if not (t.is_standard() and v.is_standard()):
        raise PreconditionError("higher Specht polynomials need standard tableaux")
    n = t.n
    w = t.word()
    idx = index_word(w)
    e = [0] * n
    for var, k in zip(v.word(), idx):
        e[var - 1] += k
    mono = Polynomial.monomial(tuple(e))
    return HigherSpecht(t, v, w, idx, sum(idx), mono, young_symmetrizer(v, mono))


def primitive_part(p: Polynomial) -> Polynomial:
    """Divide an exact polynomial by the gcd of its coefficients (sign kept)."""
    cs = [c for c in p.terms.values()]
    if not cs:
        return p
    num = math.gcd(*[c.numerator for c in cs])
    den = math.lcm(*[c.denominator for c in cs])
    return p * Fraction(den, num)


def higher_specht_family(shape: Sequence[int]) -> dict[Tableau, list[HigherSpecht]]:
    """For each standard T the list of F^T_V over standard V."""
    tabs = standard_tableaux(shape)
    return {t: [higher_specht(t, v) for v in tabs] for t in tabs}


def higher_specht_basis(n: int) -> list[HigherSpecht]:
    """All higher Specht polynomials for S_n, shape by shape."""
    if n > 6:
        raise CapacityError("higher Specht basis is limited to n <= 6")
    out = []
    for lam in partitions(n):
        for fam in higher_specht_family(lam).values():
            out.extend(fam)
    return out


def invariant_count(n: int, d: int) -> int:
    """Dimension of S_n-invariant forms of degree d."""
    return len(partitions(d, max_part=n)) if d > 0 else 1


def charge_count(shape: Sequence[int], k: int) -> int:
    """Standard tableaux of the shape with charge at most k."""
    return sum(1 for t in standard_tableaux(shape) if charge(t) <= k)


def multiplicity_in_degree(shape: Sequence[int], d: int) -> int:
    """Multiplicity of the Specht module in polynomials of degree <= d."""
    n = sum(shape)
    return sum(invariant_count(n, j) * charge_count(shape, d - j) for j in range(d + 1))


# ---------------------------------------------------------------------------
# differential operators and harmonics


def apply_diff_operator(f: Polynomial, g: Polynomial) -> Polynomial:
    """f(d) g where X^a acts as (1/a!) d^a."""
    if f.nvars != g.nvars:
        raise PreconditionError("variable count mismatch")
    out = Polynomial(g.nvars)
    for a, c in f.terms.items():
        h = g
        for i, k in enumerate(a):
            if k:
                h = h.derivative(i, k)
        if not h.is_zero():
            out = out + h * (c / math.prod(math.factorial(k) for k in a))
    return out


def harmonic_pairing(f: Polynomial, g: Polynomial):
    """<f, g> = f(d) g evaluated at 0."""
    return apply_diff_operator(f, g).coefficient((0,) * g.nvars)


def derivative_span(f: Polynomial) -> list[Polynomial]:
    """Basis of the span of all partial derivatives of f (f included)."""
    n = f.nvars
    seen = {f}
    frontier = [f]
    while frontier:
        nxt = []
        for p in frontier:
            for i in range(n):
                q = p.derivative(i)
                if not q.is_zero() and q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    polys = list(seen)
    monos = sorted({e for p in polys for e in p.terms}, key=grlex_key, reverse=True)
    red, piv = rref([[p.coefficient(m) for m in monos] for p in polys])
    return [Polynomial(n, {m: v for m, v in zip(monos, row) if v != 0}) for row in red[: len(piv)]]


def pairing_gram(polys: Sequence[Polynomial]) -> list[list[Fraction]]:
    return [[harmonic_pairing(a, b) for b in polys] for a in polys]


def jacobian_determinant(polys: Sequence[Polynomial]) -> Polynomial:
    """det of the Jacobian matrix of n polynomials in n variables."""
    n = len(polys)
    if n > 6 or any(p.nvars != n for p in polys):
        raise PreconditionError("need n <= 6 polynomials in n variables")
    jac = [[p.derivative(j) for j in range(n)] for p in polys]
    out = Polynomial(n)
    for perm in permutations(range(n)):
        term = Polynomial.constant(perm_sign(perm), n)
        for i, j in enumerate(perm):
            term = term * jac[i][j]
            if term.is_zero():
                break
        out = out + term
    return out


def steinberg_constant(polys: Sequence[Polynomial]) -> Fraction:
    """c with det Jac(polys) = c * vandermonde(n); raises if none exists."""
    n = len(polys)
    det = jacobian_determinant(polys)
    van = vandermonde(n)
    lead, lc = van.leading_term()
    c = det.coefficient(lead) / lc
    if c == 0 or det != van * c:
        raise PreconditionError("Jacobian determinant is not a multiple of the Vandermonde")
    return c


# ---------------------------------------------------------------------------
# H-matrices


@dataclass
class HMatrix:
    """H_{u,v} = R(s_u s_v) written in the generator variables."""

    irrep: str
    s: list[Polynomial]
    generators: InvariantBasis
    entries: list[list[Polynomial]]

    @property
    def size(self) -> int:
        return len(self.s)

    def matrix(self) -> MatrixPolynomial:
        return MatrixPolynomial(self.entries)

    def expanded(self) -> MatrixPolynomial:
        return MatrixPolynomial([[self.generators.substitute(e) for e in row] for row in self.entries])

    def check(self, rep: GroupRepresentation) -> bool:
        """Substitution reproduces the Reynolds averages exactly."""
        ex = self.expanded()
        return all(
            ex[u, v] == _average(rep, self.s[u] * self.s[v])
            for u in range(self.size) for v in range(self.size)
        )

    def format(self) -> list[list[str]]:
        names = self.generators.names
        return [[e.format(names) for e in row] for row in self.entries]

    def to_json(self) -> dict:
        return {
            "irrep": self.irrep,
            "generators": self.generators.names,
            "s": [p.to_json() for p in self.s],
            "entries": [[e.to_json() for e in row] for row in self.entries],
        }


def _average(rep: GroupRepresentation, f: Polynomial) -> Polynomial:
    if isinstance(rep.group, SymmetricGroup) and rep.is_permutation and rep.degree == rep.group.n:
        return symmetric_reynolds(f)
    return reynolds(rep, f)


def _check_family(rep: GroupRepresentation):
    g = rep.group
    if isinstance(g, SymmetricGroup) and rep.is_permutation:
        if g.n > 6:
            raise CapacityError("H-matrices are supported for S_n with n <= 6")
        return "S"
    if isinstance(g, DihedralGroup) and rep.degree == 2:
        if g.n > 6:
            raise CapacityError("H-matrices are supported for D_n with n <= 6")
        return "D"
    raise PreconditionError("H-matrices need S_n on R^n or D_n on the plane")


def h_matrix(rep: GroupRepresentation, s: Sequence[Polynomial], generators: Sequence[Polynomial] | InvariantBasis,
             irrep: str = "") -> HMatrix:
    """Reynolds-average every product s_u s_v and rewrite it in the generators."""
    _check_family(rep)
    basis = generators if isinstance(generators, InvariantBasis) else InvariantBasis.detect(generators)
    s = list(s)
    k = len(s)
    entries = [[None] * k for _ in range(k)]
    for u in range(k):
        for v in range(u, k):
            avg = _average(rep, s[u] * s[v])
            entries[u][v] = entries[v][u] = rewrite_in_invariants(avg, basis)
    return HMatrix(irrep, s, basis, entries)


def symmetric_covariant_generators(shape: Sequence[int]) -> list[Polynomial]:
    """One higher Specht polynomial per copy of the Specht module.

    Copies are indexed by standard T sorted by charge; the position is
    fixed to the column-superstandard V so the copies match.
    """
    v0 = column_superstandard(shape)
    tabs = sorted(standard_tableaux(shape), key=lambda t: (charge(t), t.rows))
    return [primitive_part(higher_specht(t, v0).polynomial) for t in tabs]


def symmetric_h_matrices(n: int, generators: Sequence[Polynomial] | None = None) -> dict[tuple, HMatrix]:
    """H-matrix for every partition of n (power sums by default)."""
    from .groups import symmetric_group

    rep = symmetric_group(n)
    gens = generators if generators is not None else InvariantBasis.powersum(n)
    return {lam: h_matrix(rep, symmetric_covariant_generators(lam), gens, irrep=str(lam)) for lam in partitions(n)}


# dihedral covariants: Re z^k, Im z^k with z = X1 + i X2


def _z_power(k: int) -> tuple[Polynomial, Polynomial]:
    re, im = {}, {}
    for j in range(k + 1):
        c = Fraction(math.comb(k, j))
        e = (k - j, j)
        r = j % 4
        if r == 0:
            re[e] = c
        elif r == 1:
            im[e] = c
        elif r == 2:
            re[e] = -c
        else:
            im[e] = -c
    return Polynomial(2, re), Polynomial(2, im)


def dihedral_generators(n: int) -> InvariantBasis:
    """pi_1 = X1^2 + X2^2 and the degree-n invariant of the planar D_n."""
    re, im = _z_power(n)
    if n % 2 == 0:
        p = re * re.coefficient((n, 0))
    else:
        p = im * im.coefficient((0, n))
    return InvariantBasis.custom([power_sum(2, 2), p], ["pi1", "pi2"])


def _action_2d(rep, pair, i):
    """Matrix of the element on span(pair), assuming the span is stable."""
    a, b = pair
    out = []
    for f in pair:
        g = act_on_polynomial(rep, i, f.to_float())
        # least squares against a, b on the union of supports
        monos = sorted(set(a.terms) | set(b.terms) | set(g.terms))
        m = np.array([[float(a.coefficient(e)), float(b.coefficient(e))] for e in monos])
        y = np.array([complex(g.coefficient(e)).real for e in monos])
        out.append(np.linalg.lstsq(m, y, rcond=None)[0])
    return np.array(out).T


def _one_dim_name(rep, p) -> str:
    g = rep.group
    vals = []
    for i in g.generators:
        q = act_on_polynomial(rep, i, p.to_float())
        lead = p.leading_term()[0]
        vals.append(round(complex(q.coefficient(lead)).real / float(p.coefficient(lead))))
    a, b = vals
    for l, (kind, x, y) in enumerate(g._irrep_specs):
        if kind == "1" and (x, y) == (a, b):
            return f"A{l + 1}"
    raise SymredError("unrecognised one-dimensional character")


def dihedral_covariant_basis(n: int) -> dict[str, list[list[Polynomial]]]:
    """Covariant algebra of the planar D_n split by irreducible.

    Returns irrep name -> list of copies, each copy a list of basis
    polynomials with matching positions across copies.
    """
    from .groups import dihedral_group

    if n < 2 or n > 6:
        raise CapacityError("dihedral covariant bases are provided for 2 <= n <= 6")
    rep = dihedral_group(n)
    gens = dihedral_generators(n)
    out: dict[str, list[list[Polynomial]]] = {"A1": [[Polynomial.constant(1, 2)]]}
    delta = primitive_part(jacobian_determinant(gens.polys))
    out.setdefault(_one_dim_name(rep, delta), []).append([delta])
    for k in range(1, n):
        re, im = _z_power(k)
        h = min(k, n - k)
        if 2 * k == n:
            for p in (re, im):
                p = primitive_part(p)
                out.setdefault(_one_dim_name(rep, p), []).append([p])
            continue
        name = f"E{h}"
        if k == h:
            out.setdefault(name, []).append([re, im])
            continue
        ref = out[name][0]
        mats = [_action_2d(rep, ref, i) for i in rep.generators]
        for a, b in ((re, im), (im, re)):
            for sa, sb in product((1, -1), repeat=2):
                cand = [a * sa, b * sb]
                if all(np.allclose(_action_2d(rep, cand, i), m, atol=1e-9) for i, m in zip(rep.generators, mats)):
                    break
            else:
                continue
            break
        else:
            raise SymredError("could not match dihedral covariant copies")
        scale = primitive_part(cand[0]).leading_term()[1] / cand[0].leading_term()[1]
        out[name].append([c * scale for c in cand])
    return out


def dihedral_h_matrices(n: int) -> dict[str, HMatrix]:
    """H-matrix for every irreducible of the planar D_n."""
    from .groups import dihedral_group

    rep = dihedral_group(n)
    gens = dihedral_generators(n)
    cov = dihedral_covariant_basis(n)
    return {name: h_matrix(rep, [c[0] for c in copies], gens, irrep=name) for name, copies in cov.items()}
