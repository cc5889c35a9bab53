"""Finite groups, their representations and the action on polynomials.

Conventions
-----------
Permutations are 0-based tuples ``p`` with ``p[i] = g(i)`` and compose
as functions, ``(g*h)(i) = g(h(i))``.  A representation is a
homomorphism ``g -> rho(g)``; for permutation actions
``rho(g) e_i = e_{g(i)}``.  Formulas that sum over the group use the
matrices ``M(g) = rho(g^{-1})``, which for a permutation are
``M(g)[i, j] = 1`` iff ``j = g(i)``.  Polynomials are acted on by
``f^g(x) = f(M(g) x)``, which sends ``X_i`` to ``X_{g(i)}`` and is a
left action: ``(f^h)^g = f^{g*h}``.

The three built-in families are the symmetric group ``S_n`` permuting
coordinates, the cyclic group ``C_n`` shifting coordinates
(``i -> i+1``), and the dihedral group ``D_n`` of order ``2n`` acting on
the plane by rotations ``r`` through ``2 pi / n`` and the reflection
``s: (x, y) -> (-x, y)``.  Dihedral elements are labelled ``(e, k)``
meaning ``s^e r^k``.
"""

from __future__ import annotations

import cmath
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import permutations, product
from typing import Callable, Hashable, Sequence

import numpy as np

from .algebra import (
    Polynomial,
    exact_matrix,
    matrix_is_exact,
    monomials_up_to,
)
from .errors import CapacityError, PreconditionError, UnsupportedError

MAX_ORDER = math.factorial(10) // 2

# ---------------------------------------------------------------------------
# permutations and partitions


def compose(g: Sequence[int], h: Sequence[int]) -> tuple[int, ...]:
    """Function composition ``g o h``."""
    return tuple(g[i] for i in h)


def invert(g: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(g)
    for i, gi in enumerate(g):
        out[gi] = i
    return tuple(out)


def perm_sign(g: Sequence[int]) -> int:
    seen = [False] * len(g)
    sign = 1
    for i in range(len(g)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = g[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def cycle_type(g: Sequence[int]) -> tuple[int, ...]:
    seen = [False] * len(g)
    lengths = []
    for i in range(len(g)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = g[j]
                length += 1
            lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def partitions(n: int, max_parts: int | None = None, max_part: int | None = None) -> list[tuple[int, ...]]:
    """Partitions of ``n`` in reverse lexicographic order: (n), (n-1, 1), ..."""
    max_part = n if max_part is None else max_part
    if n == 0:
        return [()]
    if max_parts == 0:
        return []
    out = []
    for first in range(min(n, max_part), 0, -1):
        rest_parts = None if max_parts is None else max_parts - 1
        for rest in partitions(n - first, rest_parts, first):
            out.append((first,) + rest)
    return out


def cycle_type_rep(mu: Sequence[int]) -> tuple[int, ...]:
    """A permutation with cycle type ``mu`` made of consecutive cycles."""
    n = sum(mu)
    g = list(range(n))
    start = 0
    for length in mu:
        for i in range(length):
            g[start + i] = start + (i + 1) % length
        start += length
    return tuple(g)


def adjacent_word(g: Sequence[int]) -> list[int]:
    """Indices i with ``g = s_{w0} o s_{w1} o ...`` where s_i swaps i, i+1."""
    g = list(g)
    peeled = []
    while True:
        i = next((k for k in range(len(g) - 1) if g[k] > g[k + 1]), None)
        if i is None:
            break
        g[i], g[i + 1] = g[i + 1], g[i]
        peeled.append(i)
    return peeled[::-1]


# ---------------------------------------------------------------------------
# tableaux and Specht modules


@dataclass(frozen=True)
class Tableau:
    """Young tableau with entries 1..n stored row by row."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        lens = [len(r) for r in rows]
        if any(a < b for a, b in zip(lens, lens[1:])) or any(l == 0 for l in lens):
            raise PreconditionError(f"rows {rows} do not form a Young diagram")
        entries = sorted(v for r in rows for v in r)
        if entries != list(range(1, len(entries) + 1)):
            raise PreconditionError("tableau entries must be 1..n each used once")

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    @property
    def n(self) -> int:
        return sum(self.shape)

    @property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(r[c] for r in self.rows if len(r) > c) for c in range(len(self.rows[0]))
        )

    def is_standard(self) -> bool:
        rows_ok = all(all(a < b for a, b in zip(r, r[1:])) for r in self.rows)
        cols_ok = all(all(a < b for a, b in zip(c, c[1:])) for c in self.columns)
        return rows_ok and cols_ok

    def row_of(self) -> tuple[int, ...]:
        """Tabloid key: row index of each entry 1..n."""
        out = [0] * self.n
        for r, row in enumerate(self.rows):
            for v in row:
                out[v - 1] = r
        return tuple(out)

    def apply(self, g: Sequence[int]) -> "Tableau":
        """Replace each entry x by g(x) (0-based permutation on 1..n)."""
        return Tableau(tuple(tuple(g[v - 1] + 1 for v in r) for r in self.rows))

    def word(self) -> tuple[int, ...]:
        """Entries read column by column from the left, bottom to top."""
        return tuple(v for col in self.columns for v in reversed(col))

    def row_stabilizer(self) -> list[tuple[int, ...]]:
        return _block_group(self.rows, self.n)

    def column_stabilizer(self) -> list[tuple[int, ...]]:
        return _block_group(self.columns, self.n)

    def __str__(self):
        return "/".join("".join(map(str, r)) if self.n < 10 else ",".join(map(str, r)) for r in self.rows)


def _block_group(blocks, n) -> list[tuple[int, ...]]:
    out = []
    for choice in product(*[permutations(b) for b in blocks]):
        g = list(range(n))
        for b, img in zip(blocks, choice):
            for x, y in zip(b, img):
                g[x - 1] = y - 1
        out.append(tuple(g))
    return out


def standard_tableaux(shape: Sequence[int]) -> list[Tableau]:
    """All standard tableaux of a shape, sorted by their row tuples."""
    shape = tuple(shape)
    n = sum(shape)
    out = []

    def rec(filled: list[list[int]], k: int):
        if k > n:
            out.append(Tableau(tuple(tuple(r) for r in filled)))
            return
        for r in range(len(shape)):
            if len(filled[r]) < shape[r] and (r == 0 or len(filled[r - 1]) > len(filled[r])):
                filled[r].append(k)
                rec(filled, k + 1)
                filled[r].pop()

    rec([[] for _ in shape], 1)
    out.sort(key=lambda t: t.rows)
    return out


class SpechtModule:
    """Specht module of a partition with the standard polytabloid basis.

    ``matrix(g)`` returns integer matrices with columns giving the
    coordinates of ``g . e_T`` for the standard tableaux ``T``.
    """

    def __init__(self, shape: Sequence[int]):
        self.shape = tuple(shape)
        self.n = sum(self.shape)
        self.basis = standard_tableaux(self.shape)
        self.dim = len(self.basis)
        self._index = {t.row_of(): i for i, t in enumerate(self.basis)}
        # E[i, j]: coefficient of the j-th standard tabloid in e_{T_i}
        self._et = np.array([self._restricted(t) for t in self.basis], dtype=np.int64).T
        self._et_float = self._et.astype(float)
        self._gens: dict[int, np.ndarray] = {}
        self._cache: dict[tuple, np.ndarray] = {}

    def _restricted(self, t: Tableau) -> list[int]:
        """Coefficients of the polytabloid e_t at the standard tabloids."""
        vec = [0] * self.dim
        base = list(t.row_of())
        cols = t.columns
        for choice in product(*[permutations(range(len(c))) for c in cols]):
            key = list(base)
            sign = 1
            for col, p in zip(cols, choice):
                sign *= perm_sign(p)
                for r, src in enumerate(p):
                    key[col[src] - 1] = r
            idx = self._index.get(tuple(key))
            if idx is not None:
                vec[idx] += sign
        return vec

    def generator(self, i: int) -> np.ndarray:
        """Matrix of the adjacent transposition (i, i+1), 0-based."""
        if i not in self._gens:
            swap = list(range(self.n))
            swap[i], swap[i + 1] = i + 1, i
            cols = []
            for t in self.basis:
                v = np.array(self._restricted(t.apply(swap)), dtype=np.int64)
                # E is unimodular, so the solution is integral; round and re-check exactly
                c = np.rint(np.linalg.solve(self._et_float, v.astype(float))).astype(np.int64)
                if not np.array_equal(self._et @ c, v):
                    raise ArithmeticError("Specht straightening failed")
                cols.append(c)
            self._gens[i] = np.array(cols, dtype=np.int64).T
        return self._gens[i]

    def matrix(self, g: Sequence[int]) -> np.ndarray:
        g = tuple(g)
        m = self._cache.get(g)
        if m is None:
            m = np.eye(self.dim, dtype=np.int64)
            for i in adjacent_word(g):
                m = m @ self.generator(i)
            if len(self._cache) < 50000:
                self._cache[g] = m
        return m

    def character(self, g: Sequence[int]) -> int:
        return int(np.trace(self.matrix(g)))


# ---------------------------------------------------------------------------
# character tables


@dataclass
class CharacterTable:
    """Irreducible characters evaluated on conjugacy classes.

    ``values[l][c]`` is the value of irreducible ``l`` on class ``c``.
    """

    class_names: list[str]
    class_sizes: list[int]
    irrep_names: list[str]
    values: list[list]
    exact: bool

    @property
    def order(self) -> int:
        return sum(self.class_sizes)

    @property
    def dims(self) -> list[int]:
        return [int(round(complex(row[0]).real)) for row in self.values]

    def to_json(self) -> dict:
        from .algebra import scalar_to_json

        return {
            "classes": self.class_names,
            "class_sizes": self.class_sizes,
            "irreps": self.irrep_names,
            "values": [[scalar_to_json(v) for v in row] for row in self.values],
        }

    def format(self) -> str:
        width = max(len(c) for c in self.class_names + self.irrep_names) + 2
        lines = [" " * width + "".join(c.rjust(width) for c in self.class_names)]
        for name, row in zip(self.irrep_names, self.values):
            cells = []
            for v in row:
                if isinstance(v, complex):
                    v = complex(round(v.real, 6), round(v.imag, 6))
                    txt = f"{v.real:g}" if abs(v.imag) < 1e-9 else f"{v.real:g}{v.imag:+g}i"
                else:
                    txt = str(v)
                cells.append(txt.rjust(width))
            lines.append(name.ljust(width) + "".join(cells))
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# abstract groups


class FiniteGroup:
    """Finite group with labelled elements, classes and irreducibles.

    Subclasses provide ``_labels``, ``mul_labels``, ``_class_partition``,
    ``_character_table`` and ``_irrep`` (matrix of irreducible ``l`` at a
    label, exact when possible).
    """

    family = "abstract"

    def __init__(self, n: int):
        self.n = n

    # elements

    @cached_property
    def elements(self) -> list[Hashable]:
        labels = self._labels()
        if len(labels) > MAX_ORDER:
            raise CapacityError(f"group order {len(labels)} exceeds {MAX_ORDER}")
        return labels

    @cached_property
    def index(self) -> dict[Hashable, int]:
        return {g: i for i, g in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> int:
        return 0

    def mul(self, i: int, j: int) -> int:
        return self.index[self.mul_labels(self.elements[i], self.elements[j])]

    @cached_property
    def _inverses(self) -> list[int]:
        out = [0] * self.order
        for i in range(self.order):
            if out[i]:
                continue
            for j in range(self.order):
                if self.mul(i, j) == self.identity:
                    out[i] = j
                    out[j] = i
                    break
        return out

    def inv(self, i: int) -> int:
        return self._inverses[i]

    @property
    def generators(self) -> list[int]:
        return [self.index[g] for g in self._generator_labels()]

    # classes and characters

    @cached_property
    def classes(self) -> list[list[int]]:
        return self._class_partition()

    @cached_property
    def class_of(self) -> list[int]:
        out = [0] * self.order
        for c, members in enumerate(self.classes):
            for i in members:
                out[i] = c
        return out

    @cached_property
    def character_table(self) -> CharacterTable:
        return self._character_table()

    @property
    def num_irreps(self) -> int:
        return len(self.character_table.values)

    def character(self, l: int, i: int):
        return self.character_table.values[l][self.class_of[i]]

    def character_vector(self, l: int) -> list:
        return [self.character(l, i) for i in range(self.order)]

    def _brute_force_classes(self) -> list[list[int]]:
        seen = [False] * self.order
        out = []
        for i in range(self.order):
            if seen[i]:
                continue
            cls = set()
            for g in range(self.order):
                cls.add(self.mul(self.mul(g, i), self.inv(g)))
            for k in cls:
                seen[k] = True
            out.append(sorted(cls))
        return out

    @cached_property
    def frobenius_schur(self) -> list[int]:
        out = []
        for l in range(self.num_irreps):
            total = sum(complex(self.character(l, self.mul(i, i))) for i in range(self.order))
            out.append(int(round((total / self.order).real)))
        return out

    @cached_property
    def conjugate_irrep(self) -> list[int]:
        table = self.character_table.values
        out = []
        for row in table:
            conj = [complex(v).conjugate() for v in row]
            match = next(
                l for l, other in enumerate(table)
                if all(abs(complex(a) - b) < 1e-9 for a, b in zip(other, conj))
            )
            out.append(match)
        return out

    # irreducible matrices

    def irrep_matrices(self, l: int, unitary: bool = True) -> list[np.ndarray]:
        """Matrices of irreducible ``l`` at every element.

        With ``unitary=False`` exact integer/rational matrices are returned
        where the family has them; with ``unitary=True`` the matrices are
        conjugated to a unitary (orthogonal when real) form.
        """
        key = (l, unitary)
        cache = self.__dict__.setdefault("_irrep_cache", {})
        if key not in cache:
            mats = [self._irrep(l, g) for g in self.elements]
            if unitary:
                mats = _unitarize(mats)
            cache[key] = mats
        return cache[key]


def _unitarize(mats: list[np.ndarray]) -> list[np.ndarray]:
    fm = [np.asarray(m, dtype=complex) for m in mats]
    if all(np.allclose(m.conj().T @ m, np.eye(m.shape[0]), atol=1e-12) for m in fm):
        out = fm
    else:
        p = sum(m.conj().T @ m for m in fm)
        lower = np.linalg.cholesky(p)
        linv = np.linalg.inv(lower)
        out = [lower.conj().T @ m @ linv.conj().T for m in fm]
    if all(np.max(np.abs(m.imag), initial=0.0) < 1e-12 for m in out):
        out = [m.real.copy() for m in out]
    return out


class SymmetricGroup(FiniteGroup):
    family = "symmetric"

    def __init__(self, n: int):
        if n < 1:
            raise PreconditionError("S_n needs n >= 1")
        if math.factorial(n) > MAX_ORDER:
            raise CapacityError(f"S_{n} is larger than the supported order cap")
        super().__init__(n)
        self.shapes = partitions(n)
        self._specht: dict[tuple, SpechtModule] = {}

    def specht(self, shape) -> SpechtModule:
        shape = tuple(shape)
        if shape not in self._specht:
            self._specht[shape] = SpechtModule(shape)
        return self._specht[shape]

    def _labels(self):
        return [tuple(p) for p in permutations(range(self.n))]

    def mul_labels(self, g, h):
        return compose(g, h)

    def inv(self, i):
        return self.index[invert(self.elements[i])]

    def _generator_labels(self):
        out = []
        for i in range(self.n - 1):
            g = list(range(self.n))
            g[i], g[i + 1] = i + 1, i
            out.append(tuple(g))
        return out or [tuple(range(self.n))]

    @cached_property
    def class_types(self) -> list[tuple[int, ...]]:
        # identity class first
        return partitions(self.n)[::-1]

    def _class_partition(self):
        pos = {mu: c for c, mu in enumerate(self.class_types)}
        out = [[] for _ in self.class_types]
        for i, g in enumerate(self.elements):
            out[pos[cycle_type(g)]].append(i)
        return out

    def class_of_label(self, g) -> int:
        return self.class_types.index(cycle_type(g))

    def _character_table(self):
        types = self.class_types
        sizes = []
        for mu in types:
            denom = 1
            for k in set(mu):
                m = mu.count(k)
                denom *= k**m * math.factorial(m)
            sizes.append(math.factorial(self.n) // denom)
        values = []
        for shape in self.shapes:
            sp = self.specht(shape)
            values.append([Fraction(sp.character(cycle_type_rep(mu))) for mu in types])
        return CharacterTable(
            class_names=["(" + ",".join(map(str, mu)) + ")" for mu in types],
            class_sizes=sizes,
            irrep_names=["[" + ",".join(map(str, s)) + "]" for s in self.shapes],
            values=values,
            exact=True,
        )

    @property
    def class_of(self):
        if "_class_of_cache" not in self.__dict__:
            pos = {mu: c for c, mu in enumerate(self.class_types)}
            self.__dict__["_class_of_cache"] = [pos[cycle_type(g)] for g in self.elements]
        return self.__dict__["_class_of_cache"]

    def _irrep(self, l, g):
        return self.specht(self.shapes[l]).matrix(g)


class CyclicGroup(FiniteGroup):
    family = "cyclic"

    def __init__(self, n: int):
        if n < 1:
            raise PreconditionError("C_n needs n >= 1")
        super().__init__(n)

    def _labels(self):
        return list(range(self.n))

    def mul_labels(self, a, b):
        return (a + b) % self.n

    def inv(self, i):
        return (-i) % self.n

    def _generator_labels(self):
        return [1 % self.n]

    def _class_partition(self):
        return [[k] for k in range(self.n)]

    def _character_table(self):
        n = self.n
        values = [[_root_of_unity(j * k, n) for k in range(n)] for j in range(n)]
        return CharacterTable(
            class_names=[f"g^{k}" for k in range(n)],
            class_sizes=[1] * n,
            irrep_names=[f"chi{j}" for j in range(n)],
            values=values,
            exact=n <= 2,
        )

    def _irrep(self, l, k):
        return np.array([[_root_of_unity(l * k, self.n)]])


def _root_of_unity(k: int, n: int):
    """exp(2 pi i k / n); exact Fractions for the real values."""
    k %= n
    if (4 * k) % n == 0:
        return [Fraction(1), 1j, Fraction(-1), -1j][(4 * k) // n]
    return cmath.exp(2j * math.pi * k / n)


class DihedralGroup(FiniteGroup):
    family = "dihedral"

    def __init__(self, n: int):
        if n < 1:
            raise PreconditionError("D_n needs n >= 1")
        super().__init__(n)

    def _labels(self):
        return [(e, k) for e in (0, 1) for k in range(self.n)]

    def mul_labels(self, a, b):
        e1, k1 = a
        e2, k2 = b
        return ((e1 + e2) % 2, ((-k1 if e2 else k1) + k2) % self.n)

    def inv(self, i):
        e, k = self.elements[i]
        return self.index[(0, (-k) % self.n)] if e == 0 else i

    def _generator_labels(self):
        return [(0, 1 % self.n), (1, 0)]

    def _class_partition(self):
        n = self.n
        idx = self.index
        out = [[idx[(0, 0)]]]
        for k in range(1, n // 2 + 1):
            out.append(sorted({idx[(0, k)], idx[(0, (-k) % n)]}))
        if n % 2:
            out.append([idx[(1, k)] for k in range(n)])
        else:
            out.append([idx[(1, k)] for k in range(0, n, 2)])
            out.append([idx[(1, k)] for k in range(1, n, 2)])
        return out

    @cached_property
    def _irrep_specs(self) -> list[tuple[str, int, int]]:
        """(kind, a, b): kind '1' with r->a, s->b, or '2' with frequency a."""
        specs = [("1", 1, 1), ("1", 1, -1)]
        if self.n % 2 == 0:
            specs += [("1", -1, 1), ("1", -1, -1)]
        specs += [("2", h, 0) for h in range(1, (self.n - 1) // 2 + 1)]
        return specs

    def _irrep(self, l, label):
        kind, a, b = self._irrep_specs[l]
        e, k = label
        if kind == "1":
            return np.array([[Fraction(a**k * b**e)]], dtype=object)
        return _rotation_matrix(a * k, self.n) if e == 0 else _reflection() @ _rotation_matrix(a * k, self.n)

    def _character_table(self):
        values = []
        names = []
        for l, (kind, a, b) in enumerate(self._irrep_specs):
            names.append(f"A{l + 1}" if kind == "1" else f"E{a}")
            row = []
            for cls in self.classes:
                m = self._irrep(l, self.elements[cls[0]])
                t = np.trace(m)
                row.append(t if isinstance(t, Fraction) else _clean_float(t))
            values.append(row)
        cnames = ["e"] + [f"r^{k}" for k in range(1, self.n // 2 + 1)]
        cnames += ["s"] if self.n % 2 else ["s", "sr"]
        exact = all(isinstance(v, Fraction) for row in values for v in row)
        return CharacterTable(cnames, [len(c) for c in self.classes], names, values, exact)


def _clean_float(x):
    x = float(np.real(x))
    r = round(x)
    return Fraction(r) if abs(x - r) < 1e-12 else x


def _rotation_matrix(k: int, n: int) -> np.ndarray:
    k %= n
    if (4 * k) % n == 0:
        q = (4 * k) // n
        c, s = [(1, 0), (0, 1), (-1, 0), (0, -1)][q]
        return np.array([[c, -s], [s, c]], dtype=np.int64)
    t = 2 * math.pi * k / n
    return np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])


def _reflection() -> np.ndarray:
    return np.array([[-1, 0], [0, 1]], dtype=np.int64)


class ExplicitGroup(FiniteGroup):
    """Matrix group generated by user matrices.

    ``irreps`` optionally gives, for each irreducible, the images of the
    generators; characters are derived from them.
    """

    family = "explicit"

    def __init__(self, generators: Sequence, irreps: Sequence[Sequence] | None = None, max_order: int = 100000):
        gens = [np.asarray(g) for g in generators]
        if not gens:
            raise PreconditionError("need at least one generator")
        dim = gens[0].shape[0]
        if any(g.shape != (dim, dim) for g in gens):
            raise PreconditionError("generators must be square matrices of one size")
        super().__init__(dim)
        self.exact = all(matrix_is_exact(g) for g in gens)
        self.gens = [exact_matrix(g) if self.exact else np.asarray(g, dtype=float) for g in gens]
        for g in self.gens:
            if self.exact:
                ok = (g.T.dot(g) == exact_matrix(np.eye(dim, dtype=int))).all()
            else:
                ok = np.allclose(g.T @ g, np.eye(dim), atol=1e-9)
            if not ok:
                raise PreconditionError("explicit generators must be orthogonal")
        self._irrep_gens = [[np.asarray(m) for m in imgs] for imgs in (irreps or [])]
        self._max_order = max_order
        self._closure()

    def _key(self, m):
        if self.exact:
            return tuple(m.flat)
        return tuple(np.round(np.asarray(m, dtype=float), 8).flat)

    def _closure(self):
        dim = self.n
        ident = exact_matrix(np.eye(dim, dtype=int)) if self.exact else np.eye(dim)
        mats = [ident]
        irr = [[np.eye(imgs[0].shape[0], dtype=complex)] for imgs in self._irrep_gens]
        lookup = {self._key(ident): 0}
        gen_idx = []
        queue = deque([0])
        while queue:
            i = queue.popleft()
            for gi, g in enumerate(self.gens):
                m = g.dot(mats[i])
                key = self._key(m)
                if key not in lookup:
                    if len(mats) >= self._max_order:
                        raise CapacityError("explicit group closure exceeded the order cap")
                    lookup[key] = len(mats)
                    mats.append(m)
                    for r, imgs in enumerate(self._irrep_gens):
                        irr[r].append(np.asarray(imgs[gi], dtype=complex) @ irr[r][i])
                    queue.append(lookup[key])
        for g in self.gens:
            gen_idx.append(lookup[self._key(g)])
        self.mats = mats
        self._lookup = lookup
        self._gen_idx = gen_idx
        self._irr = irr
        # verify the supplied irreducible images define homomorphisms
        for r in range(len(irr)):
            for i in range(len(mats)):
                for gi, g in enumerate(self.gens):
                    j = lookup[self._key(g.dot(mats[i]))]
                    lhs = np.asarray(self._irrep_gens[r][gi], dtype=complex) @ irr[r][i]
                    if not np.allclose(lhs, irr[r][j], atol=1e-8):
                        raise PreconditionError(f"irreducible {r} is not a homomorphism")

    def _labels(self):
        return list(range(len(self.mats)))

    def mul_labels(self, a, b):
        return self._lookup[self._key(self.mats[a].dot(self.mats[b]))]

    def _generator_labels(self):
        return list(self._gen_idx)

    def _class_partition(self):
        return self._brute_force_classes()

    def _character_table(self):
        if not self._irr:
            raise UnsupportedError("explicit groups need user supplied irreducibles for characters")
        values = []
        for mats in self._irr:
            values.append([_clean_complex(np.trace(mats[cls[0]])) for cls in self.classes])
        table = CharacterTable(
            class_names=[f"K{c}" for c in range(len(self.classes))],
            class_sizes=[len(c) for c in self.classes],
            irrep_names=[f"rho{r}" for r in range(len(values))],
            values=values,
            exact=all(isinstance(v, Fraction) for row in values for v in row),
        )
        _check_table(table)
        return table

    def _irrep(self, l, label):
        return self._irr[l][label]


def _clean_complex(z):
    z = complex(z)
    if abs(z.imag) < 1e-12:
        return _clean_float(z.real)
    return z


def _check_table(table: CharacterTable):
    g = table.order
    k = len(table.values)
    for a in range(k):
        for b in range(k):
            s = sum(
                size * complex(x) * complex(y).conjugate()
                for size, x, y in zip(table.class_sizes, table.values[a], table.values[b])
            )
            if abs(s / g - (a == b)) > 1e-8:
                raise PreconditionError("supplied irreducibles are not orthonormal irreducible characters")
    if sum(d * d for d in table.dims) != g:
        raise PreconditionError("supplied irreducibles do not exhaust the group")


# ---------------------------------------------------------------------------
# representations


class GroupRepresentation:
    """A finite group together with a linear action on ``K^degree``.

    When the action permutes the standard basis, ``perm(i)`` returns the
    permutation ``p`` with ``rho(g_i) e_j = e_{p[j]}`` and matrices are
    only materialised on demand.
    """

    def __init__(
        self,
        group: FiniteGroup,
        degree: int,
        perms: Callable[[int], tuple] | None = None,
        matrices: Callable[[int], np.ndarray] | None = None,
        name: str = "",
        basis: list | None = None,
    ):
        if perms is None and matrices is None:
            raise PreconditionError("need perms or matrices")
        self.group = group
        self.degree = degree
        self._perm_fn = perms
        self._mat_fn = matrices
        self.name = name or group.family
        self.basis = basis
        self._perm_cache: dict[int, tuple] = {}
        self._mat_cache: dict[int, np.ndarray] = {}

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def is_permutation(self) -> bool:
        return self._perm_fn is not None

    def perm(self, i: int) -> tuple | None:
        if self._perm_fn is None:
            return None
        if i not in self._perm_cache:
            self._perm_cache[i] = tuple(self._perm_fn(i))
        return self._perm_cache[i]

    def matrix(self, i: int) -> np.ndarray:
        if i not in self._mat_cache:
            if self._perm_fn is not None:
                p = self.perm(i)
                m = np.zeros((self.degree, self.degree), dtype=np.int64)
                for j, pj in enumerate(p):
                    m[pj, j] = 1
            else:
                m = self._mat_fn(i)
            m.setflags(write=False)
            self._mat_cache[i] = m
        return self._mat_cache[i]

    @property
    def matrices(self) -> list[np.ndarray]:
        return [self.matrix(i) for i in range(self.order)]

    def action_matrix(self, i: int) -> np.ndarray:
        """``M(g_i) = rho(g_i^{-1})``, the matrix used in group sums."""
        return self.matrix(self.group.inv(i))

    @property
    def generators(self) -> list[int]:
        return self.group.generators

    @property
    def is_exact(self) -> bool:
        return self.is_permutation or all(matrix_is_exact(self.matrix(i)) for i in self.generators)

    def character(self) -> list:
        """Character of this representation on each element."""
        out = []
        for i in range(self.order):
            if self.is_permutation:
                out.append(Fraction(sum(1 for j, pj in enumerate(self.perm(i)) if j == pj)))
            else:
                t = np.trace(self.matrix(i))
                out.append(Fraction(int(t)) if isinstance(t, (int, np.integer)) else (t if isinstance(t, Fraction) else _clean_complex(t)))
        return out

    def multiplicities(self) -> list[int]:
        chi = self.character()
        g = self.group
        out = []
        for l in range(g.num_irreps):
            s = sum(complex(chi[i]) * complex(g.character(l, i)).conjugate() for i in range(self.order))
            out.append(int(round((s / self.order).real)))
        return out

    def __repr__(self):
        return f"GroupRepresentation({self.name}, order={self.order}, degree={self.degree})"


def symmetric_group(n: int) -> GroupRepresentation:
    """S_n permuting the coordinates of R^n."""
    g = SymmetricGroup(n)
    return GroupRepresentation(g, n, perms=lambda i: g.elements[i], name=f"S{n}")


def cyclic_group(n: int) -> GroupRepresentation:
    """C_n acting on R^n by the cyclic shift e_i -> e_{i+1}."""
    g = CyclicGroup(n)
    return GroupRepresentation(g, n, perms=lambda k: tuple((i + k) % n for i in range(n)), name=f"C{n}")


def dihedral_group(n: int, action: str = "plane") -> GroupRepresentation:
    """D_n of order 2n on the plane, or permuting the vertices of an n-gon."""
    g = DihedralGroup(n)
    if action == "plane":
        def mat(i):
            e, k = g.elements[i]
            r = _rotation_matrix(k, n)
            m = _reflection() @ r if e else r
            return m.astype(np.int64) if m.dtype.kind == "i" else m
        return GroupRepresentation(g, 2, matrices=mat, name=f"D{n}")
    if action == "vertices":
        def perm(i):
            e, k = g.elements[i]
            sgn = -1 if e else 1
            return tuple((sgn * (j + k)) % n for j in range(n))
        return GroupRepresentation(g, n, perms=perm, name=f"D{n}v")
    raise PreconditionError(f"unknown dihedral action {action!r}")


def explicit_group(generators, irreps=None) -> GroupRepresentation:
    g = ExplicitGroup(generators, irreps)
    return GroupRepresentation(g, g.n, matrices=lambda i: g.mats[i], name="explicit")


def parse_group_spec(spec: str) -> GroupRepresentation:
    """Parse ``S:n``, ``C:n``, ``D:n`` (plane) or ``Dv:n`` (vertices)."""
    try:
        fam, num = spec.split(":")
        n = int(num)
    except ValueError as exc:
        raise PreconditionError(f"bad group spec {spec!r}; expected e.g. S:3") from exc
    fam = fam.strip().upper()
    if fam == "S":
        return symmetric_group(n)
    if fam == "C":
        return cyclic_group(n)
    if fam == "D":
        return dihedral_group(n)
    if fam == "DV":
        return dihedral_group(n, "vertices")
    raise PreconditionError(f"unknown group family {fam!r}")


def group_from_json(data: dict) -> GroupRepresentation:
    from .algebra import matrix_from_json

    if "family" in data:
        return parse_group_spec(f"{data['family']}:{data['n']}")
    gens = [matrix_from_json(m) for m in data["generators"]]
    irreps = None
    if "irreps" in data:
        irreps = [[matrix_from_json(m) for m in imgs] for imgs in data["irreps"]]
    return explicit_group(gens, irreps)


# ---------------------------------------------------------------------------
# action on polynomials


def act_on_polynomial(rep: GroupRepresentation, i: int, f: Polynomial) -> Polynomial:
    """``f^g(x) = f(M(g) x)`` for the element with index ``i``."""
    if f.nvars != rep.degree:
        raise PreconditionError(f"polynomial has {f.nvars} variables, representation degree is {rep.degree}")
    if rep.is_permutation:
        return f.permute(rep.perm(i))
    inv = rep.matrix(rep.group.inv(i))
    if not matrix_is_exact(inv):
        f = f.to_float()
        inv = np.asarray(inv, dtype=float)
    return f.linear_substitution(inv)


def reynolds(rep: GroupRepresentation, f: Polynomial) -> Polynomial:
    """Group average ``(1/|G|) sum_g f^g``.

    Exact for permutation actions, for exact explicit groups and for the
    planar dihedral groups (through complex coordinates) when ``f`` has
    rational coefficients.
    """
    if isinstance(rep.group, DihedralGroup) and rep.degree == 2 and not rep.is_permutation and f.is_exact():
        return _dihedral_reynolds(rep.group.n, f)
    total = Polynomial(f.nvars)
    for i in range(rep.order):
        total = total + act_on_polynomial(rep, i, f)
    if total.is_exact():
        return total * Fraction(1, rep.order)
    return total * (1.0 / rep.order)


def is_invariant(rep: GroupRepresentation, f: Polynomial, tol: float = 1e-9) -> bool:
    for i in rep.generators:
        g = act_on_polynomial(rep, i, f)
        if f.is_exact() and g.is_exact():
            if g != f:
                return False
        elif not g.almost_equal(f, tol):
            return False
    return True


def _gauss_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _dihedral_reynolds(n: int, f: Polynomial) -> Polynomial:
    """Exact Reynolds operator of the planar D_n.

    Writing z = x + iy and w = x - iy, a monomial z^a w^b survives the
    rotation average iff a = b (mod n); the reflection x -> -x maps z to -w.
    Coefficients are Gaussian rationals stored as (re, im) pairs.
    """
    half = Fraction(1, 2)
    # x = (z + w)/2,  y = (z - w)/(2i) = -i(z - w)/2
    x_zw = {(1, 0): (half, Fraction(0)), (0, 1): (half, Fraction(0))}
    y_zw = {(1, 0): (Fraction(0), -half), (0, 1): (Fraction(0), half)}

    def pmul(p, q):
        out = {}
        for (a1, b1), c1 in p.items():
            for (a2, b2), c2 in q.items():
                k = (a1 + a2, b1 + b2)
                c = _gauss_mul(c1, c2)
                old = out.get(k, (Fraction(0), Fraction(0)))
                out[k] = (old[0] + c[0], old[1] + c[1])
        return out

    def ppow(p, k, cache):
        if k not in cache:
            cache[k] = {(0, 0): (Fraction(1), Fraction(0))} if k == 0 else pmul(ppow(p, k - 1, cache), p)
        return cache[k]

    xc, yc = {}, {}
    zw = {}
    for (ex, ey), c in f.terms.items():
        term = pmul(ppow(x_zw, ex, xc), ppow(y_zw, ey, yc))
        for k, v in term.items():
            old = zw.get(k, (Fraction(0), Fraction(0)))
            zw[k] = (old[0] + c * v[0], old[1] + c * v[1])
    rot = {k: v for k, v in zw.items() if (k[0] - k[1]) % n == 0}
    avg = {}
    for (a, b), v in rot.items():
        sign = -1 if (a + b) % 2 else 1
        for key, val in (((a, b), v), ((b, a), (sign * v[0], sign * v[1]))):
            old = avg.get(key, (Fraction(0), Fraction(0)))
            avg[key] = (old[0] + val[0] / 2, old[1] + val[1] / 2)
    # back to x, y: z = x + iy, w = x - iy
    z_xy = {(1, 0): (Fraction(1), Fraction(0)), (0, 1): (Fraction(0), Fraction(1))}
    w_xy = {(1, 0): (Fraction(1), Fraction(0)), (0, 1): (Fraction(0), Fraction(-1))}
    zc, wc = {}, {}
    out = {}
    for (a, b), v in avg.items():
        if v == (0, 0):
            continue
        term = pmul(ppow(z_xy, a, zc), ppow(w_xy, b, wc))
        for k, t in term.items():
            c = _gauss_mul(v, t)
            old = out.get(k, (Fraction(0), Fraction(0)))
            out[k] = (old[0] + c[0], old[1] + c[1])
    if any(v[1] != 0 for v in out.values()):
        raise ArithmeticError("dihedral average produced a non-real coefficient")
    return Polynomial(2, {k: v[0] for k, v in out.items()})


# ---------------------------------------------------------------------------
# induced action on polynomial spaces


def polynomial_representation(rep: GroupRepresentation, degree: int, homogeneous: bool = False,
                              monomials: list | None = None) -> GroupRepresentation:
    """Action ``f -> f^g`` on coefficient vectors over a monomial basis.

    The basis is all monomials of degree <= ``degree`` (or == ``degree``)
    unless ``monomials`` is given, in which case the span must be stable.
    """
    n = rep.degree
    mons = list(monomials) if monomials is not None else monomials_up_to(n, degree, homogeneous)
    pos = {m: k for k, m in enumerate(mons)}
    if rep.is_permutation:
        def perm(i):
            p = rep.perm(i)
            out = []
            for m in mons:
                e = [0] * n
                for j, k in enumerate(m):
                    e[p[j]] = k
                key = tuple(e)
                if key not in pos:
                    raise PreconditionError("monomial set is not stable under the group")
                out.append(pos[key])
            return tuple(out)
        return GroupRepresentation(rep.group, len(mons), perms=perm, name=f"{rep.name}|poly{degree}", basis=mons)

    def mat(i):
        exact = rep.is_exact
        m = np.zeros((len(mons), len(mons)), dtype=object if exact else float)
        if exact:
            m.fill(Fraction(0))
        for k, mono in enumerate(mons):
            img = act_on_polynomial(rep, i, Polynomial.monomial(mono))
            for e, c in img.terms.items():
                if e not in pos:
                    if abs(complex(c)) < 1e-12:
                        continue
                    raise PreconditionError("monomial span is not stable under the group")
                m[pos[e], k] = c if exact else float(np.real(c))
        return m
    return GroupRepresentation(rep.group, len(mons), matrices=mat, name=f"{rep.name}|poly{degree}", basis=mons)


def vector_to_polynomial(vec, monomials: Sequence, nvars: int) -> Polynomial:
    terms = {}
    for m, c in zip(monomials, vec):
        if isinstance(c, complex) and abs(c.imag) < 1e-14:
            c = c.real
        if isinstance(c, (float, complex)) and abs(c) < 1e-14:
            continue
        if c != 0:
            terms[tuple(m)] = c
    return Polynomial(nvars, terms)
