"""Isotypic projectors, symmetry-adapted bases and block diagonalisation.

For a representation ``rho`` the projector onto the component labelled
by irreducible ``l`` is

    P_l = (d_l / |G|) * sum_g conj(chi_l(g)) M(g),   M(g) = rho(g^{-1}).

Inside a component the basis vectors ``e[u][h]`` (copy ``u``, coordinate
``h``) are built with Serre's maps

    F_l(a, b) = (d_l / |G|) * sum_g Y_l(g)[a, b] rho(g)

from an orthonormal basis of the image of ``F_l(0, 0)``, so that every
matrix commuting with the group becomes ``N_l (x) I_{d_l}`` on that
component.  The real flavour keeps real irreducibles as they are and
turns each pair of complex conjugate irreducibles into a real
irreducible of twice the dimension using ``b + conj(b)`` and
``(b - conj(b)) / i`` (normalised).  Quaternionic irreducibles are not
supported in the real flavour.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import (
    exact_matrix,
    hermitian_eigenvalues,
    matrix_is_exact,
    rank_exact,
    sym_eigenvalues,
    to_float_matrix,
)
from .errors import PreconditionError, UnsupportedError
from .groups import GroupRepresentation


# ---------------------------------------------------------------------------
# projectors


def _rep_is_exact(rep: GroupRepresentation) -> bool:
    return rep.is_permutation or all(matrix_is_exact(rep.matrix(i)) for i in rep.generators)


def isotypic_projector(rep: GroupRepresentation, l: int, exact: bool | None = None) -> np.ndarray:
    """Projector onto the isotypic component of irreducible ``l``.

    Exact (Fraction entries) when the characters are rational and the
    representation matrices are exact, unless ``exact=False``.
    """
    g = rep.group
    table = g.character_table
    if not 0 <= l < len(table.values):
        raise PreconditionError(f"no irreducible with index {l}")
    chars = g.character_vector(l)
    can_exact = all(isinstance(c, Fraction) for c in chars) and _rep_is_exact(rep)
    exact = can_exact if exact is None else (exact and can_exact)
    d = table.dims[l]
    n = rep.degree
    if exact:
        acc = [[Fraction(0)] * n for _ in range(n)]
        if rep.is_permutation:
            for i in range(rep.order):
                c = chars[i]
                if c == 0:
                    continue
                p = rep.perm(i)
                for r in range(n):
                    acc[r][p[r]] += c
        else:
            for i in range(rep.order):
                c = chars[i]
                if c == 0:
                    continue
                m = rep.action_matrix(i)
                for r in range(n):
                    for s in range(n):
                        if m[r, s] != 0:
                            acc[r][s] += c * m[r, s]
        scale = Fraction(d, rep.order)
        return exact_matrix([[v * scale for v in row] for row in acc])
    acc = np.zeros((n, n), dtype=complex)
    for i in range(rep.order):
        c = complex(chars[i]).conjugate()
        if c == 0:
            continue
        if rep.is_permutation:
            p = rep.perm(i)
            acc[np.arange(n), list(p)] += c
        else:
            acc += c * np.asarray(to_float_matrix(rep.action_matrix(i)), dtype=complex)
    acc *= d / rep.order
    if np.max(np.abs(acc.imag), initial=0.0) < 1e-14:
        return acc.real
    return acc


def isotypic_decomposition(rep: GroupRepresentation, exact: bool | None = None) -> list[tuple[int, int, np.ndarray]]:
    """``(l, multiplicity, projector)`` for every irreducible occurring in ``rep``."""
    out = []
    for l, m in enumerate(rep.multiplicities()):
        if m:
            out.append((l, m, isotypic_projector(rep, l, exact)))
    return out


def serre_projector(rep: GroupRepresentation, l: int, a: int, b: int, unitary: bool = True) -> np.ndarray:
    """``F_l(a, b) = (d_l/|G|) sum_g Y_l(g)[a, b] rho(g)``.

    With ``unitary=False`` the exact matrix form of the irreducible is used
    (integer Specht matrices for S_n), giving exact results for exact
    representations.
    """
    g = rep.group
    ys = g.irrep_matrices(l, unitary=unitary)
    d = g.character_table.dims[l]
    n = rep.degree
    exact = (not unitary) and _rep_is_exact(rep) and all(
        isinstance(y[a, b], (int, np.integer, Fraction)) for y in ys
    )
    if exact:
        acc = [[Fraction(0)] * n for _ in range(n)]
        for i in range(rep.order):
            c = Fraction(int(ys[i][a, b])) if not isinstance(ys[i][a, b], Fraction) else ys[i][a, b]
            if c == 0:
                continue
            if rep.is_permutation:
                p = rep.perm(i)
                for j in range(n):
                    acc[p[j]][j] += c
            else:
                m = rep.matrix(i)
                for r in range(n):
                    for s in range(n):
                        if m[r, s] != 0:
                            acc[r][s] += c * m[r, s]
        scale = Fraction(d, rep.order)
        return exact_matrix([[v * scale for v in row] for row in acc])
    acc = np.zeros((n, n), dtype=complex)
    for i in range(rep.order):
        c = complex(ys[i][a, b])
        if c == 0:
            continue
        if rep.is_permutation:
            p = rep.perm(i)
            acc[list(p), np.arange(n)] += c
        else:
            acc += c * np.asarray(to_float_matrix(rep.matrix(i)), dtype=complex)
    return acc * (d / rep.order)


def adapted_generators(rep: GroupRepresentation, l: int) -> list[list[Fraction]]:
    """Exact basis of the image of ``F_l(0, 0)``, one vector per copy.

    Each vector generates one irreducible copy of type ``l``; the copies
    obtained this way are isomorphic through maps commuting with the group.
    """
    f = serre_projector(rep, l, 0, 0, unitary=False)
    if f.dtype != object:
        raise UnsupportedError("exact adapted generators need exact irreducible matrices")
    cols = []
    for k in range(rep.degree):
        col = [f[r, k] for r in range(rep.degree)]
        if all(v == 0 for v in col):
            continue
        if rank_exact(cols + [col]) > len(cols):
            cols.append(col)
    return cols


# ---------------------------------------------------------------------------
# symmetry-adapted bases


@dataclass
class Component:
    """One isotypic component of a symmetry-adapted basis.

    ``columns[u][h]`` is the basis column of copy ``u``, coordinate ``h``.
    ``irreps`` holds the irreducible index (two indices for a real
    component built from a complex conjugate pair).
    """

    irreps: tuple[int, ...]
    kind: str  # "complex", "real", "pair"
    multiplicity: int
    dim: int
    columns: list[list[int]]

    @property
    def block_size(self) -> int:
        return len(self.columns)


@dataclass
class SymmetryAdaptedBasis:
    flavor: str
    vectors: np.ndarray  # basis vectors are the columns
    components: list[Component]
    orthonormal: bool = True
    names: list[str] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def component_vectors(self, c: int) -> np.ndarray:
        cols = [k for row in self.components[c].columns for k in row]
        return self.vectors[:, cols]

    def to_json(self) -> dict:
        from .algebra import matrix_to_json

        return {
            "flavor": self.flavor,
            "orthonormal": self.orthonormal,
            "vectors": matrix_to_json(np.round(self.vectors, 12)),
            "components": [
                {
                    "irreps": list(c.irreps),
                    "kind": c.kind,
                    "multiplicity": c.multiplicity,
                    "dim": c.dim,
                    "columns": c.columns,
                    "name": name,
                }
                for c, name in zip(self.components, self.names)
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SymmetryAdaptedBasis":
        from .algebra import matrix_from_json

        try:
            vecs = np.asarray(to_float_matrix(matrix_from_json(data["vectors"])), dtype=complex)
            if np.max(np.abs(vecs.imag), initial=0.0) == 0:
                vecs = vecs.real
            comps = [Component(tuple(c["irreps"]), c["kind"], int(c["multiplicity"]), int(c["dim"]),
                               [list(map(int, row)) for row in c["columns"]]) for c in data["components"]]
            names = [c.get("name", "") for c in data["components"]]
            return cls(data["flavor"], vecs, comps, bool(data.get("orthonormal", True)), names)
        except (KeyError, TypeError, ValueError) as exc:
            raise PreconditionError(f"malformed basis JSON: {exc}") from exc


def _rep_is_unitary(rep: GroupRepresentation) -> bool:
    if rep.is_permutation:
        return True
    for i in rep.generators:
        m = np.asarray(to_float_matrix(rep.matrix(i)), dtype=complex)
        if not np.allclose(m.conj().T @ m, np.eye(rep.degree), atol=1e-10):
            return False
    return True


def _orthonormal_columns(vecs: np.ndarray, tol: float) -> np.ndarray:
    """Greedy independent columns, then Gram-Schmidt (modified, twice)."""
    out = []
    for k in range(vecs.shape[1]):
        v = vecs[:, k].astype(complex)
        for _ in range(2):
            for q in out:
                v = v - q * np.vdot(q, v)
        nrm = np.linalg.norm(v)
        if nrm > tol:
            out.append(v / nrm)
    return np.array(out).T if out else np.zeros((vecs.shape[0], 0), dtype=complex)


def _independent_columns(vecs: np.ndarray, tol: float) -> np.ndarray:
    chosen = []
    for k in range(vecs.shape[1]):
        cand = chosen + [vecs[:, k]]
        if np.linalg.matrix_rank(np.array(cand).T, tol=tol) == len(cand):
            chosen.append(vecs[:, k])
    return np.array(chosen).T if chosen else np.zeros((vecs.shape[0], 0))


def _complex_component(rep: GroupRepresentation, l: int, m: int, unitary: bool, tol: float):
    """Blocks of vectors e[u][h] for irreducible l (copies u, coordinates h)."""
    g = rep.group
    d = g.character_table.dims[l]
    f00 = serre_projector(rep, l, 0, 0)
    if unitary:
        base = _orthonormal_columns(f00, tol)
    else:
        base = _independent_columns(f00, tol)
    if base.shape[1] != m:
        raise ArithmeticError(f"expected {m} copies of irreducible {l}, found {base.shape[1]}")
    maps = [f00] + [serre_projector(rep, l, h, 0) for h in range(1, d)]
    blocks = []
    for u in range(m):
        v = base[:, u]
        blocks.append([maps[h] @ v for h in range(d)])
    return blocks


def symmetry_adapted_basis(rep: GroupRepresentation, flavor: str = "complex", tol: float = 1e-9) -> SymmetryAdaptedBasis:
    """Basis of ``K^n`` adapted to the isotypic decomposition of ``rep``."""
    if flavor not in ("complex", "real"):
        raise PreconditionError("flavor must be 'complex' or 'real'")
    g = rep.group
    mults = rep.multiplicities()
    table = g.character_table
    unitary = _rep_is_unitary(rep)
    vectors: list[np.ndarray] = []
    components: list[Component] = []
    names: list[str] = []

    def add(irreps, kind, blocks):
        start = len(vectors)
        cols = []
        for u, row in enumerate(blocks):
            cols.append([])
            for v in row:
                cols[-1].append(len(vectors))
                vectors.append(v)
        d = len(blocks[0]) if blocks else 0
        components.append(Component(tuple(irreps), kind, len(blocks), d, cols))
        names.append("+".join(table.irrep_names[i] for i in irreps))
        return start

    if flavor == "complex":
        for l, m in enumerate(mults):
            if m:
                add((l,), "complex", _complex_component(rep, l, m, unitary, tol))
    else:
        fs = g.frobenius_schur
        conj = g.conjugate_irrep
        pairs = []
        for l, m in enumerate(mults):
            if not m:
                continue
            if fs[l] == -1:
                raise UnsupportedError(f"irreducible {table.irrep_names[l]} is quaternionic; real flavour unsupported")
            if fs[l] == 1:
                blocks = _complex_component(rep, l, m, unitary, tol)
                if any(np.max(np.abs(np.imag(v)), initial=0.0) > tol for row in blocks for v in row):
                    raise UnsupportedError("real irreducible without a real matrix form")
                add((l,), "real", [[np.real(v) for v in row] for row in blocks])
            elif conj[l] > l:
                pairs.append(l)
        for l in pairs:
            blocks = _complex_component(rep, l, mults[l], unitary, tol)
            real_blocks = []
            for row in blocks:
                real_blocks.append([np.sqrt(2) * np.real(v) for v in row])
                real_blocks.append([np.sqrt(2) * np.imag(v) for v in row])
            add((l, conj[l]), "pair", real_blocks)
    mat = np.array(vectors).T if vectors else np.zeros((rep.degree, 0))
    if flavor == "real":
        mat = np.real(mat)
    elif np.max(np.abs(mat.imag), initial=0.0) < 1e-15:
        mat = mat.real
    if mat.shape[1] != rep.degree:
        raise ArithmeticError("symmetry-adapted basis does not span the space")
    return SymmetryAdaptedBasis(flavor, mat, components, unitary, names)


# ---------------------------------------------------------------------------
# block diagonalisation


@dataclass
class BlockDiagonalization:
    """Result of conjugating an invariant matrix by an adapted basis.

    ``blocks[c]`` is the ``multiplicity x multiplicity`` block ``N_c`` of
    component ``c``; it appears ``dim`` times.  ``order`` lists basis
    columns so that the conjugated matrix restricted to that order is
    literally block diagonal.
    """

    blocks: list[np.ndarray]
    conjugated: np.ndarray
    off_block_mass: float
    order: list[int]
    components: list[Component]

    def block_sizes(self) -> list[int]:
        return [b.shape[0] for b in self.blocks]

    def spectrum(self) -> list[float]:
        """Eigenvalues of the original matrix reassembled from the blocks."""
        out = []
        for comp, blk in zip(self.components, self.blocks):
            if np.iscomplexobj(blk) and np.max(np.abs(blk.imag), initial=0.0) > 0:
                ev = hermitian_eigenvalues(blk)
            else:
                ev = sym_eigenvalues(np.real(blk))
            for _ in range(comp.dim):
                out.extend(ev)
        return sorted(out)


def commutes(rep: GroupRepresentation, x: np.ndarray, tol: float = 1e-9) -> bool:
    exact = matrix_is_exact(x) and _rep_is_exact(rep)
    for i in rep.generators:
        m = rep.matrix(i)
        if exact:
            xm = exact_matrix(x)
            if not (np.asarray(m, dtype=object).dot(xm) == xm.dot(np.asarray(m, dtype=object))).all():
                return False
        else:
            m = np.asarray(to_float_matrix(m), dtype=complex)
            xf = np.asarray(to_float_matrix(np.asarray(x)), dtype=complex)
            if np.max(np.abs(m @ xf - xf @ m)) > tol * max(1.0, np.max(np.abs(xf))):
                return False
    return True


def block_diagonalize(rep: GroupRepresentation, x, sab: SymmetryAdaptedBasis | None = None,
                      tol: float = 1e-9) -> BlockDiagonalization:
    """Conjugate a matrix from the commutant of ``rep`` into block form."""
    x = np.asarray(x)
    if x.shape != (rep.degree, rep.degree):
        raise PreconditionError("matrix size does not match the representation degree")
    if not commutes(rep, x, tol):
        raise PreconditionError("matrix does not commute with the group")
    sab = sab or symmetry_adapted_basis(rep, "complex", tol)
    b = sab.vectors
    xf = np.asarray(to_float_matrix(x), dtype=complex)
    if sab.orthonormal:
        conj = b.conj().T @ xf @ b
    else:
        conj = np.linalg.solve(b, xf @ b)
    if np.max(np.abs(conj.imag), initial=0.0) < 1e-13:
        conj = conj.real
    mask = np.zeros(conj.shape, dtype=bool)
    blocks = []
    order = []
    for comp in sab.components:
        cols = comp.columns
        blk = np.array([[conj[cols[u][0], cols[v][0]] for v in range(comp.multiplicity)] for u in range(comp.multiplicity)])
        blocks.append(blk)
        for h in range(comp.dim):
            idx = [cols[u][h] for u in range(comp.multiplicity)]
            order.extend(idx)
            mask[np.ix_(idx, idx)] = True
            sub = conj[np.ix_(idx, idx)]
            if np.max(np.abs(sub - blk), initial=0.0) > max(tol, 1e-7) * max(1.0, np.max(np.abs(xf))):
                raise ArithmeticError("repeated blocks differ; basis is not symmetry adapted")
    off = float(np.sqrt(np.sum(np.abs(conj[~mask]) ** 2)))
    return BlockDiagonalization(blocks, conj, off, order, sab.components)


# ---------------------------------------------------------------------------
# zonal matrices


def zonal_matrices(sab: SymmetryAdaptedBasis) -> list[np.ndarray]:
    """``E_c[i, j, u, v] = sum_h e[u][h](i) * conj(e[v][h](j))`` per component."""
    out = []
    for comp in sab.components:
        m = comp.multiplicity
        n = sab.dim
        e = np.zeros((n, n, m, m), dtype=complex)
        for h in range(comp.dim):
            vecs = np.array([sab.vectors[:, comp.columns[u][h]] for u in range(m)])  # m x n
            e += np.einsum("ui,vj->ijuv", vecs, vecs.conj())
        if np.max(np.abs(e.imag), initial=0.0) < 1e-14:
            e = e.real
        out.append(e)
    return out


def reconstruct_from_blocks(zonal: list[np.ndarray], blocks: list[np.ndarray]) -> np.ndarray:
    """``X[i, j] = sum_c <E_c(i, j), M_c>`` (bilinear pairing)."""
    n = zonal[0].shape[0]
    x = np.zeros((n, n), dtype=complex)
    for e, m in zip(zonal, blocks):
        x += np.einsum("ijuv,uv->ij", e, np.asarray(m))
    if np.max(np.abs(x.imag), initial=0.0) < 1e-12:
        return x.real
    return x
