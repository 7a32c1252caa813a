"""Exact integer and rational linear algebra.

Matrices are plain lists (or tuples) of rows.  Integer matrices hold Python ``int``;
rational ones hold ``fractions.Fraction``.  Lattices are given by generator rows.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence

__all__ = [
    "LatticeError",
    "FiniteAbelianGroup",
    "identity",
    "mat_mul",
    "mat_vec",
    "transpose",
    "det",
    "inverse",
    "rank",
    "nullspace",
    "solve_rows",
    "smith_normal_form",
    "clear_denominators",
    "lattice_basis",
    "quotient_group",
    "lattice_subspace_intersection",
    "express_in_basis",
]


class LatticeError(ValueError):
    """Raised for incompatible lattices or vectors outside a span."""


# ---------------------------------------------------------------- basic matrices


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m):
    return [list(col) for col in zip(*m)]


def mat_mul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(m, v):
    return [sum(x * y for x, y in zip(row, v)) for row in m]


def _rref(m):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    a = [[Fraction(x) for x in row] for row in m]
    ncols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank(m) -> int:
    if not m:
        return 0
    return len(_rref(m)[1])


def det(m) -> Fraction:
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def inverse(m) -> list[list[Fraction]]:
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    red, piv = _rref(aug)
    if piv[:n] != list(range(n)):
        raise LatticeError("matrix is singular")
    return [row[n:] for row in red[:n]]


def nullspace(m, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis (as rows) of ``{x : m x = 0}``."""
    if ncols is None:
        ncols = len(m[0])
    if not m:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    red, piv = _rref(m)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in enumerate(piv):
            v[pc] = -red[r][f]
        basis.append(v)
    return basis


def solve_rows(basis, target) -> list[list[Fraction]]:
    """Coefficients ``C`` with ``C @ basis == target`` (rows); raises if impossible."""
    k = len(basis)
    out = []
    bt = transpose(basis)
    for t in target:
        aug = [list(bt[i]) + [t[i]] for i in range(len(bt))]
        red, piv = _rref(aug)
        if k in piv:
            raise LatticeError("vector is not in the span of the basis")
        if len(piv) < k:
            raise LatticeError("basis vectors are linearly dependent")
        coeffs = [Fraction(0)] * k
        for r, pc in enumerate(piv):
            coeffs[pc] = red[r][k]
        out.append(coeffs)
    return out


# ---------------------------------------------------------------- Smith normal form


def smith_normal_form(m):
    """Return ``(U, D, V)`` with ``U @ m @ V == D``, ``U`` and ``V`` unimodular.

    ``D`` is diagonal with nonnegative entries ``d_1 | d_2 | ...``.  The pivot at
    each stage is the entry of smallest absolute value, ties broken row-major.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [[int(x) for x in row] for row in m]
    U = identity(rows)
    V = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for row in a:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = a[t][t]
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        done = False
            if not done:
                continue
            # pivot must divide the rest of the block
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
    return U, a, V


def _diagonal(D) -> list[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


# ---------------------------------------------------------------- lattices


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Finite abelian group by invariant factors ``d_1 | d_2 | ...`` (all >= 2)."""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        fs = tuple(int(d) for d in self.invariant_factors)
        if any(d < 2 for d in fs):
            raise ValueError(f"invariant factors must be >= 2, got {fs}")
        if any(fs[k + 1] % fs[k] for k in range(len(fs) - 1)):
            raise ValueError(f"invariant factors must form a divisibility chain, got {fs}")
        object.__setattr__(self, "invariant_factors", fs)

    @classmethod
    def from_diagonal(cls, diag) -> "FiniteAbelianGroup":
        """Normalize arbitrary nonzero diagonal entries to invariant-factor form."""
        ds = [abs(int(d)) for d in diag]
        if any(d == 0 for d in ds):
            raise ValueError("infinite group (zero diagonal entry)")
        # re-run SNF on the diagonal to restore divisibility
        _, D, _ = smith_normal_form([[d if i == j else 0 for j in range(len(ds))] for i, d in enumerate(ds)])
        return cls(tuple(d for d in _diagonal(D) if d != 1))

    @property
    def order(self) -> int:
        return reduce(lambda x, y: x * y, self.invariant_factors, 1)

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def __str__(self):
        if not self.invariant_factors:
            return "1"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)


def clear_denominators(m) -> tuple[list[list[int]], int]:
    """Integer matrix ``s * m`` and the scale ``s`` (lcm of all denominators)."""
    s = 1
    for row in m:
        for x in row:
            s = lcm(s, Fraction(x).denominator)
    return [[int(Fraction(x) * s) for x in row] for row in m], s


def lattice_basis(generators) -> list[list[Fraction]]:
    """A basis (rows) of the lattice generated by the given rational rows."""
    gens = [row for row in generators if any(x != 0 for x in row)]
    if not gens:
        return []
    n = len(gens[0])
    M, s = clear_denominators(gens)
    U, D, V = smith_normal_form(M)
    Vinv = inverse(V)
    out = []
    for i, d in enumerate(_diagonal(D)):
        if d:
            out.append([Fraction(d) * Vinv[i][j] / s for j in range(n)])
    return out


def quotient_group(sub, sup) -> FiniteAbelianGroup:
    """Invariant factors of ``L(sup) / L(sub)`` for full-rank row bases."""
    if len(sub) != len(sup):
        raise LatticeError(f"rank mismatch: sublattice has {len(sub)} rows, superlattice {len(sup)}")
    if not sub:
        return FiniteAbelianGroup()
    if rank(sup) != len(sup) or rank(sub) != len(sub):
        raise LatticeError("lattice bases must be linearly independent")
    try:
        C = solve_rows(sup, sub)
    except LatticeError:
        raise LatticeError("sublattice does not lie in the span of the superlattice") from None
    if any(x.denominator != 1 for row in C for x in row):
        raise LatticeError("sublattice is not contained in the superlattice")
    _, D, _ = smith_normal_form([[int(x) for x in row] for row in C])
    return FiniteAbelianGroup(tuple(d for d in _diagonal(D) if d != 1))


def lattice_subspace_intersection(lattice_basis_rows, subspace) -> list[list[Fraction]]:
    """Basis of ``{v in L : v in span(subspace)}``, a saturated sublattice of ``L``."""
    L = [[Fraction(x) for x in row] for row in lattice_basis_rows]
    n = len(L)
    subspace = [row for row in subspace if any(x != 0 for x in row)]
    if not subspace or rank(subspace) == 0:
        return []
    dim = len(L[0])
    # annihilator of the subspace: columns N with subspace @ N == 0
    N = transpose(nullspace(subspace, dim))
    if not N or not N[0]:
        return [list(row) for row in L]
    M, _ = clear_denominators(mat_mul(L, N))
    U, D, _ = smith_normal_form(M)
    r = sum(1 for d in _diagonal(D) if d)
    # rows r.. of U span the integer left kernel of M
    return [mat_vec(transpose(L), U[i]) for i in range(r, n)]


def express_in_basis(v: Sequence, basis: Sequence[Sequence]) -> list[Fraction]:
    """Coefficients ``c`` with ``sum(c_i basis_i) == v``; raises if ``v`` is outside the span."""
    basis = [[Fraction(x) for x in b] for b in basis]
    if rank(basis) != len(basis):
        raise LatticeError("basis vectors are linearly dependent")
    return solve_rows(basis, [[Fraction(x) for x in v]])[0]
