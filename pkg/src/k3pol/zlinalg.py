"""Exact integer matrix algorithms.

Matrices are plain lists of rows of Python ints. Every routine returns the
unimodular transforms alongside the normal form so results can be checked by
multiplication.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import List, Sequence, Tuple

from .errors import (
    DependentVectorsError,
    InputError,
    InternalMismatchError,
    NotAlternatingError,
    OddDimensionError,
    SingularFormError,
)
from .lattice import Lattice, LatticeVector, bareiss_det, pairing_row

Matrix = List[List[int]]


def as_matrix(m) -> Matrix:
    """Copy ``m`` into a rectangular list-of-lists of ints."""
    from .lattice import _as_int

    rows = [[_as_int(x) for x in row] for row in m]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise InputError("matrix rows have different lengths")
    return rows


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col) if x) for col in bt] for row in a]


def determinant(m: Matrix) -> int:
    return bareiss_det(m)


def is_unimodular_matrix(m: Matrix) -> bool:
    return len(m) == len(m[0]) and abs(determinant(m)) == 1


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


# -- Smith normal form ------------------------------------------------------

def smith_normal_form(m) -> Tuple[Matrix, Matrix, Matrix]:
    """Return ``(S, U, V)`` with ``U * M * V = S``.

    ``S`` is diagonal with nonnegative entries d1 | d2 | ... and zeros last.
    Pivots are chosen as the nonzero entry of least absolute value in the
    active block, ties broken in row-major order.
    """
    a = as_matrix(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = identity(rows)
    v = identity(cols)

    def row_add(dst, src, c):
        ad, as_ = a[dst], a[src]
        for j in range(cols):
            ad[j] += c * as_[j]
        ud, us = u[dst], u[src]
        for j in range(rows):
            ud[j] += c * us[j]

    def col_add(dst, src, c):
        for row in a:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                return a, u, v
            _, i, j = best
            if i != t:
                row_swap(i, t)
            if j != t:
                col_swap(j, t)
            p = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    row_add(i, t, -(a[i][t] // p))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    col_add(j, t, -(a[t][j] // p))
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next((i for i in range(t + 1, rows)
                        if any(a[i][j] % p for j in range(t + 1, cols))), None)
            if bad is None:
                break
            row_add(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return a, u, v


def smith_diagonal(m) -> List[int]:
    s, _, _ = smith_normal_form(m)
    return [s[i][i] for i in range(min(len(s), len(s[0]) if s else 0))]


# -- Hermite normal form ----------------------------------------------------

def hermite_normal_form(m) -> Tuple[Matrix, Matrix]:
    """Row-style HNF: return ``(H, U)`` with ``U * M = H``.

    Pivots are positive, entries above a pivot lie in ``[0, pivot)``, and zero
    rows sit at the bottom.
    """
    a = as_matrix(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = identity(rows)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        for i in range(r + 1, rows):
            if a[i][c] == 0:
                continue
            x, y = a[r][c], a[i][c]
            g, s, t = _xgcd(x, y)
            px, py = x // g, y // g
            # [[s, t], [-py, px]] has determinant s*px + t*py = 1
            for mat in (a, u):
                rr, ri = mat[r], mat[i]
                mat[r] = [s * p + t * q for p, q in zip(rr, ri)]
                mat[i] = [-py * p + px * q for p, q in zip(rr, ri)]
        p = a[r][c]
        if p == 0:
            continue
        if p < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
            p = -p
        for k in range(r):
            q = a[k][c] // p
            if q:
                a[k] = [x - q * y for x, y in zip(a[k], a[r])]
                u[k] = [x - q * y for x, y in zip(u[k], u[r])]
        r += 1
    return a, u


def hnf_basis(vectors: Sequence[Sequence[int]]) -> Matrix:
    """Canonical basis (nonzero HNF rows) of the lattice spanned by ``vectors``."""
    if not vectors:
        return []
    h, _ = hermite_normal_form(vectors)
    return [row for row in h if any(row)]


def rank(m) -> int:
    if not m:
        return 0
    return len(hnf_basis(m))


def integer_kernel(m) -> Matrix:
    """HNF-canonical basis of ``{x in Z^cols : M x = 0}``.

    Rows of the HNF transform of ``M^T`` that hit zero rows span the kernel,
    and since the transform is unimodular they span a saturated lattice.
    """
    a = as_matrix(m)
    if not a:
        raise InputError("matrix has no rows; pass the column count explicitly via kernel_of_rows")
    cols = len(a[0])
    h, u = hermite_normal_form(transpose(a))
    kernel = [u[i] for i in range(cols) if not any(h[i])]
    return hnf_basis(kernel)


def saturate(vectors: Sequence[Sequence[int]]) -> Matrix:
    """HNF basis of (Q-span of ``vectors``) intersected with Z^n."""
    vs = as_matrix(vectors)
    if not vs:
        raise InputError("need at least one vector")
    n = len(vs[0])
    if rank(vs) != len(vs):
        raise DependentVectorsError("input vectors are linearly dependent")
    if len(vs) == n:
        return identity(n)
    return integer_kernel(integer_kernel(vs))


# -- lattice-aware wrappers -------------------------------------------------

def _same_lattice(lattice: Lattice, vs: Sequence[LatticeVector]):
    for x in vs:
        if x.lattice is not lattice and x.lattice != lattice:
            from .errors import LatticeMismatchError

            raise LatticeMismatchError("vector does not belong to the given lattice")


def orthogonal_complement(lattice: Lattice, vs: Sequence[LatticeVector]) -> List[LatticeVector]:
    if not vs:
        raise InputError("need at least one vector")
    _same_lattice(lattice, vs)
    rows = [pairing_row(x) for x in vs]
    return [lattice.vector(k) for k in integer_kernel(rows)]


def saturation(lattice: Lattice, basis: Sequence[LatticeVector]) -> List[LatticeVector]:
    if not basis:
        raise InputError("need at least one vector")
    _same_lattice(lattice, basis)
    return [lattice.vector(r) for r in saturate([x.coords for x in basis])]


def solve_in_basis(basis: Sequence[Sequence[int]], x: Sequence[int]) -> List[Fraction]:
    """Rational coordinates ``c`` with ``sum c_i basis_i = x``.

    Raises :class:`InputError` when ``x`` is outside the rational span.
    """
    k = len(basis)
    n = len(x)
    # augmented system: columns are basis vectors
    a = [[Fraction(basis[j][i]) for j in range(k)] + [Fraction(x[i])] for i in range(n)]
    piv_cols = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, n) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pv = a[r][c]
        a[r] = [y / pv for y in a[r]]
        for i in range(n):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [y - f * z for y, z in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
    if any(a[i][k] != 0 for i in range(r, n)):
        raise InputError("vector is not in the span of the basis")
    if len(piv_cols) != k:
        raise DependentVectorsError("basis vectors are linearly dependent")
    out = [Fraction(0)] * k
    for i, c in enumerate(piv_cols):
        out[c] = a[i][k]
    return out


def integral_coordinates(basis: Sequence[Sequence[int]], x: Sequence[int]) -> List[int]:
    coeffs = solve_in_basis(basis, x)
    if any(c.denominator != 1 for c in coeffs):
        raise InputError("vector is not an integral combination of the basis")
    return [int(c) for c in coeffs]


def gram_of(lattice: Lattice, basis: Sequence[LatticeVector]) -> Matrix:
    return [[lattice.pair_coords(x.coords, y.coords) for y in basis] for x in basis]


def sublattice(lattice: Lattice, basis: Sequence[LatticeVector]) -> Lattice:
    """The lattice spanned by ``basis`` with the restricted form."""
    return Lattice(gram_of(lattice, basis))


# -- alternating forms ------------------------------------------------------

@dataclass(frozen=True)
class PolarizationType:
    """Elementary divisors (l1, ..., ln) of a nondegenerate alternating form."""

    chain: tuple

    def __init__(self, chain):
        chain = tuple(int(x) for x in chain)
        if any(x < 1 for x in chain):
            raise InputError("polarization type entries must be positive")
        for a, b in zip(chain, chain[1:]):
            if b % a:
                raise InputError(f"{a} does not divide {b}")
        object.__setattr__(self, "chain", chain)

    @property
    def is_principal(self) -> bool:
        return all(x == 1 for x in self.chain)

    def __len__(self):
        return len(self.chain)

    def __iter__(self):
        return iter(self.chain)


def standard_alternating(chain: Sequence[int]) -> Matrix:
    """The block matrix [[0, D], [-D, 0]] with D = diag(chain)."""
    n = len(chain)
    a = [[0] * (2 * n) for _ in range(2 * n)]
    for i, x in enumerate(chain):
        a[i][n + i] = x
        a[n + i][i] = -x
    return a


def check_alternating(m) -> Matrix:
    a = as_matrix(m)
    size = len(a)
    if size == 0 or any(len(r) != size for r in a):
        raise InputError("alternating form must be a nonempty square matrix")
    for i in range(size):
        if a[i][i] != 0:
            raise NotAlternatingError(f"nonzero diagonal entry at {i}")
        for j in range(i + 1, size):
            if a[i][j] != -a[j][i]:
                raise NotAlternatingError(f"entries ({i}, {j}) and ({j}, {i}) are not negatives")
    if size % 2:
        raise OddDimensionError(f"dimension {size} is odd")
    if determinant(a) == 0:
        raise SingularFormError("alternating form is degenerate")
    return a


def symplectic_normal_form(m) -> Tuple[PolarizationType, Matrix]:
    """Return ``(type, T)`` with ``T^T A T = [[0, D], [-D, 0]]``.

    Reduction works by congruence: the smallest nonzero entry is moved to a
    2x2 block, the rest of that block's two rows are reduced modulo it, and a
    basis vector is folded in whenever the entry fails to divide the rest of
    the matrix. Each restart strictly lowers the pivot, so it terminates.
    """
    a = check_alternating(m)
    size = len(a)
    n = size // 2
    t = identity(size)

    def add(dst, src, c):
        # b_dst <- b_dst + c * b_src
        for row in a:
            row[dst] += c * row[src]
        ad, as_ = a[dst], a[src]
        for j in range(size):
            ad[j] += c * as_[j]
        for row in t:
            row[dst] += c * row[src]

    def swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        a[i], a[j] = a[j], a[i]
        for row in t:
            row[i], row[j] = row[j], row[i]

    chain = []
    for k in range(n):
        p, q = 2 * k, 2 * k + 1
        while True:
            best = None
            for i in range(p, size):
                for j in range(i + 1, size):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            i, j = best[1], best[2]
            if i != p:
                swap(i, p)
                if j == p:
                    j = i
            if j != q:
                swap(j, q)
            if a[p][q] < 0:
                swap(p, q)
            lam = a[p][q]
            clean = True
            for r in range(q + 1, size):
                if a[p][r]:
                    add(r, q, -(a[p][r] // lam))
                    clean = clean and a[p][r] == 0
                if a[q][r]:
                    add(r, p, a[q][r] // lam)
                    clean = clean and a[q][r] == 0
            if not clean:
                continue
            bad = next((r for r in range(q + 1, size)
                        if any(a[r][s] % lam for s in range(q + 1, size))), None)
            if bad is None:
                break
            add(p, bad, 1)
        chain.append(lam)

    # reorder (p1, q1, p2, q2, ...) to (p1, ..., pn, q1, ..., qn)
    order = [2 * k for k in range(n)] + [2 * k + 1 for k in range(n)]
    t = [[row[c] for c in order] for row in t]
    return PolarizationType(chain), t


def polarization_type(m) -> PolarizationType:
    """Polarization type of a nondegenerate alternating form, self-checked.

    The congruence reduction is cross-checked against the Smith diagonal,
    which for an alternating form must read (l1, l1, l2, l2, ...).
    """
    a = check_alternating(m)
    ptype, t = symplectic_normal_form(a)
    if not is_unimodular_matrix(t):
        raise InternalMismatchError("symplectic transform is not unimodular")
    if matmul(matmul(transpose(t), a), t) != standard_alternating(ptype.chain):
        raise InternalMismatchError("symplectic transform does not reach the standard form")
    doubled = [x for x in ptype.chain for _ in range(2)]
    if smith_diagonal(a) != doubled:
        raise InternalMismatchError(
            f"symplectic chain {list(ptype.chain)} disagrees with Smith diagonal {smith_diagonal(a)}")
    return ptype


def content(xs: Sequence[int]) -> int:
    return reduce(gcd, xs, 0)
