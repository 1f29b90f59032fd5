"""Integral lattices with an exact symmetric Gram matrix.

Composite lattices are assembled in a fixed summand order so coordinates are
reproducible::

    E8(-1), E8(-1), U, U, U, [<2-2n> | nothing | U]
                               K3n      K3        Mukai

Coordinates of E8 summands are labelled ``a1..a8`` and ``b1..b8``, the i-th
hyperbolic plane has ``e{i}, f{i}`` and the rank-one summand is ``l``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from typing import Iterable, Optional, Sequence

from .errors import InputError, LatticeMismatchError, UndefinedDivisibilityError

# Bourbaki numbering: chain 1-3-4-5-6-7-8 with node 2 attached to node 4.
_E8_EDGES = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]


def _e8_negative():
    g = [[0] * 8 for _ in range(8)]
    for i in range(8):
        g[i][i] = -2
    for a, b in _E8_EDGES:
        g[a - 1][b - 1] = g[b - 1][a - 1] = 1
    return g


def _as_int(x) -> int:
    if isinstance(x, bool):
        raise InputError(f"expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    if isinstance(x, str):
        try:
            return int(x.strip())
        except ValueError:
            pass
    raise InputError(f"expected an integer, got {x!r}")


@dataclass(frozen=True)
class Lattice:
    """A free Z-module of finite rank with an integral symmetric bilinear form."""

    gram: tuple
    labels: Optional[tuple] = field(default=None, compare=False)

    def __init__(self, gram: Iterable[Iterable[int]], labels: Optional[Sequence[str]] = None):
        rows = tuple(tuple(_as_int(x) for x in row) for row in gram)
        n = len(rows)
        if n == 0:
            raise InputError("lattice rank must be positive")
        for row in rows:
            if len(row) != n:
                raise InputError("Gram matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise InputError(f"Gram matrix not symmetric at ({i}, {j})")
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != n or len(set(labels)) != n:
                raise InputError("labels must be distinct and one per basis vector")
        object.__setattr__(self, "gram", rows)
        object.__setattr__(self, "labels", labels)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def vector(self, coords) -> "LatticeVector":
        return LatticeVector(self, coords)

    def basis_vector(self, i) -> "LatticeVector":
        if isinstance(i, str):
            i = self.index(i)
        coords = [0] * self.rank
        coords[i] = 1
        return LatticeVector(self, coords)

    def zero(self) -> "LatticeVector":
        return LatticeVector(self, [0] * self.rank)

    def index(self, label: str) -> int:
        if self.labels is None or label not in self.labels:
            raise InputError(f"unknown basis label {label!r}")
        return self.labels.index(label)

    def from_labels(self, mapping: dict) -> "LatticeVector":
        coords = [0] * self.rank
        for key, value in mapping.items():
            coords[self.index(key)] = _as_int(value)
        return LatticeVector(self, coords)

    def pair_coords(self, x: Sequence, y: Sequence):
        """Pair two raw coordinate sequences (integers or fractions)."""
        g = self.gram
        total = 0
        for i, xi in enumerate(x):
            if xi:
                row = g[i]
                total += xi * sum(row[j] * yj for j, yj in enumerate(y) if yj)
        return total

    def determinant(self) -> int:
        return bareiss_det(self.gram)

    def is_unimodular(self) -> bool:
        return abs(self.determinant()) == 1

    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def signature(self):
        return signature(self)


@dataclass(frozen=True)
class LatticeVector:
    lattice: Lattice
    coords: tuple

    def __init__(self, lattice: Lattice, coords):
        coords = tuple(_as_int(c) for c in coords)
        if len(coords) != lattice.rank:
            raise InputError(f"vector has {len(coords)} coordinates, lattice rank is {lattice.rank}")
        object.__setattr__(self, "lattice", lattice)
        object.__setattr__(self, "coords", coords)

    def _check(self, other: "LatticeVector"):
        if not isinstance(other, LatticeVector):
            return NotImplemented
        if other.lattice is not self.lattice and other.lattice != self.lattice:
            raise LatticeMismatchError("vectors belong to different lattices")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return LatticeVector(self.lattice, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return LatticeVector(self.lattice, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return LatticeVector(self.lattice, [-a for a in self.coords])

    def __mul__(self, k):
        if not isinstance(k, int) or isinstance(k, bool):
            return NotImplemented
        return LatticeVector(self.lattice, [k * a for a in self.coords])

    __rmul__ = __mul__

    def content(self) -> int:
        return reduce(gcd, self.coords, 0)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self):
        return f"LatticeVector({list(self.coords)})"


def _block_sum(blocks):
    n = sum(len(b) for b in blocks)
    g = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                g[off + i][off + j] = b[i][j]
        off += k
    return g


def direct_sum(a: Lattice, b: Lattice) -> Lattice:
    labels = None
    if a.labels is not None and b.labels is not None and not set(a.labels) & set(b.labels):
        labels = a.labels + b.labels
    return Lattice(_block_sum([a.gram, b.gram]), labels)


def pairing(x: LatticeVector, y: LatticeVector) -> int:
    x._check(y)
    return x.lattice.pair_coords(x.coords, y.coords)


def is_isotropic(x: LatticeVector) -> bool:
    return pairing(x, x) == 0


def is_primitive(x: LatticeVector) -> bool:
    """True iff the coordinates are coprime. The zero vector is not primitive."""
    return x.content() == 1


def pairing_row(x: LatticeVector) -> list:
    """The linear form (x, -) on the basis, i.e. gram * x."""
    g = x.lattice.gram
    return [sum(g[i][j] * c for j, c in enumerate(x.coords) if c) for i in range(x.lattice.rank)]


def divisibility(x: LatticeVector) -> int:
    """Largest k such that (x, -)/k is integral on the lattice."""
    k = reduce(gcd, pairing_row(x), 0)
    if k == 0:
        raise UndefinedDivisibilityError("vector pairs to zero with the whole lattice")
    return k


def bareiss_det(m) -> int:
    """Fraction-free determinant of a square integer matrix."""
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def diagonalize(gram):
    """Congruence-diagonalize a symmetric matrix over Q.

    Returns ``(diag, P)`` with ``P^T G P = diag(diag)`` and ``P`` an invertible
    rational matrix whose columns are the new basis vectors. When no diagonal
    pivot is available but an off-diagonal entry is, basis vector i is
    replaced by b_i + b_j, which makes the (i, i) entry 2 * G[i][j] != 0.
    """
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    p = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def add_col(dst, src, c):
        # b_dst <- b_dst + c * b_src, applied as a congruence
        for r in range(n):
            a[r][dst] += c * a[r][src]
        for r in range(n):
            a[dst][r] += c * a[src][r]
        for r in range(n):
            p[r][dst] += c * p[r][src]

    def swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        a[i], a[j] = a[j], a[i]
        for row in p:
            row[i], row[j] = row[j], row[i]

    diag = []
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0), None)
            if pair is None:
                diag.extend([Fraction(0)] * (n - k))
                break
            i, j = pair
            add_col(i, j, 1)
            piv = i
        if piv != k:
            swap(piv, k)
        pk = a[k][k]
        for j in range(k + 1, n):
            if a[k][j] != 0:
                add_col(j, k, -a[k][j] / pk)
        diag.append(pk)
    return diag, p


def signature(lattice: Lattice):
    """Sylvester inertia ``(n_plus, n_zero, n_minus)``."""
    return _inertia(lattice.gram)


@lru_cache(maxsize=1024)
def _inertia(gram: tuple):
    diag, _ = diagonalize(gram)
    pos = sum(1 for d in diag if d > 0)
    neg = sum(1 for d in diag if d < 0)
    return pos, len(diag) - pos - neg, neg


def is_unimodular(lattice: Lattice) -> bool:
    return lattice.is_unimodular()


def is_even(lattice: Lattice) -> bool:
    return lattice.is_even()


_U = ((0, 1), (1, 0))


def hyperbolic_plane(i: int = 1) -> Lattice:
    return Lattice(_U, (f"e{i}", f"f{i}"))


def e8_negative(prefix: str = "a") -> Lattice:
    return Lattice(_e8_negative(), tuple(f"{prefix}{i}" for i in range(1, 9)))


def rank_one(k: int, label: str = "l") -> Lattice:
    return Lattice([[k]], (label,))


def _k3_chain(extra_u: int = 0) -> list:
    parts = [e8_negative("a"), e8_negative("b")]
    parts += [hyperbolic_plane(i) for i in range(1, 4 + extra_u)]
    return parts


def _chain(parts) -> Lattice:
    return reduce(direct_sum, parts)


STANDARD_NAMES = ("U", "E8neg", "rank_one", "K3", "K3n", "Mukai")


@lru_cache(maxsize=256)
def standard_lattice(name: str, param: Optional[int] = None) -> Lattice:
    """Build one of the named lattices.

    ``K3`` is E8(-1)^2 + U^3 (rank 22), ``K3n`` appends <2-2n> (rank 23) and
    ``Mukai`` appends a fourth hyperbolic plane (rank 24). ``param`` is the
    self-pairing for ``rank_one`` and is ignored for ``Mukai``.
    """
    if name == "U":
        return hyperbolic_plane(1)
    if name == "E8neg":
        return e8_negative("a")
    if name == "rank_one":
        if param is None:
            raise InputError("rank_one needs the self-pairing k")
        return rank_one(_as_int(param))
    if name == "K3":
        return _chain(_k3_chain())
    if name == "K3n":
        if param is None:
            raise InputError("K3n needs n")
        n = _as_int(param)
        if n < 2:
            raise InputError("K3n needs n >= 2")
        return _chain(_k3_chain() + [rank_one(2 - 2 * n)])
    if name == "Mukai":
        if param is not None and _as_int(param) < 2:
            raise InputError("Mukai parameter n must be >= 2")
        return _chain(_k3_chain(extra_u=1))
    raise InputError(f"unknown lattice name {name!r}; expected one of {', '.join(STANDARD_NAMES)}")


def k3n_lattice(n: int) -> Lattice:
    return standard_lattice("K3n", n)


def mukai_lattice() -> Lattice:
    return standard_lattice("Mukai")


def k3_lattice() -> Lattice:
    return standard_lattice("K3")
