"""Mukai vectors, the embedding of the K3^[n] lattice into the Mukai lattice,
the rank-two monodromy invariant of isotropic classes, and the
Beauville-Mukai witness vectors.

Coordinates in the Mukai lattice E8(-1)^2 + U^4 (rank 24): the first 22
coordinates are the K3 lattice, the fourth hyperbolic plane ``(e4, f4)``
carries H^0 + H^4 via ``(r, c, s) -> c + r*e4 - s*f4``. With this sign flip
the pairing of (1, 0, 0) with (0, 0, 1) is -1, as required.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import List, Optional

from .errors import (
    InputError,
    LatticeMismatchError,
    PreconditionError,
    UndefinedDivisibilityError,
    VerificationError,
)
from .lattice import (
    Lattice,
    LatticeVector,
    divisibility,
    is_primitive,
    k3_lattice,
    k3n_lattice,
    mukai_lattice,
    pairing,
)
from .zlinalg import (
    _xgcd,
    gram_of,
    hnf_basis,
    matmul,
    orthogonal_complement,
    saturate,
    saturation,
    solve_in_basis,
    transpose,
)

K3_RANK = 22


def _k3():
    return k3_lattice()


@dataclass(frozen=True)
class MukaiVector:
    """A triple (r, c, s) with c in the K3 lattice.

    Geometric Mukai vectors have r >= 0 and c effective when r = 0;
    effectivity is not a lattice condition and is never checked here.
    """

    r: int
    c: LatticeVector
    s: int

    def __post_init__(self):
        if self.c.lattice.rank != K3_RANK or self.c.lattice != _k3():
            raise LatticeMismatchError("the degree-2 part must live in the K3 lattice")

    def to_lattice(self) -> LatticeVector:
        return mukai_lattice().vector(self.c.coords + (self.r, -self.s))

    @classmethod
    def from_lattice(cls, x: LatticeVector) -> "MukaiVector":
        if x.lattice.rank != K3_RANK + 2:
            raise LatticeMismatchError("expected a vector of the Mukai lattice")
        k3 = _k3()
        return cls(x.coords[K3_RANK], k3.vector(x.coords[:K3_RANK]), -x.coords[K3_RANK + 1])

    @classmethod
    def of(cls, r: int, s: int, **c_by_label) -> "MukaiVector":
        k3 = _k3()
        return cls(r, k3.from_labels(c_by_label) if c_by_label else k3.zero(), s)

    def as_tuple(self):
        return self.r, list(self.c.coords), self.s


def mukai_pairing(v: MukaiVector, w: MukaiVector) -> int:
    return pairing(v.c, w.c) - v.r * w.s - v.s * w.r


def mukai_vector_of_sheaf(rk: int, c1: LatticeVector, c2: int) -> MukaiVector:
    """v(F) = (rk, c1, c1^2/2 - c2 + rk) for a sheaf on a K3 surface."""
    if rk < 0:
        raise PreconditionError("rank must be nonnegative")
    self_int = pairing(c1, c1)
    if self_int % 2:
        raise PreconditionError("c1 must have even self-intersection")
    return MukaiVector(rk, c1, self_int // 2 - c2 + rk)


def chi_of_support_sheaf(g: int, deg: int) -> int:
    """Degree-4 part of v(F) for a degree-``deg`` sheaf on a genus-``g`` curve."""
    return 1 - g + deg


def moduli_dimension(v: MukaiVector) -> int:
    vv = mukai_pairing(v, v)
    if vv % 2 or vv < -2:
        raise PreconditionError(f"(v,v) = {vv} must be even and at least -2")
    return vv + 2


# -- embedding --------------------------------------------------------------

@dataclass(frozen=True)
class PrimitiveEmbedding:
    source: Lattice
    target: Lattice
    matrix: tuple  # rank(target) x rank(source)
    complement_generator: LatticeVector

    def apply(self, x: LatticeVector) -> LatticeVector:
        if x.lattice != self.source:
            raise LatticeMismatchError("vector is not in the embedding's source lattice")
        return self.target.vector(
            [sum(row[j] * c for j, c in enumerate(x.coords) if c) for row in self.matrix])

    def image_basis(self) -> List[LatticeVector]:
        return [self.target.vector(col) for col in transpose([list(r) for r in self.matrix])]

    def verify(self):
        m = [list(r) for r in self.matrix]
        if matmul(matmul(transpose(m), [list(r) for r in self.target.gram]), m) != [
                list(r) for r in self.source.gram]:
            raise VerificationError("embedding does not preserve the pairing")
        cols = transpose(m)
        if saturate(cols) != hnf_basis(cols):
            raise VerificationError("embedding image is not saturated")
        perp = orthogonal_complement(self.target, self.image_basis())
        v = self.complement_generator
        if len(perp) != 1 or perp[0].coords not in (v.coords, (-v).coords):
            raise VerificationError("complement generator does not span the orthogonal complement")


def canonical_embedding(n: int) -> PrimitiveEmbedding:
    """Identity on E8(-1)^2 + U^3, l -> e4 - (n-1) f4; complement v = e4 + (n-1) f4."""
    if n < 2:
        raise InputError("n must be at least 2")
    src = k3n_lattice(n)
    tgt = mukai_lattice()
    m = [[0] * 23 for _ in range(24)]
    for i in range(K3_RANK):
        m[i][i] = 1
    m[22][22] = 1
    m[23][22] = -(n - 1)
    v = tgt.vector([0] * 22 + [1, n - 1])
    emb = PrimitiveEmbedding(src, tgt, tuple(tuple(r) for r in m), v)
    emb.verify()
    if pairing(v, v) != 2 * n - 2:
        raise VerificationError("complement generator has the wrong self-pairing")
    return emb


# -- invariant classes ------------------------------------------------------

def _check_nd(n: int, d: int):
    if n < 2:
        raise PreconditionError("n must be at least 2")
    if d < 1:
        raise PreconditionError("d must be positive")
    if (n - 1) % (d * d):
        raise PreconditionError(f"d^2 = {d * d} does not divide n - 1 = {n - 1}")


@dataclass(frozen=True, order=True)
class InvariantClass:
    """Canonical label (n, d, b*) of an isometry class of pairs (H_{n,d}, w)."""

    n: int
    d: int
    b_star: int

    def __post_init__(self):
        _check_nd(self.n, self.d)
        if self.d == 1:
            if self.b_star != 0:
                raise PreconditionError("b* must be 0 when d = 1")
        else:
            if not 0 <= self.b_star < self.d or gcd(self.d, self.b_star) != 1:
                raise PreconditionError(f"b* = {self.b_star} is not a unit mod {self.d}")
            if self.b_star != min(self.b_star, (-self.b_star) % self.d):
                raise PreconditionError("b* is not in canonical form")

    @property
    def form_scale(self) -> int:
        """Self-pairing (2n-2)/d^2 of the non-radical generator of H_{n,d}."""
        return (2 * self.n - 2) // (self.d * self.d)


def canonical_invariant(n: int, d: int, b: int) -> InvariantClass:
    _check_nd(n, d)
    if gcd(d, b) != 1:
        raise PreconditionError(f"gcd(d, b) = gcd({d}, {b}) is not 1")
    r = b % d
    return InvariantClass(n, d, min(r, (-r) % d))


def h_nd_gram(n: int, d: int):
    _check_nd(n, d)
    return [[(2 * n - 2) // (d * d), 0], [0, 0]]


def isometry_orbit_oracle(n: int, d: int, b1: int, b2: int, bound: int) -> bool:
    """Brute force: does some isometry of H_{n,d} send (d, b1) to +-(d, b2)?

    Isometries of the form c*x^2 on Z^2 are (x, y) -> (e*x, t*x + e'*y) with
    e, e' = +-1; the search covers |t| <= bound.
    """
    _check_nd(n, d)
    for eps in (1, -1):
        for eps2 in (1, -1):
            for t in range(-bound, bound + 1):
                image = (eps * d, t * d + eps2 * b1)
                if image == (d, b2) or image == (-d, -b2):
                    return True
    return False


def enumerate_invariant_set(n: int, d: int) -> List[InvariantClass]:
    _check_nd(n, d)
    if d == 1:
        return [InvariantClass(n, 1, 0)]
    return [InvariantClass(n, d, b) for b in range(1, d // 2 + 1) if gcd(b, d) == 1]


# -- the monodromy invariant of an isotropic class ----------------------------

@dataclass(frozen=True)
class RankTwoLabel:
    """Saturation data for a pair (v, x) in the Mukai lattice."""

    d: int
    b: int
    invariant: InvariantClass
    saturation_basis: tuple
    witness_basis: tuple  # (w, r): w spans a complement of the radical r
    gram: tuple


def rank_two_label(n: int, ambient: Lattice, v: LatticeVector, x: LatticeVector, d: int) -> RankTwoLabel:
    """Saturate <v, x>, check it is isometric to H_{n,d}, and read off b.

    The rank-two form has a rank-one radical; a primitive radical generator r
    extends to a basis (w, r), and the class is H_{n,d} exactly when
    (w, w) = (2n-2)/d^2. Then b is the least nonnegative integer with
    (x - b v)/d integral.
    """
    if (n - 1) % (d * d):
        raise VerificationError(f"d^2 = {d * d} does not divide n - 1 = {n - 1}")
    basis = saturation(ambient, [v, x])
    g = gram_of(ambient, basis)
    from .zlinalg import integer_kernel

    rad = integer_kernel(g)
    if len(rad) != 1:
        raise VerificationError(f"saturated lattice has radical of rank {len(rad)}, expected 1")
    a, c = rad[0]
    h1, h2 = basis
    r = a * h1 + c * h2
    if next(t for t in r.coords if t) < 0:
        r = -r
        a, c = -a, -c
    one, s, t = _xgcd(a, c)
    w = (-t) * h1 + s * h2
    ww = pairing(w, w)
    expected = (2 * n - 2) // (d * d)
    if ww != expected:
        raise VerificationError(f"(w, w) = {ww} but H_(n,d) needs {expected}")
    wr = pairing(w, r)
    if wr != 0 or pairing(r, r) != 0:
        raise VerificationError("witness basis is not orthogonal")
    b = next((b for b in range(d)
              if all((xi - b * vi) % d == 0 for xi, vi in zip(x.coords, v.coords))), None)
    if b is None:
        raise VerificationError(f"no b with (x - b v)/{d} integral")
    if gcd(d, b) != 1:
        raise VerificationError(f"gcd(d, b) = gcd({d}, {b}) != 1 contradicts primitivity")
    inv = canonical_invariant(n, d, b)
    return RankTwoLabel(d, b, inv, tuple(basis), (w, r), ((ww, 0), (0, 0)))


@dataclass(frozen=True)
class HLambda:
    d: int
    b: int
    invariant: InvariantClass
    gram: tuple
    witness_basis: tuple
    image: LatticeVector
    v: LatticeVector


def h_lambda(n: int, lam: LatticeVector, embedding: Optional[PrimitiveEmbedding] = None) -> HLambda:
    """Monodromy invariant of a primitive isotropic class of the K3^[n] lattice."""
    if lam.lattice != k3n_lattice(n):
        raise LatticeMismatchError(f"lambda must be a vector of the rank-23 lattice for n = {n}")
    if not is_primitive(lam):
        raise PreconditionError("lambda is not primitive")
    if pairing(lam, lam) != 0:
        raise PreconditionError(f"lambda is not isotropic: (lambda, lambda) = {pairing(lam, lam)}")
    d = divisibility(lam)
    emb = embedding or canonical_embedding(n)
    x = emb.apply(lam)
    label = rank_two_label(n, emb.target, emb.complement_generator, x, d)
    return HLambda(d, label.b, label.invariant, label.gram, label.witness_basis, x, emb.complement_generator)


# -- Beauville-Mukai witnesses ------------------------------------------------

def div_in_sublattice(ambient: Lattice, sub_basis: List[LatticeVector], x: LatticeVector) -> int:
    """Divisibility of ``x`` computed against the sublattice spanned by ``sub_basis``."""
    if not sub_basis:
        raise InputError("sublattice basis is empty")
    solve_in_basis([b.coords for b in sub_basis], x.coords)
    g = 0
    for b in sub_basis:
        g = gcd(g, pairing(x, b))
    if g == 0:
        raise UndefinedDivisibilityError("vector pairs to zero with the sublattice")
    return g


@dataclass
class BMWitness:
    n: int
    d: int
    b: int
    k: int
    beta: LatticeVector
    s: int
    v: MukaiVector
    alpha: MukaiVector
    v_perp: list = field(repr=False)
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks.values())


def beauville_mukai_vector(n: int, d: int, b: int) -> BMWitness:
    """Build v = (0, d*beta, s) with beta = e1 + k f1, k = (n-1)/d^2, s*b = 1 mod d.

    Every lattice-level property of the construction is recomputed and stored
    in ``checks``; any failure raises :class:`VerificationError`.
    """
    _check_nd(n, d)
    if gcd(d, b) != 1:
        raise PreconditionError(f"gcd(d, b) = gcd({d}, {b}) is not 1")
    k = (n - 1) // (d * d)
    k3 = _k3()
    beta = k3.from_labels({"e1": 1, "f1": k})
    s = 1 if d == 1 else pow(b, -1, d)
    v = MukaiVector(0, d * beta, s)
    alpha = MukaiVector(0, k3.zero(), 1)

    lat = mukai_lattice()
    vl = v.to_lattice()
    v_perp = orthogonal_complement(lat, [vl])
    vv = mukai_pairing(v, v)
    checks = {
        "beta_primitive": (is_primitive(beta), is_primitive(beta)),
        "beta_square": (pairing(beta, beta), pairing(beta, beta) * d * d == 2 * n - 2),
        "v_primitive": (is_primitive(vl), is_primitive(vl)),
        "(v,v)": (vv, vv == 2 * n - 2),
        "moduli_dimension": (vv + 2, moduli_dimension(v) == 2 * n),
        "alpha_perp_v": (mukai_pairing(alpha, v), mukai_pairing(alpha, v) == 0),
    }
    div_alpha = div_in_sublattice(lat, v_perp, alpha.to_lattice())
    checks["div_alpha"] = (div_alpha, div_alpha == d)
    checks["d_divides_1_minus_bs"] = ((1 - b * s) % d, (1 - b * s) % d == 0)
    wit = BMWitness(n, d, b, k, beta, s, v, alpha, v_perp, checks)
    failed = [name for name, (_, ok) in checks.items() if not ok]
    if failed:
        raise VerificationError(f"Beauville-Mukai checks failed: {', '.join(failed)}")
    return wit


def alpha_label(wit: BMWitness) -> RankTwoLabel:
    """Monodromy label of alpha = (0, 0, 1) relative to the witness vector v."""
    return rank_two_label(wit.n, mukai_lattice(), wit.v.to_lattice(), wit.alpha.to_lattice(), wit.d)
