"""Rational shadows of period-domain and positive-cone conditions.

A period p = x + i*y is stored by its real and imaginary parts, both rational.
Expanding (p, p) = 0 and (p, p-bar) > 0 gives (x,x) = (y,y), (x,y) = 0 and
(x,x) + (y,y) > 0, which are exact sign tests.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Sequence

from .errors import InputError, LatticeMismatchError, PreconditionError, VerificationError
from .lattice import Lattice, LatticeVector, diagonalize, signature
from .zlinalg import orthogonal_complement


def _frac_vector(xs, rank: int) -> tuple:
    out = []
    for x in xs:
        if isinstance(x, bool):
            raise InputError(f"not a rational number: {x!r}")
        try:
            out.append(Fraction(x))
        except (TypeError, ValueError, ZeroDivisionError):
            raise InputError(f"not a rational number: {x!r}") from None
    if len(out) != rank:
        raise InputError(f"vector has {len(out)} entries, lattice rank is {rank}")
    return tuple(out)


def _clear_denominators(xs: Sequence[Fraction]) -> List[int]:
    m = 1
    for x in xs:
        m = lcm(m, x.denominator)
    return [int(x * m) for x in xs]


@dataclass(frozen=True)
class PeriodPoint:
    lattice: Lattice
    x: tuple
    y: tuple

    def __init__(self, lattice: Lattice, x, y):
        fx = _frac_vector(x, lattice.rank)
        fy = _frac_vector(y, lattice.rank)
        if not any(fx) and not any(fy):
            raise InputError("period has both parts zero")
        object.__setattr__(self, "lattice", lattice)
        object.__setattr__(self, "x", fx)
        object.__setattr__(self, "y", fy)


def is_period_point(p: PeriodPoint) -> bool:
    q = p.lattice.pair_coords
    xx, yy, xy = q(p.x, p.x), q(p.y, p.y), q(p.x, p.y)
    return xx == yy and xy == 0 and xx + yy > 0


def _require_period(p: PeriodPoint):
    if not is_period_point(p):
        raise PreconditionError("not a point of the period domain")


def in_period_perp(p: PeriodPoint, lam: LatticeVector) -> bool:
    _require_period(p)
    if lam.lattice != p.lattice:
        raise LatticeMismatchError("lambda is not in the period's lattice")
    q = p.lattice.pair_coords
    return q(p.x, lam.coords) == 0 and q(p.y, lam.coords) == 0


def one_one_lattice(p: PeriodPoint) -> List[LatticeVector]:
    """Integral classes orthogonal to both parts of the period, HNF basis."""
    _require_period(p)
    lat = p.lattice
    vx = lat.vector(_clear_denominators(p.x))
    vy = lat.vector(_clear_denominators(p.y))
    return orthogonal_complement(lat, [vx, vy])


def _hyperbolic_signature(lattice: Lattice):
    pos, zero, neg = signature(lattice)
    if pos != 1 or zero != 0:
        raise PreconditionError(f"form has signature ({pos}, {zero}, {neg}); need (1, 0, k)")


def same_positive_component(lattice: Lattice, x, y) -> bool:
    """For positive vectors in signature (1, k): same cone component iff (x, y) > 0."""
    _hyperbolic_signature(lattice)
    # positive rescaling keeps every sign, so compare over the integers
    fx = _clear_denominators(_frac_vector(x, lattice.rank))
    fy = _clear_denominators(_frac_vector(y, lattice.rank))
    q = lattice.pair_coords
    if q(fx, fx) <= 0 or q(fy, fy) <= 0:
        raise PreconditionError("both vectors must have positive square")
    return q(fx, fy) > 0


def isotropic_positive_pairing_check(lattice: Lattice, x, lam) -> int:
    """Sign of (x, lambda) for x of positive square and lambda isotropic and nonzero.

    In signature (1, k) the orthogonal complement of x is negative definite,
    so a nonzero isotropic lambda can never be orthogonal to x. A zero pairing
    therefore means a broken precondition and raises VerificationError.
    """
    _hyperbolic_signature(lattice)
    fx = _clear_denominators(_frac_vector(x, lattice.rank))
    coords = lam.coords if isinstance(lam, LatticeVector) else _clear_denominators(
        _frac_vector(lam, lattice.rank))
    q = lattice.pair_coords
    if q(fx, fx) <= 0:
        raise PreconditionError("x must have positive square")
    if not any(coords):
        raise PreconditionError("lambda must be nonzero")
    if q(coords, coords) != 0:
        raise PreconditionError("lambda must be isotropic")
    value = q(fx, coords)
    if value == 0:
        raise VerificationError("isotropic vector orthogonal to a positive vector")
    return 1 if value > 0 else -1


def positive_vectors(lattice: Lattice) -> List[List[Fraction]]:
    """Mutually orthogonal vectors of positive square from a rational diagonalization."""
    diag, p = diagonalize(lattice.gram)
    n = lattice.rank
    return [[p[r][c] for r in range(n)] for c, dc in enumerate(diag) if dc > 0]


def hodge_restriction(lattice: Lattice, lam: LatticeVector):
    """Find a rational period p with lambda in its (1,1)-part.

    Returns ``(basis, gram, coords)``: an HNF basis of the integral (1,1)-part,
    its Gram matrix, and lambda's coordinates in that basis. Requires the
    lattice to have at least two positive directions orthogonal to lambda.
    The period is spanned by two orthogonal positive vectors of the
    orthogonal complement of lambda; only the real 2-plane matters here, so
    their norms need not agree.
    """
    from .zlinalg import gram_of, integral_coordinates

    perp = orthogonal_complement(lattice, [lam])
    g = gram_of(lattice, perp)
    pos = positive_vectors(Lattice(g))
    if len(pos) < 2:
        raise PreconditionError("no positive 2-plane orthogonal to lambda")
    plane = []
    for vec in pos[:2]:
        ints = _clear_denominators(vec)
        plane.append(lattice.vector(
            [sum(c * b.coords[i] for c, b in zip(ints, perp)) for i in range(lattice.rank)]))
    basis = orthogonal_complement(lattice, plane)
    gram = gram_of(lattice, basis)
    coords = integral_coordinates([b.coords for b in basis], lam.coords)
    return basis, gram, coords


def positivity_check(lattice: Lattice, lam: LatticeVector) -> dict:
    """Run the isotropic pairing check for ``lam`` inside a (1,1)-type sublattice."""
    basis, gram, coords = hodge_restriction(lattice, lam)
    sub = Lattice(gram)
    sig = signature(sub)
    x = positive_vectors(sub)[0]
    sign = isotropic_positive_pairing_check(sub, x, sub.vector(coords))
    # orient the cone so that lambda sits on the boundary of the chosen component
    if sign < 0:
        x = [-c for c in x]
    value = sub.pair_coords(x, coords)
    return {
        "signature": sig,
        "x": x,
        "pairing": value,
        "sign": 1 if value > 0 else -1,
        "basis_rank": len(basis),
    }


__all__ = [
    "PeriodPoint",
    "is_period_point",
    "in_period_perp",
    "one_one_lattice",
    "same_positive_component",
    "isotropic_positive_pairing_check",
    "positive_vectors",
    "hodge_restriction",
    "positivity_check",
]
