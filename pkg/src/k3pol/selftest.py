"""Random instance generators and a seeded property battery."""
from __future__ import annotations

import random
from fractions import Fraction
from math import gcd
from typing import List, Tuple

from .errors import K3PolError
from .lattice import Lattice, direct_sum, hyperbolic_plane, rank_one
from .mukai import canonical_invariant, isometry_orbit_oracle
from .periods import isotropic_positive_pairing_check, same_positive_component
from .zlinalg import (
    Matrix,
    identity,
    is_unimodular_matrix,
    matmul,
    polarization_type,
    smith_normal_form,
    standard_alternating,
    transpose,
)


def random_unimodular(rng: random.Random, n: int, steps: int = 30, bound: int = 3) -> Tuple[Matrix, Matrix]:
    """A product of elementary matrices and its inverse."""
    w = identity(n)
    winv = identity(n)
    if n < 2:
        if rng.random() < 0.5:
            return [[-1]], [[-1]]
        return w, winv
    for _ in range(rng.randint(0, steps)):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-bound, bound)
        # W <- W E with E = I + c e_ij: column j += c * column i
        for row in w:
            row[j] += c * row[i]
        # W^-1 <- E^-1 W^-1: row i -= c * row j
        winv[i] = [a - c * b for a, b in zip(winv[i], winv[j])]
    return w, winv


def random_divisor_chain(rng: random.Random, n: int, max_entry: int = 50) -> List[int]:
    chain = [rng.randint(1, max_entry)]
    while len(chain) < n:
        top = chain[-1]
        mults = [m for m in range(1, max_entry // top + 1)] or [1]
        chain.append(top * rng.choice(mults))
    return chain


def random_alternating(rng: random.Random, chain: List[int], steps: int = 30) -> Matrix:
    w, _ = random_unimodular(rng, 2 * len(chain), steps)
    return matmul(matmul(transpose(w), standard_alternating(chain)), w)


def random_matrix(rng: random.Random, max_dim: int = 8, max_entry: int = 100) -> Matrix:
    r, c = rng.randint(1, max_dim), rng.randint(1, max_dim)
    return [[rng.randint(-max_entry, max_entry) for _ in range(c)] for _ in range(r)]


def hyperbolic_instance(rng: random.Random, k: int):
    """U + <-2a_1> + ... + <-2a_k>, signature (1, k+1), disguised by a basis change.

    Returns ``(disguised, base, to_new)``; ``to_new`` maps coordinates in the
    base lattice's basis to the disguised basis.
    """
    lat = hyperbolic_plane()
    for i in range(k):
        lat = direct_sum(lat, rank_one(-2 * rng.randint(1, 4), f"l{i}"))
    n = lat.rank
    w, winv = random_unimodular(rng, n, steps=10, bound=2)
    gram = matmul(matmul(transpose(w), [list(r) for r in lat.gram]), w)

    def to_new(coords):
        return [sum(winv[i][j] * c for j, c in enumerate(coords)) for i in range(n)]

    return Lattice(gram), lat, to_new


def random_isotropic(rng: random.Random, base: Lattice) -> List[int]:
    """Nonzero isotropic vector of U + diag(negatives) in the undisguised basis."""
    n = base.rank
    if n == 2 or rng.random() < 0.2:
        v = [0] * n
        v[rng.randrange(2)] = rng.choice([1, -1]) * rng.randint(1, 5)
        return v
    w = [rng.randint(-3, 3) for _ in range(n - 2)]
    qw = sum(base.gram[i + 2][i + 2] * x * x for i, x in enumerate(w))  # even, <= 0
    half = -qw // 2
    if half == 0:
        return [1, 0] + w
    divs = [a for a in range(1, half + 1) if half % a == 0]
    a = rng.choice(divs)
    sign = rng.choice([1, -1])
    return [sign * a, sign * (half // a)] + w


def random_positive(rng: random.Random, base: Lattice) -> List[Fraction]:
    n = base.rank
    w = [rng.randint(-3, 3) for _ in range(n - 2)]
    qw = sum(base.gram[i + 2][i + 2] * x * x for i, x in enumerate(w))
    a = rng.randint(1, 6)
    b = -qw // (2 * a) + rng.randint(1, 6)
    sign = rng.choice([1, -1])
    den = rng.randint(1, 7)
    return [Fraction(sign * a, den), Fraction(sign * b, den)] + [Fraction(x, den) for x in w]


def run_selftest(seed: int = 0, trials: int = 50) -> dict:
    rng = random.Random(seed)
    results = {}

    def record(name, ok):
        r = results.setdefault(name, {"trials": 0, "failures": 0})
        r["trials"] += 1
        r["failures"] += 0 if ok else 1

    for _ in range(trials):
        m = random_matrix(rng, 6, 50)
        s, u, v = smith_normal_form(m)
        diag = [s[i][i] for i in range(min(len(s), len(s[0])))]
        ok = (matmul(matmul(u, m), v) == s and is_unimodular_matrix(u) and is_unimodular_matrix(v)
              and all(b % a == 0 if a else b == 0 for a, b in zip(diag, diag[1:])))
        record("smith_normal_form", ok)

        chain = random_divisor_chain(rng, rng.randint(1, 4))
        record("polarization_type", list(polarization_type(random_alternating(rng, chain)).chain) == chain)

        k = rng.randint(1, 10)
        lat, base, to_new = hyperbolic_instance(rng, k)
        lam = to_new(random_isotropic(rng, base))
        x = to_new(random_positive(rng, base))
        try:
            isotropic_positive_pairing_check(lat, x, lam)
            record("isotropic_pairing_nonzero", True)
        except K3PolError:
            record("isotropic_pairing_nonzero", False)
        record("component_flip", not same_positive_component(lat, x, [-c for c in x]))

        d = rng.randint(1, 12)
        n = d * d + 1
        units = [b for b in range(d) if gcd(b, d) == 1] or [0]
        b1, b2 = rng.choice(units), rng.choice(units)
        same = canonical_invariant(n, d, b1) == canonical_invariant(n, d, b2)
        record("canonical_vs_oracle", same == isometry_orbit_oracle(n, d, b1, b2, 2 * d))

    return {
        "seed": seed,
        "trials": trials,
        "checks": results,
        "ok": all(r["failures"] == 0 for r in results.values()),
    }
