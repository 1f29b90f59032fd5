import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3pol.errors import (
    DependentVectorsError,
    NotAlternatingError,
    OddDimensionError,
    SingularFormError,
)
from k3pol.lattice import Lattice, direct_sum, pairing, standard_lattice
from k3pol.selftest import random_alternating, random_divisor_chain, random_unimodular
from k3pol.zlinalg import (
    PolarizationType,
    hermite_normal_form,
    integer_kernel,
    orthogonal_complement,
    polarization_type,
    saturate,
    saturation,
    smith_normal_form,
    standard_alternating,
    symplectic_normal_form,
)

from oracles import (
    brute_kernel_contains,
    det_fraction,
    elementary_divisors,
    lattice_index,
    matmul,
    transpose,
)


def diag_of(s):
    return [s[i][i] for i in range(min(len(s), len(s[0])))]


# -- Smith ------------------------------------------------------------------

@pytest.mark.parametrize("m,expected", [
    ([[2, 0], [0, 3]], [1, 6]),
    ([[0, 2], [-2, 0]], [2, 2]),
    ([[4, 2], [2, 4]], [2, 6]),
])
def test_snf_examples(m, expected):
    s, u, v = smith_normal_form(m)
    assert diag_of(s) == expected
    assert elementary_divisors(m) == expected
    assert matmul(matmul(u, m), v) == s


def test_snf_zero_and_rectangular():
    s, u, v = smith_normal_form([[0, 0, 0], [0, 0, 0]])
    assert s == [[0, 0, 0], [0, 0, 0]]
    s, u, v = smith_normal_form([[6, 10, 15]])
    assert s == [[1, 0, 0]]


def test_snf_large_entries_are_exact():
    m = [[10**30 + 1, 2 * 10**30], [3, 7 * 10**29]]
    s, u, v = smith_normal_form(m)
    assert matmul(matmul(u, m), v) == s
    assert diag_of(s) == elementary_divisors(m)


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-30, 30), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices)
@settings(max_examples=150, deadline=None)
def test_snf_properties(m):
    s, u, v = smith_normal_form(m)
    assert matmul(matmul(u, m), v) == s
    assert abs(det_fraction(u)) == 1 and abs(det_fraction(v)) == 1
    d = diag_of(s)
    assert all(s[i][j] == 0 for i in range(len(s)) for j in range(len(s[0])) if i != j)
    assert d == elementary_divisors(m)


@given(matrices, st.randoms(use_true_random=False))
@settings(max_examples=80, deadline=None)
def test_snf_invariant_under_unimodular(m, rnd):
    p, _ = random_unimodular(rnd, len(m), 15)
    q, _ = random_unimodular(rnd, len(m[0]), 15)
    assert smith_normal_form(matmul(matmul(p, m), q))[0] == smith_normal_form(m)[0]


# -- Hermite ------------------------------------------------------------------

def test_hnf_examples():
    assert hermite_normal_form([[1, 0], [0, 1]])[0] == [[1, 0], [0, 1]]
    assert hermite_normal_form([[2, 4]])[0] == [[2, 4]]
    h, u = hermite_normal_form([[1, 1], [1, -1]])
    assert h == [[1, 1], [0, 2]]
    assert matmul(u, [[1, 1], [1, -1]]) == h


@given(matrices)
@settings(max_examples=150, deadline=None)
def test_hnf_properties(m):
    h, u = hermite_normal_form(m)
    assert matmul(u, m) == h
    assert abs(det_fraction(u)) == 1
    assert hermite_normal_form(h)[0] == h
    # shape: pivots positive, strictly moving right, entries above reduced
    last = -1
    for i, row in enumerate(h):
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            assert all(not any(r) for r in h[i:])
            break
        j = nz[0]
        assert j > last and row[j] > 0
        assert all(0 <= h[k][j] < row[j] for k in range(i))
        last = j


# -- kernels, complements, saturation ---------------------------------------

def test_kernel_examples():
    assert integer_kernel([[0, 0]]) == [[1, 0], [0, 1]]
    assert integer_kernel([[1, 1]]) == [[1, -1]]
    assert integer_kernel([[2, 4]]) == [[2, -1]]


@given(matrices)
@settings(max_examples=120, deadline=None)
def test_kernel_properties(m):
    k = integer_kernel(m)
    for x in k:
        assert brute_kernel_contains(m, x)
    rank_m = len([r for r in hermite_normal_form(m)[0] if any(r)])
    assert len(k) == len(m[0]) - rank_m
    if k:
        assert saturate(k) == k


def test_orthogonal_complement_examples(U):
    v = U.vector([1, 4])
    assert [x.coords for x in orthogonal_complement(U, [v])] == [(1, -4)]
    assert [x.coords for x in orthogonal_complement(U, [U.vector([1, 0])])] == [(1, 0)]
    uu = direct_sum(U, standard_lattice("U"))
    out = orthogonal_complement(uu, [uu.vector([1, 0, 0, 0])])
    assert [x.coords for x in out] == [(1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]


def test_saturation_examples(U):
    assert [x.coords for x in saturation(U, [U.vector([2, 0])])] == [(1, 0)]
    z2 = Lattice([[1, 0], [0, 1]])
    assert [x.coords for x in saturation(z2, [z2.vector([1, 1]), z2.vector([1, -1])])] == [(1, 0), (0, 1)]
    assert [x.coords for x in saturation(U, [U.vector([1, 4]), U.vector([2, 0])])] == [(1, 0), (0, 1)]
    assert lattice_index([[1, 1], [1, -1]], [[1, 0], [0, 1]]) == 2


def test_saturation_rejects_dependent(U):
    with pytest.raises(DependentVectorsError):
        saturation(U, [U.vector([1, 2]), U.vector([2, 4])])


@given(st.lists(st.lists(st.integers(-9, 9), min_size=5, max_size=5), min_size=1, max_size=4))
@settings(max_examples=120, deadline=None)
def test_saturation_properties(vs):
    if len([r for r in hermite_normal_form(vs)[0] if any(r)]) != len(vs):
        return
    sat = saturate(vs)
    assert saturate(sat) == sat
    assert len(sat) == len(vs)
    idx = lattice_index(vs, sat)
    assert idx >= 1
    # input vectors are integral combinations of the saturated basis
    from k3pol.zlinalg import integral_coordinates
    for v in vs:
        integral_coordinates(sat, v)
    already = lattice_index(vs, sat) == 1
    assert already == (sorted(map(tuple, hermite_normal_form(vs)[0])) == sorted(map(tuple, sat)))


# -- alternating forms --------------------------------------------------------

def test_symplectic_examples():
    t, _ = symplectic_normal_form([[0, 1], [-1, 0]])
    assert t.chain == (1,)
    a = [[0, 2, 0, 0], [-2, 0, 0, 0], [0, 0, 0, 6], [0, 0, -6, 0]]
    ptype, tr = symplectic_normal_form(a)
    assert ptype.chain == (2, 6)
    assert elementary_divisors(a) == [2, 2, 6, 6]
    assert matmul(matmul(transpose(tr), a), tr) == standard_alternating([2, 6])
    assert polarization_type(standard_alternating([1, 1, 1])).chain == (1, 1, 1)
    assert polarization_type([[0, 3], [-3, 0]]).chain == (3,)


def test_polarization_type_basis_change_example():
    rnd = random.Random(11)
    w, _ = random_unimodular(rnd, 4, 25)
    a = matmul(matmul(transpose(w), standard_alternating([1, 2])), w)
    assert polarization_type(a).chain == (1, 2)


@pytest.mark.parametrize("m,exc", [
    ([[0, 1], [1, 0]], NotAlternatingError),
    ([[1, 1], [-1, 0]], NotAlternatingError),
    ([[0, 1, 0], [-1, 0, 0], [0, 0, 0]], OddDimensionError),
    ([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]], SingularFormError),
])
def test_symplectic_errors(m, exc):
    with pytest.raises(exc):
        symplectic_normal_form(m)


@given(st.randoms(use_true_random=False), st.integers(1, 4))
@settings(max_examples=100, deadline=None)
def test_symplectic_recovers_chain(rnd, n):
    chain = random_divisor_chain(rnd, n)
    a = random_alternating(rnd, chain)
    ptype, t = symplectic_normal_form(a)
    assert list(ptype.chain) == chain
    assert abs(det_fraction(t)) == 1
    assert matmul(matmul(transpose(t), a), t) == standard_alternating(chain)
    assert polarization_type(a) == ptype
    w, _ = random_unimodular(rnd, 2 * n, 20)
    assert polarization_type(matmul(matmul(transpose(w), a), w)) == ptype


def test_polarization_type_invariants():
    with pytest.raises(ValueError):
        PolarizationType([2, 3])
    with pytest.raises(ValueError):
        PolarizationType([0, 1])
    assert PolarizationType([1, 1]).is_principal


def test_pairing_of_complement_is_zero(mukai):
    v = mukai.from_labels({"e4": 1, "f4": 4})
    for x in orthogonal_complement(mukai, [v]):
        assert pairing(x, v) == 0
