import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toric_ust import lattice as lat
from toric_ust.errors import DegenerateInputError, DimensionError

small = st.integers(-6, 6)


def matrices(min_rows=1, max_rows=4, min_cols=1, max_cols=4):
    return st.integers(min_rows, max_rows).flatmap(
        lambda m: st.integers(min_cols, max_cols).flatmap(
            lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)))


def square(n_max=4):
    return st.integers(1, n_max).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n))


def leibniz(a):
    n = len(a)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        total += (-1) ** inversions * math.prod(a[i][perm[i]] for i in range(n))
    return total


def minors_gcd(a, k):
    m, n = len(a), len(a[0])
    g = 0
    for rows in itertools.combinations(range(m), k):
        for cols in itertools.combinations(range(n), k):
            g = math.gcd(g, leibniz([[a[i][j] for j in cols] for i in rows]))
    return g


@given(square())
def test_determinant_matches_permutation_expansion(a):
    assert lat.determinant(a) == leibniz(a)


@given(matrices())
@settings(max_examples=150)
def test_smith_form_is_a_unimodular_diagonalization(a):
    s = lat.smith_normal_form(a)
    assert lat.matmul(lat.matmul(s.left, a), s.right) == s.diagonal_matrix()
    assert abs(lat.determinant(s.left)) == 1
    assert abs(lat.determinant(s.right)) == 1
    assert lat.matmul(s.left, s.left_inv) == lat.identity(len(a))
    assert all(d > 0 for d in s.diag)
    assert all(b % a_ == 0 for a_, b in zip(s.diag, s.diag[1:]))


@given(matrices(max_rows=3, max_cols=3))
@settings(max_examples=80)
def test_smith_diagonal_from_determinantal_divisors(a):
    # d_1 ... d_k = gcd of k x k minors
    diag = lat.smith_normal_form(a).diag
    for k in range(1, len(diag) + 1):
        assert math.prod(diag[:k]) == minors_gcd(a, k)
    if len(diag) < min(len(a), len(a[0])):
        assert minors_gcd(a, len(diag) + 1) == 0


@given(matrices())
def test_rank_agrees_with_smith_form(a):
    assert lat.rank(a) == lat.smith_normal_form(a).rank


@given(matrices())
def test_hermite_form_spans_the_same_lattice(a):
    h = lat.hermite_normal_form(a)
    assert len(h) == lat.rank(a)
    # same lattice: each side's rows are integer combinations of the other's
    for row in a:
        if any(row):
            lat.coordinates_in_basis(row, h)
    for row in h:
        lat.coordinates_in_basis(row, [r for r in lat.hermite_normal_form(a)])
    pivots = [next(j for j, x in enumerate(row) if x) for row in h]
    assert pivots == sorted(set(pivots))
    for i, (row, p) in enumerate(zip(h, pivots)):
        assert row[p] > 0
        assert all(0 <= h[k][p] < row[p] for k in range(i))


@given(st.lists(small, min_size=1, max_size=5).filter(any), st.integers(1, 9))
def test_primitivize(v, k):
    p = lat.primitivize([k * x for x in v])
    assert math.gcd(*p) == 1
    assert lat.primitivize(v) == p


def test_primitivize_rejects_zero():
    with pytest.raises(DegenerateInputError):
        lat.primitivize((0, 0))


@given(st.lists(small, min_size=3, max_size=3), st.lists(small, min_size=3, max_size=3),
       st.lists(small, min_size=3, max_size=3), small)
def test_pairing_is_bilinear(a, b, v, k):
    assert lat.pairing(lat.add(a, b), v) == lat.pairing(a, v) + lat.pairing(b, v)
    assert lat.pairing(lat.scale(k, a), v) == k * lat.pairing(a, v)


def test_pairing_rank_mismatch():
    with pytest.raises(DimensionError):
        lat.pairing((1, 2), (1, 2, 3))


def test_pairing_example():
    assert lat.pairing((1, 1, -1), (2, 2, 2)) == 2


@given(matrices(max_rows=3, max_cols=4))
def test_nullspace_vectors_are_primitive_kernel_elements(a):
    n = len(a[0])
    ker = lat.nullspace(a, n)
    assert len(ker) == n - lat.rank(a)
    for k in ker:
        assert all(lat.pairing(row, k) == 0 for row in a)
        assert math.gcd(*k) == 1


@given(matrices(max_rows=4, max_cols=4))
def test_saturated_span(a):
    n = len(a[0])
    basis, r = lat.saturate_span(a, n)
    assert r == lat.rank(a)
    for row in a:
        if any(row):
            lat.coordinates_in_basis(row, basis)
    # saturated: the basis extends to a unimodular matrix iff its invariant factors are 1
    if basis:
        assert lat.invariant_factors(basis) == (1,) * r


def test_saturated_span_example():
    basis, r = lat.saturate_span([(2, 4, 0)], 3)
    assert r == 1 and basis == [(1, 2, 0)]


def test_inverse_and_solve():
    a = [(2, 1), (1, 1)]
    assert lat.integer_inverse(a) == ((1, -1), (-1, 2))
    assert lat.solve(a, (3, 2)) == (Fraction(1), Fraction(1))
    with pytest.raises(DegenerateInputError):
        lat.integer_inverse([(2, 0), (0, 1)])


def test_coordinates_outside_lattice():
    with pytest.raises(DimensionError):
        lat.coordinates_in_basis((1, 0), [(2, 0)])
