from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import small_q
from hdforms.linalg import (
    Matrix,
    Poly,
    factor_coprime,
    format_rational,
    minimal_polynomial,
    nullspace,
    parse_rational,
    poly_gcd,
    poly_product,
    rational_root_d,
    solve,
)

matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(small_q, min_size=c, max_size=c), min_size=r, max_size=r)
    )
)
square = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(small_q, min_size=n, max_size=n), min_size=n, max_size=n)
)


def test_nullspace_identity_is_empty():
    assert nullspace(Matrix.identity(3)) == []


def test_nullspace_of_zero_is_standard_basis():
    basis = nullspace(Matrix.zeros(2, 3))
    assert basis == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_nullspace_rank_one():
    # hand elimination: x + y = 0
    assert nullspace(Matrix([[1, 1], [2, 2]])) == [(Fraction(-1), Fraction(1))]


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_nullspace_vectors_are_killed(rows):
    m = Matrix(rows)
    basis = nullspace(m)
    for b in basis:
        assert not any(m @ b)
    assert len(basis) + m.rank() == m.ncols


def test_inverse_roundtrip():
    m = Matrix([[2, 1], [1, 1]])
    assert m @ m.inverse() == Matrix.identity(2)
    with pytest.raises(ZeroDivisionError):
        Matrix([[1, 2], [2, 4]]).inverse()


def test_solve_returns_none_outside_span():
    cols = [(1, 0, 0), (0, 1, 0)]
    assert solve(cols, (2, 3, 0)) == (2, 3)
    assert solve(cols, (0, 0, 1)) is None


def test_minimal_polynomial_examples():
    assert minimal_polynomial(Matrix.identity(3)) == Poly([-1, 1])
    psi = Matrix([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]])
    assert minimal_polynomial(psi) == Poly.monomial(4)
    assert minimal_polynomial(Matrix.diag([1, 2])) == Poly([-1, 1]) * Poly([-2, 1])


@settings(max_examples=60, deadline=None)
@given(square)
def test_minimal_polynomial_annihilates(rows):
    m = Matrix(rows)
    p = minimal_polynomial(m)
    assert p.lc == 1
    assert p(m).is_zero()
    # minimality: no lower-degree monic combination of powers vanishes
    if p.degree > 1:
        powers = [(m ** k).vec() for k in range(p.degree)]
        assert solve(powers[:-1], powers[-1]) is None or p.degree <= 1


def test_rational_root_examples():
    assert rational_root_d(Fraction(1, 64), 3) == Fraction(1, 4)
    for d in range(1, 7):
        assert rational_root_d(1, d) == 1
    assert rational_root_d(2, 3) is None
    assert rational_root_d(Fraction(-27, 8), 3) == Fraction(-3, 2)
    assert rational_root_d(-4, 2) is None
    assert rational_root_d(Fraction(16, 81), 4) == Fraction(2, 3)


@given(st.fractions(max_denominator=50), st.integers(1, 6))
def test_rational_root_is_exact(q, d):
    r = rational_root_d(q, d)
    if r is not None:
        assert r ** d == q
        if d % 2 == 0:
            assert r >= 0


@given(st.fractions(min_value=-30, max_value=30, max_denominator=30), st.integers(1, 5))
def test_rational_root_finds_perfect_powers(r, d):
    got = rational_root_d(r ** d, d)
    assert got == (abs(r) if d % 2 == 0 else r)


def _check_factorization(p, factors):
    assert poly_product(factors) == p
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            assert poly_gcd(factors[i], factors[j]) == Poly([1])


def test_factor_coprime_examples():
    x = Poly.x()
    p = Poly([2, -3, 1])
    assert factor_coprime(p) == [Poly([-2, 1]), Poly([-1, 1])]
    assert factor_coprime(x ** 5) == [x ** 5]
    cubic = Poly([0, -1, 0, 1])
    assert sorted(factor_coprime(cubic), key=lambda q: q.coeffs) == sorted(
        [Poly([0, 1]), Poly([-1, 1]), Poly([1, 1])], key=lambda q: q.coeffs
    )


def test_factor_coprime_quadratic_pair():
    # (x^2 - 2)(x^2 - 3): no rational roots, split by the degree-2 search
    p = Poly([-2, 0, 1]) * Poly([-3, 0, 1])
    factors = factor_coprime(p)
    _check_factorization(p, factors)
    assert len(factors) == 2


def test_factor_coprime_repeated_irreducible():
    p = Poly([-2, 0, 1]) ** 2 * Poly([-1, 1]) ** 3
    factors = factor_coprime(p)
    _check_factorization(p, factors)
    assert len(factors) == 2


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=1, max_size=5))
def test_factor_coprime_product_law(roots):
    p = poly_product(Poly([-r, 1]) for r in roots) * Poly([1, 0, 1])
    _check_factorization(p, factor_coprime(p))


def test_rational_serialization():
    assert format_rational(Fraction(-3, 6)) == "-1/2"
    assert format_rational(Fraction(4, 2)) == "2"
    assert parse_rational("6/4") == Fraction(3, 2)
    for bad in ["", "1.5", "1/0", "1 /2", "a", "2/-3"]:
        with pytest.raises(ValueError):
            parse_rational(bad)
