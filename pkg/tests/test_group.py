import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hdforms.cyclic import reichstein, shift
from hdforms.forms import is_isometry
from hdforms.group import (
    CenterAut,
    NoRationalLift,
    NotIsometry,
    chi,
    group_inv,
    group_mul,
    kernel_check,
    lift,
    random_aut,
    rho1,
    rho2,
)
from hdforms.linalg import Matrix

TAU = Matrix([[1, 2, -1], [0, 1, -1], [0, 0, 1]])


def auts(n):
    nonzero = st.fractions(min_value=-5, max_value=5, max_denominator=5).filter(bool)
    rest = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=5), min_size=n - 2, max_size=n - 2)
    return st.builds(lambda a1, r: CenterAut([a1] + r), nonzero, rest)


def test_center_aut_validation():
    with pytest.raises(ValueError):
        CenterAut([0, 1])
    with pytest.raises(ValueError):
        CenterAut([])
    assert CenterAut.identity(4).a == (1, 0, 0)


def test_rho1_examples():
    psi = shift(3)
    assert rho1(CenterAut([1, 0]), psi) == psi
    assert rho1(CenterAut([2, 1]), psi) == psi.scale(2) + psi @ psi
    for n in range(2, 6):
        a = random_aut(n, random.Random(n))
        assert (rho1(a, shift(n)) ** n).is_zero()


def test_rho2_examples():
    assert rho2(CenterAut.identity(4)) == Matrix.identity(4)
    assert rho2(CenterAut([2, 1])) == Matrix([[1, 0, 0], [0, 2, 0], [0, 1, 4]])
    a = CenterAut([3, 1, -2])
    m = rho2(a)
    assert [m[i, i] for i in range(4)] == [1, 3, 9, 27]
    assert m.T.is_upper_triangular()


def test_group_law_examples():
    assert group_mul(CenterAut([2, 1]), CenterAut([1, 1])).a == (2, 5)
    assert group_inv(CenterAut([2, 1])).a == (Fraction(1, 2), Fraction(-1, 8))
    e = CenterAut.identity(3)
    assert group_inv(e) == e


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6).flatmap(lambda n: st.tuples(auts(n), auts(n), auts(n))))
def test_group_axioms(triple):
    a, b, c = triple
    e = CenterAut.identity(a.n)
    assert group_mul(group_mul(a, b), c) == group_mul(a, group_mul(b, c))
    assert group_mul(a, e) == a == group_mul(e, a)
    assert group_mul(a, group_inv(a)) == e == group_mul(group_inv(a), a)
    assert rho2(group_mul(a, b)) == rho2(a) @ rho2(b)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 5).flatmap(lambda n: st.tuples(auts(n), auts(n))))
def test_group_mul_is_substitution(pair):
    # m(a, b) is f_a . f_b: substitute psi -> rho1(a) into rho1(b)
    a, b = pair
    n = a.n
    psi = shift(n)
    ra = rho1(a, psi)
    composed = Matrix.zeros(n)
    power = Matrix.identity(n)
    for coef in b.a:
        power = power @ ra
        composed = composed + power.scale(coef)
    assert rho1(group_mul(a, b), psi) == composed


def test_chi_examples():
    c = reichstein(3, 3)
    assert chi(Matrix.diag([16, 2, Fraction(1, 4)]), c).a == (8, 0)
    assert chi(TAU, c).a == (1, 3)
    c4 = reichstein(3, 4)
    assert chi(Matrix.identity(3).scale(-1), c4) == CenterAut.identity(3)
    with pytest.raises(NotIsometry):
        chi(Matrix.diag([2, 1, 1]), c)


def test_chi_is_homomorphism():
    c = reichstein(3, 3)
    s = Matrix.diag([16, 2, Fraction(1, 4)])
    assert chi(s @ TAU, c) == group_mul(chi(s, c), chi(TAU, c))
    assert chi(TAU @ s, c) == group_mul(chi(TAU, c), chi(s, c))


def test_lift_examples():
    assert lift(CenterAut([8, 0]), 3, 3) == Matrix.diag([16, 2, Fraction(1, 4)])
    assert lift(CenterAut.identity(4), 4, 3) == Matrix.identity(4)
    with pytest.raises(NoRationalLift):
        lift(CenterAut([2, 0]), 3, 3)
    with pytest.raises(ValueError):
        lift(CenterAut([1, 0]), 4, 3)


def test_lift_even_degree_is_canonical():
    s = lift(CenterAut([Fraction(1, 16), 2, 1]), 4, 4)
    assert s[3, 3] > 0


@pytest.mark.parametrize("n,d", [(2, 3), (3, 3), (4, 3), (3, 4), (5, 4), (4, 5), (6, 3)])
def test_lift_round_trip(n, d):
    rng = random.Random(100 * n + d)
    data = reichstein(n, d)
    done = 0
    for _ in range(40):
        a = random_aut(n, rng)
        # make the d-th root rational: a_1 = t^d
        a = CenterAut([a.a[0] ** d] + list(a.a[1:]))
        s = lift(a, n, d)
        assert is_isometry(data.form, s)
        assert chi(s, data) == a
        done += 1
        if done == 5:
            break
    assert done == 5


@pytest.mark.parametrize("n,d", [(3, 3), (4, 4)])
def test_kernel_of_chi_is_roots_of_unity(n, d):
    data = reichstein(n, d)
    rng = random.Random(7)
    kernel = kernel_check(n, d)
    for _ in range(4):
        a = random_aut(n, rng)
        a = CenterAut([a.a[0] ** d] + list(a.a[1:]))
        s = lift(a, n, d)
        for z in kernel:
            t = s @ z
            assert is_isometry(data.form, t)
            assert chi(t, data) == a
        # sigma^{-1} . (z sigma) has trivial chi and is a scalar root of unity
        for z in kernel:
            k = s.inverse() @ (z @ s)
            assert chi(k, data) == CenterAut.identity(n)
            assert k in kernel


def test_kernel_check():
    assert kernel_check(3, 3) == [Matrix.identity(3)]
    assert kernel_check(3, 4) == [Matrix.identity(3), Matrix.identity(3).scale(-1)]
