"""Builders for example forms: matrix trace forms, number-field trace forms, diagonal forms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Sequence

from .forms import SymmetricForm, multi_indices
from .linalg import Matrix, Poly, Q, poly_gcd


def matrix_unit(m: int, k: int) -> Matrix:
    """The k-th (0-based, row-major) matrix unit E_ab of Mat_m."""
    a, b = divmod(k, m)
    return Matrix([[int(i == a and j == b) for j in range(m)] for i in range(m)])


def _unit_product_trace(m: int, units: Sequence[int]) -> int:
    """tr(E_{a1 b1} E_{a2 b2} ...) for row-major unit indices."""
    pairs = [divmod(k, m) for k in units]
    for (_, b), (a, _) in zip(pairs, pairs[1:]):
        if b != a:
            return 0
    return int(pairs[-1][1] == pairs[0][0])


def trace_form_matrix_algebra(m: int, d: int) -> SymmetricForm:
    """T^d(x_1..x_d) = (1/d!) tr(sum over permutations of x_pi(1) ... x_pi(d)) on Mat_m."""
    if m < 1 or d < 2:
        raise ValueError("need m >= 1 and d >= 2")
    n = m * m
    entries = {}
    for idx in multi_indices(n, d):
        units = [i - 1 for i in idx]
        total = sum(_unit_product_trace(m, p) for p in permutations(units))
        if total:
            entries[idx] = Fraction(total, factorial(d))
    return SymmetricForm(n, d, entries)


def left_mult(a: Matrix) -> Matrix:
    """x -> a x on Mat_m, in the row-major matrix-unit basis."""
    m = a.nrows
    return Matrix.from_columns([(a @ matrix_unit(m, k)).vec() for k in range(m * m)])


def right_mult(a: Matrix) -> Matrix:
    """x -> x a on Mat_m, in the row-major matrix-unit basis."""
    m = a.nrows
    return Matrix.from_columns([(matrix_unit(m, k) @ a).vec() for k in range(m * m)])


def ad(a: Matrix) -> Matrix:
    """R_a - L_a."""
    return right_mult(a) - left_mult(a)


@dataclass(frozen=True)
class NumberFieldSpec:
    minpoly: Poly  # monic, ascending coefficients
    b: tuple[Fraction, ...]  # coordinates in the power basis 1, x, ..., x^{n-1}

    def __post_init__(self):
        if self.minpoly.degree < 2 or self.minpoly.lc != 1:
            raise ValueError("minimal polynomial must be monic of degree >= 2")
        if len(self.b) != self.minpoly.degree:
            raise ValueError("b must have one coordinate per power-basis element")
        if not any(self.b):
            raise ValueError("b must be nonzero")

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    def companion(self) -> Matrix:
        """Multiplication by x in the power basis."""
        n = self.degree
        c = self.minpoly.coeffs
        rows = [[Fraction(0)] * n for _ in range(n)]
        for j in range(n - 1):
            rows[j + 1][j] = Fraction(1)
        for i in range(n):
            rows[i][n - 1] = -c[i]
        return Matrix(rows)

    def mult(self, u: Sequence) -> Matrix:
        """Multiplication operator of the element with power-basis coordinates u."""
        return Poly(u)(self.companion())


def trace_form_number_field(spec: NumberFieldSpec, d: int) -> SymmetricForm:
    """Psi_b(x_1..x_d) = tr_{K/Q}(b x_1 ... x_d) on K = Q[x]/(minpoly)."""
    p = spec.minpoly
    if poly_gcd(p, p.derivative()).degree > 0:
        raise ValueError("minimal polynomial is not squarefree (K would not be separable)")
    n = spec.degree
    cm = spec.companion()
    mb = spec.mult(spec.b)
    powers = [Matrix.identity(n)]
    for _ in range(d * (n - 1)):
        powers.append(powers[-1] @ cm)
    entries = {}
    for idx in multi_indices(n, d):
        k = sum(i - 1 for i in idx)
        v = (mb @ powers[k]).trace()
        if v:
            entries[idx] = v
    return SymmetricForm(n, d, entries)


def diagonal_form(coeffs: Sequence, d: int) -> SymmetricForm:
    """a_1 x_1^d + ... + a_n x_n^d."""
    n = len(coeffs)
    return SymmetricForm(n, d, {(i + 1,) * d: Q(a) for i, a in enumerate(coeffs)})
