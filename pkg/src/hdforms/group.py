"""Automorphisms of the center k[psi] of a cyclic form, chi, and rational lifting.

An element a = (a_1, ..., a_{n-1}) of G' stands for the algebra automorphism
psi -> a_1 psi + ... + a_{n-1} psi^{n-1}. ``group_mul(a, b)`` is the
composite f_a . f_b (apply b's substitution, then a's).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cyclic import CyclicData, reichstein
from .forms import evaluate, is_isometry
from .linalg import Matrix, Q, interpolate, format_rational, rational_root_d, rational_roots
from .structure import NotInSpan


class NotIsometry(ValueError):
    pass


class NotInCenterSpan(NotInSpan):
    pass


class NoRationalLift(ArithmeticError):
    """The required d-th root does not exist in Q."""


class Inconsistent(ArithmeticError):
    pass


@dataclass(frozen=True)
class CenterAut:
    a: tuple[Fraction, ...]

    def __init__(self, a: Sequence):
        vals = tuple(Q(x) for x in a)
        if not vals:
            raise ValueError("a center automorphism needs n - 1 >= 1 coordinates")
        if not vals[0]:
            raise ValueError("a_1 must be nonzero")
        object.__setattr__(self, "a", vals)

    @classmethod
    def identity(cls, n: int) -> "CenterAut":
        return cls([1] + [0] * (n - 2))

    @property
    def n(self) -> int:
        return len(self.a) + 1

    def __iter__(self):
        return iter(self.a)

    def to_strings(self) -> list[str]:
        return [format_rational(x) for x in self.a]


def _series_mul(p: list, q: list, n: int) -> list:
    out = [Fraction(0)] * n
    for i, x in enumerate(p):
        if x:
            for j in range(n - i):
                if q[j]:
                    out[i + j] += x * q[j]
    return out


def _series(a: CenterAut) -> list:
    return [Fraction(0)] + list(a.a)


def rho1(a: CenterAut, psi: Matrix) -> Matrix:
    if psi.nrows != a.n:
        raise ValueError(f"psi must be {a.n}x{a.n}")
    out = Matrix.zeros(a.n)
    power = Matrix.identity(a.n)
    for c in a.a:
        power = power @ psi
        if c:
            out = out + power.scale(c)
    return out


def rho2(a: CenterAut) -> Matrix:
    """Column i holds the psi-power coordinates of rho1(a)^i."""
    n = a.n
    cols = []
    cur = [Fraction(1)] + [Fraction(0)] * (n - 1)
    base = _series(a)
    for _ in range(n):
        cols.append(cur)
        cur = _series_mul(cur, base, n)
    return Matrix.from_columns(cols)


def group_mul(a: CenterAut, b: CenterAut) -> CenterAut:
    if a.n != b.n:
        raise ValueError("group elements of different size")
    prod = rho2(a) @ rho2(b)
    return CenterAut(prod.col(1)[1:])


def group_inv(a: CenterAut) -> CenterAut:
    """Solve sum_i x_i rho1(a)^i = psi by forward substitution."""
    n = a.n
    powers = [None]
    cur = [Fraction(1)] + [Fraction(0)] * (n - 1)
    for _ in range(1, n):
        cur = _series_mul(cur, _series(a), n)
        powers.append(cur)
    x = [Fraction(0)] * n
    for k in range(1, n):
        rhs = Fraction(int(k == 1)) - sum((x[i] * powers[i][k] for i in range(1, k)), Fraction(0))
        x[k] = rhs / powers[k][k]
    return CenterAut(x[1:])


def random_aut(n: int, rng: random.Random, height: int = 5) -> CenterAut:
    def r():
        return Fraction(rng.randint(-height, height), rng.randint(1, height))

    a1 = Fraction(0)
    while not a1:
        a1 = r()
    return CenterAut([a1] + [r() for _ in range(n - 2)])


def _psi_coordinates(m: Matrix, psi: Matrix) -> list[Fraction] | None:
    """Coordinates of m in {I, psi, ..., psi^{n-1}} for the standard shift."""
    coords = list(m.rows[0])
    n = m.nrows
    rebuilt = Matrix.zeros(n)
    power = Matrix.identity(n)
    for c in coords:
        if c:
            rebuilt = rebuilt + power.scale(c)
        power = power @ psi
    return coords if rebuilt == m else None


def chi(sigma: Matrix, c: CyclicData) -> CenterAut:
    """The automorphism psi -> sigma psi sigma^{-1} of the center."""
    if not is_isometry(c.form, sigma):
        raise NotIsometry("sigma is not an isometry of the form")
    conj = sigma @ c.psi @ sigma.inverse()
    coords = _psi_coordinates(conj, c.psi)
    if coords is None or coords[0] or not coords[1]:
        raise NotInCenterSpan("sigma psi sigma^-1 is not of the form a_1 psi + ...")
    return CenterAut(coords[1:])


def _column_images(a_mat: Matrix, c: Sequence[Fraction]) -> list[tuple]:
    """sigma(v_i) = A^{n-i} c for i = 1..n."""
    n = a_mat.nrows
    cols = [None] * n
    cur = tuple(c)
    for i in range(n, 0, -1):
        cols[i - 1] = cur
        cur = a_mat @ cur
    return cols


def lift(a: CenterAut, n: int, d: int) -> Matrix:
    """A rational isometry sigma of the Reichstein form with chi(sigma) = a.

    Raises NoRationalLift when the d-th root needed for sigma(v_n) is
    irrational.
    """
    if n < 2 or d < 3:
        raise ValueError("lift needs n >= 2 and d >= 3")
    if a.n != n:
        raise ValueError(f"expected {n - 1} coordinates, got {len(a.a)}")
    data = reichstein(n, d)
    f = data.form
    a_mat = rho1(a, data.psi)
    a1 = a.a[0]
    # (v_n, .., v_n, v_1) forces a_1^{n-1} c_n^d = 1
    cn = rational_root_d(1 / a1 ** (n - 1), d)
    if cn is None:
        raise NoRationalLift(
            f"x^{d} = {format_rational(1 / a1 ** (n - 1))} has no rational solution"
        )
    c = [Fraction(0)] * n
    c[n - 1] = cn
    power = [Matrix.identity(n)]
    for _ in range(n):
        power.append(power[-1] @ a_mat)
    # tuple (v_n, .., v_n, v_j) determines c_{n-j+1} once c_{n-j+2..n} are known
    for j in range(2, n + 1):
        t_index = n - j
        e_n = tuple(Fraction(int(i == n - 1)) for i in range(n))
        target = evaluate(f, [e_n] * (d - 1) + [tuple(Fraction(int(i == j - 1)) for i in range(n))])

        def g(t):
            trial = list(c)
            trial[t_index] = Fraction(t)
            return evaluate(f, [trial] * (d - 1) + [power[n - j] @ trial]) - target

        poly = interpolate([(Fraction(x), g(x)) for x in range(d + 1)])
        if poly.degree == 1:
            c[t_index] = -poly.coeffs[0] / poly.coeffs[1]
        elif poly.is_zero():
            c[t_index] = Fraction(0)
        else:
            roots = rational_roots(poly) if poly.degree > 0 else []
            if not roots:
                raise NoRationalLift(f"no rational value for sigma(v_n)_{t_index + 1}")
            c[t_index] = min(roots, key=lambda r: (abs(r), r))
    sigma = Matrix.from_columns(_column_images(a_mat, c))
    if not is_isometry(f, sigma):
        raise Inconsistent("lift candidate failed the isometry check")
    if chi(sigma, data) != a:
        raise Inconsistent("lift candidate has the wrong image under chi")
    return sigma


def kernel_check(n: int, d: int) -> list[Matrix]:
    """Rational scalar isometries zeta I with zeta^d = 1, each verified."""
    data = reichstein(n, d)
    zetas = [1, -1] if d % 2 == 0 else [1]
    out = []
    e = CenterAut.identity(n)
    for z in zetas:
        m = Matrix.identity(n).scale(z)
        if not is_isometry(data.form, m) or chi(m, data) != e:
            raise Inconsistent(f"{z} I is not in the kernel of chi")
        out.append(m)
    return out
