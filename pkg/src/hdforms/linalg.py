"""Exact rational kernels: matrices, nullspaces, univariate polynomials.

Everything here works over ``fractions.Fraction``; there is no floating point
anywhere in the package.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

Vector = tuple  # tuple of Fraction


def Q(x) -> Fraction:
    """Coerce ints, strings ("p/q") and Fractions to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def format_rational(x: Fraction) -> str:
    x = Q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    if not isinstance(s, str):
        raise ValueError(f"rational must be given as a string, got {s!r}")
    t = s.strip()
    if not t or any(c.isspace() for c in t) or "." in t or "e" in t.lower():
        raise ValueError(f"malformed rational {s!r}")
    try:
        num, _, den = t.partition("/")
        if _ and int(den) <= 0:
            raise ValueError
        return Fraction(int(num), int(den) if _ else 1)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"malformed rational {s!r}") from None


class Matrix:
    """Immutable dense matrix of Fractions; columns are images of basis vectors."""

    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(Q(x) for x in row) for row in rows)
        if data:
            w = len(data[0])
            if any(len(r) != w for r in data):
                raise ValueError("ragged matrix rows")
        else:
            w = ncols or 0
        self.rows = data
        self.nrows = len(data)
        self.ncols = w
        self._hash = None

    @classmethod
    def _raw(cls, rows: tuple, ncols: int) -> "Matrix":
        m = object.__new__(cls)
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        m._hash = None
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> "Matrix":
        ncols = nrows if ncols is None else ncols
        z = Fraction(0)
        return cls._raw(tuple((z,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.diag([1] * n)

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        n = len(values)
        z = Fraction(0)
        return cls._raw(
            tuple(tuple(Q(values[i]) if i == j else z for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        if not cols:
            return cls.zeros(nrows or 0, 0)
        return cls(zip(*cols))

    @classmethod
    def from_vec(cls, vec: Sequence, n: int) -> "Matrix":
        """Inverse of :meth:`vec` for an n x n matrix (row-major)."""
        return cls._raw(tuple(tuple(Q(x) for x in vec[i * n:(i + 1) * n]) for i in range(n)), n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def cols(self) -> list[Vector]:
        return [self.col(j) for j in range(self.ncols)]

    def vec(self) -> Vector:
        return tuple(x for r in self.rows for x in r)

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*self.rows)) if self.nrows else (), self.nrows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self.rows))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in r) for r in self.rows)
        return f"Matrix([{body}])"

    def _check_same(self, other: "Matrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.ncols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.ncols,
        )

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self.rows), self.ncols)

    def scale(self, c) -> "Matrix":
        c = Q(c)
        return Matrix._raw(tuple(tuple(c * a for a in r) for r in self.rows), self.ncols)

    def __rmul__(self, c) -> "Matrix":
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
            z = Fraction(0)
            out = []
            for r in self.rows:
                nz = [(k, a) for k, a in enumerate(r) if a]
                out.append(tuple(sum((a * c[k] for k, a in nz), z) for c in cols))
            return Matrix._raw(tuple(out), other.ncols)
        v = tuple(other)
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(sum((a * b for a, b in zip(r, v) if a), Fraction(0)) for r in self.rows)

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square() or k < 0:
            raise ValueError("matrix power needs a square matrix and k >= 0")
        result, base = Matrix.identity(self.nrows), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(min(self.shape))), Fraction(0))

    def is_upper_triangular(self, strict: bool = False) -> bool:
        return all(
            not self.rows[i][j]
            for i in range(self.nrows)
            for j in range(self.ncols)
            if j < i or (strict and j == i)
        )

    def is_diagonal(self) -> bool:
        return self.is_upper_triangular() and self.T.is_upper_triangular()

    def rank(self) -> int:
        return len(rref(self.rows, self.ncols)[1])

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        red, pivots = rref(aug, 2 * n)
        if pivots[:n] != list(range(n)) or len(pivots) > n:
            raise ZeroDivisionError("matrix is singular")
        return Matrix._raw(tuple(tuple(r[n:]) for r in red[:n]), n)

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.nrows

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(tuple(tuple(self.rows[i][j] for j in cols) for i in rows), len(cols))

    def to_strings(self) -> list[list[str]]:
        return [[format_rational(x) for x in r] for r in self.rows]


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a @ b - b @ a


def block_diag(*blocks: Matrix) -> Matrix:
    n = sum(b.nrows for b in blocks)
    m = sum(b.ncols for b in blocks)
    rows = [[Fraction(0)] * m for _ in range(n)]
    i0 = j0 = 0
    for b in blocks:
        for i, r in enumerate(b.rows):
            rows[i0 + i][j0:j0 + b.ncols] = r
        i0 += b.nrows
        j0 += b.ncols
    return Matrix(rows, m)


# ---------------------------------------------------------------- elimination


def _reduce_row(row: dict, basis: dict) -> dict:
    """Reduce a sparse row (col -> value) against pivot rows in ``basis``.

    Pivot rows are normalized (pivot entry 1) and kept fully reduced against
    one another, so one pass in increasing pivot order suffices.
    """
    row = dict(row)
    for p in sorted(basis):
        c = row.get(p)
        if c:
            for j, v in basis[p].items():
                nv = row.get(j, 0) - c * v
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
    return row


class Eliminator:
    """Incremental Gauss-Jordan elimination on sparse rows.

    Rows are fed one at a time; the state is always a reduced row echelon
    basis of the row space seen so far. Used by every kernel computation.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict] = {}

    def add(self, row) -> bool:
        if not isinstance(row, dict):
            row = {j: Q(v) for j, v in enumerate(row) if v}
        r = _reduce_row(row, self.pivots)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {j: v * inv for j, v in r.items()}
        for q, other in self.pivots.items():
            c = other.get(p)
            if c:
                for j, v in r.items():
                    nv = other.get(j, 0) - c * v
                    if nv:
                        other[j] = nv
                    else:
                        other.pop(j, None)
        self.pivots[p] = r
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row) -> dict:
        if not isinstance(row, dict):
            row = {j: Q(v) for j, v in enumerate(row) if v}
        return _reduce_row(row, self.pivots)

    def nullspace(self) -> list[Vector]:
        z = Fraction(0)
        basis = []
        for f in range(self.ncols):
            if f in self.pivots:
                continue
            v = [z] * self.ncols
            v[f] = Fraction(1)
            for p, r in self.pivots.items():
                c = r.get(f)
                if c:
                    v[p] = -c
            basis.append(tuple(v))
        return basis

    def rows(self) -> list[Vector]:
        z = Fraction(0)
        out = []
        for p in sorted(self.pivots):
            v = [z] * self.ncols
            for j, x in self.pivots[p].items():
                v[j] = x
            out.append(tuple(v))
        return out


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns (ascending)."""
    el = Eliminator(ncols)
    for r in rows:
        el.add(r)
    return [list(r) for r in el.rows()], sorted(el.pivots)


def nullspace(m) -> list[Vector]:
    """Basis of ``{x : m x = 0}``.

    One vector per free column, in increasing free-column order; each has a 1
    at its free column and zeros at the other free columns.
    """
    if isinstance(m, Matrix):
        rows, ncols = m.rows, m.ncols
    else:
        rows = list(m)
        ncols = len(rows[0]) if rows else 0
    el = Eliminator(ncols)
    for r in rows:
        el.add(r)
    return el.nullspace()


def solve(columns: Sequence[Sequence], target: Sequence) -> Vector | None:
    """Coefficients x with sum x_i * columns[i] == target, or None.

    When the columns are dependent the solution with zero free coefficients is
    returned.
    """
    k = len(columns)
    target = tuple(Q(t) for t in target)
    if k == 0:
        return () if not any(target) else None
    m = len(target)
    el = Eliminator(k + 1)
    for i in range(m):
        el.add({j: v for j, v in enumerate([columns[c][i] for c in range(k)] + [target[i]]) if v})
    if k in el.pivots:
        return None
    x = [Fraction(0)] * k
    for p, r in el.pivots.items():
        x[p] = r.get(k, Fraction(0))
    return tuple(x)


def column_space(m: Matrix) -> list[Vector]:
    """Independent columns of ``m`` (the pivot columns), in order."""
    _, pivots = rref(m.rows, m.ncols)
    return [m.col(j) for j in pivots]


def independent(vectors: Sequence[Sequence]) -> bool:
    if not vectors:
        return True
    el = Eliminator(len(vectors[0]))
    return all(el.add(v) for v in vectors)


# ---------------------------------------------------------------- polynomials


class Poly:
    """Univariate polynomial over Q, coefficients in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Q(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return Poly(c / self.lc for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{format_rational(c)}*X^{k}" if k else format_rational(c))
        return "Poly(" + " + ".join(terms) + ")"

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return Poly(Q(other) * c for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly([1])
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dq = len(r) - len(other.coeffs)
        if dq < 0:
            return Poly(), self
        q = [Fraction(0)] * (dq + 1)
        lc = other.lc
        for k in range(dq, -1, -1):
            c = r[k + other.degree] / lc
            q[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    r[k + j] -= c * b
        return Poly(q), Poly(r)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def derivative(self) -> "Poly":
        return Poly(k * c for k, c in enumerate(self.coeffs) if k)

    def __call__(self, x):
        if isinstance(x, Matrix):
            n = x.nrows
            acc = Matrix.zeros(n)
            for c in reversed(self.coeffs):
                acc = acc @ x + Matrix.identity(n).scale(c)
            return acc
        x = Q(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_gcdex(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(s, t, g) with s*a + t*b = g = monic gcd(a, b)."""
    r0, r1 = a, b
    s0, s1 = Poly([1]), Poly()
    t0, t1 = Poly(), Poly([1])
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    lc = r0.lc
    return s0 * (1 / lc), t0 * (1 / lc), r0.monic()


def minimal_polynomial(m: Matrix) -> Poly:
    """Monic polynomial of least degree annihilating the square matrix ``m``."""
    if not m.is_square():
        raise ValueError("minimal polynomial of a non-square matrix")
    n = m.nrows
    powers = [Matrix.identity(n).vec()]
    cur = Matrix.identity(n)
    for k in range(1, n + 1):
        cur = cur @ m
        x = solve(powers, cur.vec())
        if x is not None:
            return Poly([-c for c in x] + [1])
        powers.append(cur.vec())
    raise AssertionError("Cayley-Hamilton violated")  # pragma: no cover


def _iroot(n: int, d: int) -> int | None:
    """Exact integer d-th root of n >= 0, or None."""
    if n < 2:
        return n
    lo, hi = 1, 1 << (n.bit_length() // d + 1)
    while lo <= hi:
        mid = (lo + hi) // 2
        p = mid ** d
        if p == n:
            return mid
        if p < n:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def rational_root_d(q, d: int) -> Fraction | None:
    """r in Q with r**d == q (the nonnegative one for even d), or None."""
    if d < 1:
        raise ValueError("root degree must be >= 1")
    q = Q(q)
    if q < 0:
        if d % 2 == 0:
            return None
        r = rational_root_d(-q, d)
        return None if r is None else -r
    a, b = _iroot(q.numerator, d), _iroot(q.denominator, d)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        return [0]
    small = [k for k in range(1, int(n ** 0.5) + 1) if n % k == 0]
    return sorted(set(small + [n // k for k in small]))


def _integer_primitive(p: Poly) -> list[int]:
    from math import gcd, lcm

    den = 1
    for c in p.coeffs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [c // g for c in ints]


def rational_roots(p: Poly) -> list[Fraction]:
    """Distinct rational roots of a nonzero polynomial, ascending."""
    if p.is_zero():
        raise ValueError("zero polynomial has every root")
    roots = set()
    if not p.coeffs[0]:
        roots.add(Fraction(0))
        k = next(i for i, c in enumerate(p.coeffs) if c)
        p = Poly(p.coeffs[k:])
    if p.degree < 1:
        return sorted(roots)
    ints = _integer_primitive(p)
    for num in _divisors(ints[0]):
        for den in _divisors(ints[-1]):
            for r in (Fraction(num, den), Fraction(-num, den)):
                if p(r) == 0:
                    roots.add(r)
    return sorted(roots)


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: monic p = prod s_i**i, s_i squarefree and coprime."""
    p = p.monic()
    out = []
    a = poly_gcd(p, p.derivative())
    b = p // a
    c = p.derivative() // a
    i = 1
    while b.degree > 0:
        d = c - b.derivative()
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g, i))
        b = b // g
        c = d // g
        i += 1
    return out


def interpolate(points: Sequence[tuple[Fraction, Fraction]]) -> Poly:
    out = Poly()
    for i, (xi, yi) in enumerate(points):
        term = Poly([yi])
        for j, (xj, _) in enumerate(points):
            if j != i:
                term = term * Poly([-xj, 1]) * (1 / (xi - xj))
        out = out + term
    return out


def _kronecker_factor(p: Poly, k: int, limit: int = 20000) -> Poly | None:
    """Search for a monic rational factor of degree k (Kronecker's method)."""
    ints = _integer_primitive(p)
    f = Poly(ints)
    xs = []
    x = 0
    while len(xs) < k + 1:
        if f(x) != 0:
            xs.append(x)
        x = -x if x > 0 else -x + 1
    values = [int(f(x)) for x in xs]
    if any(abs(v) > 10 ** 10 for v in values):
        return None
    divs = [_divisors(v) for v in values]
    choices = [[s * d for d in ds for s in (1, -1)] for ds in divs]
    count = 0
    for ys in product(*choices):
        count += 1
        if count > limit:
            return None
        g = interpolate([(Fraction(x), Fraction(y)) for x, y in zip(xs, ys)])
        if g.degree != k:
            continue
        if (f % g).is_zero():
            return g.monic()
    return None


def factor_coprime(p: Poly) -> list[Poly]:
    """Pairwise coprime monic factors of monic p whose product is p.

    Best effort over Q: squarefree decomposition, rational roots, then a
    Kronecker search for factors of degree 2 and 3. Factors need not be
    irreducible.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if p.lc != 1:
        raise ValueError("factor_coprime expects a monic polynomial")
    if p.degree == 0:
        return []
    out = []
    for s, mult in squarefree_decomposition(p):
        pieces = []
        rest = s
        for r in rational_roots(s):
            lin = Poly([-r, 1])
            pieces.append(lin)
            rest = rest // lin
        stack = [rest] if rest.degree > 0 else []
        while stack:
            g = stack.pop()
            found = None
            for k in (2, 3):
                if g.degree >= 2 * k:
                    found = _kronecker_factor(g, k)
                    if found is not None:
                        break
            if found is None:
                pieces.append(g.monic())
            else:
                stack.extend([found, (g // found).monic()])
        out.extend(q ** mult for q in pieces)
    out.sort(key=lambda q: (q.degree, q.coeffs))
    return out


def poly_product(polys: Iterable[Poly]) -> Poly:
    out = Poly([1])
    for q in polys:
        out = out * q
    return out
