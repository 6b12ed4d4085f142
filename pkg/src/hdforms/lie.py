"""The Lie algebra of a form, brackets, and the Lie-module structure on the center."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .forms import SymmetricForm, multi_indices
from .linalg import Eliminator, Matrix, commutator
from .structure import AlgebraBasis, NotInSpan, span_basis

LieBasis = AlgebraBasis


class NotClosed(NotInSpan):
    """A bracket of basis members escaped the span."""


class NotInCenter(NotInSpan):
    """[f, phi] fell outside the center span."""


def lie_equations(f: SymmetricForm):
    """One sparse row per sorted d-multiset, in the unknowns L[a][b] (row-major)."""
    n = f.dim
    for idx in multi_indices(n, f.degree):
        row: dict[int, Fraction] = {}
        for k, ik in enumerate(idx):
            rest = idx[:k] + idx[k + 1:]
            for a in range(1, n + 1):
                v = f[(a,) + rest]
                if v:
                    col = (a - 1) * n + (ik - 1)
                    row[col] = row.get(col, 0) + v
        row = {c: v for c, v in row.items() if v}
        if row:
            yield row


def lie_algebra(f: SymmetricForm) -> LieBasis:
    n = f.dim
    el = Eliminator(n * n)
    for row in lie_equations(f):
        el.add(row)
    members = tuple(Matrix.from_vec(v, n) for v in el.nullspace())
    return AlgebraBasis(n, members, "lie")


def in_lie(f: SymmetricForm, m: Matrix) -> bool:
    """Direct check of sum_i f(v_1, .., m v_i, .., v_d) = 0 on basis tuples."""
    n = f.dim
    for idx in multi_indices(n, f.degree):
        s = Fraction(0)
        for k, ik in enumerate(idx):
            rest = idx[:k] + idx[k + 1:]
            for a in range(1, n + 1):
                c = m[a - 1, ik - 1]
                if c:
                    s += c * f[(a,) + rest]
        if s:
            return False
    return True


def twisted_bracket(f: Matrix, g: Matrix, psi: Matrix) -> Matrix:
    """f psi g - g psi f; the ordinary commutator when psi = I."""
    return f @ psi @ g - g @ psi @ f


def center_action(f: Matrix, phi: Matrix, c: AlgebraBasis) -> tuple[Fraction, ...]:
    """Coordinates of [f, phi] in the center basis ``c``."""
    coords = c.coordinates(commutator(f, phi))
    if coords is None:
        raise NotInCenter("[f, phi] is not in the center span")
    return coords


def derived_series(b: AlgebraBasis | Sequence[Matrix], n: int | None = None) -> list[int]:
    """Dimensions of b, [b,b], [[b,b],[b,b]], ... until 0 or stable."""
    current = list(b)
    if n is None:
        n = b.dim_space if isinstance(b, AlgebraBasis) else current[0].nrows
    dims = [len(current)]
    while current:
        span = AlgebraBasis(n, tuple(current), "lie")
        brackets = []
        for x, y in combinations(current, 2):
            z = commutator(x, y)
            if not span.contains(z):
                raise NotClosed("bracket of basis members escapes the span")
            brackets.append(z)
        nxt = span_basis(brackets, n)
        if len(nxt) == len(current):
            break
        current = nxt
        dims.append(len(current))
    return dims


def is_solvable(b: AlgebraBasis) -> bool:
    return derived_series(b)[-1] == 0


def structure_constants(basis: Sequence[Matrix]) -> dict[tuple[int, int], tuple[Fraction, ...]]:
    """c[r, s] = coordinates of [basis_r, basis_s] in ``basis`` (r < s)."""
    n = basis[0].nrows
    span = AlgebraBasis(n, tuple(basis), "lie")
    out = {}
    for r, s in combinations(range(len(basis)), 2):
        coords = span.coordinates(commutator(basis[r], basis[s]))
        if coords is None:
            raise NotClosed(f"[b_{r}, b_{s}] escapes the span")
        out[(r, s)] = coords
    return out


# --------------------------------------------------- matrix conventions


def _reversal(n: int) -> Matrix:
    return Matrix([[int(i + j == n - 1) for j in range(n)] for i in range(n)])


CONVENTIONS = ("direct", "reversed", "transposed", "reversed-transposed")


def convert(m: Matrix, convention: str) -> Matrix:
    """Re-express a matrix written under another basis/orientation convention.

    "reversed" reorders the basis as w_i = v_{n+1-i}; "transposed" reads rows
    as images of basis vectors.
    """
    j = _reversal(m.nrows)
    if convention == "direct":
        return m
    if convention == "reversed":
        return j @ m @ j
    if convention == "transposed":
        return m.T
    if convention == "reversed-transposed":
        return (j @ m @ j).T
    raise ValueError(f"unknown convention {convention!r}")


def matching_conventions(b: AlgebraBasis, family: Sequence[Matrix]) -> list[str]:
    """Conventions under which span(family) equals span(b)."""
    return [c for c in CONVENTIONS if b.same_span([convert(m, c) for m in family])]
