"""Structural analysis of a form: radical, center, centralizers, decomposition."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .forms import SymmetricForm, multi_indices, orthogonal_sum, transform
from .linalg import (
    Eliminator,
    Matrix,
    Poly,
    column_space,
    factor_coprime,
    minimal_polynomial,
    poly_gcdex,
    poly_product,
    solve,
)

log = logging.getLogger(__name__)


class NotInSpan(ArithmeticError):
    """An element expected to lie in a computed span does not."""


@dataclass(frozen=True)
class AlgebraBasis:
    """Linearly independent n x n matrices spanning a subspace of End(Q^n).

    ``kind`` is one of "center", "lie", "centralizer". ``regular`` is False
    when a center was computed for an irregular form.
    """

    dim_space: int
    members: tuple[Matrix, ...]
    kind: str
    regular: bool = True
    _vecs: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_vecs", tuple(m.vec() for m in self.members))

    @property
    def dim(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i) -> Matrix:
        return self.members[i]

    def coordinates(self, m: Matrix) -> tuple[Fraction, ...] | None:
        return solve(self._vecs, m.vec())

    def contains(self, m: Matrix) -> bool:
        return self.coordinates(m) is not None

    def combine(self, coeffs: Sequence) -> Matrix:
        out = Matrix.zeros(self.dim_space)
        for c, m in zip(coeffs, self.members):
            if c:
                out = out + m.scale(c)
        return out

    def same_span(self, other: "AlgebraBasis | Sequence[Matrix]") -> bool:
        others = list(other)
        return len(others) == self.dim and all(self.contains(m) for m in others) and (
            _rank([m.vec() for m in others]) == self.dim
        )


def _rank(vectors) -> int:
    if not vectors:
        return 0
    el = Eliminator(len(vectors[0]))
    for v in vectors:
        el.add(v)
    return el.rank


def span_basis(mats: Sequence[Matrix], n: int) -> list[Matrix]:
    """A basis of span(mats): the independent members, in order."""
    el = Eliminator(n * n)
    return [m for m in mats if el.add(m.vec())]


def _kernel_basis(rows, n: int) -> list[Matrix]:
    el = Eliminator(n * n)
    for r in rows:
        if r:
            el.add(r)
    return [Matrix.from_vec(v, n) for v in el.nullspace()]


def radical(f: SymmetricForm) -> list[tuple[Fraction, ...]]:
    """Basis of V-perp = {w : f(w, V, ..., V) = 0}."""
    n = f.dim
    el = Eliminator(n)
    for rest in multi_indices(n, f.degree - 1):
        el.add({a - 1: f[(a,) + rest] for a in range(1, n + 1) if f[(a,) + rest]})
    return el.nullspace()


def is_regular(f: SymmetricForm) -> bool:
    return not radical(f)


def center_equations(f: SymmetricForm):
    """Sparse rows in the n^2 unknowns F[a][b] (row-major) cutting out the center."""
    n = f.dim
    for i, j in combinations(range(1, n + 1), 2):
        for tail in multi_indices(n, f.degree - 2):
            row: dict[int, Fraction] = {}
            for a in range(1, n + 1):
                u = f[(a, j) + tail]
                if u:
                    k = (a - 1) * n + (i - 1)
                    row[k] = row.get(k, 0) + u
                w = f[(i, a) + tail]
                if w:
                    k = (a - 1) * n + (j - 1)
                    row[k] = row.get(k, 0) - w
            yield {k: v for k, v in row.items() if v}


def center(f: SymmetricForm) -> AlgebraBasis:
    """Basis of Cent(f) = {F : f(F v1, v2, ...) = f(v1, F v2, ...)}."""
    regular = is_regular(f)
    if not regular:
        log.warning("center requested for an irregular form; result is flagged")
    members = _kernel_basis(center_equations(f), f.dim)
    return AlgebraBasis(f.dim, tuple(members), "center", regular)


def is_central(f: SymmetricForm, m: Matrix) -> bool:
    """Direct check of the center identity on all basis tuples."""
    n = f.dim
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for tail in multi_indices(n, f.degree - 2):
                lhs = sum((m[a - 1, i - 1] * f[(a, j) + tail] for a in range(1, n + 1)), Fraction(0))
                rhs = sum((m[a - 1, j - 1] * f[(i, a) + tail] for a in range(1, n + 1)), Fraction(0))
                if lhs != rhs:
                    return False
    return True


def centralizer(basis: AlgebraBasis | Sequence[Matrix], n: int | None = None) -> AlgebraBasis:
    """All matrices commuting with every member of ``basis``."""
    members = list(basis)
    if n is None:
        n = basis.dim_space if isinstance(basis, AlgebraBasis) else members[0].nrows
    rows = []
    for b in members:
        for i in range(n):
            for j in range(n):
                row: dict[int, Fraction] = {}
                # (M b)[i][j] - (b M)[i][j]
                for k in range(n):
                    if b[k, j]:
                        idx = i * n + k
                        row[idx] = row.get(idx, 0) + b[k, j]
                    if b[i, k]:
                        idx = k * n + j
                        row[idx] = row.get(idx, 0) - b[i, k]
                rows.append({k: v for k, v in row.items() if v})
    return AlgebraBasis(n, tuple(_kernel_basis(rows, n)), "centralizer")


def is_maximal_center(c: AlgebraBasis) -> bool:
    """True iff the (commutative) algebra equals its own centralizer."""
    return centralizer(c).dim == c.dim


# ------------------------------------------------------------ decomposition


@dataclass
class Component:
    form: SymmetricForm
    embedding: Matrix  # n x k, columns span the component inside Q^n


@dataclass
class Decomposition:
    components: list[Component]
    basis: Matrix  # block-diagonalizing change of basis, columns = concatenated embeddings
    indecomposable: bool  # no rational idempotent found: "indecomposable over Q"

    @property
    def forms(self) -> list[SymmetricForm]:
        return [c.form for c in self.components]


def _central_candidates(c: AlgebraBasis):
    yield from c.members
    for i, j in combinations(range(c.dim), 2):
        for coef in (1, -1, 2):
            yield c.members[i] + c.members[j].scale(coef)


def find_idempotent(c: AlgebraBasis) -> Matrix | None:
    """A central idempotent other than 0 and I, by splitting minimal polynomials."""
    n = c.dim_space
    for z in _central_candidates(c):
        factors = factor_coprime(minimal_polynomial(z))
        if len(factors) < 2:
            continue
        g, h = factors[0], poly_product(factors[1:])
        _, t, one = poly_gcdex(g, h)
        assert one == Poly([1])
        e = (t * h)(z)
        if not e.is_zero() and e != Matrix.identity(n):
            return e
    return None


def _split(f: SymmetricForm) -> list[Component]:
    n = f.dim
    e = find_idempotent(center(f))
    if e is None:
        return [Component(f, Matrix.identity(n))]
    u = Matrix.from_columns(column_space(e))
    w = Matrix.from_columns(column_space(Matrix.identity(n) - e))
    f1, f2 = transform(f, u), transform(f, w)
    p = Matrix.from_columns(u.cols() + w.cols())
    if transform(f, p) != orthogonal_sum(f1, f2):
        raise ArithmeticError("central idempotent did not split the form orthogonally")
    out = []
    for sub, emb in ((f1, u), (f2, w)):
        for comp in _split(sub):
            out.append(Component(comp.form, emb @ comp.embedding))
    return out


def decompose(f: SymmetricForm) -> Decomposition:
    """Split a regular form into an orthogonal sum via central idempotents over Q."""
    if not is_regular(f):
        raise ValueError("decompose requires a regular form")
    comps = _split(f)
    basis = Matrix.from_columns([c for comp in comps for c in comp.embedding.cols()])
    return Decomposition(comps, basis, indecomposable=len(comps) == 1)


# ------------------------------------------------------------ 2-regularity


def _is_two_null(f: SymmetricForm, w: Sequence[Fraction]) -> bool:
    n = f.dim
    support = [a for a in range(1, n + 1) if w[a - 1]]
    for tail in multi_indices(n, f.degree - 2):
        s = Fraction(0)
        for a in support:
            for b in support:
                v = f[(a, b) + tail]
                if v:
                    s += w[a - 1] * w[b - 1] * v
        if s:
            return False
    return True


def two_regular_falsifier(f: SymmetricForm, budget: int = 2000) -> tuple[Fraction, ...] | None:
    """A nonzero w with f(w, w, V, ..., V) = 0, or None if none was found.

    None is inconclusive: it does not certify 2-regularity.
    """
    n = f.dim
    tried = 0
    for a in range(n):
        w = tuple(Fraction(int(i == a)) for i in range(n))
        if _is_two_null(f, w):
            return w
        tried += 1
    height = 1
    while tried < budget:
        for raw in product(range(-height, height + 1), repeat=n):
            if max(map(abs, raw)) != height:
                continue
            first = next(x for x in raw if x)
            if first < 0:  # w and -w are equivalent
                continue
            w = tuple(Fraction(x) for x in raw)
            if _is_two_null(f, w):
                return w
            tried += 1
            if tried >= budget:
                return None
        height += 1
    return None
