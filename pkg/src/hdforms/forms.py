"""Symmetric d-linear forms stored sparsely on sorted multi-indices.

The stored value at a sorted index ``(i_1, ..., i_d)`` (1-based) is the tensor
entry ``Theta(e_{i_1}, ..., e_{i_d})``, not a polynomial coefficient.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import factorial, prod
from typing import Mapping, Sequence

from .linalg import Matrix, Q, format_rational, parse_rational


class FormParseError(ValueError):
    """Raised for malformed form or polynomial input."""


def multi_indices(n: int, d: int):
    """All sorted d-multisets of {1..n}, lexicographic."""
    return combinations_with_replacement(range(1, n + 1), d)


def multiplicities(idx: Sequence[int], n: int) -> tuple[int, ...]:
    m = [0] * n
    for i in idx:
        m[i - 1] += 1
    return tuple(m)


def _multinomial(mult: Sequence[int]) -> int:
    return factorial(sum(mult)) // prod(factorial(k) for k in mult)


@lru_cache(maxsize=None)
def distinct_permutations(idx: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    if len(idx) <= 1:
        return (idx,)
    out = []
    seen = set()
    for k, a in enumerate(idx):
        if a in seen:
            continue
        seen.add(a)
        rest = idx[:k] + idx[k + 1:]
        out.extend((a,) + p for p in distinct_permutations(rest))
    return tuple(out)


class SymmetricForm:
    """A symmetric d-linear form on Q^n."""

    __slots__ = ("dim", "degree", "entries")

    def __init__(self, dim: int, degree: int, entries: Mapping | None = None):
        if dim < 1:
            raise ValueError("dimension must be >= 1")
        if degree < 2:
            raise ValueError("degree must be >= 2")
        self.dim = dim
        self.degree = degree
        clean: dict[tuple[int, ...], Fraction] = {}
        for idx, val in (entries or {}).items():
            key = tuple(sorted(idx))
            if len(key) != degree:
                raise ValueError(f"multi-index {idx} has length {len(key)}, expected {degree}")
            if key[0] < 1 or key[-1] > dim:
                raise ValueError(f"multi-index {idx} out of range 1..{dim}")
            v = Q(val)
            if v:
                clean[key] = clean.get(key, Fraction(0)) + v
        self.entries = {k: v for k, v in sorted(clean.items()) if v}

    def __getitem__(self, idx) -> Fraction:
        return self.entries.get(tuple(sorted(idx)), Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, SymmetricForm):
            return NotImplemented
        return (self.dim, self.degree, self.entries) == (other.dim, other.degree, other.entries)

    def __hash__(self):
        return hash((self.dim, self.degree, tuple(self.entries.items())))

    def __repr__(self):
        body = ", ".join(f"{k}: {format_rational(v)}" for k, v in self.entries.items())
        return f"SymmetricForm(n={self.dim}, d={self.degree}, {{{body}}})"

    def is_zero(self) -> bool:
        return not self.entries

    def scale(self, c) -> "SymmetricForm":
        c = Q(c)
        return SymmetricForm(self.dim, self.degree, {k: c * v for k, v in self.entries.items()})


class HomoPoly:
    """Homogeneous polynomial: exponent vector -> coefficient."""

    __slots__ = ("dim", "degree", "terms")

    def __init__(self, dim: int, degree: int, terms: Mapping | None = None):
        self.dim = dim
        self.degree = degree
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != dim or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp} for {dim} variables")
            if sum(exp) != degree:
                raise ValueError(f"polynomial is not homogeneous of degree {degree}: term {exp}")
            c = Q(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
        self.terms = {k: v for k, v in sorted(clean.items(), reverse=True) if v}

    @classmethod
    def from_terms(cls, dim: int, terms: Mapping) -> "HomoPoly":
        """Build from terms, inferring the degree; rejects non-homogeneous input."""
        degrees = {sum(e) for e, c in terms.items() if Q(c)}
        if len(degrees) > 1:
            raise ValueError(f"polynomial is not homogeneous (degrees {sorted(degrees)})")
        if not degrees:
            raise ValueError("cannot infer the degree of the zero polynomial")
        return cls(dim, degrees.pop(), terms)

    def __eq__(self, other):
        if not isinstance(other, HomoPoly):
            return NotImplemented
        return (self.dim, self.degree, self.terms) == (other.dim, other.degree, other.terms)

    def __repr__(self):
        parts = []
        for exp, c in self.terms.items():
            mono = "*".join(
                f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exp) if e
            )
            parts.append(f"{format_rational(c)}*{mono}")
        return "HomoPoly(" + (" + ".join(parts) or "0") + ")"

    def __call__(self, x: Sequence) -> Fraction:
        x = [Q(t) for t in x]
        return sum(
            (c * prod(x[i] ** e for i, e in enumerate(exp)) for exp, c in self.terms.items()),
            Fraction(0),
        )


def polarize(p: HomoPoly) -> SymmetricForm:
    """The symmetric d-linear form whose diagonal is ``p``."""
    if p.degree < 2:
        raise ValueError("polarization needs degree >= 2")
    entries = {}
    for exp, c in p.terms.items():
        idx = tuple(i + 1 for i, e in enumerate(exp) for _ in range(e))
        entries[idx] = c / _multinomial(exp)
    return SymmetricForm(p.dim, p.degree, entries)


def associated_poly(f: SymmetricForm) -> HomoPoly:
    """v -> f(v, ..., v) as a homogeneous polynomial."""
    terms = {}
    for idx, v in f.entries.items():
        m = multiplicities(idx, f.dim)
        terms[m] = v * _multinomial(m)
    return HomoPoly(f.dim, f.degree, terms)


def evaluate(f: SymmetricForm, vectors: Sequence[Sequence]) -> Fraction:
    if len(vectors) != f.degree:
        raise ValueError(f"expected {f.degree} vectors, got {len(vectors)}")
    ws = [tuple(Q(x) for x in w) for w in vectors]
    if any(len(w) != f.dim for w in ws):
        raise ValueError(f"vectors must have length {f.dim}")
    total = Fraction(0)
    for idx, val in f.entries.items():
        s = Fraction(0)
        for perm in distinct_permutations(idx):
            t = Fraction(1)
            for w, i in zip(ws, perm):
                x = w[i - 1]
                if not x:
                    break
                t *= x
            else:
                s += t
        if s:
            total += val * s
    return total


def transform(f: SymmetricForm, m: Matrix) -> SymmetricForm:
    """The form (w_1..w_d) -> f(m w_1, ..., m w_d).

    ``m`` may be n x k, in which case the result is a form on Q^k (restriction
    to the span of m's columns).
    """
    if m.nrows != f.dim:
        raise ValueError(f"matrix has {m.nrows} rows, form has dimension {f.dim}")
    cols = m.cols()
    entries = {}
    for idx in multi_indices(m.ncols, f.degree):
        v = evaluate(f, [cols[i - 1] for i in idx])
        if v:
            entries[idx] = v
    return SymmetricForm(m.ncols, f.degree, entries)


def is_isometry(f: SymmetricForm, m: Matrix) -> bool:
    if m.shape != (f.dim, f.dim):
        return False
    return m.is_invertible() and transform(f, m) == f


def orthogonal_sum(f1: SymmetricForm, f2: SymmetricForm) -> SymmetricForm:
    if f1.degree != f2.degree:
        raise ValueError(f"degree mismatch: {f1.degree} vs {f2.degree}")
    n1 = f1.dim
    entries = dict(f1.entries)
    for idx, v in f2.entries.items():
        entries[tuple(i + n1 for i in idx)] = v
    return SymmetricForm(n1 + f2.dim, f1.degree, entries)


# ------------------------------------------------------------------ JSON


def form_to_json(f: SymmetricForm) -> dict:
    return {
        "dim": f.dim,
        "degree": f.degree,
        "entries": [
            {"idx": list(idx), "value": format_rational(v)} for idx, v in f.entries.items()
        ],
    }


def _field(obj, name, kind):
    if not isinstance(obj, dict) or name not in obj:
        raise FormParseError(f"missing field {name!r}")
    val = obj[name]
    if kind is int and (not isinstance(val, int) or isinstance(val, bool)):
        raise FormParseError(f"field {name!r} must be an integer")
    if kind is list and not isinstance(val, list):
        raise FormParseError(f"field {name!r} must be a list")
    return val


def form_from_json(obj) -> SymmetricForm:
    """Strict parser for the form JSON schema; raises FormParseError."""
    if isinstance(obj, (str, bytes)):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise FormParseError(f"malformed JSON: {exc}") from None
    n = _field(obj, "dim", int)
    d = _field(obj, "degree", int)
    if n < 1:
        raise FormParseError("dim must be >= 1")
    if d < 2:
        raise FormParseError("degree must be >= 2")
    entries = {}
    for e in _field(obj, "entries", list):
        idx = _field(e, "idx", list)
        if any(not isinstance(i, int) or isinstance(i, bool) for i in idx):
            raise FormParseError(f"multi-index {idx} must contain integers")
        if len(idx) != d:
            raise FormParseError(f"multi-index {idx} has length {len(idx)}, expected {d}")
        if any(i < 1 or i > n for i in idx):
            raise FormParseError(f"multi-index {idx} out of range 1..{n}")
        if list(idx) != sorted(idx):
            raise FormParseError(f"unsorted multi-index {idx}")
        key = tuple(idx)
        if key in entries:
            raise FormParseError(f"duplicate multi-index {idx}")
        try:
            v = parse_rational(_field(e, "value", str))
        except ValueError as exc:
            raise FormParseError(str(exc)) from None
        if not v:
            raise FormParseError(f"zero value at multi-index {idx} (omit zero entries)")
        entries[key] = v
    return SymmetricForm(n, d, entries)


def poly_to_json(p: HomoPoly) -> dict:
    return {
        "dim": p.dim,
        "degree": p.degree,
        "terms": [{"exp": list(e), "coeff": format_rational(c)} for e, c in p.terms.items()],
    }


def poly_from_json(obj) -> HomoPoly:
    if isinstance(obj, (str, bytes)):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise FormParseError(f"malformed JSON: {exc}") from None
    n = _field(obj, "dim", int)
    terms = {}
    for t in _field(obj, "terms", list):
        exp = tuple(_field(t, "exp", list))
        if any(not isinstance(e, int) or isinstance(e, bool) for e in exp):
            raise FormParseError(f"exponent vector {list(exp)} must contain integers")
        if exp in terms:
            raise FormParseError(f"duplicate exponent vector {list(exp)}")
        try:
            terms[exp] = parse_rational(_field(t, "coeff", str))
        except ValueError as exc:
            raise FormParseError(str(exc)) from None
    try:
        if "degree" in obj:
            return HomoPoly(n, _field(obj, "degree", int), terms)
        return HomoPoly.from_terms(n, terms)
    except ValueError as exc:
        raise FormParseError(str(exc)) from None
