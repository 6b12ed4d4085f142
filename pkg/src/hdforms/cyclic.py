"""Reichstein's cyclic forms, the grading element, and the Witt basis.

Matrices follow the column-as-image convention throughout, so the shift
psi (v_i -> v_{i-1}) has ones on the superdiagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .forms import SymmetricForm, multi_indices
from .lie import in_lie, lie_algebra, twisted_bracket
from .linalg import Matrix, commutator, format_rational, independent
from .structure import AlgebraBasis, NotInSpan


@dataclass(frozen=True)
class CyclicData:
    n: int
    d: int
    form: SymmetricForm
    psi: Matrix
    D: Matrix
    X: tuple[Matrix, ...]  # X_0 .. X_{n-2}

    def x(self, r: int) -> Matrix:
        """X_r, with X_r = 0 for r >= n - 1."""
        if r < len(self.X):
            return self.X[r]
        return Matrix.zeros(self.n)


def shift(n: int) -> Matrix:
    return Matrix([[int(j == i + 1) for j in range(n)] for i in range(n)])


def reichstein_form(n: int, d: int) -> SymmetricForm:
    target = (d - 1) * n + 1
    return SymmetricForm(n, d, {idx: 1 for idx in multi_indices(n, d) if sum(idx) == target})


def grading_element(n: int, d: int) -> Matrix:
    return Matrix.diag([n - 1 - d * (n - i) for i in range(1, n + 1)])


def witt_element(n: int, d: int, r: int) -> Matrix:
    """(D/d + r(d-1)/d I) psi^r."""
    coef = Matrix.diag(
        [Fraction(n - 1 - d * (n - i), d) + Fraction(r * (d - 1), d) for i in range(1, n + 1)]
    )
    return coef @ (shift(n) ** r)


def reichstein(n: int, d: int) -> CyclicData:
    if n < 2 or d < 3:
        raise ValueError("Reichstein forms need n >= 2 and d >= 3")
    return CyclicData(
        n,
        d,
        reichstein_form(n, d),
        shift(n),
        grading_element(n, d),
        tuple(witt_element(n, d, r) for r in range(n - 1)),
    )


def _proportionality(m: Matrix, base: Matrix) -> Fraction | None:
    """c with m == c * base, or None."""
    for a, b in zip(m.vec(), base.vec()):
        if b:
            c = a / b
            return c if m == base.scale(c) else None
    return Fraction(0) if m.is_zero() else None


def verify_grading(c: CyclicData) -> dict:
    """Check D in L(n, d), D diagonal, its trace, and [D, psi] = d psi.

    ``bracket_D_psi_coefficient`` records the c with [D, psi] = c psi as
    composed linear maps (it comes out as -d).
    """
    n, d = c.n, c.d
    expected_trace = Fraction(n * (n - 1)) * (1 - Fraction(d, 2))
    coef = _proportionality(commutator(c.D, c.psi), c.psi)
    report = {
        "D_in_lie": in_lie(c.form, c.D),
        "D_diagonal": c.D.is_diagonal(),
        "trace": format_rational(c.D.trace()),
        "trace_formula": c.D.trace() == expected_trace,
        "bracket_D_psi_coefficient": None if coef is None else format_rational(coef),
        "bracket_D_psi": coef == d,
    }
    report["ok"] = all(report[k] for k in ("D_in_lie", "D_diagonal", "trace_formula", "bracket_D_psi"))
    return report


def witt_check(c: CyclicData) -> dict:
    """Check the X basis against [X_r, X_s] = (s - r) X_{r+s} (0 if r + s >= n - 1).

    Also reports which sign convention the brackets actually follow:
    "s-r", "r-s" (the same truncated Witt algebra under X_r -> -X_r) or
    "neither".
    """
    n, d = c.n, c.d
    failures = []
    indep = independent([x.vec() for x in c.X])
    if not indep:
        failures.append("X_0..X_{n-2} are linearly dependent")
    for r, x in enumerate(c.X):
        if not in_lie(c.form, x):
            failures.append(f"X_{r} not in the Lie algebra")
    plus = minus = True
    for r in range(n - 1):
        for s in range(n - 1):
            br = commutator(c.X[r], c.X[s])
            top = c.x(r + s)
            if br != top.scale(s - r):
                plus = False
                failures.append(f"[X_{r}, X_{s}] != ({s - r}) X_{r + s}")
            if br != top.scale(r - s):
                minus = False
    e_n = tuple(Fraction(int(i == n - 1)) for i in range(n))
    for r, x in enumerate(c.X):
        target = [Fraction(0)] * n
        target[n - r - 1] = Fraction(n - 1 - r, d)
        if x @ e_n != tuple(target):
            failures.append(f"X_{r} v_n != ({n - 1 - r}/{d}) v_{n - r}")
    return {
        "n": n,
        "d": d,
        "independent": indep,
        "bracket_rule": "s-r" if plus else ("r-s" if minus else "neither"),
        "witt_relations": "all-pass" if not failures else failures,
        "ok": not failures,
    }


def iota(n: int) -> Matrix:
    """V_n -> V_{n+1}, v_i -> v_i."""
    return Matrix([[int(i == j) for j in range(n)] for i in range(n + 1)])


def pi(n: int) -> Matrix:
    """V_{n+1} -> V_n, v_i -> v_{i-1}."""
    return Matrix([[int(j == i + 1) for j in range(n + 1)] for i in range(n)])


def embed_rho(f: Matrix, n: int, d: int, check: bool = True) -> Matrix:
    """iota . f . pi, mapping L(n, d) (psi-twisted) into L(n+1, d)."""
    if f.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} matrix")
    if check and not in_lie(reichstein_form(n, d), f):
        raise NotInSpan("embed_rho needs a member of L(n, d)")
    return iota(n) @ f @ pi(n)


def embedding_report(n: int, d: int) -> dict:
    """Check L(n+1, d) = rho(L(n, d)) + Q D_{n+1} and the bracket intertwining."""
    small = lie_algebra(reichstein_form(n, d))
    big = lie_algebra(reichstein_form(n + 1, d))
    psi = shift(n)
    images = [embed_rho(m, n, d) for m in small]
    pieces = images + [grading_element(n + 1, d)]
    intertwines = all(
        embed_rho(twisted_bracket(a, b, psi), n, d, check=False)
        == commutator(embed_rho(a, n, d, check=False), embed_rho(b, n, d, check=False))
        for a in small
        for b in small
    )
    return {
        "dim_small": small.dim,
        "dim_big": big.dim,
        "images_in_lie": all(big.contains(m) for m in images),
        "images_nilpotent": all(m.is_upper_triangular(strict=True) for m in images),
        "direct_sum": independent([m.vec() for m in pieces]) and len(pieces) == big.dim,
        "spans": big.same_span(pieces),
        "intertwines": intertwines,
    }


def find_cyclic_element(c: AlgebraBasis):
    """(psi', v) with psi' central and v cyclic for psi', or None.

    Sweeps the basis members, then pairwise sums with coefficients 1, -1, 2,
    against the vectors e_n, e_1 and (1, ..., 1).
    """
    n = c.dim_space
    candidates = list(c.members)
    for i in range(c.dim):
        for j in range(i + 1, c.dim):
            for coef in (1, -1, 2):
                candidates.append(c.members[i] + c.members[j].scale(coef))
    one = Fraction(1)
    vectors = [
        tuple(one if i == n - 1 else Fraction(0) for i in range(n)),
        tuple(one if i == 0 else Fraction(0) for i in range(n)),
        tuple(one for _ in range(n)),
    ]
    for z in candidates:
        for v in vectors:
            krylov = [v]
            for _ in range(n - 1):
                krylov.append(z @ krylov[-1])
            if independent(krylov):
                return z, v
    return None
