import random
import sys
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import strategies as st

from hdforms.forms import SymmetricForm
from hdforms.linalg import Matrix

small_q = st.fractions(min_value=-6, max_value=6, max_denominator=4)


def rand_q(rng, height=5):
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def rand_matrix(rng, n, m=None, height=5):
    m = n if m is None else m
    return Matrix([[rand_q(rng, height) for _ in range(m)] for _ in range(n)])


def rand_invertible(rng, n, height=4):
    while True:
        mat = rand_matrix(rng, n, height=height)
        if mat.is_invertible():
            return mat


def rand_vector(rng, n, height=5):
    return tuple(rand_q(rng, height) for _ in range(n))


def dense_value(f: SymmetricForm, vectors):
    """Brute-force oracle: sum over all n^d index tuples."""
    total = Fraction(0)
    for tup in product(range(1, f.dim + 1), repeat=f.degree):
        coef = f[tup]
        if coef:
            t = coef
            for w, i in zip(vectors, tup):
                t *= Fraction(w[i - 1])
            total += t
    return total


@pytest.fixture
def rng():
    return random.Random(20261015)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(results[num])
    passed = sum(line.startswith("[PASS]") for line in results.values())
    terminalreporter.write_line(f"{passed}/{len(results)} criteria pass")
