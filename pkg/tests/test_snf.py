import itertools
import random
from math import gcd

import pytest

from grpdtest import snf


def determinantal_divisors(M):
    """Invariant factors from gcds of k x k minors; an oracle independent of
    the elimination code."""
    rows, cols = len(M), len(M[0]) if M else 0
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in itertools.combinations(range(rows), k):
            for cs in itertools.combinations(range(cols), k):
                g = gcd(g, snf.determinant([[M[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


@pytest.mark.parametrize("M,factors", [
    ([[2, 0], [0, 3]], [1, 6]),
    ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], [2, 6, 12]),
    ([[0, 0], [0, 0]], []),
    ([[1, 1]], [1]),
    ([[2], [2]], [2]),
])
def test_known_invariant_factors(M, factors):
    assert snf.invariant_factors(M) == factors
    assert determinantal_divisors(M) == factors


def test_against_determinantal_divisors():
    rng = random.Random(11)
    for _ in range(300):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        M = [[rng.randint(-6, 6) for _ in range(c)] for _ in range(r)]
        assert snf.invariant_factors(M) == determinantal_divisors(M), M


def test_decomposition_and_rank():
    M = [[4, 6], [6, 9], [2, 3]]
    U, D, V = snf.smith_normal_form(M)
    assert snf.matmul(snf.matmul(U, M), V) == D
    assert snf.is_smith_form(D)
    assert snf.rank(M) == 1


def test_zero_rows():
    U, D, V = snf.smith_normal_form([], ncols=3)
    assert D == [] and V == snf.identity(3)
    assert snf.invariant_factors([], 3) == []


def test_determinant():
    assert snf.determinant([[1, 2], [3, 4]]) == -2
    assert snf.determinant([[2, 0, 0], [0, 3, 0], [0, 0, 4]]) == 24
    assert snf.determinant(snf.identity(5)) == 1
