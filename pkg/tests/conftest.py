import random
from itertools import permutations

import pytest

from minorsums.exact_matrix import ExactMatrix


def leibniz_det(ring, grid):
    """Determinant straight from the permutation expansion."""
    n = len(grid)
    total = ring.zero
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = ring.one
        for i, p in enumerate(perm):
            term = ring.mul(term, grid[i][p])
        if inversions % 2:
            term = ring.neg(term)
        total = ring.add(total, term)
    return total


def cofactor_det(ring, grid):
    """Recursive first-row cofactor expansion, no memoization."""
    n = len(grid)
    if n == 0:
        return ring.one
    total = ring.zero
    for c in range(n):
        sub = [row[:c] + row[c + 1:] for row in grid[1:]]
        term = ring.mul(grid[0][c], cofactor_det(ring, sub))
        total = ring.add(total, term if c % 2 == 0 else ring.neg(term))
    return total


def random_matrix(rnd, ring, rows, cols, lo=-3, hi=3):
    return ExactMatrix.from_rows(ring, [[rnd.randint(lo, hi) for _ in range(cols)]
                                        for _ in range(rows)])


@pytest.fixture
def rnd():
    return random.Random(20261018)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
