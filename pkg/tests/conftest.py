"""Shared fixtures for the liebrst tests."""

from fractions import Fraction
import os
from pathlib import Path
import random

from hypothesis import settings, strategies as st
import pytest

from liebrst.algebra_core import (
    Representation,
    StructureTensor,
    abelian,
    builtin_family_ni2,
    heisenberg,
    sl2,
    so3,
)
from liebrst.exact_linalg import RationalMatrix
from liebrst.ghost_complex import GradedMatrix, grading_diagonal

FIXTURES = Path(__file__).parent / "fixtures"
NI2_GRID = [Fraction(i, 10) for i in range(11)]
NI2_REGULAR = [(1, 2, 1), (1, 3, 1), (2, 3, 1)]

settings.register_profile("default", deadline=None)
settings.register_profile(
    "ci", deadline=None, max_examples=settings.default.max_examples * 5
)
settings.load_profile("ci" if "CI" in os.environ else "default")


@pytest.fixture(name="fixtures_dir")
def fixture_fixtures_dir() -> Path:
    """Directory of shipped documents."""
    return FIXTURES


@pytest.fixture(name="ni2")
def fixture_ni2():
    """ni2 family with λ = μ = α = 1 on [0, 1]."""
    return builtin_family_ni2(1, 1, 1)


@pytest.fixture(name="ni2_regular")
def fixture_ni2_regular():
    """ni2 family with distinct weights at every t, λ = α = 1 and μ = 2."""
    return builtin_family_ni2(1, 2, 1)


@pytest.fixture(name="catalogue")
def fixture_catalogue() -> dict[str, StructureTensor]:
    """Builtin algebras by name."""
    return {
        "abelian1": abelian(1),
        "abelian2": abelian(2),
        "abelian3": abelian(3),
        "abelian4": abelian(4),
        "heisenberg": heisenberg(),
        "so3": so3(),
        "sl2": sl2(),
    }


def random_invertible(rng: random.Random, n: int, bound: int = 3) -> RationalMatrix:
    """Random invertible integer matrix: lower times unit upper times a permutation."""
    lower = [[Fraction(0)] * n for _ in range(n)]
    upper = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        lower[i][i] = Fraction(rng.choice([1, -1, 2]))
        upper[i][i] = Fraction(1)
        for j in range(i):
            lower[i][j] = Fraction(rng.randint(-bound, bound))
        for j in range(i + 1, n):
            upper[i][j] = Fraction(rng.randint(-bound, bound))
    perm = list(range(n))
    rng.shuffle(perm)
    P = RationalMatrix.from_rows(
        [[1 if perm[i] == j else 0 for j in range(n)] for i in range(n)]
    )
    return RationalMatrix.from_rows(lower) @ RationalMatrix.from_rows(upper) @ P


def random_square_zero(rng: random.Random, n: int = 1, dim_v: int = 4) -> GradedMatrix:
    """Odd square-zero operator on F ⊗ V with n ghosts.

    Q0 maps a random subset of odd basis vectors onto even ones and is then
    conjugated by a random even invertible matrix.
    """
    gamma = grading_diagonal(n, dim_v)
    even = [i for i, g in enumerate(gamma) if g > 0]
    odd = [i for i, g in enumerate(gamma) if g < 0]
    size = len(gamma)
    entries = [[Fraction(0)] * size for _ in range(size)]
    for row, col in zip(even, odd, strict=True):
        if rng.random() < 0.7:
            entries[row][col] = Fraction(rng.choice([1, -1, 2, 3]))
    q0 = RationalMatrix.from_rows(entries)
    block = [[Fraction(0)] * size for _ in range(size)]
    for indices in (even, odd):
        P = random_invertible(rng, len(indices))
        for i, row in enumerate(indices):
            for j, col in enumerate(indices):
                block[row][col] = P[i, j]
    S = RationalMatrix.from_rows(block)
    return GradedMatrix(n, dim_v, S @ q0 @ S.inverse())


square_zero_operators = st.builds(
    lambda seed, n, dim_v: random_square_zero(random.Random(seed), n, dim_v),
    st.integers(min_value=0, max_value=2**32),
    st.integers(min_value=1, max_value=3),
    st.integers(min_value=1, max_value=3),
)


def trivial_on(f: StructureTensor, dim_v: int = 1) -> Representation:
    """Zero matrices on a dim_v-dimensional module."""
    return Representation(dim_v, (RationalMatrix.zeros(dim_v, dim_v),) * f.dim)
