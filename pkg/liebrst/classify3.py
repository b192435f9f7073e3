"""Behr parameters (n, a) of three-dimensional brackets and their Bianchi type.

f_ij^k = ε_ijl n^{lk} + δ_i^k a_j − δ_j^k a_i with n symmetric and n·a = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import logging
from typing import Any

from .algebra_core import StructureTensor, require_lie
from .common import BianchiType
from .const import RPT_A, RPT_A_FLAG, RPT_H, RPT_LABEL, RPT_N, RPT_RANK, RPT_SIGNATURE
from .exact_linalg import (
    RationalLike,
    RationalMatrix,
    format_rational,
    rank_exact,
    to_rational,
)
from .exceptions import PreconditionError, ShapeError

_LOGGER = logging.getLogger(__name__)


def levi_civita(i: int, j: int, k: int) -> int:
    """ε_ijk on 0-based indices."""
    return (i - j) * (j - k) * (k - i) // 2


@dataclass(frozen=True, slots=True)
class BehrData:
    """Symmetric 3×3 matrix n and vector a."""

    n: RationalMatrix
    a: tuple[Fraction, Fraction, Fraction]

    def __post_init__(self) -> None:
        """Validate shapes and symmetry of n."""
        if self.n.shape != (3, 3) or len(self.a) != 3:
            raise ShapeError("Behr data needs a 3x3 matrix and a 3-vector")
        if self.n != self.n.transpose():
            raise PreconditionError("Behr matrix n must be symmetric")

    @classmethod
    def from_values(
        cls, n: list[list[RationalLike]], a: list[RationalLike]
    ) -> BehrData:
        """Behr data from plain rows and a vector."""
        x, y, z = (to_rational(v) for v in a)
        return cls(RationalMatrix.from_rows(n), (x, y, z))

    @property
    def satisfies_constraint(self) -> bool:
        """n·a = 0."""
        return not any(self.n.apply(self.a))


def extract_na(f: StructureTensor) -> BehrData:
    """Invert the parameterization.

    a_i = ½ f_ki^k and n^{mk} = ¼(ε^{mij} f_ij^k + ε^{kij} f_ij^m).
    """
    if f.dim != 3:
        raise ShapeError(f"Behr parameters need dimension 3, got {f.dim}")
    require_lie(f)
    r = range(3)
    a = tuple(sum((f[k, i, k] for k in r), Fraction(0)) / 2 for i in r)

    def contraction(m: int, k: int) -> Fraction:
        return sum(
            (levi_civita(m, i, j) * f[i, j, k] for i in r for j in r), Fraction(0)
        )

    n = RationalMatrix.from_rows(
        [[(contraction(m, k) + contraction(k, m)) / 4 for k in r] for m in r]
    )
    return BehrData(n, (a[0], a[1], a[2]))


def assemble_from_na(data: BehrData) -> StructureTensor:
    """Structure tensor of (n, a); raises PreconditionError if n·a ≠ 0."""
    if not data.satisfies_constraint:
        raise PreconditionError("Behr data violates n·a = 0")
    r = range(3)
    n, a = data.n, data.a
    components = tuple(
        tuple(
            tuple(
                sum((levi_civita(i, j, h) * n[h, k] for h in r), Fraction(0))
                + (a[j] if i == k else 0)
                - (a[i] if j == k else 0)
                for k in r
            )
            for j in r
        )
        for i in r
    )
    return StructureTensor(3, components)


@dataclass(frozen=True, slots=True)
class BianchiLabel:
    """Rank and inertia of n, whether a vanishes, and the resulting type."""

    rank: int
    signature: tuple[int, int, int]
    a_zero: bool
    label: BianchiType
    h: Fraction | None = None

    def __str__(self) -> str:
        """Type with its parameter when it has one."""
        if self.h is None:
            return f"type {self.label}"
        return f"type {self.label} (h={format_rational(self.h)})"

    def data(self) -> dict[str, Any]:
        """Report data."""
        return {
            RPT_RANK: self.rank,
            RPT_SIGNATURE: list(self.signature),
            RPT_A_FLAG: self.a_zero,
            RPT_LABEL: str(self.label),
            RPT_H: None if self.h is None else format_rational(self.h),
        }


def _sign_changes(coefficients: list[Fraction]) -> int:
    signs = [c > 0 for c in coefficients if c]
    return sum(1 for x, y in zip(signs, signs[1:]) if x != y)


def _char_poly(n: RationalMatrix) -> tuple[Fraction, Fraction, Fraction]:
    """Trace, sum of principal 2x2 minors and determinant."""
    c1 = n[0, 0] + n[1, 1] + n[2, 2]
    c2 = (
        n[0, 0] * n[1, 1] - n[0, 1] * n[1, 0]
        + n[0, 0] * n[2, 2] - n[0, 2] * n[2, 0]
        + n[1, 1] * n[2, 2] - n[1, 2] * n[2, 1]
    )
    c3 = (
        n[0, 0] * (n[1, 1] * n[2, 2] - n[1, 2] * n[2, 1])
        - n[0, 1] * (n[1, 0] * n[2, 2] - n[1, 2] * n[2, 0])
        + n[0, 2] * (n[1, 0] * n[2, 1] - n[1, 1] * n[2, 0])
    )
    return c1, c2, c3


def inertia(n: RationalMatrix) -> tuple[int, int, int]:
    """(positive, negative, zero) eigenvalue counts of a symmetric 3x3 matrix.

    All roots of x³ − c1x² + c2x − c3 are real, so Descartes' rule is exact.
    """
    c1, c2, c3 = _char_poly(n)
    zero = 3 - rank_exact(n)
    positive = _sign_changes([Fraction(1), -c1, c2, -c3])
    negative = _sign_changes([Fraction(-1), -c1, -c2, -c3])
    return positive, negative, zero


def bianchi_signature(data: BehrData) -> BianchiLabel:
    """Bianchi type of (n, a) from the Behr table."""
    rank = rank_exact(data.n)
    p, q, z = inertia(data.n)
    a_zero = not any(data.a)
    definite = p == 0 or q == 0
    h: Fraction | None = None
    if a_zero:
        label = {
            0: BianchiType.I,
            1: BianchiType.II,
            2: BianchiType.VII_0 if definite else BianchiType.VI_0,
            3: BianchiType.IX if definite else BianchiType.VIII,
        }[rank]
    elif rank == 0:
        label = BianchiType.V
    elif rank == 1:
        label = BianchiType.IV
    elif rank == 2:
        _, c2, _ = _char_poly(data.n)
        h = sum((x * x for x in data.a), Fraction(0)) / c2
        if definite:
            label = BianchiType.VII_H
        elif h == -1:
            label = BianchiType.III
        else:
            label = BianchiType.VI_H
    else:
        raise PreconditionError("nondegenerate n admits no nonzero a with n·a = 0")
    _LOGGER.debug(
        "bianchi: rank=%s inertia=%s a_zero=%s -> %s", rank, (p, q, z), a_zero, label
    )
    return BianchiLabel(rank, (p, q, z), a_zero, label, h)


def classify_tensor(f: StructureTensor) -> tuple[BehrData, BianchiLabel]:
    """Behr parameters and Bianchi type of a three-dimensional bracket."""
    data = extract_na(f)
    return data, bianchi_signature(data)


def behr_data(data: BehrData) -> dict[str, Any]:
    """Report data for (n, a)."""
    return {
        RPT_N: [[format_rational(x) for x in data.n.row(i)] for i in range(3)],
        RPT_A: [format_rational(x) for x in data.a],
    }
