"""Exact rational linear algebra, the signed-permutation monoid and a float bridge.

Everything that feeds a rank, kernel or cohomology verdict is computed over
``Fraction``. Floating point only enters through the bridge at the bottom of
this module, which the invariant computations use for exponentials, norms and
eigenvalues.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
import csv
from dataclasses import dataclass
from fractions import Fraction
import io
import logging
import math
from typing import Any

import numpy as np
import numpy.typing as npt
import scipy.linalg

from .const import SYMMETRY_TOL
from .exceptions import (
    AsymmetricMatrixError,
    NonFiniteError,
    ShapeError,
    SingularMatrixError,
)

_LOGGER = logging.getLogger(__name__)

Rational = Fraction
RationalLike = int | str | Fraction
RationalVector = tuple[Fraction, ...]
FloatMatrix = npt.NDArray[Any]


def to_rational(value: RationalLike) -> Fraction:
    """Convert an int, "p/q" text or Fraction to a Fraction."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rational entries")
    return Fraction(value)


@dataclass(frozen=True, slots=True)
class RationalMatrix:
    """Dense immutable matrix over the rationals."""

    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        """Validate the rectangular shape."""
        if self.rows < 0 or self.cols < 0:
            raise ShapeError(f"negative shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows:
            raise ShapeError(f"expected {self.rows} rows, got {len(self.entries)}")
        for row in self.entries:
            if len(row) != self.cols:
                raise ShapeError(f"expected {self.cols} columns, got {len(row)}")

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[RationalLike]], cols: int | None = None
    ) -> RationalMatrix:
        """Build a matrix from nested sequences."""
        entries = tuple(tuple(to_rational(x) for x in row) for row in rows)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        return cls(len(entries), cols, entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RationalMatrix:
        """Zero matrix."""
        zero = Fraction(0)
        return cls(rows, cols, tuple((zero,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, size: int) -> RationalMatrix:
        """Identity matrix."""
        return cls.diagonal([1] * size)

    @classmethod
    def diagonal(cls, values: Sequence[RationalLike]) -> RationalMatrix:
        """Diagonal matrix."""
        size = len(values)
        zero = Fraction(0)
        return cls(
            size,
            size,
            tuple(
                tuple(to_rational(values[i]) if i == j else zero for j in range(size))
                for i in range(size)
            ),
        )

    @classmethod
    def from_sparse(
        cls, rows: int, cols: int, items: dict[tuple[int, int], Fraction]
    ) -> RationalMatrix:
        """Build a matrix from a {(row, col): value} mapping."""
        data = [[Fraction(0)] * cols for _ in range(rows)]
        for (i, j), value in items.items():
            data[i][j] = value
        return cls(rows, cols, tuple(tuple(row) for row in data))

    @property
    def shape(self) -> tuple[int, int]:
        """Matrix shape."""
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        """Matrix is square."""
        return self.rows == self.cols

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        """Entry at (row, col)."""
        i, j = key
        return self.entries[i][j]

    def row(self, i: int) -> RationalVector:
        """Row i."""
        return self.entries[i]

    def column(self, j: int) -> RationalVector:
        """Column j."""
        return tuple(row[j] for row in self.entries)

    def nonzero(self) -> Iterable[tuple[int, int, Fraction]]:
        """Nonzero entries as (row, col, value)."""
        for i, row in enumerate(self.entries):
            for j, value in enumerate(row):
                if value:
                    yield i, j, value

    def is_zero(self) -> bool:
        """All entries vanish."""
        return not any(value for row in self.entries for value in row)

    def _check_same_shape(self, other: RationalMatrix) -> None:
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        """Entrywise sum."""
        self._check_same_shape(other)
        return RationalMatrix(
            self.rows,
            self.cols,
            tuple(
                tuple(a + b for a, b in zip(ra, rb, strict=True))
                for ra, rb in zip(self.entries, other.entries, strict=True)
            ),
        )

    def __sub__(self, other: RationalMatrix) -> RationalMatrix:
        """Entrywise difference."""
        return self + (-other)

    def __neg__(self) -> RationalMatrix:
        """Negation."""
        return self.scale(-1)

    def scale(self, factor: RationalLike) -> RationalMatrix:
        """Scalar multiple."""
        c = to_rational(factor)
        entries = tuple(tuple(c * x for x in row) for row in self.entries)
        return RationalMatrix(self.rows, self.cols, entries)

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        """Matrix product, skipping zero entries."""
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        other_rows = [
            [(j, value) for j, value in enumerate(row) if value]
            for row in other.entries
        ]
        result = []
        for row in self.entries:
            acc = [Fraction(0)] * other.cols
            for k, a in enumerate(row):
                if not a:
                    continue
                for j, b in other_rows[k]:
                    acc[j] += a * b
            result.append(tuple(acc))
        return RationalMatrix(self.rows, other.cols, tuple(result))

    def commutator(self, other: RationalMatrix) -> RationalMatrix:
        """[self, other] = self·other − other·self."""
        return self @ other - other @ self

    def transpose(self) -> RationalMatrix:
        """Transpose."""
        return RationalMatrix(
            self.cols,
            self.rows,
            tuple(tuple(row[j] for row in self.entries) for j in range(self.cols)),
        )

    def kron(self, other: RationalMatrix) -> RationalMatrix:
        """Kronecker product, self-index major."""
        rows = []
        for row_a in self.entries:
            for row_b in other.entries:
                rows.append(tuple(a * b for a in row_a for b in row_b))
        return RationalMatrix(
            self.rows * other.rows, self.cols * other.cols, tuple(rows)
        )

    def apply(self, vector: Sequence[Fraction]) -> RationalVector:
        """Matrix-vector product."""
        if len(vector) != self.cols:
            raise ShapeError(f"vector length {len(vector)} != {self.cols}")
        return tuple(
            sum((a * b for a, b in zip(row, vector, strict=True)), Fraction(0))
            for row in self.entries
        )

    def submatrix(self, rows: range, cols: range) -> RationalMatrix:
        """Contiguous block."""
        return RationalMatrix(
            len(rows),
            len(cols),
            tuple(tuple(self.entries[i][j] for j in cols) for i in rows),
        )

    def inverse(self) -> RationalMatrix:
        """Exact inverse by Gauss-Jordan elimination."""
        if not self.is_square():
            raise ShapeError(f"cannot invert non-square {self.shape}")
        n = self.rows
        work = [
            list(row) + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(self.entries)
        ]
        for c in range(n):
            pivot = next((i for i in range(c, n) if work[i][c]), None)
            if pivot is None:
                raise SingularMatrixError(f"matrix of size {n} is singular")
            work[c], work[pivot] = work[pivot], work[c]
            inv_p = 1 / work[c][c]
            work[c] = [x * inv_p for x in work[c]]
            for i in range(n):
                factor = work[i][c]
                if i != c and factor:
                    work[i] = [
                        x - factor * y for x, y in zip(work[i], work[c], strict=True)
                    ]
        return RationalMatrix(n, n, tuple(tuple(row[n:]) for row in work))

    def to_float(self) -> FloatMatrix:
        """Double-precision copy."""
        return np.array(
            [[float(x) for x in row] for row in self.entries], dtype=np.float64
        ).reshape(self.rows, self.cols)


def _integer_rows(M: RationalMatrix) -> list[list[int]]:
    """Scale each row by the lcm of its denominators; rank and kernel are unchanged."""
    rows = []
    for row in M.entries:
        scale = math.lcm(*(x.denominator for x in row)) if row else 1
        rows.append([int(x * scale) for x in row])
    return rows


def _bareiss_echelon(M: RationalMatrix) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form and its pivot columns.

    Pivots are chosen by smallest bit length among the candidate rows. Every
    entry stays a minor of the input, so the division by the previous pivot
    is exact.
    """
    work = _integer_rows(M)
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(M.cols):
        if r == M.rows:
            break
        candidates = [i for i in range(r, M.rows) if work[i][c]]
        if not candidates:
            continue
        p = min(candidates, key=lambda i: abs(work[i][c]).bit_length())
        work[r], work[p] = work[p], work[r]
        pivot_row = work[r]
        pivot = pivot_row[c]
        for i in range(r + 1, M.rows):
            row = work[i]
            lead = row[c]
            for j in range(c + 1, M.cols):
                row[j] = (pivot * row[j] - lead * pivot_row[j]) // prev
            row[c] = 0
        prev = pivot
        pivots.append(c)
        r += 1
    return work, pivots


def rank_exact(M: RationalMatrix) -> int:
    """Exact rank over the rationals."""
    _, pivots = _bareiss_echelon(M)
    _LOGGER.debug("rank_exact: shape=%s rank=%s", M.shape, len(pivots))
    return len(pivots)


def kernel_basis(M: RationalMatrix) -> list[RationalVector]:
    """Basis of the right null space."""
    echelon, pivots = _bareiss_echelon(M)
    rank = len(pivots)
    rref = [[Fraction(x) for x in echelon[k]] for k in range(rank)]
    for k in range(rank - 1, -1, -1):
        c = pivots[k]
        inv_p = 1 / rref[k][c]
        rref[k] = [x * inv_p for x in rref[k]]
        for i in range(k):
            factor = rref[i][c]
            if factor:
                rref[i] = [
                    x - factor * y for x, y in zip(rref[i], rref[k], strict=True)
                ]

    pivot_set = set(pivots)
    basis: list[RationalVector] = []
    for free in range(M.cols):
        if free in pivot_set:
            continue
        vector = [Fraction(0)] * M.cols
        vector[free] = Fraction(1)
        for k, c in enumerate(pivots):
            vector[c] = -rref[k][free]
        basis.append(tuple(vector))
    return basis


@dataclass(frozen=True, slots=True)
class SignedPermMatrix:
    """Element of the monoid of matrices with at most one ±1 per row and column.

    ``columns[j]`` is ``(row, sign)`` for the single entry of column j, or
    ``None`` for a zero column.
    """

    size: int
    columns: tuple[tuple[int, int] | None, ...]

    def __post_init__(self) -> None:
        """Validate monoid membership."""
        if len(self.columns) != self.size:
            raise ShapeError(f"expected {self.size} columns, got {len(self.columns)}")
        seen: set[int] = set()
        for entry in self.columns:
            if entry is None:
                continue
            row, sign = entry
            if not 0 <= row < self.size:
                raise ShapeError(f"row {row} out of range for size {self.size}")
            if sign not in (1, -1):
                raise ValueError(f"entry {sign} is not ±1")
            if row in seen:
                raise ValueError(f"row {row} holds more than one entry")
            seen.add(row)

    @classmethod
    def identity(cls, size: int) -> SignedPermMatrix:
        """Identity element."""
        return cls(size, tuple((j, 1) for j in range(size)))

    @classmethod
    def zero(cls, size: int) -> SignedPermMatrix:
        """Zero element."""
        return cls(size, (None,) * size)

    @classmethod
    def from_matrix(cls, M: RationalMatrix) -> SignedPermMatrix:
        """Recognise a dense matrix as a monoid element."""
        if not M.is_square():
            raise ShapeError(f"monoid elements are square, got {M.shape}")
        columns: list[tuple[int, int] | None] = [None] * M.cols
        for i, j, value in M.nonzero():
            if columns[j] is not None:
                raise ValueError(f"column {j} holds more than one entry")
            if value not in (1, -1):
                raise ValueError(f"entry {value} at ({i}, {j}) is not ±1")
            columns[j] = (i, int(value))
        return cls(M.rows, tuple(columns))

    def apply(self, col: int) -> tuple[int, int] | None:
        """Image of basis vector ``col`` as (row, sign)."""
        return self.columns[col]

    def is_zero(self) -> bool:
        """Element is the zero matrix."""
        return all(entry is None for entry in self.columns)

    def to_matrix(self) -> RationalMatrix:
        """Dense rational matrix."""
        return RationalMatrix.from_sparse(
            self.size,
            self.size,
            {
                (entry[0], j): Fraction(entry[1])
                for j, entry in enumerate(self.columns)
                if entry is not None
            },
        )

    def __matmul__(self, other: SignedPermMatrix) -> SignedPermMatrix:
        """Monoid product."""
        return monoid_product(self, other)


def monoid_product(A: SignedPermMatrix, B: SignedPermMatrix) -> SignedPermMatrix:
    """Product A·B, again a monoid element."""
    if A.size != B.size:
        raise ShapeError(f"monoid size mismatch {A.size} vs {B.size}")
    columns: list[tuple[int, int] | None] = []
    for entry in B.columns:
        if entry is None:
            columns.append(None)
            continue
        mid, sign_b = entry
        image = A.columns[mid]
        if image is None:
            columns.append(None)
        else:
            columns.append((image[0], sign_b * image[1]))
    return SignedPermMatrix(A.size, tuple(columns))


def as_float_matrix(M: FloatMatrix | RationalMatrix) -> FloatMatrix:
    """Validated 2-d float or complex array."""
    if isinstance(M, RationalMatrix):
        return M.to_float()
    array = np.asarray(M)
    if array.ndim != 2:
        raise ShapeError(f"expected a 2-d matrix, got shape {array.shape}")
    if not np.iscomplexobj(array):
        array = array.astype(np.float64, copy=False)
    if not np.all(np.isfinite(array)):
        raise NonFiniteError("matrix holds NaN or Inf entries")
    return array


def matrix_exponential(M: FloatMatrix | RationalMatrix) -> FloatMatrix:
    """exp(M) by scaling and squaring around a Padé core."""
    array = as_float_matrix(M)
    if array.shape[0] != array.shape[1]:
        raise ShapeError(f"exponential needs a square matrix, got {array.shape}")
    if array.shape[0] == 0:
        return array.copy()
    result: FloatMatrix = scipy.linalg.expm(array)
    return result


def spectral_norm(M: FloatMatrix | RationalMatrix) -> float:
    """Largest singular value."""
    array = as_float_matrix(M)
    if array.size == 0:
        return 0.0
    return float(np.linalg.norm(array, 2))


def symmetric_eigen_min(M: FloatMatrix | RationalMatrix) -> float:
    """Smallest eigenvalue of a symmetric matrix; +inf for the empty matrix."""
    array = as_float_matrix(M)
    if array.shape[0] != array.shape[1]:
        raise ShapeError(f"eigenvalues need a square matrix, got {array.shape}")
    if array.shape[0] == 0:
        return math.inf
    if np.iscomplexobj(array):
        if np.max(np.abs(array.imag)) > SYMMETRY_TOL:
            raise AsymmetricMatrixError("matrix has a nonzero imaginary part")
        array = array.real
    defect = float(np.max(np.abs(array - array.T)))
    if defect > SYMMETRY_TOL:
        raise AsymmetricMatrixError(f"symmetry defect {defect:.3e}")
    return float(np.linalg.eigvalsh(array)[0])


def format_rational(value: Fraction) -> str:
    """Exact text of a rational."""
    return str(value)


def format_float(value: float, digits: int = 12) -> str:
    """Float text with a fixed count of significant digits."""
    return f"{value:.{digits}g}"


def format_complex(value: complex, digits: int = 12) -> str:
    """Complex text as re+imi."""
    return f"{value.real:.{digits}g}{value.imag:+.{digits}g}i"


def matrix_to_csv(M: RationalMatrix | FloatMatrix, digits: int = 12) -> str:
    """Row-major CSV text of a rational, real or complex matrix."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    if isinstance(M, RationalMatrix):
        for row in M.entries:
            writer.writerow([format_rational(x) for x in row])
        return out.getvalue()

    array = as_float_matrix(M)
    is_complex = np.iscomplexobj(array)
    for row in array:
        if is_complex:
            writer.writerow([format_complex(complex(x), digits) for x in row])
        else:
            writer.writerow([format_float(float(x), digits) for x in row])
    return out.getvalue()


def matrix_from_csv(text: str) -> RationalMatrix:
    """Parse a CSV of rational or decimal entries."""
    rows = [
        [to_rational(cell.strip()) for cell in row]
        for row in csv.reader(io.StringIO(text))
        if row and any(cell.strip() for cell in row)
    ]
    if rows and any(len(row) != len(rows[0]) for row in rows):
        raise ShapeError("CSV matrix rows differ in length")
    return RationalMatrix.from_rows(rows)
