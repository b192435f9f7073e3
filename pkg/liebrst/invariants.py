"""Heat-kernel invariants of deformation families of BRST operators.

Q(λ)² = 0 throughout, so every heat factor e^{-sQ²} is the identity and the
regularized traces reduce to finite-dimensional graded traces. The numeric
stage runs in double precision; ranks and nilpotency stay exact.
"""

from __future__ import annotations

import asyncio
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
import logging
import math
from typing import Any

import numpy as np

from .algebra_core import (
    DeformationFamily,
    Representation,
    StructureTensor,
    adjoint_matrices,
    trivial_representation,
)
from .common import IndexMethod, Parity, VertexPreset
from .const import (
    DEFAULT_HYPOTHESIS_MARGIN,
    DEFAULT_QUAD_ORDER,
    DEFAULT_SERIES_TOL,
    DEFAULT_WORKERS,
    DIFF_QUOTIENT_RATIO_SLACK,
    DIFF_QUOTIENT_STEPS,
    IMAG_TOL,
    MIN_QUAD_ORDER,
    PARITY_TOL,
    RPT_A,
    RPT_B,
    RPT_B_BOUND,
    RPT_B_EMIN,
    RPT_BLOCKS_1,
    RPT_BLOCKS_2,
    RPT_CONVERGED,
    RPT_DEVIATIONS,
    RPT_ERROR,
    RPT_H1,
    RPT_H2,
    RPT_H3,
    RPT_H4,
    RPT_H5,
    RPT_INDEX,
    RPT_LAMBDA,
    RPT_M,
    RPT_MAX_INDEX_DEVIATION,
    RPT_MAX_W_NORM,
    RPT_METHOD,
    RPT_NILPOTENT,
    RPT_ODD,
    RPT_OK,
    RPT_ORDER,
    RPT_RANK,
    RPT_RANK_CONSTANT,
    RPT_ROWS,
    RPT_SEPARATIONS,
    RPT_SYMMETRY_DEFECT,
    RPT_TOTAL_DIM,
    RPT_VALUE,
    SERIES_MAX_TERMS,
)
from .exact_linalg import (
    FloatMatrix,
    RationalMatrix,
    matrix_exponential,
    rank_exact,
    spectral_norm,
    symmetric_eigen_min,
)
from .exceptions import DomainError, PreconditionError, ShapeError
from .ghost_complex import (
    GradedMatrix,
    assemble_brst,
    build_brst,
    creation_matrix,
    ghost_number_matrix,
    grading_diagonal,
    nilpotency_check,
)

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class RepresentationRule:
    """How the module follows the family: fixed matrices, or ad of f(λ)."""

    representation: Representation | None = None

    @classmethod
    def adjoint(cls) -> RepresentationRule:
        """Adjoint of f(λ) at every λ."""
        return cls(None)

    @classmethod
    def fixed(cls, representation: Representation) -> RepresentationRule:
        """The same matrices at every λ."""
        return cls(representation)

    @property
    def is_adjoint(self) -> bool:
        """Rule is adjoint-at-λ."""
        return self.representation is None

    def at(self, f: StructureTensor) -> Representation:
        """Representation used with the tensor f."""
        if self.representation is None:
            return adjoint_matrices(f)
        return self.representation

    def linear_part(self, df: StructureTensor) -> Representation:
        """λ-derivative of the representation given the tensor derivative."""
        if self.representation is None:
            return adjoint_matrices(df)
        return trivial_representation(df, self.representation.dim_v)


def brst_at(
    family: DeformationFamily,
    rule: RepresentationRule,
    lam: Fraction,
    validate: bool = True,
) -> GradedMatrix:
    """BRST operator of the family at λ."""
    f = family.at(lam)
    rho = rule.at(f)
    if validate:
        return build_brst(f, rho)
    return assemble_brst(f, rho)


def brst_derivative_at(
    family: DeformationFamily, rule: RepresentationRule, lam: Fraction
) -> RationalMatrix:
    """Exact dQ/dλ; Q is linear in (f, t) so this is Q of the derivatives."""
    df = family.derivative().at(lam)
    return assemble_brst(df, rule.linear_part(df)).q


def _check_in_domain(family: DeformationFamily, *values: Fraction) -> None:
    for value in values:
        if not family.contains(value):
            raise DomainError(f"{family.parameter}={value} outside the family domain")


def perturbation(
    family: DeformationFamily,
    rule: RepresentationRule,
    lam: Fraction,
    lam0: Fraction,
) -> RationalMatrix:
    """W = Q(λ) − Q(λ0), exactly."""
    _check_in_domain(family, lam, lam0)
    return (
        brst_at(family, rule, lam, validate=False).q
        - brst_at(family, rule, lam0, validate=False).q
    )


@dataclass(frozen=True, slots=True, eq=False)
class VertexOperator:
    """Operator on F ⊗ V with a declared parity under γ."""

    label: str
    matrix: FloatMatrix
    parity: Parity

    def validate(self, gamma: Sequence[int]) -> None:
        """Check shape and that γaγ = ±a per the declared parity."""
        size = len(gamma)
        if self.matrix.shape != (size, size):
            raise ShapeError(
                f"vertex {self.label} has shape {self.matrix.shape}, need {size}"
            )
        g = np.asarray(gamma, dtype=np.float64)
        conjugated = g[:, None] * self.matrix * g[None, :]
        expected = self.matrix if self.parity == Parity.EVEN else -self.matrix
        defect = float(np.max(np.abs(conjugated - expected))) if size else 0.0
        if defect > PARITY_TOL:
            raise PreconditionError(
                f"vertex {self.label} is not {self.parity.name.lower()} "
                f"(defect {defect:.3e})"
            )

    def scaled(self, factor: complex) -> VertexOperator:
        """Scalar multiple with the same parity."""
        label = f"{factor}*{self.label}"
        return VertexOperator(label, self.matrix * factor, self.parity)


def infer_parity(matrix: FloatMatrix, gamma: Sequence[int]) -> Parity:
    """Parity of a matrix under γ."""
    g = np.asarray(gamma, dtype=np.float64)
    conjugated = g[:, None] * matrix * g[None, :]
    if np.max(np.abs(conjugated - matrix), initial=0.0) <= PARITY_TOL:
        return Parity.EVEN
    if np.max(np.abs(conjugated + matrix), initial=0.0) <= PARITY_TOL:
        return Parity.ODD
    raise PreconditionError("matrix is neither even nor odd under the grading")


def vertex_preset(
    preset: VertexPreset,
    n: int,
    dim_v: int,
    ghost: int | None = None,
    matrix: FloatMatrix | RationalMatrix | None = None,
) -> VertexOperator:
    """Vertex from a named preset; ghost is 0-based for the c:J preset."""
    size = (1 << n) * dim_v
    gamma = grading_diagonal(n, dim_v)
    if preset == VertexPreset.IDENTITY:
        return VertexOperator(str(preset), np.eye(size), Parity.EVEN)
    if preset == VertexPreset.GHOST_NUMBER:
        return VertexOperator(
            str(preset), ghost_number_matrix(n, dim_v).to_float(), Parity.EVEN
        )
    if preset == VertexPreset.GRADING:
        diagonal = np.diag(np.asarray(gamma, dtype=np.float64))
        return VertexOperator(str(preset), diagonal, Parity.EVEN)
    if preset == VertexPreset.CREATION:
        if ghost is None:
            raise PreconditionError("c:J vertex needs a ghost index")
        fock = creation_matrix(ghost, n).to_matrix()
        dense = fock.kron(RationalMatrix.identity(dim_v)).to_float()
        return VertexOperator(f"c:{ghost + 1}", dense, Parity.ODD)
    if matrix is None:
        raise PreconditionError("file vertex needs a matrix")
    if isinstance(matrix, RationalMatrix):
        dense = matrix.to_float()
    else:
        dense = np.asarray(matrix)
    if dense.shape != (size, size):
        raise ShapeError(
            f"vertex matrix {dense.shape} does not act on dimension {size}"
        )
    return VertexOperator(str(preset), dense, infer_parity(dense, gamma))


def graded_derivative(Q: GradedMatrix | FloatMatrix, a: VertexOperator) -> FloatMatrix:
    """da = Qa − (−1)^{|a|} aQ."""
    q = Q.q.to_float() if isinstance(Q, GradedMatrix) else Q
    result: FloatMatrix = q @ a.matrix - a.parity.sign() * (a.matrix @ q)
    return result


@dataclass(frozen=True, slots=True)
class IndexResult:
    """Equivariant index value with provenance."""

    value: complex
    method: IndexMethod
    order: int
    error: float
    converged: bool = True

    def data(self) -> dict[str, Any]:
        """Report data."""
        return {
            RPT_VALUE: [self.value.real, self.value.imag],
            RPT_METHOD: str(self.method),
            RPT_ORDER: self.order,
            RPT_ERROR: self.error,
            RPT_CONVERGED: self.converged,
        }


def _require_index_inputs(Q: GradedMatrix, a: VertexOperator) -> np.ndarray:
    if not nilpotency_check(Q):
        raise PreconditionError("index formulas need Q² = 0")
    gamma = Q.grading()
    a.validate(gamma)
    return np.asarray(gamma, dtype=np.float64)


def _report_imaginary(value: complex, a: VertexOperator) -> None:
    real_even = np.isrealobj(a.matrix) and a.parity == Parity.EVEN
    if real_even and abs(value.imag) > IMAG_TOL:
        _LOGGER.warning(
            "index of real even vertex %s has imaginary part %.3e", a.label, value.imag
        )


def _gauss_hermite_trace(
    gamma_a: FloatMatrix, da: FloatMatrix, order: int, sign: int
) -> complex:
    nodes, weights = np.polynomial.hermite.hermgauss(order)
    total = 0j
    for x, w in zip(nodes, weights, strict=True):
        total += w * np.trace(gamma_a @ matrix_exponential(1j * sign * x * da))
    return complex(total / math.sqrt(math.pi))


def equivariant_index(
    Q: GradedMatrix,
    a: VertexOperator,
    order: int = DEFAULT_QUAD_ORDER,
    sign: int = 1,
) -> IndexResult:
    """(1/√π)∫ e^{-t²} Tr(γ a e^{it·da}) dt by Gauss-Hermite quadrature.

    The error estimate is the change when the order is doubled. ``sign=-1``
    evaluates the e^{-it·da} integrand instead.
    """
    if order < MIN_QUAD_ORDER:
        raise PreconditionError(f"quadrature order {order} < {MIN_QUAD_ORDER}")
    gamma = _require_index_inputs(Q, a)
    gamma_a = gamma[:, None] * a.matrix
    da = graded_derivative(Q, a)
    value = _gauss_hermite_trace(gamma_a, da, order, sign)
    refined = _gauss_hermite_trace(gamma_a, da, 2 * order, sign)
    _report_imaginary(value, a)
    return IndexResult(value, IndexMethod.QUADRATURE, order, abs(value - refined))


def index_series_oracle(
    Q: GradedMatrix, a: VertexOperator, tol: float = DEFAULT_SERIES_TOL
) -> IndexResult:
    """Σ_m (−1)^m Tr(γ a (da)^{2m}) / (4^m m!), the Gaussian even moments.

    (2m−1)!!/(2^m (2m)!) equals 1/(4^m m!). Terms stop once the bound
    ‖da‖^{2m}·‖a‖·N/(4^m m!) drops below tol.
    """
    gamma = _require_index_inputs(Q, a)
    gamma_a = gamma[:, None] * a.matrix
    da = graded_derivative(Q, a)
    size = Q.total_dim
    norm_da = spectral_norm(da)
    norm_a = spectral_norm(a.matrix)
    power = np.eye(size, dtype=np.complex128)
    da2 = da @ da
    total = 0j
    coefficient = 1.0
    for m in range(SERIES_MAX_TERMS):
        if m > 0:
            coefficient /= 4.0 * m
            power = power @ da2
        bound = norm_da ** (2 * m) * norm_a * size * coefficient
        if m > 0 and bound < tol:
            _report_imaginary(total, a)
            return IndexResult(total, IndexMethod.SERIES, m, bound)
        total += (-1) ** m * coefficient * complex(np.trace(gamma_a @ power))
    _LOGGER.warning("index series did not converge in %s terms", SERIES_MAX_TERMS)
    return IndexResult(total, IndexMethod.SERIES, SERIES_MAX_TERMS, math.inf, False)


def jlo_density(
    Q: GradedMatrix, vertices: Sequence[VertexOperator], s: Sequence[float]
) -> FloatMatrix:
    """a_0 e^{-s_0Q²} da_1 e^{-s_1Q²} ... da_n e^{-s_nQ²}."""
    if len(s) != len(vertices):
        raise ShapeError(f"{len(s)} simplex coordinates for {len(vertices)} vertices")
    q = Q.q.to_float()
    q2 = q @ q
    out: FloatMatrix = vertices[0].matrix @ matrix_exponential(-s[0] * q2)
    for vertex, s_j in zip(vertices[1:], s[1:], strict=True):
        out = out @ graded_derivative(q, vertex) @ matrix_exponential(-s_j * q2)
    return out


def jlo_component(
    Q: GradedMatrix, vertices: Sequence[VertexOperator], beta: float
) -> complex:
    """(β^n/n!)·Tr(γ a_0 da_1 ... da_n), the JLO component when Q² = 0."""
    if beta <= 0:
        raise PreconditionError(f"β must be positive, got {beta}")
    if not vertices:
        raise PreconditionError("JLO component needs at least a_0")
    gamma = _require_index_inputs(Q, vertices[0])
    for vertex in vertices[1:]:
        vertex.validate(Q.grading())
    product_matrix = vertices[0].matrix
    for vertex in vertices[1:]:
        product_matrix = product_matrix @ graded_derivative(Q, vertex)
    n = len(vertices) - 1
    trace = complex(np.sum(gamma * np.diagonal(product_matrix)))
    return beta**n / math.factorial(n) * trace


@dataclass(frozen=True, slots=True)
class JordanProfile:
    """Jordan blocks of a square-zero operator."""

    total_dim: int
    rank: int

    @property
    def blocks_2(self) -> int:
        """Number of 2×2 blocks."""
        return self.rank

    @property
    def blocks_1(self) -> int:
        """Number of 1×1 blocks."""
        return self.total_dim - 2 * self.rank

    def data(self) -> dict[str, Any]:
        """Report data."""
        return {
            RPT_TOTAL_DIM: self.total_dim,
            RPT_RANK: self.rank,
            RPT_BLOCKS_2: self.blocks_2,
            RPT_BLOCKS_1: self.blocks_1,
        }


def jordan_profile(Q: GradedMatrix | RationalMatrix) -> JordanProfile:
    """Block profile of a square-zero operator, determined by its rank."""
    q = Q.q if isinstance(Q, GradedMatrix) else Q
    if not (q @ q).is_zero():
        raise PreconditionError("Jordan profile needs Q² = 0")
    return JordanProfile(q.rows, rank_exact(q))


@dataclass(frozen=True, slots=True)
class HypothesesReport:
    """Verdicts and witnesses for the five regularity hypotheses over a grid."""

    grid: tuple[Fraction, ...]
    reference: Fraction
    nilpotent: bool
    odd: bool
    symmetry_defect: float
    max_w_norm: float
    a: float
    b: float
    b_bound: float
    b_emin: float
    separations: tuple[float, ...]
    deviations: tuple[float, ...]
    h4_ok: bool
    M: float

    @property
    def h1_ok(self) -> bool:
        """Nilpotent and γ-odd at every grid point."""
        return self.nilpotent and self.odd

    @property
    def h2_ok(self) -> bool:
        """W(λ) bounded on the grid."""
        return math.isfinite(self.max_w_norm)

    @property
    def h3_ok(self) -> bool:
        """Finite b dominating sup ‖W‖²."""
        return math.isfinite(self.b) and self.b >= self.max_w_norm**2

    @property
    def h5_ok(self) -> bool:
        """Finite bound on d_λ a."""
        return math.isfinite(self.M)

    @property
    def ok(self) -> bool:
        """All hypotheses pass; the symmetry defect is a diagnostic only."""
        return self.h1_ok and self.h2_ok and self.h3_ok and self.h4_ok and self.h5_ok

    def data(self) -> dict[str, Any]:
        """Report data."""
        return {
            RPT_H1: {
                RPT_OK: self.h1_ok,
                RPT_NILPOTENT: self.nilpotent,
                RPT_ODD: self.odd,
                RPT_SYMMETRY_DEFECT: self.symmetry_defect,
            },
            RPT_H2: {RPT_OK: self.h2_ok, RPT_MAX_W_NORM: self.max_w_norm},
            RPT_H3: {
                RPT_OK: self.h3_ok,
                RPT_A: self.a,
                RPT_B: self.b,
                RPT_B_BOUND: self.b_bound,
                RPT_B_EMIN: self.b_emin,
            },
            RPT_H4: {
                RPT_OK: self.h4_ok,
                RPT_SEPARATIONS: list(self.separations),
                RPT_DEVIATIONS: list(self.deviations),
            },
            RPT_H5: {RPT_OK: self.h5_ok, RPT_M: self.M},
        }


def _check_grid(family: DeformationFamily, grid: Sequence[Fraction]) -> None:
    if not grid:
        raise PreconditionError("empty grid")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise PreconditionError("grid must be strictly ascending")
    _check_in_domain(family, *grid)


def _first_separation(family: DeformationFamily, grid: Sequence[Fraction]) -> Fraction:
    if len(grid) > 1:
        return min(b - a for a, b in zip(grid, grid[1:])) / 2
    if family.domain is not None and family.domain[1] > family.domain[0]:
        return (family.domain[1] - family.domain[0]) / 10
    return Fraction(1, 10)


def _difference_quotient_deviations(
    family: DeformationFamily,
    rule: RepresentationRule,
    grid: Sequence[Fraction],
    operators: dict[Fraction, RationalMatrix],
) -> tuple[tuple[float, ...], tuple[float, ...]]:
    h0 = _first_separation(family, grid)
    derivatives = {lam: brst_derivative_at(family, rule, lam) for lam in grid}
    separations = []
    deviations = []
    for step in range(DIFF_QUOTIENT_STEPS):
        h = h0 / (1 << step)
        worst = 0.0
        for lam in grid:
            for other in (lam + h, lam - h):
                if not family.contains(other):
                    continue
                q_other = brst_at(family, rule, other, validate=False).q
                quotient = (q_other - operators[lam]).scale(1 / (other - lam))
                worst = max(worst, spectral_norm(quotient - derivatives[lam]))
        separations.append(float(h))
        deviations.append(worst)
    _LOGGER.debug("hypothesis 4: deviations=%s", deviations)
    return tuple(separations), tuple(deviations)


def _converges_linearly(
    separations: Sequence[float], deviations: Sequence[float]
) -> bool:
    """Deviation shrinks at least linearly from the first to the last separation."""
    first, last = deviations[0], deviations[-1]
    if last <= 1e-12:
        return True
    ratio = separations[-1] / separations[0]
    return last <= first * ratio * (1 + DIFF_QUOTIENT_RATIO_SLACK)


def check_hypotheses(
    family: DeformationFamily,
    rule: RepresentationRule,
    grid: Sequence[Fraction],
    a: VertexOperator,
    margin: float = DEFAULT_HYPOTHESIS_MARGIN,
) -> HypothesesReport:
    """Check hypotheses 1-5 on the grid, with Q = Q(grid[0]) as reference.

    ``b_bound`` is max(sup ‖W‖², |min eig sym(QW + WQ)|) as measured; the
    reported ``b`` adds ``margin`` on top so that h3 holds strictly. A
    constant family has b_bound = 0 and b = margin.
    """
    _check_grid(family, grid)
    grid = tuple(grid)
    lam0 = grid[0]
    operators = {lam: brst_at(family, rule, lam, validate=False) for lam in grid}
    reference = operators[lam0]
    a.validate(reference.grading())

    nilpotent = all(nilpotency_check(Q) for Q in operators.values())
    odd = all(Q.is_odd() for Q in operators.values())
    symmetry_defect = max(
        spectral_norm(Q.q - Q.q.transpose()) for Q in operators.values()
    )
    if nilpotent and symmetry_defect > 0:
        _LOGGER.debug(
            "hypothesis 1: nilpotent Q is not symmetric (defect %.3e)", symmetry_defect
        )

    q0 = reference.q.to_float()
    w_norms = []
    emins = []
    d_a_norms = []
    for lam, Q in operators.items():
        q = Q.q.to_float()
        w_norms.append(spectral_norm(q - q0))
        anti = q @ q0 + q0 @ q
        emins.append(symmetric_eigen_min((anti + anti.T) / 2))
        d_a_norms.append(spectral_norm(graded_derivative(q, a)))
        _LOGGER.debug("hypotheses: λ=%s ‖W‖=%.6g", lam, w_norms[-1])
    max_w = max(w_norms)
    b_emin = abs(min(emins))
    b_bound = max(max_w**2, b_emin)

    separations, deviations = _difference_quotient_deviations(
        family, rule, grid, {lam: Q.q for lam, Q in operators.items()}
    )
    h4_ok = _converges_linearly(separations, deviations)
    report = HypothesesReport(
        grid=grid,
        reference=lam0,
        nilpotent=nilpotent,
        odd=odd,
        symmetry_defect=symmetry_defect,
        max_w_norm=max_w,
        a=0.0,
        b=b_bound + margin,
        b_bound=b_bound,
        b_emin=b_emin,
        separations=separations,
        deviations=deviations,
        h4_ok=h4_ok,
        M=max(d_a_norms),
    )
    if not report.ok:
        _LOGGER.warning("hypotheses failed: %s", report.data())
    return report


@dataclass(frozen=True, slots=True)
class ScanRow:
    """One grid point of a deformation scan."""

    lam: Fraction
    rank: int
    index: IndexResult
    nilpotent: bool
    odd: bool

    def data(self) -> dict[str, Any]:
        """Report data."""
        return {
            RPT_LAMBDA: str(self.lam),
            RPT_RANK: self.rank,
            RPT_INDEX: self.index.data(),
            RPT_NILPOTENT: self.nilpotent,
            RPT_ODD: self.odd,
        }


@dataclass(frozen=True, slots=True)
class ScanTable:
    """Rows ordered by λ and the summary over them."""

    rows: tuple[ScanRow, ...]
    total_dim: int = field(default=0)

    @property
    def max_index_deviation(self) -> float:
        """max |𝔷(λ) − 𝔷(λ0)|."""
        z0 = self.rows[0].index.value
        return max(abs(row.index.value - z0) for row in self.rows)

    @property
    def rank_constant(self) -> bool:
        """rank Q(λ) is the same at every grid point."""
        return len({row.rank for row in self.rows}) == 1

    def data(self) -> dict[str, Any]:
        """Report data."""
        return {
            RPT_TOTAL_DIM: self.total_dim,
            RPT_ROWS: [row.data() for row in self.rows],
            RPT_MAX_INDEX_DEVIATION: self.max_index_deviation,
            RPT_RANK_CONSTANT: self.rank_constant,
        }


def _scan_row(
    family: DeformationFamily,
    rule: RepresentationRule,
    lam: Fraction,
    a: VertexOperator,
    order: int,
) -> tuple[ScanRow, int]:
    Q = brst_at(family, rule, lam)
    row = ScanRow(
        lam=lam,
        rank=rank_exact(Q.q),
        index=equivariant_index(Q, a, order),
        nilpotent=nilpotency_check(Q),
        odd=Q.is_odd(),
    )
    _LOGGER.debug("scan: λ=%s rank=%s index=%s", lam, row.rank, row.index.value)
    return row, Q.total_dim


async def async_deformation_scan(
    family: DeformationFamily,
    rule: RepresentationRule,
    grid: Sequence[Fraction],
    a: VertexOperator,
    order: int = DEFAULT_QUAD_ORDER,
    workers: int = DEFAULT_WORKERS,
) -> ScanTable:
    """Evaluate the scan rows concurrently; rows come back in grid order."""
    _check_grid(family, grid)
    loop = asyncio.get_running_loop()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        tasks = [
            loop.run_in_executor(pool, _scan_row, family, rule, lam, a, order)
            for lam in grid
        ]
        results = await asyncio.gather(*tasks)
    table = ScanTable(tuple(row for row, _ in results), results[0][1])
    if not table.rank_constant:
        _LOGGER.warning("scan: rank of Q(λ) varies over the grid")
    return table


def deformation_scan(
    family: DeformationFamily,
    rule: RepresentationRule,
    grid: Sequence[Fraction],
    a: VertexOperator,
    order: int = DEFAULT_QUAD_ORDER,
    workers: int = DEFAULT_WORKERS,
) -> ScanTable:
    """Synchronous wrapper around async_deformation_scan."""
    loop = asyncio.new_event_loop()
    try:
        return loop.run_until_complete(
            async_deformation_scan(family, rule, grid, a, order, workers)
        )
    finally:
        loop.close()
