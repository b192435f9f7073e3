"""Equivariant index, JLO component, hypotheses and scan tests."""

import asyncio
from fractions import Fraction
import random

from conftest import (
    NI2_GRID,
    random_invertible,
    random_square_zero,
    square_zero_operators,
    trivial_on,
)
from hypothesis import given, settings, strategies as st
import numpy as np
import pytest

from liebrst import invariants
from liebrst.algebra_core import (
    DeformationFamily,
    StructureTensor,
    adjoint_matrices,
    constant_family,
    so3,
)
from liebrst.common import IndexMethod, Parity, VertexPreset
from liebrst.const import DEFAULT_HYPOTHESIS_MARGIN
from liebrst.exact_linalg import RationalMatrix, spectral_norm
from liebrst.exceptions import DomainError, PreconditionError, ShapeError
from liebrst.ghost_complex import (
    GradedMatrix,
    assemble_brst,
    cohomology_dimensions,
    grading_diagonal,
    nilpotency_check,
)
from liebrst.invariants import (
    RepresentationRule,
    VertexOperator,
    async_deformation_scan,
    brst_at,
    brst_derivative_at,
    check_hypotheses,
    deformation_scan,
    equivariant_index,
    graded_derivative,
    index_series_oracle,
    infer_parity,
    jlo_component,
    jlo_density,
    jordan_profile,
    perturbation,
    vertex_preset,
)

ADJOINT = RepresentationRule.adjoint()


class _JumpFamily(DeformationFamily):
    """ni2 with every structure constant doubled from t = 1/2 on."""

    def at(self, t):
        f = DeformationFamily.at(self, t)
        return f if Fraction(t) < Fraction(1, 2) else f.scale(2)


def _random_even_vertex(rng: np.random.Generator, Q: GradedMatrix) -> VertexOperator:
    gamma = np.asarray(Q.grading(), dtype=np.float64)
    raw = rng.standard_normal((Q.total_dim, Q.total_dim))
    even = np.where(np.equal.outer(gamma, gamma), raw, 0.0)
    a = VertexOperator("random", even, Parity.EVEN)
    norm = np.linalg.norm(graded_derivative(Q, a), 2)
    return a.scaled(1 / max(norm, 1.0))


def test_index_of_identity_vanishes(ni2):
    for t in NI2_GRID:
        Q = brst_at(ni2, ADJOINT, t)
        a = vertex_preset(VertexPreset.IDENTITY, Q.n, Q.dim_v)
        result = equivariant_index(Q, a)
        assert abs(result.value) < 1e-12
        assert result.method == IndexMethod.QUADRATURE


def test_index_with_zero_operator_is_graded_trace():
    Q = GradedMatrix(2, 2, RationalMatrix.zeros(8, 8))
    gamma = np.asarray(Q.grading(), dtype=np.float64)
    rng = np.random.default_rng(3)
    a = VertexOperator("diag", np.diag(rng.standard_normal(8)), Parity.EVEN)
    expected = float(np.sum(gamma * np.diagonal(a.matrix)))
    assert equivariant_index(Q, a).value == pytest.approx(expected, abs=1e-12)
    assert index_series_oracle(Q, a).value == pytest.approx(expected, abs=1e-12)


def test_grading_vertex_index_counts_dimension():
    Q = GradedMatrix(2, 1, RationalMatrix.zeros(4, 4))
    a = vertex_preset(VertexPreset.GRADING, 2, 1)
    assert equivariant_index(Q, a).value == pytest.approx(4.0)


def test_quadrature_matches_series_on_ni2(ni2):
    for t in NI2_GRID:
        Q = brst_at(ni2, ADJOINT, t)
        a = vertex_preset(VertexPreset.GHOST_NUMBER, Q.n, Q.dim_v)
        quad = equivariant_index(Q, a)
        series = index_series_oracle(Q, a, tol=1e-13)
        assert series.converged
        assert abs(quad.value - series.value) < 1e-9


def test_quadrature_matches_series_on_random_square_zero():
    rng = random.Random(5)
    nprng = np.random.default_rng(5)
    for _ in range(20):
        Q = random_square_zero(rng)
        a = _random_even_vertex(nprng, Q)
        quad = equivariant_index(Q, a)
        series = index_series_oracle(Q, a, tol=1e-13)
        assert series.method == IndexMethod.SERIES
        assert abs(quad.value - series.value) < 1e-9
        assert quad.error < 1e-9


def test_index_sign_symmetry():
    Q = random_square_zero(random.Random(9))
    a = _random_even_vertex(np.random.default_rng(9), Q)
    plus = equivariant_index(Q, a)
    minus = equivariant_index(Q, a, sign=-1)
    assert abs(plus.value - minus.value) < 1e-10


def test_index_preconditions(ni2):
    Q = brst_at(ni2, ADJOINT, Fraction(0))
    a = vertex_preset(VertexPreset.GHOST_NUMBER, Q.n, Q.dim_v)
    with pytest.raises(PreconditionError):
        equivariant_index(Q, a, order=1)
    odd_square = GradedMatrix(1, 1, RationalMatrix.from_rows([[0, 1], [1, 0]]))
    with pytest.raises(PreconditionError):
        equivariant_index(odd_square, vertex_preset(VertexPreset.IDENTITY, 1, 1))
    with pytest.raises(ShapeError):
        equivariant_index(Q, vertex_preset(VertexPreset.IDENTITY, 1, 1))


def test_vertex_parity_validation():
    gamma = grading_diagonal(2, 1)
    creation = vertex_preset(VertexPreset.CREATION, 2, 1, ghost=0)
    assert creation.label == "c:1"
    assert creation.parity == Parity.ODD
    creation.validate(gamma)
    with pytest.raises(PreconditionError):
        VertexOperator("bad", creation.matrix, Parity.EVEN).validate(gamma)
    assert infer_parity(creation.matrix, gamma) == Parity.ODD
    with pytest.raises(PreconditionError):
        infer_parity(creation.matrix + np.eye(4), gamma)
    with pytest.raises(PreconditionError):
        vertex_preset(VertexPreset.CREATION, 2, 1)


def test_file_vertex_infers_parity():
    matrix = RationalMatrix.diagonal([1, 2, 3, 4])
    a = vertex_preset(VertexPreset.FILE, 2, 1, matrix=matrix)
    assert a.parity == Parity.EVEN
    with pytest.raises(ShapeError):
        vertex_preset(VertexPreset.FILE, 2, 2, matrix=matrix)


def test_graded_derivative_of_ghost_number(ni2):
    Q = brst_at(ni2, ADJOINT, Fraction(1, 2))
    a = vertex_preset(VertexPreset.GHOST_NUMBER, Q.n, Q.dim_v)
    np.testing.assert_allclose(graded_derivative(Q, a), -Q.q.to_float())


def test_jlo_component_matches_simplex_integral():
    rng = random.Random(2)
    nprng = np.random.default_rng(2)
    Q = random_square_zero(rng)
    gamma = np.asarray(Q.grading(), dtype=np.float64)
    vertices = [_random_even_vertex(nprng, Q) for _ in range(3)]
    beta = 0.7
    # Q² = 0: the density is constant and the simplex has volume 1/2
    samples = nprng.dirichlet(np.ones(3), size=16)
    integral = np.mean(
        [np.sum(gamma * np.diagonal(jlo_density(Q, vertices, s))) for s in samples]
    ) / 2
    assert jlo_component(Q, vertices, beta) == pytest.approx(beta**2 * integral)


def test_jlo_preconditions():
    Q = random_square_zero(random.Random(4))
    a = vertex_preset(VertexPreset.IDENTITY, Q.n, Q.dim_v)
    with pytest.raises(PreconditionError):
        jlo_component(Q, [a], 0.0)
    with pytest.raises(PreconditionError):
        jlo_component(Q, [], 1.0)
    with pytest.raises(ShapeError):
        jlo_density(Q, [a, a], [0.5])
    assert jlo_component(Q, [a], 2.0) == pytest.approx(0.0)


def test_jordan_profile_matches_cohomology(ni2):
    f = ni2.at(0)
    Q = brst_at(ni2, ADJOINT, Fraction(0))
    profile = jordan_profile(Q)
    assert profile.total_dim == 24
    assert profile.blocks_1 + 2 * profile.blocks_2 == 24
    assert profile.blocks_1 == sum(cohomology_dimensions(f, adjoint_matrices(f)))
    with pytest.raises(PreconditionError):
        jordan_profile(RationalMatrix.identity(2))


@given(square_zero_operators, st.integers(min_value=0, max_value=2**32))
@settings(max_examples=25)
def test_jordan_profile_is_similarity_invariant(Q, seed):
    assert Q.is_odd()
    assert nilpotency_check(Q)
    P = random_invertible(random.Random(seed), Q.total_dim)
    conjugate = P @ Q.q @ P.inverse()
    profile = jordan_profile(Q)
    assert jordan_profile(conjugate) == profile
    assert profile.blocks_1 + 2 * profile.blocks_2 == Q.total_dim


@given(square_zero_operators, st.integers(min_value=0, max_value=2**32))
@settings(max_examples=15)
def test_quadrature_matches_series_across_shapes(Q, seed):
    a = _random_even_vertex(np.random.default_rng(seed), Q)
    quad = equivariant_index(Q, a)
    series = index_series_oracle(Q, a, tol=1e-13)
    assert series.converged
    assert abs(quad.value - series.value) < 1e-9


def test_index_is_linear_on_commuting_vertices():
    Q = GradedMatrix(2, 2, RationalMatrix.zeros(8, 8))
    rng = np.random.default_rng(11)
    a = VertexOperator("a", np.diag(rng.standard_normal(8)), Parity.EVEN)
    b = VertexOperator("b", np.diag(rng.standard_normal(8)), Parity.EVEN)
    combined = VertexOperator("2a+b", 2 * a.matrix + b.matrix, Parity.EVEN)
    expected = 2 * equivariant_index(Q, a).value + equivariant_index(Q, b).value
    assert equivariant_index(Q, combined).value == pytest.approx(expected, abs=1e-12)


def test_index_is_additive_along_ni2(ni2):
    for t in (Fraction(0), Fraction(1, 2), Fraction(1)):
        Q = brst_at(ni2, ADJOINT, t)
        ghosts = vertex_preset(VertexPreset.GHOST_NUMBER, Q.n, Q.dim_v)
        identity = vertex_preset(VertexPreset.IDENTITY, Q.n, Q.dim_v)
        combined = VertexOperator(
            "N-3", ghosts.matrix - 3 * identity.matrix, Parity.EVEN
        )
        expected = (
            equivariant_index(Q, ghosts).value
            - 3 * equivariant_index(Q, identity).value
        )
        assert equivariant_index(Q, combined).value == pytest.approx(
            expected, abs=1e-9
        )


def _difference(f: StructureTensor, g: StructureTensor) -> StructureTensor:
    return StructureTensor(
        f.dim,
        tuple(
            tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(p, q))
            for p, q in zip(f.components, g.components)
        ),
    )


def test_fixed_rule_perturbation_is_ghost_quadratic(ni2):
    lam, lam0 = Fraction(1), Fraction(0)
    rule = RepresentationRule.fixed(trivial_on(ni2.at(lam0), 2))
    W = perturbation(ni2, rule, lam, lam0)
    assert not W.is_zero()
    # f(1) − f(0) has f_12^2 = 1 and f_13^3 = 2
    delta = _difference(ni2.at(lam), ni2.at(lam0))
    assert (delta[0, 1, 1], delta[0, 2, 2]) == (1, 2)
    assert W == assemble_brst(delta, trivial_on(delta, 2)).q
    reverse = _difference(ni2.at(lam0), ni2.at(lam))
    assert W == assemble_brst(reverse, trivial_on(delta, 2)).q.scale(-1)
    assert assemble_brst(StructureTensor.zeros(3), rule.representation).q.is_zero()


def test_perturbation(ni2):
    assert perturbation(ni2, ADJOINT, Fraction(1, 3), Fraction(1, 3)).is_zero()
    assert not perturbation(ni2, ADJOINT, Fraction(1), Fraction(0)).is_zero()
    with pytest.raises(DomainError):
        perturbation(ni2, ADJOINT, Fraction(2), Fraction(0))


def test_derivative_of_ni2_operator(ni2):
    h = Fraction(1, 10**6)
    lam = Fraction(1, 2)
    step = brst_at(ni2, ADJOINT, lam + h).q - brst_at(ni2, ADJOINT, lam).q
    quotient = step.scale(1 / h)
    exact = brst_derivative_at(ni2, ADJOINT, lam)
    np.testing.assert_allclose(quotient.to_float(), exact.to_float(), atol=1e-5)


def test_fixed_rule_derivative_has_no_module_part(ni2):
    rule = RepresentationRule.fixed(trivial_on(ni2.at(0), 2))
    assert not rule.is_adjoint
    assert brst_derivative_at(ni2, rule, Fraction(0)).shape == (16, 16)


def test_hypotheses_pass_on_ni2(ni2):
    a = vertex_preset(VertexPreset.GHOST_NUMBER, 3, 3)
    report = check_hypotheses(ni2, ADJOINT, NI2_GRID, a)
    assert report.ok
    assert report.reference == 0
    assert report.b >= report.max_w_norm**2
    assert report.b == pytest.approx(report.b_bound + DEFAULT_HYPOTHESIS_MARGIN)
    assert report.symmetry_defect > 0
    for coarse, fine in zip(report.deviations, report.deviations[1:]):
        assert fine == pytest.approx(coarse / 2, rel=1e-6)
    assert report.data()["h4"]["ok"]


def test_hypotheses_detect_jump(ni2):
    jump = _JumpFamily(ni2.dim, ni2.components, ni2.parameter, ni2.domain, "jump")
    a = vertex_preset(VertexPreset.GHOST_NUMBER, 3, 3)
    report = check_hypotheses(jump, ADJOINT, NI2_GRID, a)
    assert not report.h4_ok
    assert not report.ok
    assert report.deviations[-1] > report.deviations[0]


def test_hypotheses_on_constant_family():
    family = constant_family(so3())
    a = vertex_preset(VertexPreset.GHOST_NUMBER, 3, 3)
    grid = [Fraction(0), Fraction(1)]
    report = check_hypotheses(family, ADJOINT, grid, a, margin=0.5)
    assert report.ok
    assert report.max_w_norm == 0.0
    assert report.b_bound == 0.0
    assert report.b == pytest.approx(0.5)
    assert report.data()["h3"]["b-bound"] == 0.0
    assert max(report.deviations) == 0.0
    Q = brst_at(family, ADJOINT, Fraction(0))
    assert report.M == pytest.approx(spectral_norm(graded_derivative(Q, a)))
    assert report.M == pytest.approx(spectral_norm(Q.q))


def test_hypotheses_grid_checks(ni2):
    a = vertex_preset(VertexPreset.GHOST_NUMBER, 3, 3)
    with pytest.raises(PreconditionError):
        check_hypotheses(ni2, ADJOINT, [], a)
    with pytest.raises(PreconditionError):
        check_hypotheses(ni2, ADJOINT, [Fraction(1, 2), Fraction(1, 4)], a)
    with pytest.raises(DomainError):
        check_hypotheses(ni2, ADJOINT, [Fraction(0), Fraction(3)], a)


def test_scan_ni2(ni2_regular):
    a = vertex_preset(VertexPreset.GHOST_NUMBER, 3, 3)
    table = deformation_scan(ni2_regular, ADJOINT, NI2_GRID, a, workers=4)
    assert [row.lam for row in table.rows] == NI2_GRID
    assert table.total_dim == 24
    assert table.rank_constant
    assert table.max_index_deviation < 1e-9
    assert all(row.nilpotent and row.odd for row in table.rows)
    assert len(table.data()["rows"]) == len(NI2_GRID)


def test_scan_reports_rank_jump_at_equal_weights(ni2):
    a = vertex_preset(VertexPreset.GHOST_NUMBER, 3, 3)
    table = deformation_scan(ni2, ADJOINT, NI2_GRID, a, workers=4)
    assert [row.rank for row in table.rows] == [9] + [11] * 10
    assert not table.rank_constant
    assert not table.data()["rank-constant"]
    assert table.max_index_deviation < 1e-9


def test_scan_nilpotent_column_is_computed(ni2_regular, monkeypatch):
    a = vertex_preset(VertexPreset.GHOST_NUMBER, 3, 3)
    grid = NI2_GRID[::5]
    table = deformation_scan(ni2_regular, ADJOINT, grid, a, workers=1)
    for row in table.rows:
        assert row.nilpotent == nilpotency_check(brst_at(ni2_regular, ADJOINT, row.lam))
    monkeypatch.setattr(invariants, "nilpotency_check", lambda Q: False)
    table = deformation_scan(ni2_regular, ADJOINT, grid, a, workers=1)
    assert not any(row.nilpotent for row in table.rows)
    assert [row.rank for row in table.rows] == [11] * len(grid)


def test_async_scan_matches_sync(ni2):
    a = vertex_preset(VertexPreset.GHOST_NUMBER, 3, 3)
    grid = NI2_GRID[::2]
    sync = deformation_scan(ni2, ADJOINT, grid, a, workers=1)
    concurrent = asyncio.run(async_deformation_scan(ni2, ADJOINT, grid, a, workers=3))
    assert [row.rank for row in concurrent.rows] == [row.rank for row in sync.rows]
    assert [row.lam for row in concurrent.rows] == grid
