"""Fock space, BRST operator and cohomology tests."""

from fractions import Fraction
from math import comb
import random

from conftest import NI2_GRID, NI2_REGULAR, trivial_on
import pytest

from liebrst.algebra_core import (
    Representation,
    StructureTensor,
    abelian,
    adjoint_matrices,
    builtin_family_ni2,
    heisenberg,
    sl2,
    so3,
)
from liebrst.exact_linalg import RationalMatrix, SignedPermMatrix, rank_exact
from liebrst.exceptions import PreconditionError, RepresentationError, ShapeError
from liebrst.ghost_complex import (
    FockBasis,
    annihilation_matrix,
    assemble_brst,
    build_brst,
    coboundary_matrix,
    cohomology_dimensions,
    creation_matrix,
    euler_characteristic,
    fock_basis,
    ghost_number_matrix,
    grading_diagonal,
    grassmann_apply,
    nilpotency_check,
)


@pytest.mark.parametrize("n", range(9))
def test_fock_counting(n):
    basis = fock_basis(n)
    assert basis.dim == 2**n
    assert basis.stratum_dims() == [comb(n, k) for k in range(n + 1)]
    assert all(len(basis.stratum(k)) == comb(n, k) for k in range(n + 1))


def test_fock_word():
    assert FockBasis.word(0b1011) == (0, 1, 3)
    assert FockBasis.word(0) == ()


def test_ghost_index_range():
    with pytest.raises(ShapeError):
        creation_matrix(3, 3)
    with pytest.raises(ShapeError):
        fock_basis(-1)


def _anticommutator(A: RationalMatrix, B: RationalMatrix) -> RationalMatrix:
    return A @ B + B @ A


@pytest.mark.parametrize("n", range(1, 7))
def test_canonical_anticommutation(n):
    C = [creation_matrix(j, n).to_matrix() for j in range(n)]
    D = [annihilation_matrix(j, n).to_matrix() for j in range(n)]
    zero = RationalMatrix.zeros(1 << n, 1 << n)
    identity = RationalMatrix.identity(1 << n)
    for i in range(n):
        for j in range(n):
            assert _anticommutator(C[i], C[j]) == zero
            assert _anticommutator(D[i], D[j]) == zero
            assert _anticommutator(D[i], C[j]) == (identity if i == j else zero)


def test_random_words_stay_in_monoid():
    rng = random.Random(11)
    n = 4
    generators = [creation_matrix(j, n) for j in range(n)] + [
        annihilation_matrix(j, n) for j in range(n)
    ]
    for _ in range(500):
        word = [rng.choice(generators) for _ in range(rng.randint(1, 8))]
        product = SignedPermMatrix.identity(1 << n)
        dense = RationalMatrix.identity(1 << n)
        for g in word:
            product = product @ g
            dense = dense @ g.to_matrix()
        assert product.to_matrix() == dense
        assert SignedPermMatrix.from_matrix(dense) == product


def test_grading_and_ghost_number():
    assert grading_diagonal(2, 1) == (1, -1, -1, 1)
    assert grading_diagonal(1, 2) == (1, 1, -1, -1)
    assert ghost_number_matrix(2, 1) == RationalMatrix.diagonal([0, 1, 1, 2])


def _modules(f: StructureTensor) -> list[Representation]:
    return [trivial_on(f), adjoint_matrices(f)]


@pytest.mark.parametrize(
    "f",
    [abelian(1), abelian(2), abelian(3), abelian(4), heisenberg(), so3(), sl2()],
    ids=["abelian1", "abelian2", "abelian3", "abelian4", "heisenberg", "so3", "sl2"],
)
def test_nilpotency(f):
    for rho in _modules(f):
        Q = build_brst(f, rho)
        assert nilpotency_check(Q)
        assert Q.is_odd()
        assert Q.raises_ghost_number()


def test_ni2_nilpotent_on_grid(ni2):
    for t in NI2_GRID:
        f = ni2.at(t)
        for rho in _modules(f):
            assert nilpotency_check(build_brst(f, rho))


def _adjoint_ranks(family) -> list[int]:
    ranks = []
    for t in NI2_GRID:
        f = family.at(t)
        Q = build_brst(f, adjoint_matrices(f))
        assert Q.total_dim == 24
        ranks.append(rank_exact(Q.q))
    return ranks


@pytest.mark.parametrize("params", NI2_REGULAR, ids=str)
def test_ni2_adjoint_rank_constant(params):
    assert _adjoint_ranks(builtin_family_ni2(*params)) == [11] * len(NI2_GRID)


@pytest.mark.parametrize(
    ("params", "rank_at_zero"), [((1, 1, 1), 9), ((1, -1, 1), 10)], ids=str
)
def test_ni2_adjoint_rank_drops_at_resonant_weights(params, rank_at_zero):
    ranks = _adjoint_ranks(builtin_family_ni2(*params))
    assert ranks == [rank_at_zero] + [11] * (len(NI2_GRID) - 1)


def test_ni2_cohomology_jumps_at_equal_weights(ni2):
    f0, f1 = ni2.at(0), ni2.at(Fraction(1, 2))
    assert cohomology_dimensions(f0, adjoint_matrices(f0)) == [0, 3, 3, 0]
    assert cohomology_dimensions(f1, adjoint_matrices(f1)) == [0, 1, 1, 0]


def test_broken_bracket_is_not_nilpotent():
    f = StructureTensor.from_brackets(3, {(0, 1): {1: 1}, (1, 2): {0: 1}})
    assert not nilpotency_check(assemble_brst(f, trivial_on(f)))


def test_build_brst_rejects_non_representation():
    f = so3()
    rho = Representation(1, (RationalMatrix.identity(1),) * 3)
    with pytest.raises(RepresentationError):
        build_brst(f, rho)


@pytest.mark.parametrize(
    ("f", "module", "expected"),
    [
        (abelian(3), "trivial", [1, 3, 3, 1]),
        (so3(), "trivial", [1, 0, 0, 1]),
        (so3(), "adjoint", [0, 0, 0, 0]),
        (sl2(), "trivial", [1, 0, 0, 1]),
        (heisenberg(), "trivial", [1, 2, 2, 1]),
        (abelian(2), "adjoint", [2, 4, 2]),
    ],
)
def test_cohomology_table(f, module, expected):
    rho = trivial_on(f) if module == "trivial" else adjoint_matrices(f)
    dims = cohomology_dimensions(f, rho)
    assert dims == expected
    assert euler_characteristic(dims) == 0


def test_euler_characteristic_vanishes_on_ni2(ni2):
    for t in NI2_GRID:
        f = ni2.at(t)
        assert euler_characteristic(cohomology_dimensions(f, adjoint_matrices(f))) == 0


def test_coboundary_shapes():
    f = sl2()
    rho = adjoint_matrices(f)
    for k in range(4):
        delta = coboundary_matrix(f, rho, k)
        assert delta.shape == (comb(3, k + 1) * 3, comb(3, k) * 3)
    with pytest.raises(PreconditionError):
        coboundary_matrix(f, rho, 4)


def test_consecutive_coboundaries_compose_to_zero():
    f = heisenberg()
    rho = adjoint_matrices(f)
    for k in range(2):
        delta = coboundary_matrix(f, rho, k)
        assert (coboundary_matrix(f, rho, k + 1) @ delta).is_zero()


@pytest.mark.parametrize(
    "f", [heisenberg(), so3(), sl2()], ids=["heisenberg", "so3", "sl2"]
)
def test_matrix_matches_grassmann_words(f):
    for rho in _modules(f):
        Q = build_brst(f, rho)
        d = rho.dim_v
        for mask in range(1 << f.dim):
            for alpha in range(d):
                column = mask * d + alpha
                expected = {
                    i: Q.q[i, column] for i in range(Q.total_dim) if Q.q[i, column]
                }
                assert grassmann_apply(f, rho, FockBasis.word(mask), alpha) == expected


def test_maurer_cartan():
    f = sl2()
    rho = trivial_on(f)
    for k in range(3):
        image = grassmann_apply(f, rho, (k,), 0)
        expected = {
            (1 << i) | (1 << j): -f[i, j, k]
            for i in range(3)
            for j in range(i + 1, 3)
            if f[i, j, k]
        }
        assert image == expected


def test_grassmann_unsorted_word_sign():
    f = sl2()
    rho = trivial_on(f)
    forward = grassmann_apply(f, rho, (0, 1), 0)
    backward = grassmann_apply(f, rho, (1, 0), 0)
    assert backward == {k: -v for k, v in forward.items()}
    assert grassmann_apply(f, rho, (1, 1), 0) == {}


def test_trivial_module_cohomology_scales_with_dimension():
    f = so3()
    dims = cohomology_dimensions(f, trivial_on(f, 2))
    assert dims == [2, 0, 0, 2]
