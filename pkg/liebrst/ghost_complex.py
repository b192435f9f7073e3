"""Ghost Fock space, the BRST operator and cohomology dimensions.

Basis convention: the monomial c^{i_1}...c^{i_r} (i_1 < ... < i_r) is the
bitmask with bits i_1..i_r set, and the vector c-monomial ⊗ e_α of
F ⊗ V has index mask·dim_v + α. Ghost indices are 0-based: bit j is c^{j+1}.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
import logging
from math import comb

from .algebra_core import (
    Representation,
    StructureTensor,
    representation_check,
    require_lie,
)
from .exact_linalg import (
    RationalMatrix,
    SignedPermMatrix,
    monoid_product,
    rank_exact,
)
from .exceptions import PreconditionError, RepresentationError, ShapeError

_LOGGER = logging.getLogger(__name__)


def _sign_below(mask: int, j: int) -> int:
    """(-1)^(number of ghosts in mask with index below j)."""
    return -1 if (mask & ((1 << j) - 1)).bit_count() % 2 else 1


@dataclass(frozen=True, slots=True)
class FockBasis:
    """Bitmask basis of the exterior algebra on n ghosts."""

    n: int

    @property
    def dim(self) -> int:
        """2^n."""
        return 1 << self.n

    def masks(self) -> range:
        """Basis masks in index order."""
        return range(self.dim)

    def stratum(self, k: int) -> list[int]:
        """Masks of ghost number k, ascending."""
        return [m for m in self.masks() if m.bit_count() == k]

    def stratum_dims(self) -> list[int]:
        """Dimension of each ghost-number stratum."""
        dims = [0] * (self.n + 1)
        for m in self.masks():
            dims[m.bit_count()] += 1
        return dims

    @staticmethod
    def word(mask: int) -> tuple[int, ...]:
        """Sorted ghost indices of a mask."""
        return tuple(j for j in range(mask.bit_length()) if mask >> j & 1)


def fock_basis(n: int) -> FockBasis:
    """Fock basis on n ghosts."""
    if n < 0:
        raise ShapeError(f"negative ghost count {n}")
    return FockBasis(n)


def _check_ghost(j: int, n: int) -> None:
    if not 0 <= j < n:
        raise ShapeError(f"ghost index {j} out of range for {n} ghosts")


def creation_matrix(j: int, n: int) -> SignedPermMatrix:
    """Left multiplication by c^{j+1} on F."""
    _check_ghost(j, n)
    bit = 1 << j
    return SignedPermMatrix(
        1 << n,
        tuple(
            None if m & bit else (m | bit, _sign_below(m, j)) for m in range(1 << n)
        ),
    )


def annihilation_matrix(j: int, n: int) -> SignedPermMatrix:
    """Grassmann derivative ∂/∂c^{j+1} on F."""
    _check_ghost(j, n)
    bit = 1 << j
    return SignedPermMatrix(
        1 << n,
        tuple(
            (m & ~bit, _sign_below(m, j)) if m & bit else None for m in range(1 << n)
        ),
    )


@dataclass(frozen=True, slots=True)
class GradedMatrix:
    """BRST operator on F ⊗ V together with the ghost-parity grading."""

    n: int
    dim_v: int
    q: RationalMatrix

    def __post_init__(self) -> None:
        """Validate the total dimension."""
        if self.q.shape != (self.total_dim, self.total_dim):
            raise ShapeError(
                f"operator {self.q.shape} does not act on dimension {self.total_dim}"
            )

    @property
    def total_dim(self) -> int:
        """2^n·dim_v."""
        return (1 << self.n) * self.dim_v

    def grading(self) -> tuple[int, ...]:
        """Diagonal of γ."""
        return grading_diagonal(self.n, self.dim_v)

    def grading_matrix(self) -> RationalMatrix:
        """γ as a matrix."""
        return grading_matrix(self.n, self.dim_v)

    def is_odd(self) -> bool:
        """γQγ = −Q: Q only connects opposite parities."""
        gamma = self.grading()
        return all(gamma[i] != gamma[j] for i, j, _ in self.q.nonzero())

    def raises_ghost_number(self) -> bool:
        """Q maps ghost number k into ghost number k+1 only."""
        d = self.dim_v
        return all(
            (i // d).bit_count() == (j // d).bit_count() + 1
            for i, j, _ in self.q.nonzero()
        )


def grading_diagonal(n: int, dim_v: int) -> tuple[int, ...]:
    """(-1)^popcount(mask) repeated dim_v times per mask."""
    return tuple(
        -1 if m.bit_count() % 2 else 1 for m in range(1 << n) for _ in range(dim_v)
    )


def grading_matrix(n: int, dim_v: int) -> RationalMatrix:
    """Ghost-parity grading γ."""
    return RationalMatrix.diagonal(grading_diagonal(n, dim_v))


def ghost_number_matrix(n: int, dim_v: int) -> RationalMatrix:
    """Diagonal ghost-number operator."""
    return RationalMatrix.diagonal(
        [m.bit_count() for m in range(1 << n) for _ in range(dim_v)]
    )


def _accumulate(
    items: dict[tuple[int, int], Fraction],
    fock: SignedPermMatrix,
    block: RationalMatrix,
    coefficient: Fraction,
) -> None:
    """Add coefficient·(fock ⊗ block) into a sparse accumulator."""
    d = block.rows
    nonzero = list(block.nonzero())
    for col, entry in enumerate(fock.columns):
        if entry is None:
            continue
        row, sign = entry
        scale = coefficient * sign
        for a, b, value in nonzero:
            key = (row * d + a, col * d + b)
            items[key] = items.get(key, Fraction(0)) + scale * value


def assemble_brst(f: StructureTensor, rho: Representation) -> GradedMatrix:
    """Q = Σ C^i ⊗ t_i − ½ Σ f_ij^k C^i C^j ∂_k ⊗ 1, without validation."""
    n = f.dim
    if rho.size != n:
        raise ShapeError(f"{rho.size} representation matrices for dimension {n}")
    d = rho.dim_v
    creation = [creation_matrix(j, n) for j in range(n)]
    annihilation = [annihilation_matrix(j, n) for j in range(n)]
    identity = RationalMatrix.identity(d)
    items: dict[tuple[int, int], Fraction] = {}

    for i in range(n):
        _accumulate(items, creation[i], rho.matrices[i], Fraction(1))

    half = Fraction(-1, 2)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            cc = monoid_product(creation[i], creation[j])
            for k in range(n):
                if f[i, j, k]:
                    word = monoid_product(cc, annihilation[k])
                    _accumulate(items, word, identity, half * f[i, j, k])

    size = (1 << n) * d
    q = RationalMatrix.from_sparse(
        size, size, {key: value for key, value in items.items() if value}
    )
    _LOGGER.debug("assemble_brst: n=%s dim_v=%s total=%s", n, d, size)
    return GradedMatrix(n, d, q)


def _require_module(f: StructureTensor, rho: Representation) -> None:
    require_lie(f)
    if not representation_check(f, rho):
        raise RepresentationError("matrices do not satisfy [t_i, t_j] = f_ij^k t_k")


def build_brst(f: StructureTensor, rho: Representation) -> GradedMatrix:
    """Validated BRST operator of the pair (f, ρ)."""
    _require_module(f, rho)
    return assemble_brst(f, rho)


def nilpotency_check(Q: GradedMatrix) -> bool:
    """Q·Q = 0 exactly."""
    return (Q.q @ Q.q).is_zero()


def _stratum_indices(n: int, dim_v: int, k: int) -> list[int]:
    return [m * dim_v + a for m in fock_basis(n).stratum(k) for a in range(dim_v)]


def _block(
    q: RationalMatrix, rows: Sequence[int], cols: Sequence[int]
) -> RationalMatrix:
    return RationalMatrix(
        len(rows), len(cols), tuple(tuple(q[i, j] for j in cols) for i in rows)
    )


def coboundary_from(Q: GradedMatrix, k: int) -> RationalMatrix:
    """Block of Q from ghost number k to ghost number k+1."""
    if not 0 <= k <= Q.n:
        raise PreconditionError(f"degree {k} outside 0..{Q.n}")
    return _block(
        Q.q,
        _stratum_indices(Q.n, Q.dim_v, k + 1),
        _stratum_indices(Q.n, Q.dim_v, k),
    )


def coboundary_matrix(
    f: StructureTensor, rho: Representation, k: int
) -> RationalMatrix:
    """Coboundary δ_k on V-valued k-cochains, shape C(n,k+1)·d × C(n,k)·d."""
    if not 0 <= k <= f.dim:
        raise PreconditionError(f"degree {k} outside 0..{f.dim}")
    return coboundary_from(build_brst(f, rho), k)


def cohomology_from(Q: GradedMatrix) -> list[int]:
    """dim H^k for k = 0..n from the strata blocks of Q."""
    n, d = Q.n, Q.dim_v
    ranks = [rank_exact(coboundary_from(Q, k)) for k in range(n + 1)]
    dims = [
        comb(n, k) * d - ranks[k] - (ranks[k - 1] if k > 0 else 0) for k in range(n + 1)
    ]
    _LOGGER.debug("cohomology: ranks=%s dims=%s", ranks, dims)
    return dims


def cohomology_dimensions(f: StructureTensor, rho: Representation) -> list[int]:
    """Dimensions of H^k(g, V), k = 0..n."""
    return cohomology_from(build_brst(f, rho))


def euler_characteristic(dims: Iterable[int]) -> int:
    """Alternating sum of cohomology dimensions."""
    return sum(-x if k % 2 else x for k, x in enumerate(dims))


def _normalize(word: Sequence[int]) -> tuple[int, int] | None:
    """Sort a ghost word: (sign, mask), or None when a ghost repeats."""
    if len(set(word)) != len(word):
        return None
    letters = list(word)
    sign = 1
    for i in range(len(letters)):
        for j in range(len(letters) - 1 - i):
            if letters[j] > letters[j + 1]:
                letters[j], letters[j + 1] = letters[j + 1], letters[j]
                sign = -sign
    mask = 0
    for j in letters:
        mask |= 1 << j
    return sign, mask


def _derive(k: int, word: Sequence[int]) -> list[tuple[int, tuple[int, ...]]]:
    """∂/∂c^k of a word by the alternating product rule."""
    return [
        (1 if p % 2 == 0 else -1, tuple(word[:p]) + tuple(word[p + 1 :]))
        for p, letter in enumerate(word)
        if letter == k
    ]


def grassmann_apply(
    f: StructureTensor, rho: Representation, word: Sequence[int], alpha: int
) -> dict[int, Fraction]:
    """Q(c^{i_1}...c^{i_r} ⊗ e_α) by direct Grassmann-word expansion.

    Returns the image as {basis index: coefficient}.
    """
    n, d = f.dim, rho.dim_v
    out: dict[int, Fraction] = {}

    def add(sign_word: int, letters: Sequence[int], beta: int, value: Fraction) -> None:
        normal = _normalize(letters)
        if normal is None or not value:
            return
        sign, mask = normal
        index = mask * d + beta
        out[index] = out.get(index, Fraction(0)) + sign * sign_word * value

    parity = -1 if len(word) % 2 else 1
    for j in range(n):
        t = rho.matrices[j]
        for beta in range(d):
            add(parity, tuple(word) + (j,), beta, t[beta, alpha])

    for i in range(n):
        for j in range(n):
            for k in range(n):
                coefficient = f[i, j, k] * Fraction(-1, 2)
                if not coefficient:
                    continue
                for sign, rest in _derive(k, word):
                    add(sign, (i, j) + rest, alpha, coefficient)
    return {index: value for index, value in out.items() if value}
