"""Structure tensors, representations, derivations and deformation families.

Indices are 0-based in code. ``f.components[i][j][k]`` is the coefficient of
``e_k`` in ``[e_i, e_j]``; reports and the algebra DSL print them 1-based.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
import logging

from .const import DEFAULT_PARAMETER
from .exact_linalg import (
    RationalLike,
    RationalMatrix,
    kernel_basis,
    to_rational,
)
from .exceptions import (
    DomainError,
    JacobiError,
    PreconditionError,
    ShapeError,
)

_LOGGER = logging.getLogger(__name__)

Tensor3 = tuple[tuple[tuple[Fraction, ...], ...], ...]


@dataclass(frozen=True, slots=True)
class PolyCoeff:
    """Polynomial with rational coefficients in one parameter, lowest degree first."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        """Trim trailing zero coefficients."""
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        end = len(coeffs)
        while end > 0 and coeffs[end - 1] == 0:
            end -= 1
        object.__setattr__(self, "coeffs", coeffs[:end])

    @classmethod
    def constant(cls, value: RationalLike) -> PolyCoeff:
        """Constant polynomial."""
        return cls((to_rational(value),))

    @classmethod
    def variable(cls) -> PolyCoeff:
        """The parameter itself."""
        return cls((Fraction(0), Fraction(1)))

    @classmethod
    def from_coeffs(cls, *coeffs: RationalLike) -> PolyCoeff:
        """Polynomial from coefficients, lowest degree first."""
        return cls(tuple(to_rational(c) for c in coeffs))

    @property
    def degree(self) -> int:
        """Degree, -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        """Polynomial is zero."""
        return not self.coeffs

    def is_constant(self) -> bool:
        """Polynomial has degree at most zero."""
        return len(self.coeffs) <= 1

    def coefficient(self, power: int) -> Fraction:
        """Coefficient of the given power."""
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Fraction(0)

    def __add__(self, other: PolyCoeff) -> PolyCoeff:
        """Sum."""
        size = max(len(self.coeffs), len(other.coeffs))
        return PolyCoeff(
            tuple(self.coefficient(p) + other.coefficient(p) for p in range(size))
        )

    def __neg__(self) -> PolyCoeff:
        """Negation."""
        return PolyCoeff(tuple(-c for c in self.coeffs))

    def __sub__(self, other: PolyCoeff) -> PolyCoeff:
        """Difference."""
        return self + (-other)

    def __mul__(self, other: PolyCoeff) -> PolyCoeff:
        """Product."""
        if self.is_zero() or other.is_zero():
            return PolyCoeff()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for p, a in enumerate(self.coeffs):
            for q, b in enumerate(other.coeffs):
                out[p + q] += a * b
        return PolyCoeff(tuple(out))

    def __pow__(self, power: int) -> PolyCoeff:
        """Nonnegative integer power."""
        if power < 0:
            raise ValueError(f"negative power {power}")
        result = PolyCoeff.constant(1)
        base = self
        while power:
            if power & 1:
                result = result * base
            power >>= 1
            if power:
                base = base * base
        return result

    def scale(self, factor: RationalLike) -> PolyCoeff:
        """Scalar multiple."""
        c = to_rational(factor)
        return PolyCoeff(tuple(c * x for x in self.coeffs))

    def evaluate(self, t: RationalLike) -> Fraction:
        """Exact value at t (Horner)."""
        x = to_rational(t)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> PolyCoeff:
        """Formal derivative."""
        return PolyCoeff(tuple(p * c for p, c in enumerate(self.coeffs) if p > 0))


def _zero_tensor(n: int) -> list[list[list[Fraction]]]:
    return [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]


def _freeze(data: list[list[list[Fraction]]]) -> Tensor3:
    return tuple(tuple(tuple(row) for row in plane) for plane in data)


@dataclass(frozen=True, slots=True)
class StructureTensor:
    """Structure constants f_ij^k of an n-dimensional bracket.

    Antisymmetric partners are stored explicitly; ``jacobi_check`` reports
    when they disagree.
    """

    dim: int
    components: Tensor3

    def __post_init__(self) -> None:
        """Validate the n×n×n shape."""
        n = self.dim
        if n < 0:
            raise ShapeError(f"negative dimension {n}")
        if len(self.components) != n or any(
            len(plane) != n or any(len(row) != n for row in plane)
            for plane in self.components
        ):
            raise ShapeError(f"structure tensor is not {n}x{n}x{n}")

    @classmethod
    def zeros(cls, n: int) -> StructureTensor:
        """Abelian bracket."""
        return cls(n, _freeze(_zero_tensor(n)))

    @classmethod
    def from_brackets(
        cls, n: int, brackets: Mapping[tuple[int, int], Mapping[int, RationalLike]]
    ) -> StructureTensor:
        """Tensor from {(i, j): {k: f_ij^k}} with the partner f_ji^k filled in."""
        data = _zero_tensor(n)
        for (i, j), terms in brackets.items():
            if i == j:
                raise ShapeError(f"diagonal bracket ({i}, {j}) must vanish")
            for k, value in terms.items():
                c = to_rational(value)
                data[i][j][k] = c
                data[j][i][k] = -c
        return cls(n, _freeze(data))

    def __getitem__(self, key: tuple[int, int, int]) -> Fraction:
        """Component f_ij^k."""
        i, j, k = key
        return self.components[i][j][k]

    def with_component(
        self, i: int, j: int, k: int, value: RationalLike
    ) -> StructureTensor:
        """Copy with a single component replaced (no partner update)."""
        data = [[list(row) for row in plane] for plane in self.components]
        data[i][j][k] = to_rational(value)
        return StructureTensor(self.dim, _freeze(data))

    def scale(self, factor: RationalLike) -> StructureTensor:
        """Every component times factor."""
        c = to_rational(factor)
        return StructureTensor(
            self.dim,
            tuple(
                tuple(tuple(c * x for x in row) for row in plane)
                for plane in self.components
            ),
        )

    def adjoint_matrix(self, i: int) -> RationalMatrix:
        """ad(e_i) with (row k, col j) entry f_ij^k."""
        n = self.dim
        return RationalMatrix(
            n,
            n,
            tuple(
                tuple(self.components[i][j][k] for j in range(n)) for k in range(n)
            ),
        )

    def bracket_vectors(
        self, x: Sequence[Fraction], y: Sequence[Fraction]
    ) -> tuple[Fraction, ...]:
        """[x, y] for coordinate vectors x and y."""
        n = self.dim
        out = [Fraction(0)] * n
        for i in range(n):
            if not x[i]:
                continue
            for j in range(n):
                if not y[j]:
                    continue
                xy = x[i] * y[j]
                for k in range(n):
                    if self.components[i][j][k]:
                        out[k] += xy * self.components[i][j][k]
        return tuple(out)

    def is_abelian(self) -> bool:
        """All components vanish."""
        return not any(x for plane in self.components for row in plane for x in row)


@dataclass(frozen=True, slots=True)
class JacobiReport:
    """Outcome of jacobi_check."""

    antisymmetry_violations: tuple[tuple[int, int, int], ...]
    violations: tuple[tuple[int, int, int, int], ...]

    @property
    def ok(self) -> bool:
        """Antisymmetry and Jacobi both hold."""
        return not self.antisymmetry_violations and not self.violations


def jacobi_check(f: StructureTensor) -> JacobiReport:
    """Check antisymmetry and the cyclic Jacobi sum exactly."""
    n = f.dim
    c = f.components
    antisym = tuple(
        (i, j, k)
        for i, j, k in product(range(n), repeat=3)
        if i <= j and c[i][j][k] != -c[j][i][k]
    )
    violations = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                for m in range(n):
                    total = sum(
                        (
                            c[i][j][h] * c[h][k][m]
                            + c[j][k][h] * c[h][i][m]
                            + c[k][i][h] * c[h][j][m]
                            for h in range(n)
                        ),
                        Fraction(0),
                    )
                    if total:
                        violations.append((i, j, k, m))
    report = JacobiReport(antisym, tuple(violations))
    if not report.ok:
        _LOGGER.debug(
            "jacobi_check: antisymmetry=%s jacobi=%s",
            len(report.antisymmetry_violations),
            len(report.violations),
        )
    return report


def require_lie(f: StructureTensor) -> None:
    """Raise JacobiError unless f is a Lie bracket."""
    report = jacobi_check(f)
    if not report.ok:
        raise JacobiError(
            f"bracket fails antisymmetry at {len(report.antisymmetry_violations)}"
            f" and Jacobi at {len(report.violations)} index tuples",
            report.violations,
        )


def gl_transform(f: StructureTensor, A: RationalMatrix) -> StructureTensor:
    """Change of basis e'_i = A^f_i e_f applied to the structure constants.

    Computes (A^-1)^k_h f_ab^h A^a_i A^b_j as A^-1 [A e_i, A e_j].
    """
    n = f.dim
    if A.shape != (n, n):
        raise ShapeError(f"basis change must be {n}x{n}, got {A.shape}")
    A_inv = A.inverse()
    columns = [A.column(i) for i in range(n)]
    data = [
        [list(A_inv.apply(f.bracket_vectors(columns[i], columns[j]))) for j in range(n)]
        for i in range(n)
    ]
    return StructureTensor(n, _freeze(data))


@dataclass(frozen=True, slots=True)
class Representation:
    """Matrices t_i acting on a module of dimension dim_v."""

    dim_v: int
    matrices: tuple[RationalMatrix, ...]

    def __post_init__(self) -> None:
        """Validate matrix shapes."""
        for t in self.matrices:
            if t.shape != (self.dim_v, self.dim_v):
                raise ShapeError(
                    f"representation matrix {t.shape} on module of dim {self.dim_v}"
                )

    @property
    def size(self) -> int:
        """Number of matrices."""
        return len(self.matrices)


def trivial_representation(f: StructureTensor, dim_v: int = 1) -> Representation:
    """All t_i = 0 on a dim_v-dimensional module."""
    zero = RationalMatrix.zeros(dim_v, dim_v)
    return Representation(dim_v, (zero,) * f.dim)


def adjoint_matrices(f: StructureTensor) -> Representation:
    """ad(e_i) matrices without checking Jacobi."""
    return Representation(f.dim, tuple(f.adjoint_matrix(i) for i in range(f.dim)))


def adjoint_representation(f: StructureTensor) -> Representation:
    """Adjoint representation of a Lie bracket."""
    require_lie(f)
    return adjoint_matrices(f)


def _check_rep_dims(f: StructureTensor, rho: Representation) -> None:
    if rho.size != f.dim:
        raise ShapeError(f"{rho.size} representation matrices for dimension {f.dim}")


def representation_check(f: StructureTensor, rho: Representation) -> bool:
    """[t_i, t_j] = f_ij^k t_k for all i < j, exactly."""
    _check_rep_dims(f, rho)
    n = f.dim
    zero = RationalMatrix.zeros(rho.dim_v, rho.dim_v)
    for i in range(n):
        for j in range(i + 1, n):
            rhs = zero
            for k in range(n):
                if f[i, j, k]:
                    rhs = rhs + rho.matrices[k].scale(f[i, j, k])
            if rho.matrices[i].commutator(rho.matrices[j]) != rhs:
                _LOGGER.debug("representation_check: fails at (%s, %s)", i, j)
                return False
    return True


def transport_representation(
    rho: Representation,
    A: RationalMatrix,
    module_basis: RationalMatrix | None = None,
) -> Representation:
    """Representation of gl_transform(f, A): t'_i = P^-1 (Σ_f A^f_i t_f) P."""
    n = rho.size
    if A.shape != (n, n):
        raise ShapeError(f"basis change must be {n}x{n}, got {A.shape}")
    zero = RationalMatrix.zeros(rho.dim_v, rho.dim_v)
    mixed = []
    for i in range(n):
        t = zero
        for a in range(n):
            if A[a, i]:
                t = t + rho.matrices[a].scale(A[a, i])
        mixed.append(t)
    if module_basis is not None:
        P_inv = module_basis.inverse()
        mixed = [P_inv @ t @ module_basis for t in mixed]
    return Representation(rho.dim_v, tuple(mixed))


def _is_derivation(h: StructureTensor, D: RationalMatrix) -> tuple[int, int] | None:
    """First basis pair where D fails the Leibniz rule, or None."""
    n = h.dim
    for a in range(n):
        for b in range(a + 1, n):
            lhs = D.apply(tuple(h[a, b, k] for k in range(n)))
            Da = D.column(a)
            Db = D.column(b)
            e_a = tuple(Fraction(int(x == a)) for x in range(n))
            e_b = tuple(Fraction(int(x == b)) for x in range(n))
            rhs = tuple(
                x + y
                for x, y in zip(
                    h.bracket_vectors(Da, e_b), h.bracket_vectors(e_a, Db), strict=True
                )
            )
            if lhs != rhs:
                return (a, b)
    return None


def semidirect_product(
    g: StructureTensor, h: StructureTensor, b: Sequence[RationalMatrix]
) -> StructureTensor:
    """Bracket on g ⊕ h twisted by b: g → Der h.

    Basis order is (X_1..X_p, Y_1..Y_q); [X_i, Y_a] = b(X_i) Y_a.
    """
    p, q = g.dim, h.dim
    if len(b) != p:
        raise PreconditionError(f"expected {p} derivations, got {len(b)}")
    for i, D in enumerate(b):
        if D.shape != (q, q):
            raise PreconditionError(f"b(X_{i + 1}) has shape {D.shape}, need {q}x{q}")
    require_lie(g)
    require_lie(h)
    for i, D in enumerate(b):
        pair = _is_derivation(h, D)
        if pair is not None:
            raise PreconditionError(
                f"b(X_{i + 1}) is not a derivation at Y pair {pair}", pair
            )
    zero = RationalMatrix.zeros(q, q)
    for i in range(p):
        for j in range(i + 1, p):
            rhs = zero
            for k in range(p):
                if g[i, j, k]:
                    rhs = rhs + b[k].scale(g[i, j, k])
            if b[i].commutator(b[j]) != rhs:
                raise PreconditionError(
                    f"b is not a homomorphism at X pair ({i}, {j})", (i, j)
                )

    n = p + q
    data = _zero_tensor(n)
    for i, j, k in product(range(p), repeat=3):
        data[i][j][k] = g[i, j, k]
    for a, c, e in product(range(q), repeat=3):
        data[p + a][p + c][p + e] = h[a, c, e]
    for i in range(p):
        for a in range(q):
            for e in range(q):
                value = b[i][e, a]
                data[i][p + a][p + e] = value
                data[p + a][i][p + e] = -value
    result = StructureTensor(n, _freeze(data))
    _LOGGER.debug("semidirect_product: dim=%s", n)
    return result


@dataclass(frozen=True, slots=True)
class DerivationSpace:
    """Basis of Der g as n×n matrices."""

    dimension: int
    basis: tuple[RationalMatrix, ...]


def derivation_space(f: StructureTensor) -> DerivationSpace:
    """Solve the Leibniz system D[e_i, e_j] = [De_i, e_j] + [e_i, De_j]."""
    require_lie(f)
    n = f.dim
    rows: list[list[Fraction]] = []

    def var(r: int, c: int) -> int:
        return r * n + c

    for i in range(n):
        for j in range(i + 1, n):
            for m in range(n):
                row = [Fraction(0)] * (n * n)
                for h in range(n):
                    row[var(m, h)] += f[i, j, h]
                for p in range(n):
                    row[var(p, i)] -= f[p, j, m]
                    row[var(p, j)] -= f[i, p, m]
                if any(row):
                    rows.append(row)
    system = RationalMatrix(len(rows), n * n, tuple(tuple(row) for row in rows))
    kernel = kernel_basis(system)
    basis = tuple(
        RationalMatrix(
            n, n, tuple(tuple(v[var(r, c)] for c in range(n)) for r in range(n))
        )
        for v in kernel
    )
    _LOGGER.debug("derivation_space: dim=%s", len(basis))
    return DerivationSpace(len(basis), basis)


def _as_domain(
    domain: tuple[RationalLike, RationalLike] | None,
) -> tuple[Fraction, Fraction] | None:
    if domain is None:
        return None
    return to_rational(domain[0]), to_rational(domain[1])


PolyTensor3 = tuple[tuple[tuple[PolyCoeff, ...], ...], ...]


@dataclass(frozen=True, slots=True)
class DeformationFamily:
    """Structure constants polynomial in one parameter over a domain [lo, hi].

    A domain of None means the family may be evaluated at any rational.
    """

    dim: int
    components: PolyTensor3
    parameter: str = DEFAULT_PARAMETER
    domain: tuple[Fraction, Fraction] | None = None
    name: str = field(default="family", compare=False)

    def __post_init__(self) -> None:
        """Validate shape, antisymmetry and domain."""
        n = self.dim
        if len(self.components) != n or any(
            len(plane) != n or any(len(row) != n for row in plane)
            for plane in self.components
        ):
            raise ShapeError(f"family tensor is not {n}x{n}x{n}")
        for i, j, k in product(range(n), repeat=3):
            if self.components[i][j][k] != -self.components[j][i][k]:
                raise JacobiError(f"family fails antisymmetry at ({i}, {j}, {k})")
        if self.domain is not None and self.domain[0] > self.domain[1]:
            raise DomainError(f"empty domain [{self.domain[0]}, {self.domain[1]}]")

    @classmethod
    def from_brackets(
        cls,
        n: int,
        brackets: Mapping[tuple[int, int], Mapping[int, PolyCoeff]],
        parameter: str = DEFAULT_PARAMETER,
        domain: tuple[RationalLike, RationalLike] | None = None,
        name: str = "family",
    ) -> DeformationFamily:
        """Family from {(i, j): {k: polynomial}} with partners filled in."""
        data = [[[PolyCoeff()] * n for _ in range(n)] for _ in range(n)]
        for (i, j), terms in brackets.items():
            if i == j:
                raise ShapeError(f"diagonal bracket ({i}, {j}) must vanish")
            for k, poly in terms.items():
                data[i][j][k] = poly
                data[j][i][k] = -poly
        return cls(
            n,
            tuple(tuple(tuple(row) for row in plane) for plane in data),
            parameter,
            _as_domain(domain),
            name,
        )

    def contains(self, t: RationalLike) -> bool:
        """t lies in the domain."""
        if self.domain is None:
            return True
        x = to_rational(t)
        return self.domain[0] <= x <= self.domain[1]

    def at(self, t: RationalLike) -> StructureTensor:
        """Pointwise structure tensor."""
        if not self.contains(t):
            raise DomainError(
                f"{self.parameter}={t} outside [{self.domain[0]}, {self.domain[1]}]"
                if self.domain is not None
                else f"{self.parameter}={t} outside domain"
            )
        x = to_rational(t)
        return StructureTensor(
            self.dim,
            tuple(
                tuple(tuple(p.evaluate(x) for p in row) for row in plane)
                for plane in self.components
            ),
        )

    def derivative(self) -> DeformationFamily:
        """Componentwise derivative in the parameter."""
        return DeformationFamily(
            self.dim,
            tuple(
                tuple(tuple(p.derivative() for p in row) for row in plane)
                for plane in self.components
            ),
            self.parameter,
            self.domain,
            f"d{self.name}",
        )

    def is_constant(self) -> bool:
        """No component depends on the parameter."""
        return all(
            p.is_constant() for plane in self.components for row in plane for p in row
        )

    def iter_components(self) -> Iterator[tuple[int, int, int, PolyCoeff]]:
        """Nonzero components with i < j."""
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(n):
                    poly = self.components[i][j][k]
                    if not poly.is_zero():
                        yield i, j, k, poly


def constant_family(
    f: StructureTensor, domain: tuple[RationalLike, RationalLike] | None = None
) -> DeformationFamily:
    """Family with the same tensor at every parameter value."""
    return DeformationFamily(
        f.dim,
        tuple(
            tuple(tuple(PolyCoeff.constant(x) for x in row) for row in plane)
            for plane in f.components
        ),
        DEFAULT_PARAMETER,
        _as_domain(domain),
        "constant",
    )


def evaluate_family(F: DeformationFamily, t0: RationalLike) -> StructureTensor:
    """Structure tensor of the family at t0."""
    return F.at(t0)


def family_derivative(F: DeformationFamily) -> DeformationFamily:
    """Exact λ-derivative of a family."""
    return F.derivative()


def builtin_family_ni2(
    lam: RationalLike,
    mu: RationalLike,
    alpha: RationalLike,
    domain: tuple[RationalLike, RationalLike] = (0, 1),
) -> DeformationFamily:
    """ℝ ⋉ ℝ² with e_1 acting by diag((1+t)λ, (1+t+αt²)μ)."""
    lam_q, mu_q, alpha_q = to_rational(lam), to_rational(mu), to_rational(alpha)
    if lam_q == 0 or mu_q == 0:
        raise PreconditionError("λ and μ must be nonzero")
    if alpha_q <= 0:
        raise PreconditionError("α must be positive")
    weight_2 = PolyCoeff.from_coeffs(1, 1).scale(lam_q)
    weight_3 = PolyCoeff.from_coeffs(1, 1, alpha_q).scale(mu_q)
    return DeformationFamily.from_brackets(
        3,
        {(0, 1): {1: weight_2}, (0, 2): {2: weight_3}},
        DEFAULT_PARAMETER,
        domain,
        "ni2",
    )


def solvable_ratio_invariant(f: StructureTensor) -> tuple[Fraction, Fraction]:
    """Unordered pair {d2/d3, d3/d2} of the e_1 weights, smaller first."""
    if f.dim != 3:
        raise PreconditionError(f"ratio invariant needs dimension 3, got {f.dim}")
    if any(f[1, 2, k] for k in range(3)):
        raise PreconditionError("e2, e3 do not commute", (1, 2))
    for a in (1, 2):
        if f[0, a, 0]:
            raise PreconditionError("span(e2, e3) is not an ideal", (0, a))
    if f[0, 1, 2] or f[0, 2, 1]:
        raise PreconditionError("ad(e1) is not diagonal on span(e2, e3)", (0, 1))
    d2, d3 = f[0, 1, 1], f[0, 2, 2]
    if d2 == 0 or d3 == 0:
        raise PreconditionError("ad(e1) has a zero weight on span(e2, e3)")
    r = d2 / d3
    return (min(r, 1 / r), max(r, 1 / r))


def variety_dimension_bound(n: int) -> int:
    """Upper bound n²(n−1)/2 on the dimension of the variety of n-dim brackets."""
    return n * n * (n - 1) // 2


def abelian(n: int) -> StructureTensor:
    """n-dimensional abelian algebra."""
    return StructureTensor.zeros(n)


def heisenberg() -> StructureTensor:
    """[e1, e2] = e3."""
    return StructureTensor.from_brackets(3, {(0, 1): {2: 1}})


def so3() -> StructureTensor:
    """f_ij^k = ε_ijk."""
    return StructureTensor.from_brackets(
        3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {1: 1}}
    )


def sl2() -> StructureTensor:
    """Basis (h, e, f): [h, e] = 2e, [h, f] = −2f, [e, f] = h."""
    return StructureTensor.from_brackets(
        3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}
    )


def bianchi_v() -> StructureTensor:
    """[e1, e2] = −e2, [e1, e3] = −e3."""
    return StructureTensor.from_brackets(3, {(0, 1): {1: -1}, (0, 2): {2: -1}})


def two_dim_nonabelian() -> StructureTensor:
    """[e1, e2] = e2."""
    return StructureTensor.from_brackets(2, {(0, 1): {1: 1}})


BUILTIN_ALGEBRAS: Mapping[str, StructureTensor] = {
    "heisenberg": heisenberg(),
    "so3": so3(),
    "sl2": sl2(),
    "aff1": two_dim_nonabelian(),
    "bianchi-v": bianchi_v(),
}
