"""Structure-constant Lie algebras and their finite-dimensional representations.

An algebra of dimension n is a grid c[i][j] of bracket coordinate vectors,
[b_i, b_j] = sum_k c[i][j][k] b_k, with antisymmetry and the Jacobi
identity as checkable invariants.  A representation attaches one exact
rational d x d matrix per basis element and is validated as a homomorphism.
Everything is immutable and every operation is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .exactlin import (
    DimensionError,
    Matrix,
    Subspace,
    Vector,
    ZERO,
    full_space,
    kernel,
    lincomb,
    mat,
    mat_mul,
    mat_sub,
    mat_vec,
    rational,
    relative_invariant,
    span,
    subspace_sum,
    unit_vector,
    vec,
    zero_space,
    zero_vector,
    apply_operators_span,
)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of an exhaustive identity check.

    ``violations`` holds (identity name, basis indices, discrepancy) tuples
    in lexicographic index order; ``passed`` is true iff it is empty.  For
    representation checks the discrepancy matrix is flattened row-major.
    """

    subject: str
    passed: bool
    violations: tuple = ()


class InvalidAlgebraError(ValueError):
    def __init__(self, report: ValidationReport):
        self.report = report
        lines = ", ".join(f"{name} at {idx}" for name, idx, _ in report.violations[:5])
        super().__init__(f"structure constants are not a Lie algebra: {lines}")


class InvalidRepresentationError(ValueError):
    def __init__(self, report: ValidationReport):
        self.report = report
        lines = ", ".join(f"{name} at {idx}" for name, idx, _ in report.violations[:5])
        super().__init__(f"matrices do not define a representation: {lines}")


@dataclass(frozen=True)
class LieAlgebra:
    """Finite-dimensional Lie algebra given by structure constants."""

    dim: int
    basis_names: tuple
    structure_constants: tuple  # c[i][j] is the coordinate vector of [b_i, b_j]

    def __post_init__(self):
        n = self.dim
        if n < 1:
            raise DimensionError("algebra dimension must be positive")
        if len(self.basis_names) != n or len(self.structure_constants) != n:
            raise DimensionError("structure constant grid does not match dimension")
        for row in self.structure_constants:
            if len(row) != n or any(len(v) != n for v in row):
                raise DimensionError("structure constant grid does not match dimension")
        # sparse view: nonzero (k, coeff) pairs per (i, j), used by brackets
        pairs = tuple(
            tuple(tuple((k, c) for k, c in enumerate(cij) if c) for cij in row)
            for row in self.structure_constants
        )
        object.__setattr__(self, "_pairs", pairs)

    def name_of(self, i: int) -> str:
        return self.basis_names[i]


@dataclass(frozen=True)
class Representation:
    """A Lie algebra together with one matrix per basis element."""

    algebra: LieAlgebra
    space_dim: int
    matrices: tuple  # matrices[i] represents basis element b_i

    def __post_init__(self):
        if self.space_dim < 1:
            raise DimensionError("representation space dimension must be positive")
        if len(self.matrices) != self.algebra.dim:
            raise DimensionError("need exactly one matrix per algebra basis element")
        d = self.space_dim
        for m in self.matrices:
            if len(m) != d or any(len(r) != d for r in m):
                raise DimensionError("representation matrices must be square of the space dimension")


def lie_algebra(basis_names, brackets) -> LieAlgebra:
    """Build an algebra from sparse bracket data {(i, j): {k: coeff}} with i < j.

    Antisymmetric completion is synthesized: c[j][i] = -c[i][j] and
    c[i][i] = 0.  Validity (Jacobi) is not checked here; see validate_lie.
    """
    names = tuple(str(s) for s in basis_names)
    n = len(names)
    grid = [[list(zero_vector(n)) for _ in range(n)] for _ in range(n)]
    for (i, j), coeffs in brackets.items():
        if not (0 <= i < j < n):
            raise ValueError(f"bracket key ({i}, {j}) must satisfy 0 <= i < j < {n}")
        for k, c in coeffs.items():
            if not 0 <= k < n:
                raise ValueError(f"coefficient index {k} out of range for dimension {n}")
            value = rational(c)
            grid[i][j][k] = value
            grid[j][i][k] = -value
    constants = tuple(tuple(tuple(cell) for cell in row) for row in grid)
    return LieAlgebra(n, names, constants)


def abelian_algebra(n: int, basis_names=None) -> LieAlgebra:
    """The n-dimensional algebra with all brackets zero."""
    names = tuple(basis_names) if basis_names else tuple(f"a{i+1}" for i in range(n))
    zero = zero_vector(n)
    constants = tuple(tuple(zero for _ in range(n)) for _ in range(n))
    return LieAlgebra(n, names, constants)


def bracket(L: LieAlgebra, x, y) -> Vector:
    """Bilinear extension of the structure constants; bracket(x, x) = 0."""
    n = L.dim
    x = vec(x)
    y = vec(y)
    if len(x) != n or len(y) != n:
        raise DimensionError(f"bracket arguments must have length {n}")
    out = [ZERO] * n
    pairs = L._pairs
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = pairs[i]
        for j, yj in enumerate(y):
            if not yj:
                continue
            cell = row[j]
            if cell:
                s = xi * yj
                for k, c in cell:
                    out[k] += s * c
    return tuple(out)


def _bracket_basis_basis(L: LieAlgebra, v, j: int) -> Vector:
    """[x, b_j] for a coordinate vector x, skipping zero coordinates."""
    out = [ZERO] * L.dim
    c = L.structure_constants
    for a, xa in enumerate(v):
        if xa:
            for k, ck in L._pairs[a][j]:
                out[k] += xa * ck
    return tuple(out)


def validate_lie(L: LieAlgebra) -> ValidationReport:
    """Exact check of antisymmetry and the Jacobi identity on all basis tuples.

    Both identities are alternating multilinear forms, so pairs are checked
    for i <= j and triples for i < j < k; together with antisymmetry that
    covers every basis tuple.  Violations are reported in lexicographic
    index order, never raised.
    """
    n = L.dim
    c = L.structure_constants
    violations = []
    for i in range(n):
        for j in range(i, n):
            disc = tuple(a + b for a, b in zip(c[i][j], c[j][i]))
            if any(disc):
                violations.append(("antisymmetry", (i, j), disc))
    for i in range(n):
        for j in range(i + 1, n):
            cij = c[i][j]
            for k in range(j + 1, n):
                t1 = _bracket_basis_basis(L, cij, k)
                t2 = _bracket_basis_basis(L, c[j][k], i)
                t3 = _bracket_basis_basis(L, c[k][i], j)
                disc = tuple(a + b + d for a, b, d in zip(t1, t2, t3))
                if any(disc):
                    violations.append(("jacobi", (i, j, k), disc))
    return ValidationReport("algebra", not violations, tuple(violations))


def rho(R: Representation, x) -> Matrix:
    """The matrix representing the algebra element with coordinates x."""
    n = R.algebra.dim
    d = R.space_dim
    x = vec(x)
    if len(x) != n:
        raise DimensionError(f"algebra vector must have length {n}")
    out = [[ZERO] * d for _ in range(d)]
    for i, xi in enumerate(x):
        if not xi:
            continue
        m = R.matrices[i]
        for r in range(d):
            row = m[r]
            for col in range(d):
                if row[col]:
                    out[r][col] += xi * row[col]
    return tuple(tuple(r) for r in out)


def validate_rep(R: Representation) -> ValidationReport:
    """Exact homomorphism check rho([b_i, b_j]) = [rho(b_i), rho(b_j)].

    Both sides are antisymmetric in (i, j), so pairs with i < j cover all
    of them.  A violation carries the discrepancy matrix flattened row-major.
    """
    L = R.algebra
    n = L.dim
    d = R.space_dim
    violations = []
    for i in range(n):
        for j in range(i + 1, n):
            lhs = [[ZERO] * d for _ in range(d)]
            for k, ck in L._pairs[i][j]:
                mk = R.matrices[k]
                for r in range(d):
                    row = mk[r]
                    for col in range(d):
                        if row[col]:
                            lhs[r][col] += ck * row[col]
            commutator = mat_sub(
                mat_mul(R.matrices[i], R.matrices[j]),
                mat_mul(R.matrices[j], R.matrices[i]),
            )
            disc = tuple(
                lhs[r][col] - commutator[r][col] for r in range(d) for col in range(d)
            )
            if any(disc):
                violations.append(("homomorphism", (i, j), disc))
    return ValidationReport("representation", not violations, tuple(violations))


def ad_matrix(L: LieAlgebra, i: int) -> Matrix:
    """Matrix of x -> [b_i, x] in the basis of L."""
    n = L.dim
    c = L.structure_constants
    return tuple(tuple(c[i][j][r] for j in range(n)) for r in range(n))


def ad_matrices(L: LieAlgebra) -> tuple:
    """All adjoint matrices, cached on the algebra."""
    cached = L.__dict__.get("_ad_matrices")
    if cached is None:
        cached = tuple(ad_matrix(L, i) for i in range(L.dim))
        object.__setattr__(L, "_ad_matrices", cached)
    return cached


def adjoint(L: LieAlgebra) -> Representation:
    """The adjoint representation ad(b_i) = [b_i, .] on the algebra itself.

    Raises InvalidAlgebraError for invalid structure constants, since the
    homomorphism property of ad is exactly the Jacobi identity.
    """
    report = validate_lie(L)
    if not report.passed:
        raise InvalidAlgebraError(report)
    return Representation(L, L.dim, ad_matrices(L))


def bracket_span(L: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    """Span of all brackets [x, y], x in a, y in b (basis pairs suffice)."""
    if a.ambient_dim != L.dim or b.ambient_dim != L.dim:
        raise DimensionError("subspaces must live in the algebra")
    vectors = [bracket(L, x, y) for x in a.basis for y in b.basis]
    return span(vectors, L.dim)


def subalgebra_closure(L: LieAlgebra, vectors) -> Subspace:
    """Smallest bracket-closed subspace containing the given vectors."""
    current = span(vectors, L.dim)
    while True:
        brackets = [
            bracket(L, x, y) for x, y in combinations(current.basis, 2)
        ]
        grown = span(current.basis + tuple(brackets), L.dim)
        if grown == current:
            return current
        current = grown


def is_subalgebra(L: LieAlgebra, s: Subspace) -> bool:
    if s.ambient_dim != L.dim:
        raise DimensionError("subspace must live in the algebra")
    return all(
        s.contains(bracket(L, x, y)) for x, y in combinations(s.basis, 2)
    )


def is_ideal(L: LieAlgebra, s: Subspace) -> bool:
    """True iff [L, s] is contained in s."""
    if s.ambient_dim != L.dim:
        raise DimensionError("subspace must live in the algebra")
    for i in range(L.dim):
        for w in s.basis:
            if not s.contains(_bracket_basis_basis(L, w, i)):
                return False
    return True


def is_abelian(L: LieAlgebra, s: Subspace) -> bool:
    if s.ambient_dim != L.dim:
        raise DimensionError("subspace must live in the algebra")
    return all(
        not any(bracket(L, x, y)) for x, y in combinations(s.basis, 2)
    )


def derived_series(L: LieAlgebra, s: Subspace) -> tuple:
    """The chain s >= [s, s] >= [[s, s], [s, s]] >= ... up to stabilization."""
    series = [s]
    while True:
        current = series[-1]
        if current.is_zero():
            return tuple(series)
        nxt = span(
            [bracket(L, x, y) for x, y in combinations(current.basis, 2)], L.dim
        )
        if nxt == current:
            return tuple(series)
        series.append(nxt)


def is_solvable(L: LieAlgebra, s: Subspace) -> bool:
    """True iff the derived series of s reaches the zero subspace."""
    return derived_series(L, s)[-1].is_zero()


def largest_ideal_in(L: LieAlgebra, s: Subspace) -> Subspace:
    """The largest ideal of L contained in s.

    Shrinks I_0 = s by I_{m+1} = {x in I_m : [x, L] in I_m} until stable.
    Every ideal of L inside s survives each step, and the fixpoint is
    ad-invariant, hence an ideal; so the result is the unique maximum.
    """
    if s.ambient_dim != L.dim:
        raise DimensionError("subspace must live in the algebra")
    ads = ad_matrices(L)
    current = s
    while True:
        nxt = relative_invariant(current, ads, current)
        if nxt == current:
            return current
        current = nxt


def stabilizer_in_g(R: Representation, v0: Subspace) -> Subspace:
    """Largest subspace {x in g : rho(x) v0 within v0}; always a subalgebra."""
    n = R.algebra.dim
    d = R.space_dim
    if v0.ambient_dim != d:
        raise DimensionError("subspace must live in the representation space")
    rows = []
    for w in v0.basis:
        residuals = [v0.residual(mat_vec(m, w)) for m in R.matrices]
        for c in range(d):
            row = tuple(res[c] for res in residuals)
            if any(row):
                rows.append(row)
    result = kernel(rows, n) if rows else full_space(n)
    if not is_subalgebra(R.algebra, result):  # pragma: no cover - theorem
        raise AssertionError("stabilizer failed subalgebra check")
    return result


def invariant_closure(R: Representation, v) -> Subspace:
    """Smallest rho(g)-invariant subspace containing v (v must be nonzero)."""
    v = vec(v)
    if len(v) != R.space_dim:
        raise DimensionError("vector must live in the representation space")
    if not any(v):
        raise ValueError("invariant closure of the zero vector is not meaningful")
    current = span([v], R.space_dim)
    while True:
        grown = subspace_sum(current, apply_operators_span(R.matrices, current))
        if grown == current:
            return current
        current = grown


@dataclass(frozen=True)
class ReducibilityVerdict:
    """Either 'reducible' with a proper nonzero invariant witness, or
    'not_disproved'.  Irreducibility is never certified, only refuted."""

    verdict: str
    witness: Subspace | None = None


def irreducibility_scan(R: Representation, extra_candidates=()) -> ReducibilityVerdict:
    """Search for a proper invariant subspace among closures of candidates.

    Candidates are the standard basis vectors followed by the extras, in
    order; the first proper nonzero invariant closure is returned as a
    witness.  Finding none does not certify irreducibility.
    """
    d = R.space_dim
    candidates = [unit_vector(d, i) for i in range(d)]
    candidates.extend(vec(v) for v in extra_candidates)
    for v in candidates:
        if not any(v):
            continue
        closure = invariant_closure(R, v)
        if closure.dim < d:
            return ReducibilityVerdict("reducible", closure)
    return ReducibilityVerdict("not_disproved", None)
