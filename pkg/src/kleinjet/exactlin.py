"""Exact linear algebra over the rationals.

Vectors and matrices are immutable tuples of exact rational scalars, and a
subspace of Q^n is stored by its unique reduced-row-echelon basis.  That
makes subspace equality plain structural equality, and every inclusion or
membership test exact.  There is no floating point anywhere in this
package; strict inclusions between subspaces would be meaningless with
approximate arithmetic.

The rational scalar type is selectable through the ``KLEINJET_RATIONAL``
environment variable:

* ``gmpy2`` -- use ``gmpy2.mpq`` (fast C implementation),
* ``fraction`` -- use ``fractions.Fraction`` (pure stdlib),
* unset/``auto`` -- prefer gmpy2 when importable, else fall back.

Both backends are exact, keep denominators positive, and store values
reduced, so all results (and all serialized output) are bit-identical
across backends.  ``benchmarks/backend_bench.py`` compares their speed.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass


class DimensionError(ValueError):
    """Raised when vector/matrix/subspace shapes do not match."""


_BACKEND_REQUEST = os.environ.get("KLEINJET_RATIONAL", "auto").strip().lower()

if _BACKEND_REQUEST in ("", "auto"):
    try:
        from gmpy2 import mpq as Rational

        BACKEND = "gmpy2"
    except ImportError:  # pragma: no cover - depends on environment
        from fractions import Fraction as Rational

        BACKEND = "fraction"
elif _BACKEND_REQUEST == "gmpy2":
    from gmpy2 import mpq as Rational

    BACKEND = "gmpy2"
elif _BACKEND_REQUEST in ("fraction", "fractions", "stdlib"):
    from fractions import Fraction as Rational

    BACKEND = "fraction"
else:  # pragma: no cover - configuration error
    raise ImportError(
        "KLEINJET_RATIONAL must be 'gmpy2', 'fraction' or 'auto', "
        f"got {_BACKEND_REQUEST!r}"
    )

ZERO = Rational(0)
ONE = Rational(1)

# A Vector is a tuple of Rational; a Matrix is a tuple of row Vectors.
Vector = tuple
Matrix = tuple

_RATIONAL_RE = re.compile(r"^-?[0-9]+(?:/[0-9]+)?$")


def parse_rational(text: str) -> Rational:
    """Parse ``"p"`` or ``"p/q"`` into an exact rational.

    The denominator must be a positive integer literal; ``"p/0"`` and any
    other malformed string are rejected.  Non-reduced input such as
    ``"2/4"`` is accepted and reduced on construction.
    """
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    if "/" in text:
        num_s, den_s = text.split("/")
        den = int(den_s)
        if den == 0:
            raise ValueError(f"zero denominator: {text!r}")
        return Rational(int(num_s), den)
    return Rational(int(text))


def format_rational(value) -> str:
    """Canonical string form: ``"p"`` for integers, else reduced ``"p/q"``."""
    num, den = value.numerator, value.denominator
    return str(num) if den == 1 else f"{num}/{den}"


def rational(value) -> Rational:
    """Coerce an int, rational string, or rational-like value to the scalar type.

    Floats are rejected: the whole toolkit is exact by contract.
    """
    if type(value) is Rational:
        return value
    if isinstance(value, float):
        raise TypeError(f"floating point value {value!r} not allowed in exact arithmetic")
    if isinstance(value, int):
        return Rational(value)
    if isinstance(value, str):
        return parse_rational(value)
    num = getattr(value, "numerator", None)
    den = getattr(value, "denominator", None)
    if num is not None and den is not None:
        return Rational(int(num), int(den))
    raise TypeError(f"cannot interpret {value!r} as a rational scalar")


def vec(entries) -> Vector:
    """Build an immutable rational vector from any iterable of scalars."""
    return tuple(rational(x) for x in entries)


def mat(rows) -> Matrix:
    """Build an immutable rational matrix (tuple of equal-length row vectors)."""
    out = tuple(vec(r) for r in rows)
    if out:
        width = len(out[0])
        for r in out:
            if len(r) != width:
                raise DimensionError("matrix rows have unequal lengths")
    return out


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return (ZERO,) * i + (ONE,) + (ZERO,) * (n - i - 1)


def is_zero_vector(v) -> bool:
    return not any(v)


def vec_add(a, b) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c, v) -> Vector:
    return tuple(c * x for x in v)


def lincomb(coeffs, vectors, n: int) -> Vector:
    """Sparse linear combination sum(coeffs[j] * vectors[j]) in Q^n."""
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if not c:
            continue
        for idx, x in enumerate(v):
            if x:
                out[idx] += c * x
    return tuple(out)


def mat_vec(m, v) -> Vector:
    """Matrix times column vector, skipping zero entries of ``v``."""
    nz = [(j, x) for j, x in enumerate(v) if x]
    out = []
    for row in m:
        acc = ZERO
        for j, x in nz:
            rj = row[j]
            if rj:
                acc += rj * x
        out.append(acc)
    return tuple(out)


def mat_mul(a, b) -> Matrix:
    """Exact matrix product."""
    if a and b and len(a[0]) != len(b):
        raise DimensionError("inner dimensions do not match")
    cols = range(len(b[0])) if b else range(0)
    out = []
    for row in a:
        nz = [(j, x) for j, x in enumerate(row) if x]
        out_row = []
        for c in cols:
            acc = ZERO
            for j, x in nz:
                bjc = b[j][c]
                if bjc:
                    acc += x * bjc
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


def mat_sub(a, b) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _rref_rows(rows: list, ncols: int) -> tuple[list, list]:
    """In-place reduced row echelon form; returns (nonzero rows, pivot cols).

    Gauss-Jordan elimination with leading coefficients normalized to 1 and
    pivot columns cleared above and below.  The result is the unique RREF,
    independent of the input row order, which is what makes every subspace
    representation canonical.
    """
    rows = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    pr = 0
    nrows = len(rows)
    for col in range(ncols):
        pivot_at = None
        for r in range(pr, nrows):
            if rows[r][col]:
                pivot_at = r
                break
        if pivot_at is None:
            continue
        if pivot_at != pr:
            rows[pr], rows[pivot_at] = rows[pivot_at], rows[pr]
        prow = rows[pr]
        lead = prow[col]
        if lead != ONE:
            inv = ONE / lead
            for c in range(col, ncols):
                if prow[c]:
                    prow[c] *= inv
        for r in range(nrows):
            if r == pr:
                continue
            factor = rows[r][col]
            if factor:
                rrow = rows[r]
                for c in range(col, ncols):
                    pc = prow[c]
                    if pc:
                        rrow[c] -= factor * pc
        pivots.append(col)
        pr += 1
        if pr == nrows:
            break
    return rows[:pr], pivots


def rref(m) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form with zero rows dropped.

    Returns ``(reduced, pivot_columns)``; the reduced matrix is the unique
    RREF of the input and the pivot list is strictly increasing.
    """
    rows = [vec(r) for r in m]
    if not rows:
        return (), ()
    ncols = len(rows[0])
    for r in rows:
        if len(r) != ncols:
            raise DimensionError("matrix rows have unequal lengths")
    reduced, pivots = _rref_rows(rows, ncols)
    return tuple(tuple(r) for r in reduced), tuple(pivots)


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n held by its canonical reduced-row-echelon basis.

    Two Subspace values are equal exactly when they describe the same
    subspace, because the RREF basis is unique.  Instances are immutable
    and safe to share between threads.
    """

    ambient_dim: int
    basis: tuple

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise DimensionError("ambient dimension must be positive")
        pivots = []
        prev = -1
        for row in self.basis:
            if len(row) != self.ambient_dim:
                raise DimensionError("basis vector length differs from ambient dimension")
            p = next((j for j, x in enumerate(row) if x), None)
            if p is None:
                raise ValueError("zero row in subspace basis")
            if p <= prev or row[p] != ONE:
                raise ValueError("basis is not in reduced row echelon form")
            prev = p
            pivots.append(p)
        for i, p in enumerate(pivots):
            for j, row in enumerate(self.basis):
                if j != i and row[p]:
                    raise ValueError("pivot column not cleared; basis not canonical")
        object.__setattr__(self, "_pivots", tuple(pivots))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return len(self.basis) == self.ambient_dim

    def residual(self, v) -> Vector:
        """Remainder of ``v`` after eliminating with the basis; zero iff contained."""
        if len(v) != self.ambient_dim:
            raise DimensionError("vector length differs from ambient dimension")
        out = list(v)
        for row, p in zip(self.basis, self._pivots):
            c = out[p]
            if c:
                for j in range(p, self.ambient_dim):
                    rj = row[j]
                    if rj:
                        out[j] -= c * rj
        return tuple(out)

    def contains(self, v) -> bool:
        return not any(self.residual(vec(v)))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def __le__(self, other: "Subspace") -> bool:
        return leq(self, other)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)


def span(vectors, ambient_dim: int) -> Subspace:
    """Canonical subspace spanned by the given vectors of Q^ambient_dim.

    Idempotent: spanning the basis of the result returns an equal value.
    """
    rows = [vec(v) for v in vectors]
    for r in rows:
        if len(r) != ambient_dim:
            raise DimensionError(
                f"vector of length {len(r)} in ambient dimension {ambient_dim}"
            )
    reduced, _ = _rref_rows(rows, ambient_dim)
    return Subspace(ambient_dim, tuple(tuple(r) for r in reduced))


def zero_space(n: int) -> Subspace:
    return Subspace(n, ())


def full_space(n: int) -> Subspace:
    return Subspace(n, tuple(unit_vector(n, i) for i in range(n)))


def contains(s: Subspace, v) -> bool:
    return s.contains(v)


def leq(a: Subspace, b: Subspace) -> bool:
    """Exact inclusion test a <= b."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionError("subspaces live in different ambient spaces")
    if a.dim > b.dim:
        return False
    return all(not any(b.residual(row)) for row in a.basis)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    """Smallest subspace containing both arguments."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionError("subspaces live in different ambient spaces")
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    return span(a.basis + b.basis, a.ambient_dim)


def kernel(m, cols: int | None = None) -> Subspace:
    """Exact nullspace {x : m x = 0} as a canonical subspace of Q^cols.

    ``cols`` may be omitted when the matrix has at least one row; it is
    required for an empty constraint matrix (whose kernel is everything).
    """
    rows = [tuple(r) for r in m]
    if cols is None:
        if not rows:
            raise DimensionError("kernel of an empty matrix needs an explicit column count")
        cols = len(rows[0])
    for r in rows:
        if len(r) != cols:
            raise DimensionError("matrix rows have unequal lengths")
    if not rows:
        return full_space(cols)
    reduced, pivots = _rref_rows(rows, cols)
    pivot_set = set(pivots)
    basis = []
    for f in range(cols):
        if f in pivot_set:
            continue
        v = [ZERO] * cols
        v[f] = ONE
        for row, p in zip(reduced, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(tuple(v))
    return span(basis, cols)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Exact intersection, computed from the kernel of a stacked system.

    A vector in both spans is alpha . A = beta . B; the coefficient pairs
    (alpha, -beta) form the kernel of the matrix [A^T | B^T].
    """
    if a.ambient_dim != b.ambient_dim:
        raise DimensionError("subspaces live in different ambient spaces")
    n = a.ambient_dim
    if a.is_zero() or b.is_zero():
        return zero_space(n)
    if a == b:
        return a
    ra, rb = a.dim, b.dim
    rows = []
    for c in range(n):
        row = tuple(a.basis[i][c] for i in range(ra)) + tuple(b.basis[j][c] for j in range(rb))
        if any(row):
            rows.append(row)
    coeffs = kernel(rows, ra + rb)
    vectors = [lincomb(alpha[:ra], a.basis, n) for alpha in coeffs.basis]
    return span(vectors, n)


def apply_operators_span(operators, s: Subspace) -> Subspace:
    """Span of {A w : A in operators, w in basis of s}.

    Linear in ``s``: the result does not depend on the choice of spanning
    set, since images of a basis span images of everything.
    """
    n = s.ambient_dim
    target = None
    images = []
    for op in operators:
        if op and len(op[0]) != n:
            raise DimensionError("operator column count differs from ambient dimension")
        rows = len(op)
        if target is None:
            target = rows
        elif rows != target:
            raise DimensionError("operators have inconsistent row counts")
        for w in s.basis:
            images.append(mat_vec(op, w))
    if target is None:
        target = n
    return span(images, target)


def relative_invariant(s: Subspace, operators, t: Subspace) -> Subspace:
    """Largest subspace {x in s : A x in t for every operator A}.

    Each operator contributes linear conditions on coordinates of s: the
    residual of A x after eliminating with the basis of t must vanish.
    Operators are applied one at a time, shrinking the candidate space, so
    later solves run on smaller systems.
    """
    if s.ambient_dim != t.ambient_dim:
        raise DimensionError("source and target live in different ambient spaces")
    n = s.ambient_dim
    for op in operators:
        if len(op) != n or (op and len(op[0]) != n):
            raise DimensionError("operators must be square of the ambient dimension")
    cur = s
    for op in operators:
        r = cur.dim
        if r == 0:
            break
        residuals = [t.residual(mat_vec(op, w)) for w in cur.basis]
        rows = []
        for c in range(n):
            row = tuple(res[c] for res in residuals)
            if any(row):
                rows.append(row)
        if not rows:
            continue
        coeffs = kernel(rows, r)
        if coeffs.dim == r:
            continue
        cur = span([lincomb(alpha, cur.basis, n) for alpha in coeffs.basis], n)
    return cur
