"""Jet filtrations on representations.

Builds ascending chains V_1 < V_2 < ... greedily from a start vector,
validates the defining inclusions V_i < span rho(g)(V_i) <= V_{i+1},
decides maximal refinement, and searches start candidates for the longest
chain.  The image set rho(g)(V_i) is always interpreted as the span of
{rho(b) w}, which keeps every strict inclusion decidable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .exactlin import (
    DimensionError,
    Subspace,
    Vector,
    apply_operators_span,
    leq,
    span,
    subspace_sum,
    unit_vector,
    vec,
)
from .liealg import Representation


@dataclass(frozen=True)
class Filtration:
    """A chain of proper nonzero subspaces, ascending or descending.

    Ascending chains implicitly start at {0} and end strictly below the
    full space; descending chains are the same data reversed.  ``stalled``
    marks a greedy run that got trapped in a proper invariant subspace.
    Structural soundness is checked by :func:`check_chain`, not enforced
    here, so that validators can classify broken chains instead of being
    unable to represent them.
    """

    direction: str
    ambient_dim: int
    subspaces: tuple
    rep_id: str | None = None
    stalled: bool = False

    def __post_init__(self):
        if self.direction not in ("ascending", "descending"):
            raise ValueError(f"unknown direction {self.direction!r}")
        for s in self.subspaces:
            if s.ambient_dim != self.ambient_dim:
                raise DimensionError("chain member in wrong ambient space")

    @property
    def length(self) -> int:
        return len(self.subspaces)

    def dims(self) -> tuple:
        return tuple(s.dim for s in self.subspaces)


def check_chain(f: Filtration) -> bool:
    """Structural invariant: strictly nested proper nonzero subspaces."""
    for s in f.subspaces:
        if s.is_zero() or s.is_full():
            return False
    pairs = zip(f.subspaces, f.subspaces[1:])
    if f.direction == "ascending":
        return all(a.dim < b.dim and leq(a, b) for a, b in pairs)
    return all(b.dim < a.dim and leq(b, a) for a, b in pairs)


@dataclass(frozen=True)
class JetSearchResult:
    """Best greedy chain length over a candidate set.

    ``certified_maximal`` is true exactly when the best length reaches the
    hard upper bound d - 1 (a strictly growing chain started from a line
    cannot have more proper terms), in which case no start vector at all,
    tested or not, can do better.  ``witness`` is the first candidate in
    order attaining the best length.
    """

    best_length: int
    witness: Vector
    certified_maximal: bool
    per_candidate: tuple


def image_span(R: Representation, s: Subspace) -> Subspace:
    """Span of {rho(b_i) w : all basis elements, all w spanning s}."""
    if s.ambient_dim != R.space_dim:
        raise DimensionError("subspace must live in the representation space")
    return apply_operators_span(R.matrices, s)


def greedy_chain(R: Representation, v, rep_id: str | None = None) -> Filtration:
    """Grow V_1 = span{v}, V_{i+1} = V_i + image_span(V_i) until V or a stall.

    Returns the proper terms only (the final full space is not stored).
    If growth stops strictly below the full space, the chain is flagged
    ``stalled``; the last stored term is then a proper invariant subspace,
    which is a reducibility witness for the representation.  In ambient
    dimension 1 the chain is empty, because no proper nonzero term exists.
    """
    d = R.space_dim
    v = vec(v)
    if len(v) != d:
        raise DimensionError("start vector must live in the representation space")
    if not any(v):
        raise ValueError("greedy chain needs a nonzero start vector")
    current = span([v], d)
    if current.is_full():
        return Filtration("ascending", d, (), rep_id=rep_id)
    terms = [current]
    while True:
        grown = subspace_sum(current, image_span(R, current))
        if grown.is_full():
            return Filtration("ascending", d, tuple(terms), rep_id=rep_id)
        if grown == current:
            return Filtration("ascending", d, tuple(terms), rep_id=rep_id, stalled=True)
        terms.append(grown)
        current = grown


def validate_jet_filtration(R: Representation, f: Filtration) -> bool:
    """Literal check of V_i < image_span(V_i) <= V_{i+1} with V_{k+1} = V.

    Also requires the structural chain invariant.  Note the first clause
    demands containment of V_i in its own image span, which a greedy chain
    does not automatically satisfy: on the degree-2 symmetric power the
    start vector v1 + v3 grows to the full space in one step, yet
    span{v1 + v3} is not inside span{v2, v1 - v3}.
    """
    if f.direction != "ascending":
        raise ValueError("jet filtrations are ascending chains")
    if f.ambient_dim != R.space_dim:
        raise DimensionError("filtration ambient differs from representation space")
    if not check_chain(f):
        return False
    for idx, term in enumerate(f.subspaces):
        image = image_span(R, term)
        if not (leq(term, image) and term != image):
            return False
        if idx + 1 < len(f.subspaces):
            if not leq(image, f.subspaces[idx + 1]):
                return False
        # last term: image must lie in V, which is automatic
    return True


def is_maximally_refined(R: Representation, f: Filtration) -> bool:
    """No insertable intermediate term exists.

    Decided by V_{i+1} = V_i + image_span(V_i) for every i (with the full
    space as the final successor): any insertable W would have to contain
    that sum while staying strictly below V_{i+1}, a contradiction.
    """
    if not validate_jet_filtration(R, f):
        raise ValueError("maximal refinement is only defined for valid jet filtrations")
    for idx, term in enumerate(f.subspaces):
        grown = subspace_sum(term, image_span(R, term))
        if idx + 1 < len(f.subspaces):
            if grown != f.subspaces[idx + 1]:
                return False
        elif not grown.is_full():
            return False
    return True


def random_candidates(d: int, count: int, seed: int) -> tuple:
    """Deterministic pseudo-random nonzero vectors with entries in -2..2."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        v = tuple(rng.randint(-2, 2) for _ in range(d))
        if any(v):
            out.append(vec(v))
    return tuple(out)


def jet_order_search(
    R: Representation,
    strategy: str = "basis",
    *,
    seed: int = 0,
    random_count: int = 8,
    vectors=None,
) -> JetSearchResult:
    """Longest greedy chain over a finite candidate set of start vectors.

    Strategies: ``basis`` uses the standard basis; ``random`` appends
    ``random_count`` seeded random vectors to the basis; ``explicit`` uses
    ``vectors`` as given.  A stalled run contributes length 0: it produced
    an invariant-subspace witness instead of a jet filtration.  The best
    length is certified as the representation's jet order only when it
    attains the bound d - 1; otherwise it is a lower bound.
    """
    d = R.space_dim
    basis = [unit_vector(d, i) for i in range(d)]
    if strategy == "basis":
        candidates = basis
    elif strategy == "random":
        candidates = basis + list(random_candidates(d, random_count, seed))
    elif strategy == "explicit":
        candidates = [vec(v) for v in (vectors or [])]
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    if not candidates:
        raise ValueError("empty candidate set")
    per_candidate = []
    best_length = -1
    witness = None
    for v in candidates:
        if not any(v):
            raise ValueError("zero vector among candidates")
        chain = greedy_chain(R, v)
        length = 0 if chain.stalled else chain.length
        per_candidate.append((v, length))
        if length > best_length:
            best_length = length
            witness = v
    return JetSearchResult(
        best_length=best_length,
        witness=witness,
        certified_maximal=(best_length == d - 1),
        per_candidate=tuple(per_candidate),
    )


def to_descending(f: Filtration) -> Filtration:
    """Relabel an ascending chain as a descending one (same terms, reversed).

    The top descending term is the largest proper ascending term; nothing
    is added or dropped, so applying the relabel twice is the identity.
    """
    if f.direction != "ascending":
        raise ValueError("expected an ascending filtration")
    return Filtration(
        "descending",
        f.ambient_dim,
        tuple(reversed(f.subspaces)),
        rep_id=f.rep_id,
        stalled=f.stalled,
    )
