"""Non-null and primitive subschemes, and pointwise tests for sections."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import AugmentedAlgebra, FiniteAlgebra, ideal_generated, quotient_algebra
from .errors import HopfSchemeError, InvalidPoint, RankMismatch
from .exactalg import Matrix, RingDescriptor, RingHom, Submodule, cotype
from .groups import Tower
from .hopf import HopfAlgebra, nonnull_ideal

__all__ = [
    "QuotientSchemeReport",
    "Point",
    "make_point",
    "nonnull_scheme",
    "primitive_scheme",
    "expected_primitive_rank",
    "is_nonnull_point",
    "is_primitive_point",
    "evaluate",
    "primitive_ideal",
    "image_point",
]


@dataclass(frozen=True)
class QuotientSchemeReport:
    """A closed subscheme ``Spec(A/I)`` presented as a finite free algebra."""

    source: object
    ideal: Submodule
    quotient: FiniteAlgebra
    projection: Matrix
    rank: int
    is_free: bool
    ideal_is_summand: bool
    expected_rank: int | None = None


def _algebra_of(x) -> FiniteAlgebra:
    if isinstance(x, HopfAlgebra):
        return x.algebra
    if isinstance(x, AugmentedAlgebra):
        return x.algebra
    return x


def _report(source, ideal: Submodule, expected=None) -> QuotientSchemeReport:
    alg = _algebra_of(source)
    ct = cotype(ideal)
    q, proj = quotient_algebra(alg, ideal)
    return QuotientSchemeReport(
        source=source,
        ideal=ideal,
        quotient=q,
        projection=proj,
        rank=q.rank,
        is_free=ct.is_free_quotient,
        ideal_is_summand=ct.is_direct_summand,
        expected_rank=expected,
    )


def nonnull_scheme(h) -> QuotientSchemeReport:
    """``G^x = Spec(A / J_G)``; expected rank ``|G| - 1``."""
    return _report(h, nonnull_ideal(h), _algebra_of(h).rank - 1)


def expected_primitive_rank(p: int, h: int, i: int) -> int:
    return (p**h - 1) * p ** (h * (i - 1))


def primitive_ideal(tower: Tower, i: int) -> Submodule:
    """Ideal of ``A_i`` generated by the pullback of ``J`` of the first level."""
    if not 1 <= i <= len(tower):
        raise IndexError(f"level {i} outside 1..{len(tower)}")
    j1 = nonnull_ideal(tower.levels[0])
    phi = tower.power_maps[i - 1]
    return ideal_generated(tower.levels[i - 1].algebra, [phi.apply(r) for r in j1.rows]).carrier


def primitive_scheme(tower: Tower, i: int) -> QuotientSchemeReport:
    """Primitive points of level ``i``: the fibre product of ``G_i -> G_1`` with ``G_1^x``.

    Raises :class:`RankMismatch` unless the rank is ``(p^h - 1) p^(h (i - 1))``.
    """
    ideal = primitive_ideal(tower, i)
    expected = expected_primitive_rank(tower.p, tower.h, i)
    rep = _report(tower.levels[i - 1], ideal, expected)
    if rep.rank != expected:
        raise RankMismatch(f"primitive scheme at level {i} has rank {rep.rank}, expected {expected}")
    return rep


# ---------------------------------------------------------------------------
# points


@dataclass(frozen=True)
class Point:
    """An ``R``-valued point: the images in ``R`` of the basis of ``A``."""

    algebra: FiniteAlgebra
    target: RingDescriptor
    base_hom: RingHom
    values: tuple


def make_point(source, values: Sequence, target: RingDescriptor | None = None) -> Point:
    """Validate that ``values`` define a ring map ``A (x) R -> R``."""
    alg = _algebra_of(source)
    target = target or alg.ring
    try:
        hom = RingHom(alg.ring, target)
    except ValueError as exc:
        raise InvalidPoint(str(exc)) from None
    if len(values) != alg.rank:
        raise InvalidPoint(f"expected {alg.rank} values, got {len(values)}")
    vals = tuple(target(v) for v in values)
    if evaluate_raw(hom, alg.unit, vals) != target.one:
        raise InvalidPoint("point does not send 1 to 1")
    for i in range(alg.rank):
        for j in range(i, alg.rank):
            s = 0
            for k, c in alg.product_of_basis(i, j):
                s += hom(c) * vals[k]
            if target(s) != target.mul(vals[i], vals[j]):
                raise InvalidPoint(f"point is not multiplicative on ({alg.labels[i]}, {alg.labels[j]})")
    return Point(alg, target, hom, vals)


def evaluate_raw(hom: RingHom, f: Sequence, values: Sequence):
    t = hom.target
    return t(sum(hom(c) * v for c, v in zip(f, values) if c))


def evaluate(pt: Point, f: Sequence):
    """Value of the function ``f`` (coordinates over k) at the point."""
    return evaluate_raw(pt.base_hom, f, pt.values)


def _kills(pt: Point, ideal: Submodule) -> bool:
    return all(evaluate(pt, r) == 0 for r in ideal.rows)


def is_nonnull_point(h, pt: Point) -> bool:
    """True iff the point kills the non-nullity ideal."""
    if not isinstance(pt, Point):
        raise InvalidPoint("expected a validated Point")
    if pt.algebra != _algebra_of(h):
        raise InvalidPoint("point belongs to a different algebra")
    return _kills(pt, nonnull_ideal(h))


def image_point(tower: Tower, i: int, pt: Point) -> Point:
    """The image of a level-``i`` point under raising to the power ``p^(i-1)``."""
    phi = tower.power_maps[i - 1]
    g1 = tower.levels[0].algebra
    vals = [evaluate(pt, row) for row in phi.rows]
    return make_point(g1, vals, pt.target)


def is_primitive_point(tower: Tower, i: int, pt: Point) -> bool:
    """Primitivity, decided through the image in ``G_1`` and via the primitive ideal."""
    if not isinstance(pt, Point):
        raise InvalidPoint("expected a validated Point")
    if not 1 <= i <= len(tower):
        raise InvalidPoint(f"level {i} outside 1..{len(tower)}")
    if pt.algebra != tower.levels[i - 1].algebra:
        raise InvalidPoint("point is not on the requested level")
    via_image = is_nonnull_point(tower.levels[0], image_point(tower, i, pt))
    via_ideal = _kills(pt, primitive_ideal(tower, i))
    if via_image != via_ideal:
        raise HopfSchemeError("primitivity tests disagree")
    return via_image
