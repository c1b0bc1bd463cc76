"""JSON interchange for algebras, Hopf algebras, points and reports.

Ring elements travel as decimal strings (``"a/b"`` over QQ) so that large
integers survive consumers with 64-bit number types.
"""

from __future__ import annotations

from .algebra import AugmentedAlgebra, FiniteAlgebra, format_element, make_algebra
from .exactalg import Matrix, RingDescriptor, Submodule
from .hopf import HopfAlgebra, make_hopf

__all__ = [
    "algebra_to_json",
    "algebra_from_json",
    "hopf_to_json",
    "hopf_from_json",
    "submodule_to_json",
    "report_to_json",
    "point_values_from_json",
]


def _s(ring, x) -> str:
    return ring.element_to_json(x)


def algebra_to_json(alg) -> dict:
    """Algebra (or augmented algebra, with its counit) as a JSON-ready dict."""
    counit = None
    if isinstance(alg, AugmentedAlgebra):
        counit = alg.counit
        alg = alg.algebra
    ring = alg.ring
    out = {
        "ring": ring.to_json(),
        "rank": alg.rank,
        "labels": list(alg.labels),
        "unit": [_s(ring, x) for x in alg.unit],
        "mult": [[i, j, k, _s(ring, c)] for i, j, k, c in alg.mult],
    }
    if counit is not None:
        out["counit"] = [_s(ring, x) for x in counit]
    return out


def algebra_from_json(data: dict):
    ring = RingDescriptor.from_json(data["ring"])
    el = ring.element_from_json
    alg = make_algebra(
        ring,
        int(data["rank"]),
        data.get("labels"),
        [(int(i), int(j), int(k), el(c)) for i, j, k, c in data["mult"]],
        [el(x) for x in data["unit"]],
    )
    if "counit" in data:
        return AugmentedAlgebra(alg, tuple(el(x) for x in data["counit"]))
    return alg


def hopf_to_json(h: HopfAlgebra) -> dict:
    ring = h.ring
    out = algebra_to_json(h.aug)
    out["comult"] = [[i, j, k, _s(ring, c)] for i, j, k, c in h.comult]
    if h.antipode is not None:
        out["antipode"] = [[_s(ring, x) for x in r] for r in h.antipode.rows]
    if h.is_constant:
        out["constant"] = True
    return out


def hopf_from_json(data: dict) -> HopfAlgebra:
    aug = algebra_from_json({k: v for k, v in data.items() if k not in ("comult", "antipode", "constant")})
    ring = aug.ring
    el = ring.element_from_json
    anti = None
    if "antipode" in data:
        anti = Matrix.build(ring, [[el(x) for x in r] for r in data["antipode"]])
    comult = [(int(i), int(j), int(k), el(c)) for i, j, k, c in data["comult"]]
    return make_hopf(aug, comult, anti, is_constant=bool(data.get("constant", False)))


def submodule_to_json(sub: Submodule, alg: FiniteAlgebra | None = None) -> dict:
    ring = sub.ring
    out = {
        "ring": ring.to_json(),
        "ambient_rank": sub.ambient_rank,
        "rows": [[_s(ring, x) for x in r] for r in sub.rows],
    }
    if alg is not None:
        out["display"] = [format_element(alg, r) for r in sub.rows]
    return out


def report_to_json(rep, generators=None) -> dict:
    """Serialize a :class:`~hopfscheme.primitive.QuotientSchemeReport`."""
    src = rep.source
    alg = src.algebra if hasattr(src, "algebra") else src
    ring = alg.ring
    out = {
        "source_rank": alg.rank,
        "ideal": submodule_to_json(rep.ideal, alg),
        "rank": rep.rank,
        "is_free": rep.is_free,
        "ideal_is_summand": rep.ideal_is_summand,
        "quotient": algebra_to_json(rep.quotient),
        "projection": [[_s(ring, x) for x in r] for r in rep.projection.rows],
    }
    if generators is not None:
        out["generators"] = [format_element(alg, g) for g in generators]
    if rep.expected_rank is not None:
        out["expected_rank"] = rep.expected_rank
    return out


def point_values_from_json(data: dict):
    """``{"target_ring": ..., "values": [...]}`` -> ``(ring, values)``."""
    ring = RingDescriptor.from_json(data["target_ring"])
    return ring, [ring.element_from_json(str(v)) for v in data["values"]]
