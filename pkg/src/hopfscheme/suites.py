"""Built-in verification suites over the catalog grid.

Each suite returns a list of :class:`Check` records in a deterministic order.
The CLI ``verify`` command and the acceptance tests both run these.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from .algebra import format_element, tensor_maps
from .errors import HopfSchemeError
from .exactalg import (
    QQ,
    ZZ,
    Matrix,
    RingDescriptor,
    RingHom,
    Zmod,
    canonical_form,
    cotype,
    free_basis,
    intersection,
    submodule_sum,
)
from .groups import (
    alpha_p,
    constant_group,
    constant_ses,
    make_tower,
    mu,
    mu_ses,
    oort_tate_algebra,
    product_ses,
    raynaud_algebra,
)
from .hopf import (
    duality_report,
    extension_report,
    haar_measure,
    hopf_base_change,
    hopf_product,
    integrate_in_stages,
    invariant_measures,
    is_etale_known,
    jabc_verify,
    nonnull_ideal,
)
from .primitive import (
    expected_primitive_rank,
    is_nonnull_point,
    make_point,
    nonnull_scheme,
    primitive_scheme,
)

GRID_RINGS = (ZZ, QQ, Zmod(2), Zmod(3), Zmod(4), Zmod(9), Zmod(8), Zmod(27))
CONSTANT_ORDERS = ((1,), (2,), (3,), (4,), (2, 2), (5,), (6,), (7,), (8,), (2, 4), (2, 2, 2), (9,), (3, 3))
MU_ORDERS = (2, 3, 4, 8, 9)


@dataclass(frozen=True)
class Check:
    check: str
    subject: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"check": self.check, "subject": self.subject, "pass": self.passed, "detail": self.detail}


def catalog_groups(ring: RingDescriptor):
    """``(name, HopfAlgebra)`` for every catalog group defined over ``ring``."""
    out = []
    for orders in CONSTANT_ORDERS:
        out.append(("constant:" + "x".join(map(str, orders)), constant_group(orders, ring)))
    for n in MU_ORDERS:
        out.append((f"mu:{n}", mu(n, ring)))
    for p in (2, 3):
        if ring(p) == 0:
            out.append((f"alpha:{p}", alpha_p(p, ring)))
    out.append(("mu:2*mu:2", hopf_product(mu(2, ring), mu(2, ring))))
    out.append(("mu:3*mu:3", hopf_product(mu(3, ring), mu(3, ring))))
    out.append(("mu:2*constant:2", hopf_product(mu(2, ring), constant_group([2], ring))))
    out.append(("mu:3*constant:3", hopf_product(mu(3, ring), constant_group([3], ring))))
    return out


def _subject(name, ring):
    return f"{name} @ {ring.spec}"


def _guard(checks: list, check: str, subject: str, fn: Callable[[], tuple]):
    """Run one check, turning exceptions into failures."""
    try:
        ok, detail = fn()
    except HopfSchemeError as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    checks.append(Check(check, subject, bool(ok), detail))


# ---------------------------------------------------------------------------


def suite_ranklaw(rings=GRID_RINGS) -> list[Check]:
    """``rank(G^x) = |G| - 1`` with a rank-1 summand ideal, and the etale splitting."""
    checks: list[Check] = []
    for ring in rings:
        for name, h in catalog_groups(ring):
            subj = _subject(name, ring)

            def rank_law(h=h):
                rep = nonnull_scheme(h)
                ok = rep.rank == h.rank - 1 and rep.ideal_is_summand and rep.ideal.rank == 1
                return ok, f"rank {rep.rank}, expected {h.rank - 1}"

            _guard(checks, "rank_law", subj, rank_law)
            if is_etale_known(h):

                def etale_split(h=h):
                    i = h.aug.augmentation_ideal().carrier
                    j = nonnull_ideal(h)
                    return submodule_sum(i, j).is_whole() and intersection(i, j).is_zero, ""

                _guard(checks, "etale_split", subj, etale_split)
    return checks


def suite_raynaud(rings=GRID_RINGS) -> list[Check]:
    """Invariant measures form a rank-1 summand, pair perfectly with J, and give ``A (x) D = A'``."""
    checks: list[Check] = []
    for ring in rings:
        for name, h in catalog_groups(ring):
            subj = _subject(name, ring)

            def structure(h=h):
                d = invariant_measures(h)
                rep = duality_report(h)
                ok = (
                    d.rank == 1
                    and cotype(d).is_direct_summand
                    and rep.pairing_is_perfect
                    and rep.measure_iso_holds
                    and rep.haar_generator is not None
                )
                return ok, f"pairing {ring.format(rep.pairing_value)}"

            _guard(checks, "raynaud_structure", subj, structure)
    return checks


def oort_tate_cases():
    for p in (2, 3, 5):
        for ring in (Zmod(p**3), Zmod(p)):
            for a in sorted({0, 1, p, p * p - p}):
                yield p, a, ring


def suite_formulas() -> list[Check]:
    """Closed forms for J: ``x^(p-1) - a`` and ``(x1...xn)^(p-1) - d1...dn``."""
    checks: list[Check] = []
    for p, a, ring in oort_tate_cases():

        def ot(p=p, a=a, ring=ring):
            aug = oort_tate_algebra(p, a, ring)
            gen = [ring(-a)] + [0] * (p - 2) + [1]
            want = canonical_form(ring, p, [gen])
            got = nonnull_ideal(aug)
            return got == want, format_element(aug.algebra, free_basis(got)[0])

        _guard(checks, "oort_tate", _subject(f"oort-tate:{p}:{a}", ring), ot)
    ring = Zmod(4)
    for d1, d2 in itertools.product(range(4), repeat=2):

        def ray(d1=d1, d2=d2):
            aug = raynaud_algebra(2, [d1, d2], ring)
            gen = [ring(-d1 * d2), 0, 0, 1]
            return nonnull_ideal(aug) == canonical_form(ring, 4, [gen]), ""

        _guard(checks, "raynaud_group", _subject(f"raynaud:2:{d1},{d2}", ring), ray)
    return checks


def product_cases(rings=(ZZ, Zmod(2), Zmod(3))):
    for ring in rings:
        yield "mu:2*mu:2", mu(2, ring), mu(2, ring), ring
        yield "mu:3*mu:3", mu(3, ring), mu(3, ring), ring
        yield "mu:3*constant:3", mu(3, ring), constant_group([3], ring), ring


def suite_products() -> list[Check]:
    """``J_{G1 x G2} = J_1 (x) J_2``."""
    checks: list[Check] = []
    for name, h1, h2, ring in product_cases():

        def prod(h1=h1, h2=h2, ring=ring):
            j = nonnull_ideal(hopf_product(h1, h2))
            j1, j2 = nonnull_ideal(h1), nonnull_ideal(h2)
            kron = tensor_maps(Matrix(ring, j1.rows), Matrix(ring, j2.rows))
            return j == canonical_form(ring, h1.rank * h2.rank, kron.rows), ""

        _guard(checks, "product_formula", _subject(name, ring), prod)
    return checks


def ses_catalog(ring: RingDescriptor):
    out = []
    for p in (2, 3):
        out.append((f"mu:{p}<mu:{p * p}", mu_ses(p, ring)))
        out.append((f"constant:{p}<constant:{p * p}", constant_ses(p, ring)))
        out.append((f"mu:{p}<mu:{p}*constant:{p}", product_ses(mu(p, ring), constant_group([p], ring))))
        out.append((f"constant:{p}<constant:{p}*mu:{p}", product_ses(constant_group([p], ring), mu(p, ring))))
    return out


def suite_extensions(rings=GRID_RINGS) -> list[Check]:
    """The ideal identity for extensions and the inclusion/cartesian statements."""
    checks: list[Check] = []
    for ring in rings:
        for name, ses in ses_catalog(ring):
            subj = _subject(name, ring)
            _guard(checks, "jabc", subj, lambda ses=ses: (jabc_verify(ses), ""))

            def ext(ses=ses):
                rep = extension_report(ses)
                ok = rep.h_inclusion_ok and rep.pullback_inclusion_ok and (rep.square_cartesian or not rep.k_etale)
                return ok, f"cartesian={rep.square_cartesian} k_etale={rep.k_etale}"

            _guard(checks, "extension_inclusions", subj, ext)

    def counterexample():
        rep = extension_report(mu_ses(2, Zmod(2)))
        return rep.h_inclusion_ok and not rep.square_cartesian and rep.restricted_ideal.is_zero, ""

    _guard(checks, "non_etale_counterexample", _subject("mu:2<mu:4", Zmod(2)), counterexample)
    return checks


def suite_stages(rings=GRID_RINGS) -> list[Check]:
    """Integration in stages on the SES catalog."""
    checks: list[Check] = []
    for ring in rings:
        for name, ses in ses_catalog(ring):

            def stages(ses=ses):
                mh, mk = haar_measure(ses.B), haar_measure(ses.C)
                if mh is None or mk is None:
                    return False, "no Haar measure"
                mg = integrate_in_stages(ses, mh, mk)
                d = invariant_measures(ses.A)
                ok = d.contains(mg.coords) and canonical_form(ring, ses.A.rank, [mg.coords]) == d
                ok = ok and ring.ideal_is_whole(mg.coords)
                return ok, ""

            _guard(checks, "integration_in_stages", _subject(name, ring), stages)
    return checks


def tower_cases(p: int, r: int, ring: RingDescriptor):
    yield "mu", make_tower("mu", p, r, ring)
    yield "constant:h1", make_tower("constant", p, r, ring, h=1)
    yield "constant:h2", make_tower("constant", p, r, ring, h=2)
    yield "mu*mu", make_tower("product", p, r, ring, factors=(make_tower("mu", p, r, ring),) * 2)
    yield "mu*constant", make_tower(
        "product", p, r, ring, factors=(make_tower("mu", p, r, ring), make_tower("constant", p, r, ring, h=1))
    )


def suite_towers(rings=(ZZ,)) -> list[Check]:
    """Primitive rank law ``(p^h - 1) p^(h (i - 1))`` at every level."""
    checks: list[Check] = []
    for ring in rings:
        for p in (2, 3):
            for r in (1, 2):
                for name, tower in tower_cases(p, r, ring):
                    for i in range(1, r + 1):

                        def prim(tower=tower, i=i):
                            rep = primitive_scheme(tower, i)
                            want = expected_primitive_rank(tower.p, tower.h, i)
                            return rep.rank == want, f"rank {rep.rank}, expected {want}"

                        subj = _subject(f"tower:{name}:p={p}:r={r}:level={i}", ring)
                        _guard(checks, "primitive_rank", subj, prim)
    return checks


def _cyclotomic(p, y, ring):
    return ring(sum(ring(y) ** k for k in range(p)))


def suite_points() -> list[Check]:
    checks: list[Check] = []

    def zeta4():
        g = mu(3, ZZ)
        pt = make_point(g, [1, 4, 16], Zmod(9))
        return not is_nonnull_point(g, pt), ""

    _guard(checks, "point", "zeta=4 in mu:3(Z/9)", zeta4)

    def one_f3():
        g = mu(3, ZZ)
        return is_nonnull_point(g, make_point(g, [1, 1, 1], Zmod(3))), ""

    _guard(checks, "point", "zeta=1 in mu:3(F_3)", one_f3)

    for p in (2, 3):
        for target in (Zmod(p), Zmod(p * p)):
            g = hopf_product(mu(p, ZZ), mu(p, ZZ))
            for y in range(target.modulus):
                if pow(y, p, target.modulus) != 1 % target.modulus:
                    continue

                def pair(g=g, y=y, target=target, p=p):
                    vals = [target(1 * y**b) for a in range(p) for b in range(p)]
                    got = is_nonnull_point(g, make_point(g, vals, target))
                    want = target.mul(p, _cyclotomic(p, y, target)) == 0
                    return got == want, f"non-null={got}"

                _guard(checks, "pair_point", f"(1,{y}) in mu:{p}*mu:{p}({target})", pair)

    for orders in CONSTANT_ORDERS:
        g = constant_group(orders, ZZ)

        def sections(g=g):
            found = set()
            for vals in itertools.product((0, 1), repeat=g.rank):
                try:
                    pt = make_point(g, vals, ZZ)
                except HopfSchemeError:
                    continue
                if is_nonnull_point(g, pt):
                    found.add(vals.index(1))
            return found == set(range(1, g.rank)), ""

        _guard(checks, "constant_sections", "constant:" + "x".join(map(str, orders)), sections)
    return checks


def base_change_pairs():
    homs = [RingHom(ZZ, t) for t in GRID_RINGS if t != ZZ]
    homs += [
        RingHom(Zmod(4), Zmod(2)),
        RingHom(Zmod(8), Zmod(4)),
        RingHom(Zmod(8), Zmod(2)),
        RingHom(Zmod(9), Zmod(3)),
        RingHom(Zmod(27), Zmod(9)),
        RingHom(Zmod(27), Zmod(3)),
    ]
    for hom in homs:
        for name, h in catalog_groups(hom.source):
            try:
                hopf_base_change(h, hom)
            except HopfSchemeError:
                continue
            yield name, h, hom


def suite_basechange() -> list[Check]:
    checks: list[Check] = []
    for name, h, hom in base_change_pairs():

        def bc(h=h, hom=hom):
            pushed = canonical_form(hom.target, h.rank, [hom.apply_vector(r) for r in nonnull_ideal(h).rows])
            return pushed == nonnull_ideal(hopf_base_change(h, hom)), ""

        _guard(checks, "base_change", f"{name} @ {hom.source.spec}->{hom.target.spec}", bc)
    return checks


SUITES: dict[str, Callable[[], list[Check]]] = {
    "ranklaw": suite_ranklaw,
    "raynaud": suite_raynaud,
    "formulas": suite_formulas,
    "products": suite_products,
    "extensions": suite_extensions,
    "stages": suite_stages,
    "towers": suite_towers,
    "points": suite_points,
    "basechange": suite_basechange,
}


def run_suite(name: str) -> list[Check]:
    if name == "all":
        return [c for key in SUITES for c in SUITES[key]()]
    return SUITES[name]()
