"""Hopf algebras, Cartier duality, invariant measures and the non-nullity ideal.

Measures are elements of the dual algebra ``A'`` written in the dual basis:
``coords[i] = <mu, e_i>``.  Convolution of measures, the action of measures
on functions (``sweep``) and of functions on measures (``scale_measure``)
are all read off the structure tensors.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import (
    AugmentedAlgebra,
    FiniteAlgebra,
    Ideal,
    annihilator,
    base_change,
    ideal_generated,
    ideal_product,
    is_algebra_hom,
    make_algebra,
    mult_matrix,
    multiply,
    tensor_maps,
    tensor_product,
)
from .errors import (
    AntipodeFails,
    CounitLawFails,
    ExactAlgError,
    HopfSchemeError,
    InputNotInvariant,
    KernelMismatch,
    LiftFailed,
    NotBialgebra,
    NotCoassociative,
    NotCocommutative,
    NotHopfHom,
    NotInjective,
    NotSurjective,
    RankMismatch,
    RankNotOne,
)
from .exactalg import (
    Matrix,
    RingDescriptor,
    RingHom,
    Submodule,
    canonical_form,
    cotype,
    free_basis,
    image,
    kernel,
    preimage,
    solve_left,
    submodule_compare,
)

__all__ = [
    "HopfAlgebra",
    "Measure",
    "ShortExactSequence",
    "DualityReport",
    "ExtensionReport",
    "make_hopf",
    "cartier_dual",
    "nonnull_ideal",
    "invariant_measures",
    "star_measures",
    "sweep",
    "scale_measure",
    "pairing",
    "duality_report",
    "hopf_product",
    "is_hopf_hom",
    "verify_ses",
    "integrate_in_stages",
    "integration_operator",
    "jabc_verify",
    "extension_report",
    "hopf_base_change",
    "haar_measure",
    "is_etale_known",
]


@dataclass(frozen=True, eq=False)
class HopfAlgebra:
    """Commutative, cocommutative Hopf algebra: the coordinate ring of a finite group scheme.

    ``comult`` holds entries ``(i, j, k, c)``: the coefficient of
    ``e_j (x) e_k`` in ``Delta(e_i)``.  ``is_constant`` records that the group
    was built as a constant group (hence is known to be etale).
    """

    aug: AugmentedAlgebra
    comult: tuple
    antipode: Matrix | None = None
    is_constant: bool = False
    _co: tuple = field(default=None, repr=False)

    def __post_init__(self):
        co = [[] for _ in range(self.aug.rank)]
        for i, j, k, c in self.comult:
            co[i].append((j, k, c))
        object.__setattr__(self, "_co", tuple(tuple(x) for x in co))

    @property
    def algebra(self) -> FiniteAlgebra:
        return self.aug.algebra

    @property
    def ring(self) -> RingDescriptor:
        return self.aug.ring

    @property
    def rank(self) -> int:
        return self.aug.rank

    @property
    def counit(self) -> tuple:
        return self.aug.counit

    @property
    def unit(self) -> tuple:
        return self.aug.algebra.unit

    @property
    def labels(self) -> tuple:
        return self.algebra.labels

    def delta(self, i: int) -> tuple:
        return self._co[i]

    def same_structure(self, other: "HopfAlgebra") -> bool:
        return (
            self.algebra.same_structure(other.algebra)
            and self.counit == other.counit
            and self.comult == other.comult
        )

    def __eq__(self, other):
        if not isinstance(other, HopfAlgebra):
            return NotImplemented
        return self.same_structure(other) and self.labels == other.labels and self.antipode == other.antipode

    def __hash__(self):
        return hash((self.algebra, self.counit, self.comult))

    def __repr__(self):
        return f"HopfAlgebra(rank={self.rank}, ring={self.ring}, labels={list(self.labels)})"


@dataclass(frozen=True)
class Measure:
    parent: HopfAlgebra
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.parent.rank:
            raise ExactAlgError("measure has the wrong length")

    def __eq__(self, other):
        return isinstance(other, Measure) and self.coords == other.coords and self.parent is other.parent


def _as_coords(mu) -> tuple:
    return mu.coords if isinstance(mu, Measure) else tuple(mu)


# ---------------------------------------------------------------------------
# construction and validation


def _norm_comult(ring, entries) -> tuple:
    acc: dict = {}
    for i, j, k, c in entries:
        key = (int(i), int(j), int(k))
        acc[key] = ring.add(acc.get(key, ring.zero), ring(c))
    return tuple(sorted((i, j, k, c) for (i, j, k), c in acc.items() if c))


def _add_into(ring, acc: dict, key, c):
    v = ring.add(acc.get(key, ring.zero), c)
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _comult_of_vector(h: HopfAlgebra, v: Sequence) -> dict:
    ring = h.ring
    out: dict = {}
    for i, a in enumerate(v):
        if a:
            for j, k, c in h.delta(i):
                _add_into(ring, out, (j, k), ring.mul(a, c))
    return out


def _tensor_product_sparse(alg: FiniteAlgebra, x: dict, y: dict) -> dict:
    """Product in ``A (x) A`` of two sparse tensors ``{(a, b): c}``."""
    by_first: dict[int, list] = {}
    for (a2, b2), c2 in y.items():
        by_first.setdefault(a2, []).append((b2, c2))
    out: dict = defaultdict(int)
    table = alg._table
    for (a1, b1), c1 in x.items():
        for a2 in alg._nbrs[a1]:
            rest = by_first.get(a2)
            if not rest:
                continue
            pa = table[a1, a2]
            for b2, c2 in rest:
                pb = table.get((b1, b2))
                if not pb:
                    continue
                cc = c1 * c2
                for ka, ca in pa:
                    for kb, cb in pb:
                        out[ka, kb] += cc * ca * cb
    return alg.ring.finish(out)


def make_hopf(
    aug: AugmentedAlgebra,
    comult,
    antipode: Matrix | None = None,
    *,
    is_constant: bool = False,
) -> HopfAlgebra:
    """Validate the Hopf axioms and build the Hopf algebra.

    Checked in order: counit law, coassociativity, compatibility of the
    comultiplication with the product, cocommutativity, antipode (if given).
    """
    ring = aug.ring
    n = aug.rank
    entries = [tuple(e) for e in comult]
    for i, j, k, _ in entries:
        if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
            raise ExactAlgError(f"comultiplication index ({i}, {j}, {k}) out of range for rank {n}")
    if antipode is not None and antipode.shape != (n, n):
        raise ExactAlgError("antipode has the wrong shape")
    h = HopfAlgebra(aug, _norm_comult(ring, entries), antipode, is_constant)
    d = aug.counit
    alg = aug.algebra

    for i in range(n):
        left = [ring.zero] * n
        right = [ring.zero] * n
        for j, k, c in h.delta(i):
            left[k] = ring.add(left[k], ring.mul(d[j], c))
            right[j] = ring.add(right[j], ring.mul(d[k], c))
        e = alg.basis_vector(i)
        if tuple(left) != e or tuple(right) != e:
            raise CounitLawFails(f"counit law fails on basis element {alg.labels[i]}")

    for i in range(n):
        lhs: dict = defaultdict(int)
        rhs: dict = defaultdict(int)
        for j, k, c in h.delta(i):
            for a, b, c2 in h.delta(j):
                lhs[a, b, k] += c * c2
            for a, b, c2 in h.delta(k):
                rhs[j, a, b] += c * c2
        if ring.finish(lhs) != ring.finish(rhs):
            raise NotCoassociative(f"comultiplication is not coassociative on {alg.labels[i]}")

    if _comult_of_vector(h, alg.unit) != _tensor_unit(alg):
        raise NotBialgebra("Delta(1) != 1 (x) 1")
    deltas = [dict(((j, k), c) for j, k, c in h.delta(i)) for i in range(n)]
    for i in range(n):
        for j in range(i, n):
            lhs = defaultdict(int)
            for k, c in alg.product_of_basis(i, j):
                for key, c2 in deltas[k].items():
                    lhs[key] += c * c2
            if ring.finish(lhs) != _tensor_product_sparse(alg, deltas[i], deltas[j]):
                raise NotBialgebra(f"Delta(e_{i} e_{j}) != Delta(e_{i}) Delta(e_{j})")

    index = {(i, j, k): c for i, j, k, c in h.comult}
    for i in range(n):
        for j, k, c in h.delta(i):
            if index.get((i, k, j)) != c:
                raise NotCocommutative(f"Delta({alg.labels[i]}) is not symmetric")

    if antipode is not None:
        srows = [[(t, x) for t, x in enumerate(r) if x] for r in antipode.rows]
        for i in range(n):
            acc: dict = defaultdict(int)
            for j, k, c in h.delta(i):
                for t, x in srows[j]:
                    for m, y in alg.product_of_basis(t, k):
                        acc[m] += c * x * y
            expected = {m: ring.mul(d[i], u) for m, u in enumerate(alg.unit)}
            if ring.finish(acc) != ring.finish(expected):
                raise AntipodeFails(f"antipode axiom fails on {alg.labels[i]}")
    return h


def _tensor_unit(alg: FiniteAlgebra) -> dict:
    ring = alg.ring
    out: dict = {}
    for a, x in enumerate(alg.unit):
        for b, y in enumerate(alg.unit):
            if x and y:
                _add_into(ring, out, (a, b), ring.mul(x, y))
    return out


def _dual_label(lab: str) -> str:
    if lab.startswith("d(") and lab.endswith(")"):
        return lab[2:-1]
    return f"d({lab})"


def cartier_dual(h: HopfAlgebra) -> HopfAlgebra:
    """The Hopf algebra of the Cartier dual, on the dual basis.

    Product and coproduct tensors are exchanged, unit and counit swap roles.
    Applying it twice returns the original tensors exactly.
    """
    ring = h.ring
    alg = h.algebra
    n = h.rank
    dual_mult = [(j, k, i, c) for i, j, k, c in h.comult]
    dual_comult = []
    for i, j, k, c in alg.mult:
        dual_comult.append((k, i, j, c))
        if i != j:
            dual_comult.append((k, j, i, c))
    labels = tuple(_dual_label(l) for l in alg.labels)
    a2 = make_algebra(ring, n, labels, dual_mult, h.counit)
    aug2 = AugmentedAlgebra(a2, alg.unit)
    anti = h.antipode.T if h.antipode is not None else None
    return make_hopf(aug2, dual_comult, anti)


def is_etale_known(h: HopfAlgebra) -> bool:
    """Etale by construction: constant groups, or anything over QQ."""
    return h.is_constant or h.ring.kind == "q"


# ---------------------------------------------------------------------------
# measures


def pairing(mu, f: Sequence):
    """``<mu, f>``."""
    coords = _as_coords(mu)
    ring = mu.parent.ring if isinstance(mu, Measure) else None
    s = 0
    for a, b in zip(coords, f):
        if a and b:
            s += a * b
    return ring(s) if ring is not None else s


def star_measures(h: HopfAlgebra, mu, nu) -> Measure:
    """Convolution: ``<mu * nu, f> = (mu (x) nu)(Delta f)``."""
    ring = h.ring
    m, v = _as_coords(mu), _as_coords(nu)
    out = []
    for i in range(h.rank):
        s = 0
        for j, k, c in h.delta(i):
            if m[j] and v[k]:
                s += c * m[j] * v[k]
        out.append(ring(s))
    return Measure(h, tuple(out))


def sweep(h: HopfAlgebra, mu, f: Sequence) -> tuple:
    """Convolution of a function by a measure: ``(mu (x) id)(Delta f)``."""
    ring = h.ring
    m = _as_coords(mu)
    out = [0] * h.rank
    for i, a in enumerate(f):
        if not a:
            continue
        for j, k, c in h.delta(i):
            if m[j]:
                out[k] += a * c * m[j]
    return tuple(ring(x) for x in out)


def scale_measure(h: HopfAlgebra, f: Sequence, mu) -> Measure:
    """``<f mu, g> = <mu, f g>``."""
    ring = h.ring
    m = _as_coords(mu)
    fm = mult_matrix(h.algebra, f)  # row i = e_i * f
    return Measure(h, tuple(ring(sum(a * b for a, b in zip(fm.rows[i], m))) for i in range(h.rank)))


def _augmentation(h) -> Ideal:
    aug = h.aug if isinstance(h, HopfAlgebra) else h
    return aug.augmentation_ideal()


def nonnull_ideal(h) -> Submodule:
    """The non-nullity ideal: annihilator of the augmentation ideal.

    Computed twice, as the annihilator and from ``g f = delta(g) f`` for all
    basis ``g``; the two must agree.  Accepts a Hopf algebra or an augmented
    algebra.
    """
    aug = h.aug if isinstance(h, HopfAlgebra) else h
    alg = aug.algebra
    ring = alg.ring
    n = alg.rank
    ann = annihilator(alg, aug.augmentation_ideal())
    blocks = []
    for g in range(n):
        lg = mult_matrix(alg, alg.basis_vector(g)).rows
        dg = aug.counit[g]
        blocks.append([tuple(ring.sub(x, dg if j == i else ring.zero) for j, x in enumerate(r)) for i, r in enumerate(lg)])
    stacked = Matrix(ring, tuple(sum((b[i] for b in blocks), ()) for i in range(n)))
    direct = kernel(stacked, n)
    if direct != ann:
        raise HopfSchemeError("annihilator and invariance computations of J disagree")
    return ann


def invariant_measures(h: HopfAlgebra) -> Submodule:
    """Invariant measures, as a submodule of ``A'`` in dual coordinates.

    Equal to the non-nullity ideal of the Cartier dual; cross-checked against
    the system ``nu * mu = <nu, 1> mu`` for all basis measures ``nu``.
    """
    ring = h.ring
    n = h.rank
    d = nonnull_ideal(cartier_dual(h))
    # direct system: row k of block j is (eps_j * eps_k) - unit_j * eps_k
    blocks = [[[ring.zero] * n for _ in range(n)] for _ in range(n)]
    for i, j, k, c in h.comult:
        blocks[j][k][i] = ring.add(blocks[j][k][i], c)
    for j in range(n):
        u = h.unit[j]
        if u:
            for k in range(n):
                blocks[j][k][k] = ring.sub(blocks[j][k][k], u)
    stacked = Matrix(ring, tuple(tuple(x for b in blocks for x in b[k]) for k in range(n)))
    direct = kernel(stacked, n)
    if direct != d:
        raise HopfSchemeError("two computations of the invariant measures disagree")
    ct = cotype(d)
    if d.rank != 1 or not ct.is_direct_summand:
        raise RankNotOne(f"invariant measures have rank {d.rank}, summand={ct.is_direct_summand}")
    return d


def haar_measure(h: HopfAlgebra) -> Measure | None:
    """A generator of the invariant measures that is surjective, if any."""
    gen = free_basis(invariant_measures(h))[0]
    if h.ring.ideal_is_whole(gen):
        return Measure(h, gen)
    return None


@dataclass(frozen=True)
class DualityReport:
    pairing_is_perfect: bool
    measure_iso_holds: bool
    haar_generator: Measure | None
    measure_generator: tuple
    nonnull_generator: tuple
    pairing_value: object


def duality_report(h: HopfAlgebra) -> DualityReport:
    ring = h.ring
    d = invariant_measures(h)
    j = nonnull_ideal(h)
    mu0 = free_basis(d)[0]
    f0 = free_basis(j)[0]
    val = ring(sum(a * b for a, b in zip(mu0, f0)))
    rows = [scale_measure(h, h.algebra.basis_vector(i), mu0).coords for i in range(h.rank)]
    iso = canonical_form(ring, h.rank, rows).is_whole()
    haar = Measure(h, mu0) if ring.ideal_is_whole(mu0) else None
    return DualityReport(ring.is_unit(val), iso, haar, mu0, f0, val)


# ---------------------------------------------------------------------------
# products and base change


def hopf_product(h1: HopfAlgebra, h2: HopfAlgebra) -> HopfAlgebra:
    """Coordinate ring of ``G1 x G2``: basis ``e_i (x) f_j`` at ``i * rank(H2) + j``."""
    ring = h1.ring
    n2 = h2.rank
    alg = tensor_product(h1.algebra, h2.algebra)
    counit = tuple(ring.mul(a, b) for a in h1.counit for b in h2.counit)
    comult = []
    for i in range(h1.rank):
        for j in range(n2):
            for a, b, c1 in h1.delta(i):
                for c, d, c2 in h2.delta(j):
                    comult.append((i * n2 + j, a * n2 + c, b * n2 + d, ring.mul(c1, c2)))
    anti = None
    if h1.antipode is not None and h2.antipode is not None:
        anti = tensor_maps(h1.antipode, h2.antipode)
    return make_hopf(
        AugmentedAlgebra(alg, counit), comult, anti, is_constant=h1.is_constant and h2.is_constant
    )


def hopf_base_change(h: HopfAlgebra, hom: RingHom) -> HopfAlgebra:
    t = hom.target
    alg = base_change(h.algebra, hom)
    aug = AugmentedAlgebra(alg, hom.apply_vector(h.counit))
    comult = [(i, j, k, t(c)) for i, j, k, c in h.comult]
    anti = Matrix.build(t, h.antipode.rows) if h.antipode is not None else None
    return make_hopf(aug, comult, anti, is_constant=h.is_constant)


def is_hopf_hom(h1: HopfAlgebra, h2: HopfAlgebra, m: Matrix) -> bool:
    """Algebra map compatible with counits and comultiplications."""
    ring = h1.ring
    if not is_algebra_hom(h1.algebra, h2.algebra, m):
        return False
    for i in range(h1.rank):
        img = m.rows[i]
        if ring(sum(a * b for a, b in zip(img, h2.counit))) != h1.counit[i]:
            return False
        lhs: dict = {}
        for j, k, c in h1.delta(i):
            for a, x in enumerate(m.rows[j]):
                if not x:
                    continue
                for b, y in enumerate(m.rows[k]):
                    if y:
                        _add_into(ring, lhs, (a, b), ring.mul(c, ring.mul(x, y)))
        if lhs != _comult_of_vector(h2, img):
            return False
    return True


# ---------------------------------------------------------------------------
# short exact sequences


@dataclass(frozen=True)
class ShortExactSequence:
    """``0 -> H -> G -> K -> 0`` on coordinate rings: ``C -> A -> B``.

    ``iota`` embeds the functions on the quotient ``K`` into those on ``G``;
    ``pi`` restricts functions on ``G`` to the subgroup ``H``.
    """

    C: HopfAlgebra
    A: HopfAlgebra
    B: HopfAlgebra
    iota: Matrix
    pi: Matrix


def verify_ses(C: HopfAlgebra, A: HopfAlgebra, B: HopfAlgebra, iota: Matrix, pi: Matrix) -> ShortExactSequence:
    ring = A.ring
    if iota.shape != (C.rank, A.rank) or pi.shape != (A.rank, B.rank):
        raise ExactAlgError("maps have the wrong shape")
    if not is_hopf_hom(C, A, iota):
        raise NotHopfHom("iota is not a Hopf algebra map")
    if not is_hopf_hom(A, B, pi):
        raise NotHopfHom("pi is not a Hopf algebra map")
    if not kernel(iota).is_zero:
        raise NotInjective("iota has a nonzero kernel")
    if not image(pi, canonical_form(ring, A.rank, Matrix.identity(ring, A.rank).rows)).is_whole():
        raise NotSurjective("pi is not onto")
    if A.rank != B.rank * C.rank:
        raise RankMismatch(f"|G| = {A.rank} but |H| |K| = {B.rank * C.rank}")
    ic = C.aug.augmentation_ideal().carrier
    gen = ideal_generated(A.algebra, [iota.apply(r) for r in ic.rows])
    if kernel(pi) != gen.carrier:
        raise KernelMismatch("ker(pi) differs from the ideal generated by the augmentation ideal of C")
    return ShortExactSequence(C, A, B, iota, pi)


def _embed_sub_measure(ses: ShortExactSequence, mu_h) -> tuple:
    mh = _as_coords(mu_h)
    return tuple(ses.A.ring(sum(a * b for a, b in zip(row, mh))) for row in ses.pi.rows)


def _lift_quotient_measure(ses: ShortExactSequence, mu_k) -> tuple:
    x = solve_left(ses.iota.T, _as_coords(mu_k))
    if x is None:
        raise LiftFailed("measure on K has no preimage in A'")
    return x


def integrate_in_stages(ses: ShortExactSequence, mu_h, mu_k) -> Measure:
    """Invariant measure on G from invariant measures on H (``mu_h``) and K (``mu_k``).

    Lifts ``mu_k`` along ``A' -> C'``, pushes ``mu_h`` along ``B' -> A'`` and
    convolves.  The result is recomputed with a second lift that differs by
    a kernel element; disagreement raises :class:`LiftFailed`.
    """
    A = ses.A
    ring = A.ring
    mh, mk = _as_coords(mu_h), _as_coords(mu_k)
    if not invariant_measures(ses.B).contains(mh):
        raise InputNotInvariant("mu_H is not an invariant measure on H")
    if not invariant_measures(ses.C).contains(mk):
        raise InputNotInvariant("mu_K is not an invariant measure on K")
    lift = _lift_quotient_measure(ses, mk)
    hat_h = _embed_sub_measure(ses, mh)
    result = star_measures(A, lift, hat_h)
    ker = kernel(ses.iota.T)
    if ker.rows:
        other = tuple(ring.add(x, sum(r[i] for r in ker.rows)) for i, x in enumerate(lift))
        if star_measures(A, other, hat_h).coords != result.coords:
            raise LiftFailed("integration in stages depends on the chosen lift")
    return result


def integration_operator(ses: ShortExactSequence, mu_h) -> Matrix:
    """Matrix of ``A -> C``, ``f -> mu_H * f`` corestricted to the functions on K."""
    hat_h = _embed_sub_measure(ses, mu_h)
    rows = []
    for i in range(ses.A.rank):
        s = sweep(ses.A, hat_h, ses.A.algebra.basis_vector(i))
        c = solve_left(ses.iota, s)
        if c is None:
            raise HopfSchemeError("sweep by mu_H left the subalgebra of K-invariant functions")
        rows.append(c)
    return Matrix(ses.A.ring, tuple(rows))


def jabc_sides(ses: ShortExactSequence) -> tuple[Submodule, Submodule]:
    """``(J_A, pi^{-1}(J_B) * (iota(J_C) A))``."""
    A = ses.A.algebra
    ja = nonnull_ideal(ses.A)
    jb = nonnull_ideal(ses.B)
    jc = nonnull_ideal(ses.C)
    pre = preimage(ses.pi, jb)
    ext = ideal_generated(A, [ses.iota.apply(r) for r in jc.rows])
    return ja, ideal_product(A, pre, ext).carrier


def jabc_verify(ses: ShortExactSequence) -> bool:
    ja, rhs = jabc_sides(ses)
    ranks_ok = nonnull_ideal(ses.B).rank * nonnull_ideal(ses.C).rank == ja.rank
    return ranks_ok and submodule_compare(ja, rhs) == "equal"


@dataclass(frozen=True)
class ExtensionReport:
    h_inclusion_ok: bool
    pullback_inclusion_ok: bool
    square_cartesian: bool
    k_etale: bool
    restricted_ideal: Submodule
    subgroup_ideal: Submodule


def extension_report(ses: ShortExactSequence) -> ExtensionReport:
    A = ses.A.algebra
    ja = nonnull_ideal(ses.A)
    jb = nonnull_ideal(ses.B)
    jc = nonnull_ideal(ses.C)
    pija = image(ses.pi, ja)
    rel = submodule_compare(pija, jb)
    ext = ideal_generated(A, [ses.iota.apply(r) for r in jc.rows]).carrier
    pull = all(ext.contains(r) for r in ja.rows)
    return ExtensionReport(
        h_inclusion_ok=rel in ("equal", "strictly_contained"),
        pullback_inclusion_ok=pull,
        square_cartesian=rel == "equal",
        k_etale=is_etale_known(ses.C),
        restricted_ideal=pija,
        subgroup_ideal=jb,
    )
