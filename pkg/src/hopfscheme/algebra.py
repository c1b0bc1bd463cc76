"""Finite free commutative algebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .errors import (
    BadUnit,
    ExactAlgError,
    HopfSchemeError,
    NonAssociative,
    NonCommutative,
    NotFree,
)
from .exactalg import (
    Matrix,
    RingDescriptor,
    RingHom,
    Submodule,
    canonical_form,
    cotype,
    image,
    kernel,
    solve_left,
    summand_complement,
    unit_pivot_basis,
    whole_module,
)

__all__ = [
    "FiniteAlgebra",
    "AugmentedAlgebra",
    "Ideal",
    "make_algebra",
    "multiply",
    "ideal_generated",
    "annihilator",
    "quotient_algebra",
    "tensor_product",
    "base_change",
    "is_algebra_hom",
    "mult_matrix",
    "ideal_product",
    "format_element",
    "tensor_maps",
]


def _sparse_entries(ring, entries, sym=True):
    """Normalize (i, j, k, c) entries into a sorted tuple, summing duplicates."""
    acc: dict[tuple, object] = {}
    for i, j, k, c in entries:
        if sym and i > j:
            i, j = j, i
        key = (int(i), int(j), int(k))
        acc[key] = ring.add(acc.get(key, ring.zero), ring(c))
    return tuple(sorted((i, j, k, c) for (i, j, k), c in acc.items() if c))


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    """A commutative k-algebra free of finite rank, by structure constants.

    ``mult`` holds entries ``(i, j, k, c)`` with ``i <= j``: the coefficient
    of ``e_k`` in ``e_i * e_j`` is ``c``.  Build through :func:`make_algebra`,
    which checks the axioms.
    """

    ring: RingDescriptor
    rank: int
    labels: tuple
    mult: tuple
    unit: tuple
    _table: dict = field(default=None, repr=False, compare=False)
    _nbrs: tuple = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        table: dict[tuple[int, int], list] = {}
        for i, j, k, c in self.mult:
            table.setdefault((i, j), []).append((k, c))
            if i != j:
                table.setdefault((j, i), []).append((k, c))
        nbrs = [[] for _ in range(self.rank)]
        for i, j in table:
            nbrs[i].append(j)
        object.__setattr__(self, "_table", table)
        object.__setattr__(self, "_nbrs", tuple(tuple(sorted(x)) for x in nbrs))

    def __eq__(self, other):
        if not isinstance(other, FiniteAlgebra):
            return NotImplemented
        return self.same_structure(other) and self.labels == other.labels

    def __hash__(self):
        return hash((self.ring, self.rank, self.mult, self.unit))

    def same_structure(self, other: "FiniteAlgebra") -> bool:
        """Equal structure tensors and unit, ignoring labels."""
        return (self.ring, self.rank, self.mult, self.unit) == (other.ring, other.rank, other.mult, other.unit)

    def basis_vector(self, i: int) -> tuple:
        r = self.ring
        return tuple(r.one if j == i else r.zero for j in range(self.rank))

    def zero_vector(self) -> tuple:
        return (self.ring.zero,) * self.rank

    def product_of_basis(self, i: int, j: int) -> list:
        return self._table.get((i, j), [])

    def __repr__(self):
        return f"FiniteAlgebra(rank={self.rank}, ring={self.ring}, labels={list(self.labels)})"


@dataclass(frozen=True)
class AugmentedAlgebra:
    algebra: FiniteAlgebra
    counit: tuple

    def __post_init__(self):
        a = self.algebra
        ring = a.ring
        if len(self.counit) != a.rank:
            raise ExactAlgError("counit has the wrong length")
        d = self.counit
        if _dot(ring, d, a.unit) != ring.one:
            raise BadUnit("counit does not send 1 to 1")
        for i, j in combinations_with_replacement(range(a.rank), 2):
            lhs = ring.zero
            for k, c in a.product_of_basis(i, j):
                lhs = ring.add(lhs, ring.mul(c, d[k]))
            if lhs != ring.mul(d[i], d[j]):
                raise BadUnit(f"counit is not multiplicative on basis pair ({i}, {j})")

    @property
    def ring(self):
        return self.algebra.ring

    @property
    def rank(self):
        return self.algebra.rank

    def augmentation_ideal(self) -> "Ideal":
        col = Matrix(self.ring, tuple((c,) for c in self.counit))
        return Ideal(self.algebra, kernel(col, self.rank))


@dataclass(frozen=True)
class Ideal:
    parent: FiniteAlgebra
    carrier: Submodule

    def __post_init__(self):
        a = self.parent
        for v in self.carrier.rows:
            for i in range(a.rank):
                if not self.carrier.contains(multiply(a, a.basis_vector(i), v)):
                    raise HopfSchemeError(f"submodule is not closed under multiplication by {a.labels[i]}")

    @property
    def rank(self) -> int:
        return self.carrier.rank


def _dot(ring, u, v):
    s = ring.zero
    for a, b in zip(u, v):
        if a and b:
            s = ring.add(s, ring.mul(a, b))
    return s


# ---------------------------------------------------------------------------


def make_algebra(
    ring: RingDescriptor,
    rank: int,
    labels: Sequence[str] | None,
    mult: Iterable[Sequence],
    unit: Sequence,
) -> FiniteAlgebra:
    """Validate the commutative algebra axioms and build the algebra.

    ``mult`` is an iterable of ``(i, j, k, c)``.  An entry for ``(j, i)`` is
    allowed only if it agrees with the one for ``(i, j)``.
    """
    entries = [tuple(e) for e in mult]
    for i, j, k, _ in entries:
        if not (0 <= i < rank and 0 <= j < rank and 0 <= k < rank):
            raise ExactAlgError(f"structure constant index ({i}, {j}, {k}) out of range for rank {rank}")
    given: dict[tuple[int, int], dict] = {}
    for i, j, k, c in entries:
        d = given.setdefault((i, j), {})
        d[k] = ring.add(d.get(k, ring.zero), ring(c))
    for (i, j), d in given.items():
        if i < j and (j, i) in given:
            lhs = {k: c for k, c in d.items() if c}
            rhs = {k: c for k, c in given[(j, i)].items() if c}
            if lhs != rhs:
                raise NonCommutative(f"e_{i}*e_{j} != e_{j}*e_{i}")
    upper = _sparse_entries(
        ring, [(i, j, k, c) for (i, j), d in given.items() if i <= j or (j, i) not in given for k, c in d.items()]
    )
    labels = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(rank))
    if len(labels) != rank or len(unit) != rank:
        raise ExactAlgError("labels/unit length does not match rank")
    alg = FiniteAlgebra(ring, rank, labels, upper, tuple(ring(c) for c in unit))
    _check_unit(alg)
    _check_associative(alg)
    return alg


def _check_unit(alg: FiniteAlgebra):
    for i in range(alg.rank):
        if multiply(alg, alg.unit, alg.basis_vector(i)) != alg.basis_vector(i):
            raise BadUnit(f"1*e_{i} != e_{i}")


def _basis_product(alg: FiniteAlgebra, i: int, j: int) -> dict:
    return dict(alg.product_of_basis(i, j))


def _mul_sparse(alg: FiniteAlgebra, u: dict, j: int) -> dict:
    ring = alg.ring
    out: dict[int, object] = {}
    for i, a in u.items():
        for k, c in alg.product_of_basis(i, j):
            out[k] = ring.add(out.get(k, ring.zero), ring.mul(a, c))
    return {k: c for k, c in out.items() if c}


def _check_associative(alg: FiniteAlgebra):
    # with commutativity it is enough that (ab)c, (ac)b and (bc)a agree
    n = alg.rank
    cache: dict = {}

    def prod(i, j):
        key = (i, j) if i <= j else (j, i)
        if key not in cache:
            cache[key] = _basis_product(alg, *key)
        return cache[key]

    for i in range(n):
        for j in range(i, n):
            ij = prod(i, j)
            for l in range(j, n):
                a = _mul_sparse(alg, ij, l)
                b = _mul_sparse(alg, prod(j, l), i)
                if a != b:
                    raise NonAssociative(f"(e_{i}*e_{j})*e_{l} != e_{i}*(e_{j}*e_{l})")
                if i != j and j != l:
                    c = _mul_sparse(alg, prod(i, l), j)
                    if a != c:
                        raise NonAssociative(f"(e_{i}*e_{l})*e_{j} != e_{i}*(e_{j}*e_{l})")


def multiply(alg: FiniteAlgebra, u: Sequence, v: Sequence) -> tuple:
    """Product of two coordinate vectors."""
    ring = alg.ring
    if len(u) != alg.rank or len(v) != alg.rank:
        raise ExactAlgError("vector length does not match algebra rank")
    out = [0] * alg.rank
    nz_v = {j for j, b in enumerate(v) if b}
    for i, a in enumerate(u):
        if not a:
            continue
        for j in alg._nbrs[i]:
            if j in nz_v:
                ab = a * v[j]
                for k, c in alg.product_of_basis(i, j):
                    out[k] += ab * c
    return ring.vec(out)


def mult_matrix(alg: FiniteAlgebra, g: Sequence) -> Matrix:
    """Matrix of ``f -> f*g`` (row i is ``e_i * g``)."""
    return Matrix(alg.ring, tuple(multiply(alg, alg.basis_vector(i), g) for i in range(alg.rank)))


def ideal_generated(alg: FiniteAlgebra, gens: Iterable[Sequence]) -> Ideal:
    """Smallest ideal containing ``gens``, by saturation to a fixpoint."""
    ring = alg.ring
    n = alg.rank
    current = canonical_form(ring, n, gens)
    while True:
        new_rows = list(current.rows)
        for v in current.rows:
            for i in range(n):
                w = multiply(alg, alg.basis_vector(i), v)
                if any(w) and not current.contains(w):
                    new_rows.append(w)
        if len(new_rows) == len(current.rows):
            return Ideal(alg, current)
        nxt = canonical_form(ring, n, new_rows)
        if nxt == current:
            return Ideal(alg, current)
        current = nxt


def _carrier(x) -> Submodule:
    return x.carrier if isinstance(x, Ideal) else x


def annihilator(alg: FiniteAlgebra, ideal) -> Submodule:
    """``{f : u*f = 0 for all u in ideal}``."""
    gens = _carrier(ideal).rows
    n = alg.rank
    if not gens:
        return whole_module(alg.ring, n)
    blocks = [mult_matrix(alg, g).rows for g in gens]
    stacked = Matrix(alg.ring, tuple(sum((b[i] for b in blocks), ()) for i in range(n)))
    return kernel(stacked)


def ideal_product(alg: FiniteAlgebra, i1, i2) -> Ideal:
    """Product of two ideals (span of pairwise products of generators)."""
    c1, c2 = _carrier(i1), _carrier(i2)
    rows = [multiply(alg, a, b) for a in c1.rows for b in c2.rows]
    return Ideal(alg, canonical_form(alg.ring, alg.rank, rows))


def quotient_algebra(alg: FiniteAlgebra, ideal) -> tuple[FiniteAlgebra, Matrix]:
    """Present ``A / I`` on a complement of ``I``; returns ``(Q, projection)``.

    The complement is made of the lowest-index basis vectors available after
    unit-pivot elimination, so presentations are reproducible.
    """
    ring = alg.ring
    n = alg.rank
    carrier = _carrier(ideal)
    ct = cotype(carrier)
    if not ct.is_free_quotient:
        raise NotFree(
            f"A/I has torsion with invariant factors {[ring.format(d) for d in ct.invariant_factors]}",
            ct.invariant_factors,
        )
    got = unit_pivot_basis(carrier)
    if got is not None:
        rows, pivots = got
        pivset = set(pivots)
        comp_idx = [i for i in range(n) if i not in pivset]
        pos = {s: a for a, s in enumerate(comp_idx)}
        m = len(comp_idx)
        proj = []
        by_pivot = dict(zip(pivots, rows))
        for i in range(n):
            row = [ring.zero] * m
            if i in pos:
                row[pos[i]] = ring.one
            else:
                r = by_pivot[i]
                for s in comp_idx:
                    row[pos[s]] = ring.neg(r[s])
            proj.append(tuple(row))
        comp = [alg.basis_vector(s) for s in comp_idx]
        labels = [alg.labels[s] for s in comp_idx]
    else:
        basis, comp = summand_complement(carrier)
        m = len(comp)
        full = Matrix(ring, tuple(basis) + tuple(comp))
        proj = []
        for i in range(n):
            x = solve_left(full, alg.basis_vector(i))
            if x is None:
                raise NotFree("complement construction failed")
            proj.append(tuple(x[len(basis):]))
        labels = [f"q{a}" for a in range(m)]
    projection = Matrix(ring, tuple(proj))
    entries = []
    for a in range(m):
        for b in range(a, m):
            w = projection.apply(multiply(alg, comp[a], comp[b])) if m else ()
            entries.extend((a, b, k, c) for k, c in enumerate(w) if c)
    unit = projection.apply(alg.unit) if m else ()
    q = make_algebra(ring, m, labels, entries, unit)
    return q, projection


def combine_labels(l1: Sequence[str], l2: Sequence[str]) -> tuple:
    return tuple("1" if a == "1" and b == "1" else f"{a}⊗{b}" for a in l1 for b in l2)


def tensor_product(a1: FiniteAlgebra, a2: FiniteAlgebra) -> FiniteAlgebra:
    """``A1 (x) A2`` with basis ``e_i (x) f_j`` at index ``i * rank(A2) + j``."""
    if a1.ring != a2.ring:
        raise ExactAlgError("tensor factors over different rings")
    ring = a1.ring
    n2 = a2.rank
    t1, t2 = a1._table, a2._table
    entries = []
    for (i, k), p1 in t1.items():
        for (j, l), p2 in t2.items():
            x, y = i * n2 + j, k * n2 + l
            if x > y:
                continue
            for a, c1 in p1:
                for b, c2 in p2:
                    entries.append((x, y, a * n2 + b, ring.mul(c1, c2)))
    unit = tuple(ring.mul(u, v) for u in a1.unit for v in a2.unit)
    return make_algebra(ring, a1.rank * n2, combine_labels(a1.labels, a2.labels), entries, unit)


def tensor_maps(m1: Matrix, m2: Matrix) -> Matrix:
    """Kronecker product of two linear maps (row-vector convention)."""
    ring = m1.ring
    rows = []
    for r1 in m1.rows:
        for r2 in m2.rows:
            rows.append(tuple(ring.mul(a, b) for a in r1 for b in r2))
    return Matrix(ring, tuple(rows))


def base_change(alg: FiniteAlgebra, hom: RingHom) -> FiniteAlgebra:
    if hom.source != alg.ring:
        raise ExactAlgError(f"ring map starts at {hom.source}, algebra lives over {alg.ring}")
    t = hom.target
    entries = [(i, j, k, t(c)) for i, j, k, c in alg.mult]
    return make_algebra(t, alg.rank, alg.labels, entries, hom.apply_vector(alg.unit))


def is_algebra_hom(a: FiniteAlgebra, b: FiniteAlgebra, m: Matrix) -> bool:
    """Does ``m`` (rows = images of A's basis in B) define an algebra map?"""
    if m.shape != (a.rank, b.rank) and not (a.rank == 0 and m.nrows == 0):
        raise ExactAlgError(f"map of shape {m.shape} between ranks {a.rank} and {b.rank}")
    if m.apply(a.unit) != b.unit:
        return False
    for i in range(a.rank):
        for j in range(i, a.rank):
            lhs = m.apply(multiply(a, a.basis_vector(i), a.basis_vector(j)))
            if lhs != multiply(b, m.rows[i], m.rows[j]):
                return False
    return True


def format_element(alg: FiniteAlgebra, v: Sequence) -> str:
    """Render a coordinate vector with basis labels, highest index first."""
    ring = alg.ring
    terms = []
    for i in reversed(range(len(v))):
        c = ring.signed(v[i])
        if not c:
            continue
        lab = alg.labels[i]
        neg = c < 0
        mag = -c if neg else c
        if lab == "1":
            body = str(mag)
        elif mag == 1:
            body = lab
        else:
            body = f"{mag}*{lab}"
        terms.append((neg, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] else "") + terms[0][1]
    for neg, body in terms[1:]:
        out += (" - " if neg else " + ") + body
    return out
