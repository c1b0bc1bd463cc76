"""Catalog of finite group schemes and truncated p-divisible towers."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .algebra import AugmentedAlgebra, make_algebra
from .errors import CharacteristicMismatch, HopfSchemeError, NotHopfHom, RankMismatch
from .exactalg import Matrix, RingDescriptor
from .hopf import HopfAlgebra, ShortExactSequence, hopf_product, is_hopf_hom, make_hopf, verify_ses
from .algebra import tensor_maps

__all__ = [
    "Tower",
    "constant_group",
    "diagonalizable_group",
    "mu",
    "alpha_p",
    "oort_tate_algebra",
    "raynaud_algebra",
    "make_tower",
    "mu_ses",
    "constant_ses",
    "product_ses",
    "parse_group",
    "parse_tower",
]

_VARS = "xyzwuvst"


def _elements(orders):
    return list(itertools.product(*(range(n) for n in orders)))


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


@lru_cache(maxsize=None)
def _constant(orders: tuple, ring: RingDescriptor) -> HopfAlgebra:
    elems = _elements(orders)
    index = {g: i for i, g in enumerate(elems)}
    n = len(elems)

    def sub(a, b):
        return tuple((x - y) % m for x, y, m in zip(a, b, orders))

    if len(orders) == 1:
        labels = [f"1_{g[0]}" for g in elems]
    else:
        labels = ["1_(" + ",".join(map(str, g)) + ")" for g in elems]
    alg = make_algebra(ring, n, labels, [(i, i, i, 1) for i in range(n)], [1] * n)
    counit = [1 if i == 0 else 0 for i in range(n)]
    comult = [(index[c], index[a], index[sub(c, a)], 1) for c in elems for a in elems]
    zero = tuple(0 for _ in orders)
    anti = Matrix.build(ring, [[1 if elems[j] == sub(zero, g) else 0 for j in range(n)] for g in elems])
    return make_hopf(AugmentedAlgebra(alg, tuple(ring(c) for c in counit)), comult, anti, is_constant=True)


def constant_group(orders, ring: RingDescriptor) -> HopfAlgebra:
    """Functions on the finite abelian group ``Z/n1 x Z/n2 x ...``.

    The basis is the indicator functions, ordered lexicographically by group
    element; the identity comes first.
    """
    orders = tuple(int(n) for n in orders)
    if not orders or any(n < 1 for n in orders):
        raise ValueError(f"bad cyclic orders {orders}")
    return _constant(orders, ring)


def _monomial_label(e, names=_VARS) -> str:
    parts = []
    for v, k in zip(names, e):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts) or "1"


@lru_cache(maxsize=None)
def _diagonalizable(orders: tuple, ring: RingDescriptor) -> HopfAlgebra:
    elems = _elements(orders)
    index = {g: i for i, g in enumerate(elems)}
    n = len(elems)

    def add(a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, orders))

    labels = [_monomial_label(e) for e in elems]
    entries = [(index[a], index[b], index[add(a, b)], 1) for a in elems for b in elems if index[a] <= index[b]]
    unit = [1 if i == 0 else 0 for i in range(n)]
    alg = make_algebra(ring, n, labels, entries, unit)
    counit = tuple(ring.one for _ in range(n))
    comult = [(i, i, i, 1) for i in range(n)]
    neg = {g: tuple((-x) % m for x, m in zip(g, orders)) for g in elems}
    anti = Matrix.build(ring, [[1 if elems[j] == neg[g] else 0 for j in range(n)] for g in elems])
    return make_hopf(AugmentedAlgebra(alg, counit), comult, anti)


def diagonalizable_group(orders, ring: RingDescriptor) -> HopfAlgebra:
    """Group algebra of ``Z/n1 x ...``: the Cartier dual of the constant group.

    ``diagonalizable_group([N], k)`` is ``mu_N``; basis ``x^e`` is grouplike.
    """
    orders = tuple(int(n) for n in orders)
    if not orders or any(n < 1 for n in orders):
        raise ValueError(f"bad cyclic orders {orders}")
    if len(orders) > len(_VARS):
        raise ValueError("too many cyclic factors")
    return _diagonalizable(orders, ring)


def mu(n: int, ring: RingDescriptor) -> HopfAlgebra:
    return diagonalizable_group([n], ring)


@lru_cache(maxsize=None)
def alpha_p(p: int, ring: RingDescriptor) -> HopfAlgebra:
    """``k[x]/(x^p)`` with ``x`` primitive; needs ``p = 0`` in ``k``."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if ring(p) != 0:
        raise CharacteristicMismatch(f"alpha_{p} needs p = 0 in {ring}")
    labels = [_monomial_label((i,)) for i in range(p)]
    entries = [(i, j, i + j, 1) for i in range(p) for j in range(i, p) if i + j < p]
    alg = make_algebra(ring, p, labels, entries, [1] + [0] * (p - 1))
    counit = tuple(ring(int(i == 0)) for i in range(p))
    comult = [(n, i, n - i, math.comb(n, i)) for n in range(p) for i in range(n + 1)]
    anti = Matrix.build(ring, [[(-1) ** i if j == i else 0 for j in range(p)] for i in range(p)])
    return make_hopf(AugmentedAlgebra(alg, counit), comult, anti)


def oort_tate_algebra(p: int, a, ring: RingDescriptor) -> AugmentedAlgebra:
    """``k[x]/(x^p - a x)`` with the counit killing ``x``."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    a = ring(a)
    entries = []
    for i in range(p):
        for j in range(i, p):
            s = i + j
            if s < p:
                entries.append((i, j, s, 1))
            else:
                entries.append((i, j, s - p + 1, a))
    labels = [_monomial_label((i,)) for i in range(p)]
    alg = make_algebra(ring, p, labels, entries, [1] + [0] * (p - 1))
    return AugmentedAlgebra(alg, tuple(ring(int(i == 0)) for i in range(p)))


def raynaud_algebra(p: int, deltas, ring: RingDescriptor) -> AugmentedAlgebra:
    """``k[x_1..x_n]/(x_i^p - d_i x_{i+1})`` (indices mod n), counit killing every ``x_i``."""
    deltas = tuple(ring(d) for d in deltas)
    n = len(deltas)
    if n < 1:
        raise ValueError("need at least one parameter")
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    elems = list(itertools.product(range(p), repeat=n))
    index = {e: i for i, e in enumerate(elems)}
    names = [f"x{i + 1}" for i in range(n)] if n > 1 else ["x"]

    def reduce(e):
        e = list(e)
        c = ring.one
        while True:
            i = next((t for t, k in enumerate(e) if k >= p), None)
            if i is None:
                return tuple(e), c
            e[i] -= p
            e[(i + 1) % n] += 1
            c = ring.mul(c, deltas[i])

    entries = []
    for a in elems:
        for b in elems:
            if index[a] > index[b]:
                continue
            e, c = reduce(tuple(x + y for x, y in zip(a, b)))
            if c:
                entries.append((index[a], index[b], index[e], c))
    labels = [_monomial_label(e, names) for e in elems]
    alg = make_algebra(ring, len(elems), labels, entries, [1] + [0] * (len(elems) - 1))
    return AugmentedAlgebra(alg, tuple(ring(int(i == 0)) for i in range(len(elems))))


# ---------------------------------------------------------------------------
# towers


@dataclass(frozen=True)
class Tower:
    """Levels ``G_1 .. G_r`` of a truncated p-divisible group.

    ``power_maps[i-1]`` is the pullback ``A(G_1) -> A(G_i)`` of raising to
    the power ``p^(i-1)``; ``step_maps[i-1]`` is the one-step pullback
    ``A(G_i) -> A(G_{i+1})``.
    """

    kind: str
    ring: RingDescriptor
    p: int
    h: int
    levels: tuple
    power_maps: tuple
    step_maps: tuple

    def __len__(self):
        return len(self.levels)


def _mu_maps(p, i, j):
    """Pullback of raising to p^(j-i) from mu_{p^i} to mu_{p^j}, as an index map."""
    f = p ** (j - i)
    return {e: (e * f) % p**j for e in range(p**i)}


def _mu_level_map(ring, p, i, j) -> Matrix:
    m = _mu_maps(p, i, j)
    return Matrix.build(ring, [[1 if m[e] == t else 0 for t in range(p**j)] for e in range(p**i)])


def _constant_level_map(ring, p, h, i, j) -> Matrix:
    """Pullback along ``(Z/p^j)^h -> (Z/p^i)^h``, ``u -> u mod p^i``."""
    src = _elements([p**i] * h)
    dst = _elements([p**j] * h)
    rows = []
    for c in src:
        rows.append([1 if tuple(x % p**i for x in u) == c else 0 for u in dst])
    return Matrix.build(ring, rows)


@lru_cache(maxsize=None)
def _tower(kind: str, p: int, r: int, ring: RingDescriptor, h: int, factors: tuple) -> Tower:
    if kind == "mu":
        levels = tuple(mu(p**i, ring) for i in range(1, r + 1))
        power = tuple(_mu_level_map(ring, p, 1, i) for i in range(1, r + 1))
        steps = tuple(_mu_level_map(ring, p, i, i + 1) for i in range(1, r))
        h = 1
    elif kind == "constant":
        levels = tuple(constant_group([p**i] * h, ring) for i in range(1, r + 1))
        power = tuple(_constant_level_map(ring, p, h, 1, i) for i in range(1, r + 1))
        steps = tuple(_constant_level_map(ring, p, h, i, i + 1) for i in range(1, r))
    elif kind == "product":
        t1, t2 = factors
        if (t1.p, t1.ring, len(t1)) != (p, ring, r) or (t2.p, t2.ring, len(t2)) != (p, ring, r):
            raise ValueError("product tower factors must share p, ring and length")
        levels = tuple(hopf_product(a, b) for a, b in zip(t1.levels, t2.levels))
        power = tuple(tensor_maps(a, b) for a, b in zip(t1.power_maps, t2.power_maps))
        steps = tuple(tensor_maps(a, b) for a, b in zip(t1.step_maps, t2.step_maps))
        h = t1.h + t2.h
    else:
        raise ValueError(f"unknown tower kind {kind!r}")
    tower = Tower(kind, ring, p, h, levels, power, steps)
    _check_tower(tower)
    return tower


def _check_tower(t: Tower):
    for i, g in enumerate(t.levels, start=1):
        if g.rank != t.p ** (t.h * i):
            raise RankMismatch(f"level {i} has rank {g.rank}, expected {t.p ** (t.h * i)}")
    if t.power_maps[0] != Matrix.identity(t.ring, t.levels[0].rank):
        raise HopfSchemeError("the level-1 power map is not the identity")
    for i, phi in enumerate(t.power_maps, start=1):
        if not is_hopf_hom(t.levels[0], t.levels[i - 1], phi):
            raise NotHopfHom(f"power map at level {i} is not a Hopf map")
    for i, s in enumerate(t.step_maps, start=1):
        if not is_hopf_hom(t.levels[i - 1], t.levels[i], s):
            raise NotHopfHom(f"step map {i} -> {i + 1} is not a Hopf map")
        if t.power_maps[i - 1] @ s != t.power_maps[i]:
            raise HopfSchemeError(f"power map at level {i + 1} is not the composite of step maps")


def make_tower(kind: str, p: int, r: int, ring: RingDescriptor, *, h: int = 1, factors=()) -> Tower:
    """Build a tower: ``mu`` (mu_{p^i}), ``constant`` ((Z/p^i)^h) or ``product`` of two towers."""
    if r < 1:
        raise ValueError("tower length must be at least 1")
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if kind == "constant" and h < 1:
        raise ValueError("height must be at least 1")
    if kind == "product" and len(factors) != 2:
        raise ValueError("product tower needs two factors")
    return _tower(kind, p, r, ring, h if kind == "constant" else 1, tuple(factors))


# ---------------------------------------------------------------------------
# short exact sequences from the catalog


def mu_ses(p: int, ring: RingDescriptor) -> ShortExactSequence:
    """``mu_p -> mu_{p^2} -> mu_p``, the quotient map being raising to the p-th power."""
    C, A, B = mu(p, ring), mu(p * p, ring), mu(p, ring)
    iota = Matrix.build(ring, [[1 if t == p * e else 0 for t in range(p * p)] for e in range(p)])
    pi = Matrix.build(ring, [[1 if t == e % p else 0 for t in range(p)] for e in range(p * p)])
    return verify_ses(C, A, B, iota, pi)


def constant_ses(p: int, ring: RingDescriptor) -> ShortExactSequence:
    """``Z/p -> Z/p^2 -> Z/p`` (subgroup ``p Z/p^2``) on function algebras."""
    C, A, B = constant_group([p], ring), constant_group([p * p], ring), constant_group([p], ring)
    iota = Matrix.build(ring, [[1 if u % p == c else 0 for u in range(p * p)] for c in range(p)])
    pi = Matrix.build(ring, [[1 if u % p == 0 and u // p == v else 0 for v in range(p)] for u in range(p * p)])
    return verify_ses(C, A, B, iota, pi)


def product_ses(sub: HopfAlgebra, quo: HopfAlgebra) -> ShortExactSequence:
    """``H -> H x K -> K`` with ``A = B (x) C``."""
    ring = sub.ring
    A = hopf_product(sub, quo)
    nb, nc = sub.rank, quo.rank
    iota = [[ring.zero] * (nb * nc) for _ in range(nc)]
    for j in range(nc):
        for i, u in enumerate(sub.unit):
            iota[j][i * nc + j] = u
    pi = [[ring.zero] * nb for _ in range(nb * nc)]
    for i in range(nb):
        for j in range(nc):
            pi[i * nc + j][i] = quo.counit[j]
    return verify_ses(quo, A, sub, Matrix.build(ring, iota), Matrix.build(ring, pi))


# ---------------------------------------------------------------------------
# catalog names


def _ints(parts, what):
    try:
        vals = [int(x) for x in parts]
    except ValueError:
        raise ValueError(f"bad {what}: {parts!r}") from None
    return vals


def parse_group(text: str, ring: RingDescriptor):
    """Build a catalog group from its name.

    ``constant:n1xn2..``, ``mu:N``, ``alpha:p``, ``oort-tate:p:a`` and
    ``raynaud:p:d1,..,dn``.  The last two give augmented algebras only.
    """
    head, _, rest = text.partition(":")
    if not rest:
        raise ValueError(f"bad group spec {text!r}")
    if head == "constant":
        return constant_group(_ints(rest.split("x"), "orders"), ring)
    if head == "mu":
        (n,) = _ints([rest], "order")
        return mu(n, ring)
    if head == "alpha":
        (p,) = _ints([rest], "prime")
        return alpha_p(p, ring)
    if head == "oort-tate":
        parts = rest.split(":")
        if len(parts) != 2:
            raise ValueError(f"bad group spec {text!r}")
        p, a = _ints(parts, "Oort-Tate parameters")
        return oort_tate_algebra(p, a, ring)
    if head == "raynaud":
        p_text, _, d_text = rest.partition(":")
        (p,) = _ints([p_text], "prime")
        ds = _ints(d_text.split(","), "Raynaud parameters")
        return raynaud_algebra(p, ds, ring)
    raise ValueError(f"unknown group kind {head!r}")


def parse_tower(text: str, ring: RingDescriptor) -> Tower:
    """``tower:mu:p:r``, ``tower:constant:p:r:h``, ``tower:product:<tower>+<tower>``."""
    body = text[len("tower:"):] if text.startswith("tower:") else text
    kind, _, rest = body.partition(":")
    if kind == "mu":
        vals = _ints(rest.split(":"), "tower parameters")
        if len(vals) != 2:
            raise ValueError(f"bad tower spec {text!r}")
        return make_tower("mu", vals[0], vals[1], ring)
    if kind == "constant":
        vals = _ints(rest.split(":"), "tower parameters")
        if len(vals) != 3:
            raise ValueError(f"bad tower spec {text!r}")
        return make_tower("constant", vals[0], vals[1], ring, h=vals[2])
    if kind == "product":
        for pos in [i for i, ch in enumerate(rest) if ch == "+"]:
            try:
                t1 = parse_tower(rest[:pos], ring)
                t2 = parse_tower(rest[pos + 1:], ring)
            except ValueError:
                continue
            return make_tower("product", t1.p, len(t1), ring, factors=(t1, t2))
        raise ValueError(f"bad product tower spec {text!r}")
    raise ValueError(f"unknown tower kind {kind!r}")
