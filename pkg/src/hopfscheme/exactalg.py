"""Exact linear algebra over ZZ, QQ and Z/N.

Vectors are tuples of ring elements (``int`` for ZZ and Z/N, ``Fraction`` for
QQ).  Linear maps act on row vectors: a matrix with ``n`` rows and ``m``
columns sends the coordinate row ``v`` to ``v @ M``.

Submodules of a free module are kept in a canonical form so that equality of
submodules is equality of stored rows:

* ZZ: Hermite normal form (upper echelon, positive pivots, entries above a
  pivot reduced into ``[0, pivot)``).
* Z/N: the lattice ``L = lift(S) + N ZZ^n`` is full rank; its Hermite form,
  with the rows of pivot ``N`` dropped, is a Howell form of ``S``.
* QQ: reduced row echelon form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ExactAlgError, UnsupportedHom

__all__ = [
    "RingDescriptor",
    "ZZ",
    "QQ",
    "Zmod",
    "RingHom",
    "Matrix",
    "Submodule",
    "Cotype",
    "snf",
    "kernel",
    "canonical_form",
    "submodule_compare",
    "cotype",
    "image",
    "preimage",
    "intersection",
    "submodule_sum",
    "solve_left",
    "free_basis",
    "unit_pivot_basis",
]


# ---------------------------------------------------------------------------
# rings


@dataclass(frozen=True)
class RingDescriptor:
    """One of the computable base rings ZZ, QQ or Z/N."""

    kind: str  # "z", "q" or "zmod"
    modulus: int = 0

    def __post_init__(self):
        if self.kind not in ("z", "q", "zmod"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "zmod":
            if not isinstance(self.modulus, int) or self.modulus < 2:
                raise ValueError(f"modulus must be an integer >= 2, got {self.modulus!r}")
        elif self.modulus != 0:
            raise ValueError("only Z/N carries a modulus")

    # -- element handling -------------------------------------------------
    def __call__(self, x) -> int | Fraction:
        """Coerce ``x`` into a normalized element of this ring."""
        if self.kind == "q":
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator == 1:
                x = x.numerator
            elif self.kind == "zmod" and math.gcd(x.denominator, self.modulus) == 1:
                return x.numerator * pow(x.denominator, -1, self.modulus) % self.modulus
            else:
                raise ValueError(f"{x} is not an element of {self}")
        if isinstance(x, str):
            x = int(x)
        if not isinstance(x, int):
            raise TypeError(f"cannot coerce {type(x).__name__} into {self}")
        if self.kind == "zmod":
            return x % self.modulus
        return x

    def vec(self, xs) -> tuple:
        """Normalize a sequence of raw Python numbers into a ring vector."""
        if self.kind == "zmod":
            n = self.modulus
            return tuple(x % n for x in xs)
        if self.kind == "q":
            return tuple(Fraction(x) for x in xs)
        return tuple(xs)

    def finish(self, acc: dict) -> dict:
        """Normalize the values of a sparse accumulator, dropping zeros."""
        if self.kind == "zmod":
            n = self.modulus
            return {k: v % n for k, v in acc.items() if v % n}
        return {k: v for k, v in acc.items() if v}

    @property
    def zero(self):
        return Fraction(0) if self.kind == "q" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "q" else 1

    @property
    def characteristic(self) -> int:
        return self.modulus if self.kind == "zmod" else 0

    @property
    def is_field(self) -> bool:
        if self.kind == "q":
            return True
        if self.kind == "zmod":
            n = self.modulus
            return all(n % d for d in range(2, math.isqrt(n) + 1))
        return False

    def add(self, a, b):
        return (a + b) % self.modulus if self.kind == "zmod" else a + b

    def sub(self, a, b):
        return (a - b) % self.modulus if self.kind == "zmod" else a - b

    def mul(self, a, b):
        return (a * b) % self.modulus if self.kind == "zmod" else a * b

    def neg(self, a):
        return (-a) % self.modulus if self.kind == "zmod" else -a

    def is_unit(self, a) -> bool:
        if self.kind == "q":
            return a != 0
        if self.kind == "z":
            return a in (1, -1)
        return math.gcd(a, self.modulus) == 1

    def inv(self, a):
        if not self.is_unit(a):
            raise ZeroDivisionError(f"{a} is not a unit in {self}")
        if self.kind == "q":
            return 1 / a
        if self.kind == "z":
            return a
        return pow(a, -1, self.modulus)

    def ideal_is_whole(self, values: Iterable) -> bool:
        """True iff the listed elements generate the unit ideal."""
        if self.kind == "q":
            return any(v != 0 for v in values)
        g = 0
        for v in values:
            g = math.gcd(g, int(v))
        if self.kind == "zmod":
            g = math.gcd(g, self.modulus)
        return g == 1

    # -- display / interchange -------------------------------------------
    def signed(self, a):
        """Representative of ``a`` closest to zero (for display)."""
        if self.kind == "zmod" and a > self.modulus // 2:
            return a - self.modulus
        return a

    def format(self, a) -> str:
        return str(self.signed(a))

    @property
    def spec(self) -> str:
        return {"z": "z", "q": "q"}.get(self.kind) or f"zmod:{self.modulus}"

    def __str__(self):
        return {"z": "ZZ", "q": "QQ"}.get(self.kind) or f"Z/{self.modulus}"

    def __repr__(self):
        return f"RingDescriptor({self.spec!r})"

    @classmethod
    def parse(cls, text: str) -> "RingDescriptor":
        """Parse ``"z"``, ``"q"`` or ``"zmod:N"``."""
        text = text.strip().lower()
        if text == "z":
            return ZZ
        if text == "q":
            return QQ
        if text.startswith("zmod:"):
            body = text[5:]
            if not body.isdigit():
                raise ValueError(f"bad modulus in ring spec {text!r}")
            return Zmod(int(body))
        raise ValueError(f"bad ring spec {text!r}")

    def to_json(self) -> dict:
        if self.kind == "zmod":
            return {"kind": "int_mod", "modulus": str(self.modulus)}
        return {"kind": {"z": "int", "q": "rat"}[self.kind]}

    @classmethod
    def from_json(cls, data) -> "RingDescriptor":
        if isinstance(data, str):
            return cls.parse(data)
        kind = data["kind"]
        if kind == "int":
            return ZZ
        if kind == "rat":
            return QQ
        if kind == "int_mod":
            return Zmod(int(data["modulus"]))
        raise ValueError(f"unknown ring kind {kind!r}")

    def element_to_json(self, a) -> str:
        return str(a)

    def element_from_json(self, s: str):
        return self(Fraction(s))


ZZ = RingDescriptor("z")
QQ = RingDescriptor("q")


def Zmod(n: int) -> RingDescriptor:
    return RingDescriptor("zmod", n)


@dataclass(frozen=True)
class RingHom:
    """A structure map between catalog rings.

    Supported: identities, ZZ -> Z/N, ZZ -> QQ and Z/N -> Z/M with M | N.
    """

    source: RingDescriptor
    target: RingDescriptor

    def __post_init__(self):
        s, t = self.source, self.target
        ok = (
            s == t
            or (s.kind == "z" and t.kind in ("zmod", "q"))
            or (s.kind == "zmod" and t.kind == "zmod" and s.modulus % t.modulus == 0)
        )
        if not ok:
            raise UnsupportedHom(f"no supported ring map {s} -> {t}")

    def __call__(self, a):
        return self.target(a)

    def apply_vector(self, v: Sequence) -> tuple:
        t = self.target
        return tuple(t(a) for a in v)


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class Matrix:
    ring: RingDescriptor
    rows: tuple

    @classmethod
    def build(cls, ring: RingDescriptor, rows: Iterable[Iterable]) -> "Matrix":
        return cls(ring, tuple(tuple(ring(a) for a in r) for r in rows))

    @classmethod
    def identity(cls, ring: RingDescriptor, n: int) -> "Matrix":
        return cls(ring, tuple(tuple(ring.one if i == j else ring.zero for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, ring: RingDescriptor, n: int, m: int) -> "Matrix":
        return cls(ring, tuple((ring.zero,) * m for _ in range(n)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.ring, tuple(_vecmat(self.ring, r, other.rows, other.ncols) for r in self.rows))

    def apply(self, v: Sequence) -> tuple:
        """Row vector times matrix."""
        return _vecmat(self.ring, v, self.rows, self.ncols)

    @property
    def T(self) -> "Matrix":
        return Matrix(self.ring, tuple(zip(*self.rows)) if self.rows else ())

    def is_diagonal(self) -> bool:
        return all(a == 0 for i, r in enumerate(self.rows) for j, a in enumerate(r) if i != j)

    def diagonal(self) -> tuple:
        return tuple(self.rows[i][i] for i in range(min(self.shape)))


def _vecmat(ring, v, rows, ncols):
    out = [0] * ncols
    for a, r in zip(v, rows):
        if a:
            for j, b in enumerate(r):
                if b:
                    out[j] += a * b
    return ring.vec(out)


# ---------------------------------------------------------------------------
# Hermite forms over ZZ, optionally reduced modulo N


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def _hnf(rows: Iterable[Sequence[int]], ncols: int, modulus: int = 0) -> list[list[int]]:
    """Hermite normal form of the ZZ-lattice spanned by ``rows``.

    With ``modulus`` N > 0 the lattice is taken to contain ``N * ZZ^ncols`` and
    all entries are kept reduced mod N (pivots lie in ``(0, N]``).
    """
    pivots: dict[int, list[int]] = {}
    if modulus:
        for c in range(ncols):
            r = [0] * ncols
            r[c] = modulus
            pivots[c] = r

    def red(v):
        return [x % modulus for x in v] if modulus else v

    for row in rows:
        v = red([int(x) for x in row])
        c = 0
        while True:
            while c < ncols and v[c] == 0:
                c += 1
            if c == ncols:
                break
            p = pivots.get(c)
            if p is None:
                pivots[c] = v
                break
            a, b = p[c], v[c]
            if b % a == 0:
                q = b // a
                v = red([x - q * y for x, y in zip(v, p)])
            else:
                g, s, t = _xgcd(a, b)
                new_p = red([s * y + t * x for x, y in zip(v, p)])
                if modulus and new_p[c] == 0:
                    new_p[c] = modulus
                v = red([(a // g) * x - (b // g) * y for x, y in zip(v, p)])
                pivots[c] = new_p
        # v is exhausted or installed
    cols = sorted(pivots)
    for c in cols:
        p = pivots[c]
        if p[c] < 0:
            pivots[c] = p = [-x for x in p]
    # reduce entries above pivots, left to right
    for idx, c in enumerate(cols):
        p = pivots[c]
        d = p[c]
        for c0 in cols[:idx]:
            r = pivots[c0]
            q = r[c] // d
            if q:
                pivots[c0] = red([x - q * y for x, y in zip(r, p)])
    return [pivots[c] for c in cols]


def _rref(rows: Iterable[Sequence], ncols: int) -> list[list[Fraction]]:
    mat = [[Fraction(x) for x in r] for r in rows]
    out: list[list[Fraction]] = []
    pivcols: list[int] = []
    for c in range(ncols):
        piv = next((i for i, r in enumerate(mat) if r[c] != 0), None)
        if piv is None:
            continue
        r = mat.pop(piv)
        inv = 1 / r[c]
        r = [x * inv for x in r]
        for k, other in enumerate(mat):
            if other[c]:
                f = other[c]
                mat[k] = [x - f * y for x, y in zip(other, r)]
        for k, other in enumerate(out):
            if other[c]:
                f = other[c]
                out[k] = [x - f * y for x, y in zip(other, r)]
        out.append(r)
        pivcols.append(c)
    return out


def _pivot(row: Sequence) -> int:
    for j, a in enumerate(row):
        if a:
            return j
    return -1


# ---------------------------------------------------------------------------
# submodules


@dataclass(frozen=True)
class Submodule:
    """A finitely generated submodule of ``ring^ambient_rank`` in canonical form.

    Build through :func:`canonical_form`; the stored rows are canonical, so
    ``==`` decides equality of submodules.
    """

    ring: RingDescriptor
    ambient_rank: int
    rows: tuple = field(default=())

    @property
    def generators(self) -> Matrix:
        return Matrix(self.ring, self.rows)

    @property
    def is_zero(self) -> bool:
        return not self.rows

    @property
    def rank(self) -> int:
        """Minimal number of generators (the free rank, for free submodules)."""
        if self.ring.kind != "zmod":
            return len(self.rows)
        _, s, _ = snf(Matrix(self.ring, self.rows)) if self.rows else (None, None, None)
        if s is None:
            return 0
        return sum(1 for d in s.diagonal() if d % self.ring.modulus)

    def contains(self, v: Sequence) -> bool:
        return not any(_reduce(self, tuple(self.ring(a) for a in v)))

    def is_whole(self) -> bool:
        return self == canonical_form(self.ring, self.ambient_rank, Matrix.identity(self.ring, self.ambient_rank).rows)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)


def _reduce(sub: Submodule, v: tuple):
    """Reduce ``v`` against the canonical rows; returns the remainder."""
    ring = sub.ring
    v = list(v)
    for r in sub.rows:
        c = _pivot(r)
        a = v[c]
        if not a:
            continue
        d = r[c]
        if ring.kind == "q":
            q = a / d
        else:
            if a % d:
                return v
            q = a // d
        v = [ring.sub(x, ring.mul(q, y)) for x, y in zip(v, r)]
    return v


def canonical_form(ring: RingDescriptor, ambient_rank: int, generator_rows: Iterable[Sequence]) -> Submodule:
    """Canonical presentation of the submodule spanned by ``generator_rows``."""
    rows = [tuple(ring(a) for a in r) for r in generator_rows]
    for r in rows:
        if len(r) != ambient_rank:
            raise ExactAlgError(f"row of length {len(r)} in ambient rank {ambient_rank}")
    if ring.kind == "q":
        out = _rref(rows, ambient_rank)
    elif ring.kind == "z":
        out = _hnf(rows, ambient_rank)
    else:
        n = ring.modulus
        out = [r for r in _hnf(rows, ambient_rank, n) if r[_pivot(r)] != n]
    return Submodule(ring, ambient_rank, tuple(tuple(ring(a) for a in r) for r in out))


def zero_submodule(ring: RingDescriptor, n: int) -> Submodule:
    return Submodule(ring, n, ())


def whole_module(ring: RingDescriptor, n: int) -> Submodule:
    return canonical_form(ring, n, Matrix.identity(ring, n).rows)


def submodule_compare(s1: Submodule, s2: Submodule) -> str:
    """One of ``equal``, ``strictly_contains``, ``strictly_contained``, ``incomparable``."""
    if s1.ring != s2.ring or s1.ambient_rank != s2.ambient_rank:
        raise ExactAlgError("submodules live in different ambient modules")
    if s1 == s2:
        return "equal"
    a_in_b = all(s2.contains(r) for r in s1.rows)
    b_in_a = all(s1.contains(r) for r in s2.rows)
    if b_in_a:
        return "strictly_contains"
    if a_in_b:
        return "strictly_contained"
    return "incomparable"


def submodule_sum(s1: Submodule, s2: Submodule) -> Submodule:
    return canonical_form(s1.ring, s1.ambient_rank, s1.rows + s2.rows)


def kernel(m: Matrix, nrows: int | None = None) -> Submodule:
    """Left kernel ``{v : v @ m == 0}`` in canonical form.

    ``nrows`` is only needed when ``m`` has no columns and no rows.
    """
    ring = m.ring
    n = m.nrows if nrows is None else nrows
    k = m.ncols
    if k == 0:
        return whole_module(ring, n)
    aug = [list(r) + [1 if j == i else 0 for j in range(n)] for i, r in enumerate(m.rows)]
    if ring.kind == "q":
        red = _rref(aug, k + n)
    elif ring.kind == "z":
        red = _hnf(aug, k + n)
    else:
        red = _hnf(aug, k + n, ring.modulus)
    gens = [r[k:] for r in red if _pivot(r) >= k]
    return canonical_form(ring, n, gens)


def image(m: Matrix, sub: Submodule) -> Submodule:
    return canonical_form(m.ring, m.ncols, (m.apply(r) for r in sub.rows))


def preimage(m: Matrix, sub: Submodule) -> Submodule:
    """``{v : v @ m in sub}``."""
    n = m.nrows
    stacked = Matrix(m.ring, m.rows + sub.rows)
    ker = kernel(stacked)
    return canonical_form(m.ring, n, (r[:n] for r in ker.rows))


def intersection(s1: Submodule, s2: Submodule) -> Submodule:
    ring = s1.ring
    a = len(s1.rows)
    stacked = Matrix(ring, s1.rows + s2.rows)
    if not stacked.rows:
        return zero_submodule(ring, s1.ambient_rank)
    ker = kernel(stacked)
    g = Matrix(ring, s1.rows)
    return canonical_form(ring, s1.ambient_rank, (g.apply(r[:a]) for r in ker.rows) if a else ())


def solve_left(m: Matrix, b: Sequence):
    """Some ``x`` with ``x @ m == b``, or ``None`` when there is none."""
    ring = m.ring
    b = tuple(ring(a) for a in b)
    stacked = Matrix(ring, (b,) + m.rows)
    ker = kernel(stacked)
    for r in ker.rows:
        c = _pivot(r)
        if c != 0:
            break
        if ring.is_unit(r[0]):
            u = ring.inv(r[0])
            # u*r[0]*b + (u*r[1:]) @ m = 0
            return tuple(ring.neg(ring.mul(u, a)) for a in r[1:])
        break
    return None


# ---------------------------------------------------------------------------
# Smith normal form


def _snf_int(a: list[list[int]]):
    """Smith form over ZZ; returns (U, S, V) with a == U S V."""
    n = len(a)
    m = len(a[0]) if a else 0
    s = [list(r) for r in a]
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    v = [[int(i == j) for j in range(m)] for i in range(m)]

    # row op: row_i += c*row_j on S  ==> U[:, j] -= c*U[:, i]
    def row_add(i, j, c):
        s[i] = [x + c * y for x, y in zip(s[i], s[j])]
        for r in u:
            r[j] -= c * r[i]

    def row_swap(i, j):
        s[i], s[j] = s[j], s[i]
        for r in u:
            r[i], r[j] = r[j], r[i]

    def row_neg(i):
        s[i] = [-x for x in s[i]]
        for r in u:
            r[i] = -r[i]

    # col op: col_i += c*col_j on S  ==> V[j] -= c*V[i]
    def col_add(i, j, c):
        for r in s:
            r[i] += c * r[j]
        v[j] = [x - c * y for x, y in zip(v[j], v[i])]

    def col_swap(i, j):
        for r in s:
            r[i], r[j] = r[j], r[i]
        v[i], v[j] = v[j], v[i]

    t = 0
    while t < min(n, m):
        # smallest nonzero entry in the trailing block
        best = None
        for i in range(t, n):
            for j in range(t, m):
                x = s[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        row_swap(t, i)
        col_swap(t, j)
        while True:
            done = True
            p = s[t][t]
            for i in range(t + 1, n):
                if s[i][t]:
                    q = s[i][t] // p
                    row_add(i, t, -q)
                    if s[i][t]:
                        done = False
            for j in range(t + 1, m):
                if s[t][j]:
                    q = s[t][j] // p
                    col_add(j, t, -q)
                    if s[t][j]:
                        done = False
            if done:
                # divisibility of the trailing block
                bad = next(
                    ((i, j) for i in range(t + 1, n) for j in range(t + 1, m) if s[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                row_add(t, bad[0], 1)
                continue
            # move a smaller remainder into pivot position
            best = None
            for i in range(t, n):
                x = s[i][t]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, "r")
            for j in range(t, m):
                x = s[t][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), j, "c")
            if best[2] == "r":
                row_swap(t, best[1])
            else:
                col_swap(t, best[1])
        if s[t][t] < 0:
            row_neg(t)
        t += 1
    return u, s, v


def snf(m: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form ``m == U @ S @ V`` over ZZ or Z/N.

    Over Z/N the diagonal entries are divisors of N (an entry equal to N is
    stored as 0) forming a divisibility chain.
    """
    ring = m.ring
    if ring.kind == "q":
        raise ExactAlgError("snf is defined over ZZ and Z/N; use echelon reduction over QQ")
    n, k = m.shape
    if n == 0 or k == 0:
        return Matrix.identity(ring, n), Matrix.zeros(ring, n, k), Matrix.identity(ring, k)
    u, s, v = _snf_int([[int(x) for x in r] for r in m.rows])
    if ring.kind == "zmod":
        nmod = ring.modulus
        for t in range(min(n, k)):
            d = s[t][t]
            g = math.gcd(d, nmod)
            if g == nmod:
                s[t][t] = 0
                continue
            # d = g*w with w a unit mod N; fold w into U's column t
            w = d // g
            step = nmod // g
            while math.gcd(w, nmod) != 1:
                w += step
            s[t][t] = g
            for r in u:
                r[t] = r[t] * w
    return Matrix.build(ring, u), Matrix.build(ring, s), Matrix.build(ring, v)


# ---------------------------------------------------------------------------
# cotype, free bases


@dataclass(frozen=True)
class Cotype:
    invariant_factors: tuple
    free_rank: int
    is_free_quotient: bool
    is_direct_summand: bool


def _elementary_divisors(sub: Submodule) -> list:
    ring = sub.ring
    if not sub.rows:
        return []
    if ring.kind == "q":
        return [Fraction(1)] * len(sub.rows)
    _, s, _ = snf(sub.generators)
    return [d for d in s.diagonal() if d]


def cotype(sub: Submodule) -> Cotype:
    """Structure of ``ambient / sub``.

    ``invariant_factors`` lists the non-unit elementary divisors d (each giving
    a torsion summand ring/(d)); ``free_rank`` counts the remaining free part.
    """
    ring = sub.ring
    divs = _elementary_divisors(sub)
    torsion = tuple(d for d in divs if not ring.is_unit(d))
    free_rank = sub.ambient_rank - len(divs)
    summand = not torsion
    return Cotype(torsion, free_rank, summand, summand)


def unit_pivot_basis(sub: Submodule):
    """Free basis of ``sub`` reduced against unit pivots, if greedy elimination finds one.

    Columns are scanned right to left; each chosen pivot entry is 1 and its
    column is cleared in every other basis row.  Returns ``(rows, pivots)`` or
    ``None``.
    """
    ring = sub.ring
    rows = [list(r) for r in sub.rows]
    chosen: list[tuple[int, list]] = []
    n = sub.ambient_rank
    for c in range(n - 1, -1, -1):
        idx = next((i for i, r in enumerate(rows) if ring.is_unit(r[c])), None)
        if idx is None:
            continue
        r = rows.pop(idx)
        inv = ring.inv(r[c])
        r = [ring.mul(inv, x) for x in r]
        rows = [[ring.sub(x, ring.mul(o[c], y)) for x, y in zip(o, r)] if o[c] else o for o in rows]
        chosen = [(pc, [ring.sub(x, ring.mul(o[c], y)) for x, y in zip(o, r)] if o[c] else o) for pc, o in chosen]
        chosen.append((c, r))
    if any(any(x for x in r) for r in rows):
        return None
    chosen.sort()
    return [tuple(r) for _, r in chosen], [c for c, _ in chosen]


def free_basis(sub: Submodule) -> list[tuple]:
    """A basis of ``sub`` when it is a free direct summand; raises otherwise."""
    ring = sub.ring
    got = unit_pivot_basis(sub)
    if got is not None:
        return got[0]
    if ring.kind == "q":
        return list(sub.rows)
    ct = cotype(sub)
    if not ct.is_direct_summand:
        raise ExactAlgError(f"submodule is not a free direct summand (invariant factors {ct.invariant_factors})")
    _, s, v = snf(sub.generators)
    r = sum(1 for d in s.diagonal() if d)
    return [v.rows[i] for i in range(r)]


def summand_complement(sub: Submodule) -> tuple[list[tuple], list[tuple]]:
    """Split ``ambient = sub (+) complement``.

    Returns ``(basis_of_sub, complement_rows)``.  The complement is spanned by
    standard basis vectors (the lowest-index ones possible under unit-pivot
    elimination) when that works, otherwise by rows of a Smith transform.
    """
    ring = sub.ring
    n = sub.ambient_rank
    got = unit_pivot_basis(sub)
    if got is not None:
        rows, pivots = got
        comp = [tuple(ring.one if j == i else ring.zero for j in range(n)) for i in range(n) if i not in set(pivots)]
        return rows, comp
    ct = cotype(sub)
    if not ct.is_direct_summand:
        raise ExactAlgError(f"submodule is not a direct summand (invariant factors {ct.invariant_factors})")
    _, s, v = snf(sub.generators)
    r = sum(1 for d in s.diagonal() if d)
    return [v.rows[i] for i in range(r)], [v.rows[i] for i in range(r, n)]
