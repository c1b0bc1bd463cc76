from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfscheme import (
    QQ,
    ZZ,
    ExactAlgError,
    Matrix,
    RingDescriptor,
    RingHom,
    UnsupportedHom,
    Zmod,
    canonical_form,
    cotype,
    free_basis,
    intersection,
    kernel,
    preimage,
    snf,
    solve_left,
    submodule_compare,
    submodule_sum,
)
from oracles import brute_kernel, span

F2, F3, Z4 = Zmod(2), Zmod(3), Zmod(4)


# rings ---------------------------------------------------------------------


@pytest.mark.parametrize("text,ring", [("z", ZZ), ("q", QQ), ("zmod:9", Zmod(9)), (" ZMOD:4 ", Z4)])
def test_parse_ring(text, ring):
    assert RingDescriptor.parse(text) == ring


@pytest.mark.parametrize("text", ["", "zmod:", "zmod:abc", "zmod:0", "zmod:-3", "r", "zmod:4:5"])
def test_parse_ring_rejects(text):
    with pytest.raises(ValueError):
        RingDescriptor.parse(text)


@pytest.mark.parametrize("ring", [ZZ, QQ, F2, Zmod(27)])
def test_ring_json_round_trip(ring):
    assert RingDescriptor.from_json(ring.to_json()) == ring
    assert RingDescriptor.from_json(ring.spec) == ring


def test_element_json_uses_strings():
    assert QQ.element_to_json(Fraction(-3, 4)) == "-3/4"
    assert QQ.element_from_json("-3/4") == Fraction(-3, 4)
    big = 2**200 + 1
    assert ZZ.element_from_json(ZZ.element_to_json(big)) == big
    assert Zmod(9).element_from_json("-1") == 8


def test_units_and_inverses():
    assert Zmod(9).is_unit(4) and not Zmod(9).is_unit(3)
    assert Zmod(9).mul(4, Zmod(9).inv(4)) == 1
    assert ZZ.is_unit(-1) and not ZZ.is_unit(2)
    assert QQ.inv(Fraction(2, 3)) == Fraction(3, 2)
    with pytest.raises(ZeroDivisionError):
        ZZ.inv(2)


def test_ring_homs():
    assert RingHom(ZZ, Zmod(9))(-1) == 8
    assert RingHom(Zmod(9), Zmod(3))(7) == 1
    assert RingHom(ZZ, QQ)(5) == Fraction(5)
    for s, t in [(QQ, ZZ), (Zmod(9), Zmod(2)), (Zmod(4), ZZ), (QQ, F2)]:
        with pytest.raises(UnsupportedHom):
            RingHom(s, t)


# Smith normal form ------------------------------------------------------------


def test_snf_identity():
    i = Matrix.identity(ZZ, 2)
    assert snf(i) == (i, i, i)


def test_snf_2468():
    m = Matrix.build(ZZ, [[2, 4], [6, 8]])
    u, s, v = snf(m)
    assert s.diagonal() == (2, 4)
    assert u @ s @ v == m


def test_snf_zmod_diagonal_already():
    u, s, v = snf(Matrix.build(Z4, [[2]]))
    assert s.rows == ((2,),) and u.rows == ((1,),) and v.rows == ((1,),)


def test_snf_rejects_rationals():
    with pytest.raises(ExactAlgError):
        snf(Matrix.build(QQ, [[1]]))


int_matrices = st.integers(1, 4).flatmap(
    lambda n: st.integers(1, 4).flatmap(
        lambda k: st.lists(st.lists(st.integers(-30, 30), min_size=k, max_size=k), min_size=n, max_size=n)
    )
)


@given(int_matrices, st.sampled_from([ZZ, Zmod(4), Zmod(8), Zmod(9), Zmod(12)]))
def test_snf_reconstructs_and_divides(rows, ring):
    m = Matrix.build(ring, rows)
    u, s, v = snf(m)
    assert u @ s @ v == m
    assert s.is_diagonal()
    d = [x for x in s.diagonal()]
    nz = [x for x in d if x]
    # nonzero entries first, each dividing the next
    assert d[: len(nz)] == nz
    for a, b in zip(nz, nz[1:]):
        assert b % a == 0
    if ring.kind == "zmod":
        assert all(ring.modulus % x == 0 for x in nz)


# kernels ----------------------------------------------------------------------


def test_kernel_examples():
    assert kernel(Matrix.build(ZZ, [[1]])).is_zero
    assert kernel(Matrix.build(Z4, [[2]])) == canonical_form(Z4, 1, [[2]])
    assert kernel(Matrix.build(QQ, [[1, 1], [1, 1]])) == canonical_form(QQ, 2, [[1, -1]])


small = st.sampled_from([F2, F3, Z4])


@st.composite
def small_matrix(draw):
    ring = draw(small)
    n = draw(st.integers(1, 4))
    k = draw(st.integers(1, 4))
    rows = draw(st.lists(st.lists(st.integers(0, ring.modulus - 1), min_size=k, max_size=k), min_size=n, max_size=n))
    return ring, rows


@given(small_matrix())
def test_kernel_matches_enumeration(data):
    ring, rows = data
    ker = kernel(Matrix.build(ring, rows))
    assert span(ring, len(rows), ker.rows) == brute_kernel(ring, rows)


@given(small_matrix())
def test_canonical_form_idempotent_and_order_free(data):
    ring, rows = data
    k = len(rows[0])
    c = canonical_form(ring, k, rows)
    assert canonical_form(ring, k, c.rows) == c
    assert canonical_form(ring, k, list(reversed(rows)) + rows) == c
    assert span(ring, k, c.rows) == span(ring, k, rows)


@given(int_matrices)
def test_integer_kernel_is_annihilated(rows):
    m = Matrix.build(ZZ, rows)
    ker = kernel(m)
    for r in ker.rows:
        assert not any(m.apply(r))
    # rank-nullity
    assert ker.rank == len(rows) - len(canonical_form(ZZ, len(rows[0]), rows).rows)


# canonical forms and comparison ----------------------------------------------------


def test_hermite_example():
    assert canonical_form(ZZ, 2, [(2, 0), (0, 2), (1, 1)]).rows == ((1, 1), (0, 2))


def test_empty_and_duplicates():
    assert canonical_form(ZZ, 3, []).is_zero
    assert canonical_form(Z4, 1, [[2]]) == canonical_form(Z4, 1, [[2], [2]])


def test_compare():
    s = canonical_form(ZZ, 2, [(1, 0)])
    assert submodule_compare(s, s) == "equal"
    assert submodule_compare(s, canonical_form(ZZ, 2, [(2, 0)])) == "strictly_contains"
    assert submodule_compare(canonical_form(ZZ, 2, [(2, 0)]), s) == "strictly_contained"
    assert submodule_compare(s, canonical_form(ZZ, 2, [(0, 1)])) == "incomparable"
    with pytest.raises(ExactAlgError):
        submodule_compare(s, canonical_form(ZZ, 3, []))


def test_sum_intersection_preimage():
    a = canonical_form(ZZ, 2, [(2, 0)])
    b = canonical_form(ZZ, 2, [(3, 0), (0, 1)])
    assert intersection(a, b) == canonical_form(ZZ, 2, [(6, 0)])
    assert submodule_sum(a, b) == canonical_form(ZZ, 2, [(1, 0), (0, 1)])
    m = Matrix.build(ZZ, [[2, 0], [0, 1]])
    assert preimage(m, canonical_form(ZZ, 2, [(4, 0)])) == canonical_form(ZZ, 2, [(2, 0)])


def test_solve_left():
    m = Matrix.build(ZZ, [[2, 0], [0, 3]])
    assert solve_left(m, (4, 9)) == (2, 3)
    assert solve_left(m, (1, 0)) is None
    x = solve_left(Matrix.build(Z4, [[2, 1]]), (2, 3))
    assert x is not None and Matrix.build(Z4, [[2, 1]]).apply(x) == (2, 3)


# cotype ------------------------------------------------------------------------


def test_cotype_examples():
    c = cotype(canonical_form(ZZ, 2, [(1, 0)]))
    assert c.is_direct_summand and c.free_rank == 1 and c.invariant_factors == ()
    c = cotype(canonical_form(ZZ, 2, [(2, 0)]))
    assert c.invariant_factors == (2,) and not c.is_direct_summand
    c = cotype(canonical_form(Z4, 1, [(2,)]))
    assert c.invariant_factors == (2,) and not c.is_direct_summand


def test_free_basis_needs_summand():
    with pytest.raises(ExactAlgError):
        free_basis(canonical_form(ZZ, 2, [(2, 0)]))
    assert free_basis(canonical_form(Zmod(9), 3, [(3, 0, 2), (0, 0, 3)])) == [(6, 0, 1)]
