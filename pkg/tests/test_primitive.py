import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfscheme import (
    QQ,
    ZZ,
    InvalidPoint,
    RingHom,
    Zmod,
    canonical_form,
    constant_group,
    evaluate,
    expected_primitive_rank,
    hopf_base_change,
    hopf_product,
    is_nonnull_point,
    is_primitive_point,
    make_point,
    make_tower,
    mu,
    nonnull_scheme,
    primitive_ideal,
    primitive_scheme,
)


def powers(z, n, ring):
    return [ring(pow(z, e, ring.modulus) if ring.modulus else z**e) for e in range(n)]


def test_nonnull_scheme_mu4():
    rep = nonnull_scheme(mu(4, ZZ))
    assert rep.rank == 3 and rep.is_free and rep.ideal_is_summand
    assert rep.ideal == canonical_form(ZZ, 4, [(1, 1, 1, 1)])
    assert rep.quotient.labels == ("1", "x", "x^2")


def test_nonnull_scheme_klein_four():
    rep = nonnull_scheme(constant_group([2, 2], ZZ))
    assert rep.rank == 3
    assert rep.quotient.labels == ("1_(0,1)", "1_(1,0)", "1_(1,1)")


def test_nonnull_scheme_trivial_group():
    rep = nonnull_scheme(constant_group([1], ZZ))
    assert rep.rank == 0 and rep.ideal.is_whole()


def test_primitive_examples():
    t = make_tower("mu", 2, 2, ZZ)
    assert primitive_ideal(t, 2) == canonical_form(ZZ, 4, [(1, 0, 1, 0), (0, 1, 0, 1)])
    assert primitive_scheme(t, 2).rank == 2
    t = make_tower("constant", 3, 2, ZZ)
    rep = primitive_scheme(t, 2)
    assert rep.rank == 6
    # functions on the units of Z/9
    assert rep.quotient.labels == tuple(f"1_{u}" for u in range(9) if u % 3)


@pytest.mark.parametrize("kind,p", [("mu", 2), ("mu", 3), ("constant", 2), ("constant", 3)])
def test_level_one_is_the_nonnull_scheme(kind, p):
    t = make_tower(kind, p, 2, ZZ)
    assert primitive_scheme(t, 1).ideal == nonnull_scheme(t.levels[0]).ideal


def test_distinction_between_nonnull_and_primitive():
    for p in (2, 3):
        t = make_tower("mu", p, 2, ZZ)
        assert nonnull_scheme(t.levels[1]).rank == p * p - 1
        assert primitive_scheme(t, 2).rank == (p - 1) * p


def test_expected_rank_formula():
    assert expected_primitive_rank(2, 1, 2) == 2
    assert expected_primitive_rank(3, 2, 2) == 72
    assert expected_primitive_rank(2, 2, 1) == 3


def test_level_out_of_range():
    with pytest.raises(IndexError):
        primitive_scheme(make_tower("mu", 2, 2, ZZ), 3)


# points ----------------------------------------------------------------------------------------


def test_mu3_points():
    g = mu(3, ZZ)
    assert not is_nonnull_point(g, make_point(g, powers(4, 3, Zmod(9)), Zmod(9)))
    assert is_nonnull_point(g, make_point(g, [1, 1, 1], Zmod(3)))


def test_make_point_validates():
    g = mu(3, ZZ)
    with pytest.raises(InvalidPoint):
        make_point(g, [1, 2, 4], Zmod(9))
    with pytest.raises(InvalidPoint):
        make_point(g, [0, 1, 1], ZZ)
    with pytest.raises(InvalidPoint):
        make_point(g, [1, 1], ZZ)
    with pytest.raises(InvalidPoint):
        make_point(mu(3, Zmod(9)), [1, 1, 1], ZZ)


def test_primitive_points():
    t = make_tower("mu", 2, 2, ZZ)
    assert not is_primitive_point(t, 2, make_point(t.levels[1], powers(-1, 4, ZZ)))
    t2 = make_tower("mu", 2, 2, Zmod(2))
    assert is_primitive_point(t2, 2, make_point(t2.levels[1], [1, 1, 1, 1]))
    c = make_tower("constant", 2, 2, ZZ)
    one = make_point(c.levels[1], [int(u == 1) for u in range(4)])
    two = make_point(c.levels[1], [int(u == 2) for u in range(4)])
    assert is_primitive_point(c, 2, one)
    assert not is_primitive_point(c, 2, two)


def test_primitive_point_wrong_level():
    t = make_tower("mu", 2, 2, ZZ)
    with pytest.raises(InvalidPoint):
        is_primitive_point(t, 1, make_point(t.levels[1], [1, 1, 1, 1]))


def test_constant_sections_over_z():
    for orders in ([2], [3], [2, 2], [4], [6]):
        g = constant_group(orders, ZZ)
        found = []
        for i in range(g.rank):
            pt = make_point(g, [int(j == i) for j in range(g.rank)])
            if is_nonnull_point(g, pt):
                found.append(i)
        assert found == list(range(1, g.rank))


@given(st.sampled_from([2, 3]), st.data())
def test_pair_rule(p, data):
    # (1, y) in mu_p x mu_p is non-null iff p * Phi_p(y) = 0
    target = data.draw(st.sampled_from([Zmod(p), Zmod(p * p)]))
    roots = [y for y in range(target.modulus) if pow(y, p, target.modulus) == 1 % target.modulus]
    y = data.draw(st.sampled_from(roots))
    g = hopf_product(mu(p, ZZ), mu(p, ZZ))
    vals = [pow(y, b, target.modulus) for a in range(p) for b in range(p)]
    got = is_nonnull_point(g, make_point(g, vals, target))
    assert got == (target(p * sum(pow(y, k) for k in range(p))) == 0)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_overring_z_to_q(n):
    g = mu(n, ZZ)
    gq = hopf_base_change(g, RingHom(ZZ, QQ))
    for z in (1, -1):
        if z**n != 1:
            continue
        a = is_nonnull_point(g, make_point(g, powers(z, n, ZZ)))
        b = is_nonnull_point(gq, make_point(gq, powers(z, n, ZZ)))
        assert a == b


@pytest.mark.parametrize("n,target", [(3, Zmod(9)), (3, Zmod(3)), (2, Zmod(4)), (4, Zmod(8))])
def test_base_change_coherence(n, target):
    g = mu(n, ZZ)
    gr = hopf_base_change(g, RingHom(ZZ, target))
    for z in range(target.modulus):
        if pow(z, n, target.modulus) != 1 % target.modulus:
            continue
        vals = powers(z, n, target)
        assert is_nonnull_point(g, make_point(g, vals, target)) == is_nonnull_point(gr, make_point(gr, vals))


def test_evaluate():
    g = mu(3, ZZ)
    pt = make_point(g, powers(4, 3, Zmod(9)), Zmod(9))
    assert evaluate(pt, (1, 1, 1)) == 3


def test_primitivity_routes_agree_everywhere():
    t = make_tower("constant", 2, 2, ZZ, h=2)
    lvl = t.levels[1]
    # both routes are computed inside is_primitive_point, which raises on disagreement
    count = sum(is_primitive_point(t, 2, make_point(lvl, [int(j == i) for j in range(lvl.rank)])) for i in range(lvl.rank))
    assert count == expected_primitive_rank(2, 2, 2)
