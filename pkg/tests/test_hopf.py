import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfscheme import (
    QQ,
    ZZ,
    AntipodeFails,
    AugmentedAlgebra,
    CounitLawFails,
    InputNotInvariant,
    KernelMismatch,
    Matrix,
    Measure,
    NotBialgebra,
    NotCoassociative,
    NotCocommutative,
    NotSurjective,
    RingHom,
    Zmod,
    alpha_p,
    canonical_form,
    cartier_dual,
    constant_group,
    constant_ses,
    duality_report,
    extension_report,
    haar_measure,
    hopf_base_change,
    hopf_product,
    integrate_in_stages,
    integration_operator,
    invariant_measures,
    is_hopf_hom,
    jabc_verify,
    make_algebra,
    make_hopf,
    mu,
    mu_ses,
    multiply,
    nonnull_ideal,
    pairing,
    product_ses,
    scale_measure,
    star_measures,
    sweep,
    verify_ses,
)
from oracles import all_vectors, brute_annihilator, span

F2, F3 = Zmod(2), Zmod(3)


def mu2_aug(ring=ZZ):
    alg = make_algebra(ring, 2, ["1", "x"], [(0, 0, 0, 1), (0, 1, 1, 1), (1, 1, 0, 1)], [1, 0])
    return AugmentedAlgebra(alg, (1, 1))


# construction ------------------------------------------------------------------------


def test_mu2_data_accepted():
    h = make_hopf(mu2_aug(), [(0, 0, 0, 1), (1, 1, 1, 1)])
    assert h.same_structure(mu(2, ZZ))


def test_constant_z2_data_accepted():
    alg = make_algebra(ZZ, 2, ["1_0", "1_1"], [(0, 0, 0, 1), (1, 1, 1, 1)], [1, 1])
    aug = AugmentedAlgebra(alg, (1, 0))
    h = make_hopf(aug, [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1)])
    assert h.same_structure(constant_group([2], ZZ))


def test_counit_law_failure():
    with pytest.raises(CounitLawFails):
        make_hopf(mu2_aug(), [(0, 0, 0, 1), (1, 1, 0, 1)])


def test_not_a_bialgebra():
    # x primitive in Z[x]/(x^2): Delta(x)^2 = 2 x (x) x but Delta(x^2) = 0
    alg = make_algebra(ZZ, 2, ["1", "x"], [(0, 0, 0, 1), (0, 1, 1, 1)], [1, 0])
    with pytest.raises(NotBialgebra):
        make_hopf(AugmentedAlgebra(alg, (1, 0)), [(0, 0, 0, 1), (1, 1, 0, 1), (1, 0, 1, 1)])


def _set_map_comult(points, law):
    idx = {x: i for i, x in enumerate(points)}
    return [(idx[law(x, y)], idx[x], idx[y], 1) for x in points for y in points]


def _functions(n, ident=0):
    alg = make_algebra(ZZ, n, None, [(i, i, i, 1) for i in range(n)], [1] * n)
    return AugmentedAlgebra(alg, tuple(int(i == ident) for i in range(n)))


def test_not_cocommutative():
    # functions on S_3
    perms = list(itertools.permutations(range(3)))

    def comp(a, b):
        return tuple(a[b[i]] for i in range(3))

    with pytest.raises(NotCocommutative):
        make_hopf(_functions(6), _set_map_comult(perms, comp))


def test_not_coassociative():
    # commutative unital magma on {0, 1, 2}: 1*1 = 2, 1*2 = 1, 2*2 = 1, so (1*1)*2 != 1*(1*2)
    table = {(1, 1): 2, (1, 2): 1, (2, 1): 1, (2, 2): 1}

    def law(x, y):
        if x == 0 or y == 0:
            return x + y
        return table[(x, y)]

    with pytest.raises(NotCoassociative):
        make_hopf(_functions(3), _set_map_comult([0, 1, 2], law))


def test_bad_antipode():
    with pytest.raises(AntipodeFails):
        make_hopf(mu2_aug(), [(0, 0, 0, 1), (1, 1, 1, 1)], Matrix.build(ZZ, [[1, 0], [0, -1]]))


# duality -------------------------------------------------------------------------------------

CATALOG = [
    constant_group([1], ZZ),
    constant_group([4], ZZ),
    constant_group([2, 2], F2),
    mu(3, ZZ),
    mu(4, Zmod(9)),
    mu(2, F2),
    alpha_p(2, F2),
    alpha_p(3, F3),
    hopf_product(mu(2, ZZ), constant_group([2], ZZ)),
]


@pytest.mark.parametrize("h", CATALOG, ids=repr)
def test_dual_is_an_involution(h):
    d = cartier_dual(h)
    assert cartier_dual(d) == h


def test_dual_of_constant_is_mu():
    assert cartier_dual(constant_group([4], ZZ)).same_structure(mu(4, ZZ))


def test_alpha_p_is_self_dual_up_to_scaling():
    # divided powers: x^i -> i! x^[i] identifies the dual of alpha_p with alpha_p in char p
    h = alpha_p(3, F3)
    d = cartier_dual(h)
    scale = [1, 1, 2]
    m = Matrix.build(F3, [[scale[i] if j == i else 0 for j in range(3)] for i in range(3)])
    inv = Matrix.build(F3, [[F3.inv(scale[i]) if j == i else 0 for j in range(3)] for i in range(3)])
    assert is_hopf_hom(h, d, m) and is_hopf_hom(d, h, inv)


# J and D --------------------------------------------------------------------------------------


def test_nonnull_examples():
    assert nonnull_ideal(constant_group([3], ZZ)) == canonical_form(ZZ, 3, [(1, 0, 0)])
    assert nonnull_ideal(mu(3, ZZ)) == canonical_form(ZZ, 3, [(1, 1, 1)])
    # (1 + x)(1 + y) in the basis 1, y, x, xy
    assert nonnull_ideal(hopf_product(mu(2, ZZ), mu(2, ZZ))) == canonical_form(ZZ, 4, [(1, 1, 1, 1)])


def test_invariant_measure_examples():
    assert invariant_measures(mu(2, ZZ)) == canonical_form(ZZ, 2, [(1, 0)])
    assert invariant_measures(constant_group([2, 2], ZZ)) == canonical_form(ZZ, 4, [(1, 1, 1, 1)])
    assert invariant_measures(constant_group([1], ZZ)).is_whole()


def test_sweep_examples():
    g = constant_group([3], ZZ)
    count = Measure(g, (1, 1, 1))
    assert sweep(g, count, (5, -2, 7)) == (10, 10, 10)
    m = mu(2, ZZ)
    assert sweep(m, Measure(m, (1, 0)), (4, 9)) == (4, 0)


def test_scale_by_one():
    h = mu(3, ZZ)
    nu = Measure(h, (2, -1, 5))
    assert scale_measure(h, h.unit, nu) == nu
    # <f mu, g> = <mu, f g>
    f, g = (1, 2, 0), (0, 1, 3)
    assert pairing(scale_measure(h, f, nu), g) == pairing(nu, multiply(h.algebra, f, g))


def test_convolution_unit_is_counit():
    h = mu(4, ZZ)
    nu = Measure(h, (3, 1, 4, 1))
    assert star_measures(h, Measure(h, h.counit), nu) == nu


def test_duality_report_mu_n():
    for n in (2, 3, 4):
        rep = duality_report(mu(n, ZZ))
        assert rep.pairing_is_perfect and rep.measure_iso_holds and rep.haar_generator is not None


SMALL_GROUPS = [
    mu(2, F2),
    mu(3, F3),
    mu(4, F2),
    mu(3, F2),
    mu(2, F3),
    constant_group([2], F2),
    constant_group([3], F3),
    constant_group([2, 2], F2),
    constant_group([4], F3),
    alpha_p(2, F2),
    alpha_p(3, F3),
    hopf_product(mu(2, F2), mu(2, F2)),
    hopf_product(mu(2, F2), constant_group([2], F2)),
]


@pytest.mark.parametrize("h", SMALL_GROUPS, ids=repr)
def test_nonnull_and_measures_match_enumeration(h):
    ring = h.ring
    alg = h.algebra
    aug_gens = [tuple(ring.sub(x, ring.mul(h.counit[i], u)) for x, u in zip(alg.basis_vector(i), h.unit)) for i in range(h.rank)]
    assert span(ring, h.rank, nonnull_ideal(h).rows) == brute_annihilator(alg, aug_gens)
    # nu * mu = <nu, 1> mu for all nu
    brute = set()
    for m in all_vectors(ring, h.rank):
        if all(
            star_measures(h, alg.basis_vector(j), m).coords == tuple(ring.mul(h.unit[j], x) for x in m)
            for j in range(h.rank)
        ):
            brute.add(m)
    assert span(ring, h.rank, invariant_measures(h).rows) == brute


@pytest.mark.parametrize("h", SMALL_GROUPS + CATALOG, ids=repr)
def test_haar_sweep_is_onto_constants(h):
    mu0 = haar_measure(h)
    assert mu0 is not None
    vals = []
    for i in range(h.rank):
        e = h.algebra.basis_vector(i)
        v = pairing(mu0, e)
        assert sweep(h, mu0, e) == tuple(h.ring.mul(v, u) for u in h.unit)
        vals.append(v)
    assert h.ring.ideal_is_whole(vals)


# short exact sequences ---------------------------------------------------------------------------


def test_ses_examples():
    ses = mu_ses(2, ZZ)
    assert ses.A.rank == 4
    constant_ses(2, ZZ)
    with pytest.raises(NotSurjective):
        verify_ses(ses.C, ses.A, ses.B, ses.iota, Matrix.build(ZZ, [[1, 0], [1, 0], [1, 0], [1, 0]]))


def test_ses_kernel_mismatch():
    ses = mu_ses(2, ZZ)
    # mu_2 -> mu_2 x mu_2 -> mu_2 with pi the first projection but iota the diagonal
    g = hopf_product(mu(2, ZZ), mu(2, ZZ))
    iota = Matrix.build(ZZ, [[1, 0, 0, 0], [0, 0, 0, 1]])
    pi = Matrix.build(ZZ, [[1, 0], [1, 0], [0, 1], [0, 1]])
    with pytest.raises(KernelMismatch):
        verify_ses(mu(2, ZZ), g, mu(2, ZZ), iota, pi)
    del ses


def test_integrate_mu2_in_mu4():
    ses = mu_ses(2, ZZ)
    out = integrate_in_stages(ses, haar_measure(ses.B), haar_measure(ses.C))
    assert out.coords == (1, 0, 0, 0)


def test_integrate_constant():
    ses = constant_ses(2, ZZ)
    out = integrate_in_stages(ses, haar_measure(ses.B), haar_measure(ses.C))
    assert out.coords == (1, 1, 1, 1)


def test_integrate_is_linear():
    ses = mu_ses(2, ZZ)
    mk = haar_measure(ses.C)
    out = integrate_in_stages(ses, haar_measure(ses.B), Measure(ses.C, tuple(2 * x for x in mk.coords)))
    assert out.coords == (2, 0, 0, 0)
    assert not ZZ.ideal_is_whole(out.coords)


def test_integrate_rejects_non_invariant():
    ses = mu_ses(2, ZZ)
    with pytest.raises(InputNotInvariant):
        integrate_in_stages(ses, Measure(ses.B, (0, 1)), haar_measure(ses.C))


def test_integration_operator_lands_in_k():
    ses = constant_ses(3, ZZ)
    op = integration_operator(ses, haar_measure(ses.B))
    assert op.shape == (9, 3)


def test_jabc_examples():
    assert jabc_verify(mu_ses(2, ZZ))
    assert jabc_verify(constant_ses(2, ZZ))
    assert jabc_verify(product_ses(mu(2, ZZ), constant_group([3], ZZ)))


def test_extension_report_examples():
    rep = extension_report(constant_ses(2, ZZ))
    assert rep.h_inclusion_ok and rep.pullback_inclusion_ok and rep.square_cartesian and rep.k_etale
    rep = extension_report(mu_ses(2, F2))
    assert rep.h_inclusion_ok and not rep.square_cartesian
    assert rep.restricted_ideal.is_zero and rep.subgroup_ideal == canonical_form(F2, 2, [(1, 1)])
    assert extension_report(mu_ses(2, QQ)).square_cartesian


# base change ---------------------------------------------------------------------------------


def test_base_change_mu3_to_f3():
    h = hopf_base_change(mu(3, ZZ), RingHom(ZZ, F3))
    # (x - 1)^2 = x^2 + x + 1 mod 3
    assert nonnull_ideal(h) == canonical_form(F3, 3, [(1, -2, 1)])


@given(st.sampled_from([Zmod(2), Zmod(3), Zmod(4), Zmod(9), QQ]), st.sampled_from([2, 3, 4]))
def test_constant_group_j_is_identity_indicator(ring, n):
    h = hopf_base_change(constant_group([n], ZZ), RingHom(ZZ, ring))
    assert nonnull_ideal(h) == canonical_form(ring, n, [[1] + [0] * (n - 1)])
