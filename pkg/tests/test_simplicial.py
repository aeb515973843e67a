"""Simplicial and bisimplicial carriers, their identities, and named maps."""

import itertools

import pytest

from catcohom.core import (
    FunctorData,
    FunctorToCat,
    NatTransData,
    chain_poset,
    comma_family_over,
    comma_family_under,
    comma_nat_trans,
    cyclic_group_category,
    discrete_category,
    terminal_category,
)
from catcohom.fixtures import face_inclusions
from catcohom.simplicial import (
    CommaColimit,
    Diagonal,
    HorizontallyConstant,
    Nerve,
    Replacement,
    SimplexCapError,
    all_monotone,
    check_bisimplicial_identities,
    check_simplicial_identities,
    hocolim,
    identity_chain,
    inclusion_at,
    lambda2_family,
    nat_trans_map,
    nerve,
    nerve_map,
    simplicial_replacement,
)


def test_nerve_point_has_one_simplex_per_degree():
    N = nerve(terminal_category())
    assert all(len(N.simplices(n)) == 1 for n in range(6))


def test_nerve_chain_counts_match_enumeration_oracle():
    # n-simplices of the nerve of [2] = weakly increasing (n+1)-tuples in {0,1,2}
    N = nerve(chain_poset(2))
    for n in range(5):
        want = len(list(itertools.combinations_with_replacement(range(3), n + 1)))
        assert len(N.simplices(n)) == want
    assert [len(N.simplices(n)) for n in range(3)] == [3, 6, 10]


def test_nerve_group_counts():
    N = nerve(cyclic_group_category(2))
    assert [len(N.simplices(n)) for n in range(6)] == [1, 2, 4, 8, 16, 32]


@pytest.mark.parametrize("make", [
    lambda: nerve(terminal_category()),
    lambda: nerve(chain_poset(2)),
    lambda: nerve(cyclic_group_category(2)),
])
def test_simplicial_identities_hold(make):
    assert check_simplicial_identities(make(), 4)


def test_nerve_inner_faces_compose():
    C = chain_poset(2)
    N = nerve(C)
    for n in range(2, 5):
        for x in N.simplices(n):
            for i in range(1, n):
                y = N.face(n, i, x)
                assert y[i - 1] == C.compose(x[i], x[i - 1])


def test_monotone_action_agrees_with_direct_composites():
    # the generic coface/codegeneracy factoring against the closed formula
    C = chain_poset(2)
    N = nerve(C)
    for n in range(4):
        for x in N.simplices(n):
            for m in range(4):
                for f in all_monotone(m, n):
                    got = N.apply(f, n, x)
                    if m == 0:
                        want = N.object_at(n, x, f[0])
                    else:
                        want = tuple(N.composite(n, x, f[k], f[k + 1])
                                     for k in range(m))
                    assert got == want


def test_monotone_action_respects_composition():
    N = nerve(cyclic_group_category(2))
    for n in range(3):
        for x in N.simplices(n):
            for m in range(3):
                for f in all_monotone(m, n):
                    for l in range(3):
                        for g in all_monotone(l, m):
                            fg = tuple(f[v] for v in g)
                            assert N.apply(fg, n, x) == \
                                N.apply(g, m, N.apply(f, n, x))


def test_nerve_map_cases():
    c1, c2 = chain_poset(1), chain_poset(2)
    ident = nerve_map(FunctorData.identity_functor(c2))
    for n in range(3):
        for x in ident.source.simplices(n):
            assert ident.apply(n, x) == x
    pt = terminal_category()
    const = nerve_map(FunctorData(pt, c1, [0], [c1.identity[0]]))
    assert const.apply(0, 0) == 0
    assert const.check_simplicial(3)
    for phi in face_inclusions():
        nm = nerve_map(phi)
        assert nm.check_simplicial(3)
        # injective on nondegenerate simplices
        src = nm.source
        for n in range(3):
            nondeg = [x for x in src.simplices(n) if n == 0
                      or all(m not in set(c1.identity) for m in x)]
            images = [nm.apply(n, x) for x in nondeg]
            assert len(set(images)) == len(images)


def test_replacement_counts_are_fiber_sums():
    c1 = chain_poset(1)
    fam = comma_family_over(FunctorData.identity_functor(c1))
    repl = simplicial_replacement(fam.tocat)
    base = Nerve(c1)
    for p in range(4):
        for q in range(4 - p):
            want = sum(
                len(repl.fibers[repl.first_object(p, s)].simplices(q))
                for s in base.simplices(p))
            assert len(repl.simplices(p, q)) == want
    assert len(repl.simplices(0, 0)) == 3


def test_replacement_horizontal_face_transports_augmentation():
    # first horizontal face moves the fiber along the first base arrow
    c1 = chain_poset(1)
    fam = comma_family_over(FunctorData.identity_functor(c1))
    repl = simplicial_replacement(fam.tocat)
    arrow = c1.hom(0, 1)[0]
    f0 = fam.fiber(0)
    x = ((arrow,), f0.obj_labels.index((0, c1.identity[0])))
    sigma, tau = repl.hface(1, 0, 0, x)
    assert sigma == 1
    assert fam.fiber(1).obj_labels[tau] == (0, arrow)  # mu' = arrow o id


def test_replacement_vertical_face_truncates_augmentation():
    c1 = chain_poset(1)
    fam = comma_family_over(FunctorData.identity_functor(c1))
    f1 = fam.fiber(1)
    N1 = Nerve(f1)
    arrow = c1.hom(0, 1)[0]
    # the 1-simplex from (0, arrow) to (1, id): dropping the last vertex
    # leaves augmentation arrow; dropping the first leaves the identity
    src = f1.obj_labels.index((0, arrow))
    dst = f1.obj_labels.index((1, c1.identity[1]))
    m = next(m for m in range(f1.n_morphisms)
             if f1.mor_src[m] == src and f1.mor_dst[m] == dst)
    x = (m,)
    assert f1.obj_labels[N1.face(1, 1, x)] == (0, arrow)
    assert f1.obj_labels[N1.face(1, 0, x)] == (1, c1.identity[1])


@pytest.mark.parametrize("make_family", [
    lambda: comma_family_over(FunctorData.identity_functor(chain_poset(1))),
    lambda: comma_family_over(FunctorData(
        terminal_category(), cyclic_group_category(2), [0],
        [cyclic_group_category(2).identity[0]])),
])
def test_bisimplicial_identities_hold(make_family):
    repl = simplicial_replacement(make_family().tocat)
    assert check_bisimplicial_identities(repl, 3)


def test_horizontally_constant_carrier_identities():
    Y = nerve(cyclic_group_category(2))
    B = HorizontallyConstant(Y)
    assert check_bisimplicial_identities(B, 3)


def test_hocolim_over_point_matches_fiber_nerve():
    C = chain_poset(2)
    F = FunctorToCat(terminal_category(), [C], [FunctorData.identity_functor(C)])
    H = hocolim(F)
    N = nerve(C)
    for n in range(4):
        xs = H.simplices(n)
        assert len(xs) == len(N.simplices(n))
        # action-equivariant identification: second components match faces
        for x in xs:
            assert x[1] in set(N.simplices(n))
            if n >= 1:
                for i in range(n + 1):
                    assert H.face(n, i, x)[1] == N.face(n, i, x[1])


def test_degenerate_simplices_are_retained():
    c1 = chain_poset(1)
    fam = comma_family_over(FunctorData.identity_functor(c1))
    col = CommaColimit(fam)
    H = col.diagonal
    for x in H.simplices(0):
        assert H.degeneracy(0, 0, x) in set(H.simplices(1))


def test_kappa_identity_on_point():
    pt = terminal_category()
    col = CommaColimit(comma_family_over(FunctorData.identity_functor(pt)))
    k = col.projection
    for n in range(3):
        for x in col.diagonal.simplices(n):
            assert k.apply(n, x) == col.target_nerve.simplices(n)[0]


def test_kappa_strips_labels():
    c1 = chain_poset(1)
    col = CommaColimit(comma_family_over(FunctorData.identity_functor(c1)))
    f1 = col.family.fiber(1)
    arrow = c1.hom(0, 1)[0]
    x = (1, f1.obj_labels.index((0, arrow)))  # sigma = object 1, tau = (0, arrow)
    assert col.projection.apply(0, x) == 0


def test_kappa_is_bisimplicial_and_simplicial():
    c1 = chain_poset(1)
    col = CommaColimit(comma_family_over(FunctorData.identity_functor(c1)))
    assert col.bisimplicial_projection.check_bisimplicial(3)
    assert col.projection.check_simplicial(3)


def test_upsilon_construction_is_simplicial():
    c1 = chain_poset(1)
    pt = terminal_category()
    phi = FunctorData(pt, c1, [0], [c1.identity[0]])
    col = CommaColimit(comma_family_under(phi))
    assert col.bisimplicial_projection.check_bisimplicial(3)
    assert col.projection.check_simplicial(3)


def test_j_and_i_maps():
    c1 = chain_poset(1)
    ident = FunctorData.identity_functor(c1)
    col = CommaColimit(comma_family_over(ident))
    # j_d sends comma chains to their underlying chains
    f1 = col.family.fiber(1)
    arrow = c1.hom(0, 1)[0]
    tau0 = f1.obj_labels.index((0, arrow))
    assert col.j_map(1).apply(0, tau0) == 0
    # i_d then the projection equals j_d on all 1-simplices
    for d in range(2):
        i_d, j_d = col.i_map(d), col.j_map(d)
        fib = col.replacement.fibers[d]
        for n in range(2):
            for tau in fib.simplices(n):
                ix = i_d.apply(n, tau)
                assert ix[0] == identity_chain(c1, d, n)
                assert col.projection.apply(n, ix) == j_d.apply(n, tau)
        assert i_d.check_simplicial(2)


def test_diagonal_inclusion_is_degreewise_identity_in_degree_zero():
    c1 = chain_poset(1)
    col = CommaColimit(comma_family_over(FunctorData.identity_functor(c1)))
    diag = col.diagonal
    for x in diag.simplices(0):
        assert x in set(col.replacement.simplices(0, 0))


def test_nat_trans_map_identity_and_comma_case():
    c1 = chain_poset(1)
    pt = terminal_category()
    phi = FunctorData(pt, c1, [0], [c1.identity[0]])
    U = comma_nat_trans(phi)
    srcr = simplicial_replacement(U.source)
    tgtr = simplicial_replacement(U.target)
    um = nat_trans_map(U, srcr, tgtr)
    assert um.check_bisimplicial(3)
    # (sigma, (c, mu)) goes to (sigma, (phi c, mu))
    f0 = U.source_family.fiber(0)
    g0 = U.target_family.fiber(0)
    tau = 0  # the single object of phi/0
    p, q = 0, 0
    sigma = 0
    out = um.apply(p, q, (sigma, tau))
    c, mu = f0.obj_labels[tau]
    assert g0.obj_labels[out[1]] == (phi.obj_map[c], mu)

    ident = NatTransData(U.source, U.source,
                         [FunctorData.identity_functor(U.source_family.fiber(d))
                          for d in range(2)])
    idm = nat_trans_map(ident, srcr, srcr)
    for pp in range(2):
        for qq in range(2):
            for x in srcr.simplices(pp, qq):
                assert idm.apply(pp, qq, x) == x


def test_nat_trans_map_rejects_non_natural_data():
    z2 = cyclic_group_category(2)
    d2 = discrete_category(2)
    swap = FunctorData(d2, d2, [1, 0], [1, 0])
    F_swap = FunctorToCat(z2, [d2], [FunctorData.identity_functor(d2), swap])
    F_triv = FunctorToCat(z2, [d2], [FunctorData.identity_functor(d2)] * 2)
    # the identity components are not natural between these two actions
    bad = NatTransData(F_swap, F_triv, [FunctorData.identity_functor(d2)])
    with pytest.raises(ValueError):
        nat_trans_map(bad)


def test_lambda2_family_zeta_is_natural_and_projection_bisimplicial():
    z2 = cyclic_group_category(2)
    d2 = discrete_category(2)
    swap = FunctorData(d2, d2, [1, 0], [1, 0])
    F = FunctorToCat(z2, [d2], [FunctorData.identity_functor(d2), swap])
    intF, pi, fam, colim, zeta = lambda2_family(F)
    assert zeta.check().ok
    assert colim.bisimplicial_projection.check_bisimplicial(2)
    # zeta on an object with identity augmentation returns the point itself
    fib = fam.fiber(0)
    for o, (c_id, mu) in enumerate(fib.obj_labels):
        if mu == z2.identity[0]:
            d_prime, x = intF.obj_labels[c_id]
            assert zeta.components[0].obj_map[o] == x


def test_simplex_cap_enforced():
    N = nerve(cyclic_group_category(2), cap=5)
    with pytest.raises(SimplexCapError):
        N.simplices(3)
