"""Categories, functors, and the categorical constructions."""

import pytest

from catcohom.core import (
    CategoryError,
    FiniteCategory,
    FunctorData,
    FunctorToCat,
    categories_isomorphic,
    chain_poset,
    comma_family_over,
    comma_nat_trans,
    comma_over,
    comma_under,
    cyclic_group_category,
    discrete_category,
    factorization_category,
    grothendieck,
    group_category,
    indiscrete_category,
    opposite,
    poset_category,
    terminal_category,
    validate_category,
)


def test_terminal_category_valid():
    assert validate_category(terminal_category()).ok


def test_chain_poset_valid_and_sized():
    c2 = chain_poset(2)
    assert validate_category(c2).ok
    assert c2.n_objects == 3
    # morphisms = pairs x <= y
    assert c2.n_morphisms == 6


def test_broken_composition_reported():
    c2 = chain_poset(2)
    compose = dict(c2.compose_table)
    # redirect a genuine composite to a wrong morphism
    a01 = c2.hom(0, 1)[0]
    a12 = c2.hom(1, 2)[0]
    compose[(a12, a01)] = c2.identity[0]
    broken = FiniteCategory(3, c2.mor_src, c2.mor_dst, c2.identity, compose)
    rep = validate_category(broken)
    assert not rep.ok
    assert any("endpoints" in v or "associativity" in v for v in rep.violations)


def test_opposite_involution_and_group_case():
    for C in (terminal_category(), chain_poset(1), cyclic_group_category(2)):
        assert validate_category(opposite(C)).ok
        opop = opposite(opposite(C))
        assert opop.mor_src == C.mor_src and opop.mor_dst == C.mor_dst
        assert opop.compose_table == C.compose_table
    z2 = cyclic_group_category(2)
    assert categories_isomorphic(opposite(z2), z2)
    c1 = chain_poset(1)
    op = opposite(c1)
    arrow = c1.hom(0, 1)[0]
    assert op.mor_src[arrow] == 1 and op.mor_dst[arrow] == 0


def test_comma_over_identity_has_terminal_object():
    # (d, id_d) is terminal in id/d: exactly one morphism from every object
    D = chain_poset(2)
    ident = FunctorData.identity_functor(D)
    for d in range(3):
        cat, proj = comma_over(ident, d)
        terminal = cat.obj_labels.index((d, D.identity[d]))
        for o in range(cat.n_objects):
            assert len(cat.hom(o, terminal)) == 1
        assert proj.check().ok


def test_comma_over_examples():
    c1 = chain_poset(1)
    ident = FunctorData.identity_functor(c1)
    cat, _ = comma_over(ident, 1)
    assert cat.n_objects == 2
    assert categories_isomorphic(cat, chain_poset(1))

    pt = terminal_category()
    at0 = FunctorData(pt, c1, [0], [c1.identity[0]])
    cat0, _ = comma_over(at0, 0)
    assert cat0.n_objects == 1 and cat0.n_morphisms == 1

    at1 = FunctorData(pt, c1, [1], [c1.identity[1]])
    empty, _ = comma_over(at1, 0)  # no morphism 1 -> 0 exists
    assert empty.n_objects == 0 and empty.n_morphisms == 0


def test_comma_under_examples():
    c1 = chain_poset(1)
    ident = FunctorData.identity_functor(c1)
    cat, _ = comma_under(0, ident)
    assert categories_isomorphic(cat, chain_poset(1))

    pt = terminal_category()
    at1 = FunctorData(pt, c1, [1], [c1.identity[1]])
    one, _ = comma_under(0, at1)   # mu = the arrow, uniquely
    assert one.n_objects == 1
    one2, _ = comma_under(1, at1)  # mu = the identity
    assert one2.n_objects == 1


def test_factorization_category_examples():
    pt = terminal_category()
    fpt, _, _ = factorization_category(pt)
    assert fpt.n_objects == 1 and fpt.n_morphisms == 1

    c1 = chain_poset(1)
    fc, S, T = factorization_category(c1)
    assert fc.n_objects == 3
    assert validate_category(fc).ok
    assert S.check().ok and T.check().ok
    arrow = c1.hom(0, 1)[0]
    assert len(fc.hom(c1.identity[0], arrow)) == 1

    z2 = cyclic_group_category(2)
    fz, _, _ = factorization_category(z2)
    assert fz.n_objects == 2
    e = z2.identity[0]
    # pairs (u, v) with u e v = u v = e: (e,e) and (t,t)
    assert len(fz.hom(e, e)) == 2


def test_factorization_hom_sizes_match_enumeration():
    for C in (chain_poset(2), cyclic_group_category(2), indiscrete_category(2)):
        fc, _, _ = factorization_category(C)
        assert validate_category(fc).ok
        for a in range(C.n_morphisms):
            for b in range(C.n_morphisms):
                count = sum(
                    1
                    for u in range(C.n_morphisms)
                    for v in range(C.n_morphisms)
                    if C.mor_src[v] == C.mor_src[b] and C.mor_dst[v] == C.mor_src[a]
                    and C.mor_src[u] == C.mor_dst[a] and C.mor_dst[u] == C.mor_dst[b]
                    and C.compose(u, C.compose(a, v)) == b)
                assert len(fc.hom(a, b)) == count


def test_grothendieck_point_base_is_fiber():
    C = chain_poset(2)
    F = FunctorToCat(terminal_category(), [C], [FunctorData.identity_functor(C)])
    G, proj = grothendieck(F)
    assert categories_isomorphic(G, C)
    assert proj.check().ok


def test_grothendieck_swap_fiber_is_indiscrete():
    z2 = cyclic_group_category(2)
    d2 = discrete_category(2)
    swap = FunctorData(d2, d2, [1, 0], [1, 0])
    F = FunctorToCat(z2, [d2], [FunctorData.identity_functor(d2), swap])
    assert F.check().ok
    G, _ = grothendieck(F)
    assert validate_category(G).ok
    assert categories_isomorphic(G, indiscrete_category(2))


def test_grothendieck_point_fiber_is_base():
    z2 = cyclic_group_category(2)
    pt = terminal_category()
    F = FunctorToCat(z2, [pt], [FunctorData.identity_functor(pt)] * 2)
    G, _ = grothendieck(F)
    assert categories_isomorphic(G, z2)


def test_poset_builder():
    le = [[1, 1, 1], [0, 1, 1], [0, 0, 1]]
    C = poset_category(le)
    assert C.n_morphisms == 6
    with pytest.raises(CategoryError):
        poset_category([[1, 1], [0, 0]])  # not reflexive
    with pytest.raises(CategoryError):
        poset_category([[1, 1, 1], [0, 1, 1], [1, 0, 1]])  # not transitive


def test_group_builder():
    C = group_category([[0, 1], [1, 0]])
    assert C.n_objects == 1 and C.n_morphisms == 2
    with pytest.raises(CategoryError):
        group_category([[0, 0], [0, 0]])  # not a group
    with pytest.raises(CategoryError):
        # associativity fails: a*(a*b) != (a*a)*b under this table
        group_category([[1, 0, 2], [0, 2, 1], [2, 0, 1]])


def test_comma_family_and_transformation_are_valid():
    c1 = chain_poset(1)
    pt = terminal_category()
    phi = FunctorData(pt, c1, [0], [c1.identity[0]])
    fam = comma_family_over(phi)
    assert fam.tocat.check().ok
    nt = comma_nat_trans(phi)
    assert nt.check().ok


def test_functor_check_catches_violations():
    c1 = chain_poset(1)
    z2 = cyclic_group_category(2)
    bad = FunctorData(z2, z2, [0], [0, 0])  # sends t to e: not a homomorphism? it is!
    assert bad.check().ok  # collapsing Z/2 to the trivial endomorphism is a functor
    arrow = c1.hom(0, 1)[0]
    broken = FunctorData(c1, c1, [0, 1], [c1.identity[0], arrow, c1.identity[0]])
    assert not broken.check().ok
