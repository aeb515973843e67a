"""Coefficient systems: composites, vertex systems, pullbacks, extensions."""

import pytest

from catcohom.coeff import (
    ConstantSystem,
    FirstVertexSystem,
    LastVertexSystem,
    ModuleOverCategory,
    NaturalSystemOnNerve,
    check_functoriality,
    chi,
    chi_mor,
    extend_horizontally,
    is_horizontally_constant,
    pullback,
    pullback_bis,
    restrict_to_diagonal,
)
from catcohom.core import (
    FunctorData,
    chain_poset,
    comma_family_over,
    cyclic_group_category,
    factorization_category,
    opposite,
    terminal_category,
)
from catcohom.homalg import GF, Mat, ZZ
from catcohom.simplicial import (
    CommaColimit,
    HorizontallyConstant,
    Nerve,
    coface,
    identity_map,
    nerve,
    nerve_map,
)
from catcohom.verify import husainov_fixture


def test_chi_of_vertices_and_chains():
    C = chain_poset(2)
    N = nerve(C)
    for c in range(3):
        assert chi(N, 0, c) == C.identity[c]
    a01, a12 = C.hom(0, 1)[0], C.hom(1, 2)[0]
    a02 = C.hom(0, 2)[0]
    assert chi(N, 2, (a01, a12)) == a02


def test_chi_mor_coface_formula():
    # f = d^0: [1] -> [2] applied to the full chain of [2]:
    # head composite = the first arrow, tail composite = the identity
    C = chain_poset(2)
    N = nerve(C)
    a01, a12 = C.hom(0, 1)[0], C.hom(1, 2)[0]
    sigma = (a01, a12)
    u, v = chi_mor(N, coface(0, 2), 2, sigma)
    assert u == C.identity[2]
    assert v == a01


def test_chi_mor_respects_composition():
    C = chain_poset(2)
    N = nerve(C)
    FC, S, T = factorization_category(C)
    from catcohom.simplicial import all_monotone
    for n in range(4):
        for x in N.simplices(n):
            for m in range(4):
                for f in all_monotone(m, n):
                    fx = N.apply(f, n, x)
                    for l in range(3):
                        for g in all_monotone(l, m):
                            fg = tuple(f[v] for v in g)
                            u1, v1 = chi_mor(N, f, n, x)
                            u2, v2 = chi_mor(N, g, m, fx)
                            uu, vv = chi_mor(N, fg, n, x)
                            # (u1,v1) o (u2,v2) = (u1 u2, v2 v1)
                            assert uu == C.compose(u1, u2)
                            assert vv == C.compose(v2, v1)


def husainov_system():
    phi, FC, M = husainov_fixture()
    return phi.target, FC, M


def test_check_functoriality_cases():
    C = chain_poset(1)
    N = nerve(C)
    assert check_functoriality(ConstantSystem(N, ZZ), 2).ok

    D, FC, M = husainov_system()
    assert check_functoriality(M, 2).ok
    ND = nerve(D)
    assert check_functoriality(NaturalSystemOnNerve(ND, FC, M), 2).ok

    # injected failure: scale the value on a composite arrow only
    C2 = chain_poset(2)
    mats = [Mat.identity(ZZ, 1) for _ in range(C2.n_morphisms)]
    a02 = C2.hom(0, 2)[0]
    mats[a02] = Mat.from_rows(ZZ, [[2]])
    broken = ModuleOverCategory(C2, ZZ, [1, 1, 1], mats)
    rep = check_functoriality(broken, 2)
    assert not rep.ok
    assert any("M(" in v for v in rep.violations)


def test_natural_system_values_on_nerve():
    D, FC, M = husainov_system()
    ND = nerve(D)
    sys = NaturalSystemOnNerve(ND, FC, M)
    arrow = D.hom(0, 1)[0]
    assert sys.rank(1, (arrow,)) == 1
    assert sys.rank(0, 0) == 0
    assert sys.rank(0, 1) == 0
    const = ModuleOverCategory.constant(FC, ZZ, 2)
    csys = NaturalSystemOnNerve(ND, FC, const)
    for n in range(3):
        for x in ND.simplices(n):
            assert csys.rank(n, x) == 2
            assert csys.induced(identity_map(n), n, x) == Mat.identity(ZZ, 2)


def test_vertex_systems():
    C = chain_poset(1)
    N = nerve(C)
    arrow = C.hom(0, 1)[0]
    # covariant module: M(0) = Z, M(1) = 0
    M = ModuleOverCategory(C, ZZ, [1, 0],
                           [Mat.identity(ZZ, 1), Mat(ZZ, 0, 1), Mat(ZZ, 0, 0)])
    last = LastVertexSystem(N, M)
    assert last.rank(1, (arrow,)) == 0
    first = FirstVertexSystem(N, ModuleOverCategory(
        opposite(C), ZZ, [1, 0],
        [Mat.identity(ZZ, 1), Mat(ZZ, 1, 0), Mat(ZZ, 0, 0)]))
    assert first.rank(1, (arrow,)) == 1
    assert check_functoriality(last, 2).ok
    assert check_functoriality(first, 2).ok


def test_constant_module_gives_constant_systems():
    C = chain_poset(2)
    N = nerve(C)
    M = ModuleOverCategory.constant(C, ZZ)
    sys = LastVertexSystem(N, M)
    eye = Mat.identity(ZZ, 1)
    for n in range(3):
        for x in N.simplices(n):
            assert sys.rank(n, x) == 1
            assert sys.induced(identity_map(n), n, x) == eye
            if n >= 1:
                for i in range(n + 1):
                    assert sys.induced(coface(i, n), n, x) == eye


def test_pullback_along_identity_and_composition():
    C = chain_poset(1)
    N = nerve(C)
    D, FC, M = husainov_system()
    ND = nerve(D)
    sys = NaturalSystemOnNerve(ND, FC, M)
    ident = nerve_map(FunctorData.identity_functor(D), ND, ND)
    pb = pullback(ident, sys)
    from catcohom.simplicial import all_monotone
    for n in range(3):
        for x in ND.simplices(n):
            assert pb.rank(n, x) == sys.rank(n, x)
            for m in range(3):
                for f in all_monotone(m, n):
                    assert pb.induced(f, n, x) == sys.induced(f, n, x)


def test_pullback_distributes_over_composition():
    c1, c2 = chain_poset(1), chain_poset(2)
    from catcohom.fixtures import face_inclusions
    phi = face_inclusions()[0]
    pt = terminal_category()
    rho = FunctorData(pt, c1, [0], [c1.identity[0]])
    N0, N1, N2 = nerve(pt), nerve(c1), nerve(c2)
    f = nerve_map(rho, N0, N1)
    g = nerve_map(phi, N1, N2)
    FC2, _, _ = factorization_category(c2)
    sys = NaturalSystemOnNerve(N2, FC2, ModuleOverCategory.representable(FC2, ZZ, 1))
    both = pullback(f, pullback(g, sys))
    composed = pullback(f.then(g), sys)
    from catcohom.simplicial import all_monotone
    for n in range(3):
        for x in N0.simplices(n):
            assert both.rank(n, x) == composed.rank(n, x)
            for m in range(3):
                for fm in all_monotone(m, n):
                    assert both.induced(fm, n, x) == composed.induced(fm, n, x)


def test_kappa_pullback_is_horizontally_constant():
    # the computational content of strong extendability
    for phi in [FunctorData.identity_functor(chain_poset(1)),
                FunctorData(terminal_category(), cyclic_group_category(2),
                            [0], [cyclic_group_category(2).identity[0]])]:
        col = CommaColimit(comma_family_over(phi))
        FC, _, _ = factorization_category(phi.source)
        sys = NaturalSystemOnNerve(col.target_nerve, FC,
                                   ModuleOverCategory.representable(FC, ZZ, 0))
        ext = extend_horizontally(sys, col.constant_target)
        pulled = pullback_bis(col.bisimplicial_projection, ext)
        assert is_horizontally_constant(pulled, 3)


def test_extension_of_constant_is_constant_and_counterexample():
    Y = nerve(chain_poset(1))
    sys = ConstantSystem(Y, ZZ, 2)
    ext = extend_horizontally(sys)
    assert is_horizontally_constant(ext, 3)

    class Skewed(type(ext)):
        def induced(self, fh, fv, p, q, x):
            m = super().induced(fh, fv, p, q, x)
            if len(fh) - 1 != p:  # non-identity horizontal part
                return m.scale(2)
            return m

    assert not is_horizontally_constant(Skewed(sys), 2)


def test_diag_restriction_matches_bidegree_values():
    c1 = chain_poset(1)
    col = CommaColimit(comma_family_over(FunctorData.identity_functor(c1)))
    sys = ConstantSystem(col.target_nerve, GF(2), 1)
    ext = extend_horizontally(sys, col.constant_target)
    pulled = pullback_bis(col.bisimplicial_projection, ext)
    J = restrict_to_diagonal(pulled, col.diagonal)
    for n in range(3):
        for x in col.diagonal.simplices(n):
            assert J.rank(n, x) == pulled.rank(n, n, x)


def test_representable_module_is_functorial():
    for C in (chain_poset(2), cyclic_group_category(3)):
        for x in range(C.n_objects):
            M = ModuleOverCategory.representable(C, ZZ, x)
            assert M.check().ok
        FC, _, _ = factorization_category(C)
        assert ModuleOverCategory.representable(FC, ZZ, 0).check().ok


def test_direct_sum_is_functorial():
    C = cyclic_group_category(2)
    A = ModuleOverCategory.representable(C, ZZ, 0)
    B = ModuleOverCategory.constant(C, ZZ, 2)
    assert A.direct_sum(B).check().ok
