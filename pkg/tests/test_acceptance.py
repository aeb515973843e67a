"""Acceptance criteria, one test per criterion, each printing a pass/fail
line with its runtime.  Tolerances are exact (graded-invariant equality);
runtime budgets are asserted.
"""

import random
import time

import pytest

from catcohom.coeff import (
    BisCoefficientSystem,
    ModuleOverCategory,
    NaturalSystemOnNerve,
)
from catcohom.cohomology import (
    bw_complex,
    quillen_complex,
    quillen_contravariant_complex,
    simplicial_complex,
)
from catcohom.core import (
    FunctorData,
    FunctorToCat,
    chain_poset,
    cyclic_group_category,
    factorization_category,
    opposite,
    terminal_category,
)
from catcohom.fixtures import (
    theorem1_functors,
    theorem1_systems,
    theorem2_instance,
    theorem3_functors,
)
from catcohom.homalg import GF, Mat, QQ, ZZ, bareiss_det, graded_iso, snf
from catcohom.simplicial import (
    Nerve,
    check_simplicial_identities,
    nerve,
    simplicial_replacement,
)
from catcohom.verify import (
    SystemSpec,
    verify_dold_puppe,
    verify_husainov,
    verify_prop_diag,
    verify_theorem1,
    verify_theorem2,
    verify_theorem3,
)


@pytest.fixture
def announce(capsys):
    def _announce(msg):
        with capsys.disabled():
            print(msg)
    return _announce


def timed(budget):
    class _Timer:
        def __enter__(self):
            self.t0 = time.time()
            return self

        def __exit__(self, *exc):
            self.elapsed = time.time() - self.t0
            if exc[0] is None:
                assert self.elapsed < budget, \
                    f"runtime {self.elapsed:.1f}s exceeds budget {budget}s"
            return False
    return _Timer()


def test_acceptance_1_worked_example(announce):
    with timed(1.0) as t:
        rep = verify_husainov(3)
        assert rep.passed
        d = rep.to_dict(include_timing=False)
        assert d["sides"]["arrow_category"]["H1"] == {"rank": 1, "torsion": []}
        assert d["sides"]["point"]["H1"] == {"rank": 0, "torsion": []}
        assert d["notes"][-1]["theorem2_verdict"] == "hypothesis-failed"
    announce(f"ACCEPTANCE 1 PASS worked example exact, theorem-A hypothesis "
             f"failure flagged ({t.elapsed:.2f}s < 1s)")


def test_acceptance_2_main_theorem_sweep(announce):
    rng = random.Random(42)
    count = 0
    with timed(60.0) as t:
        for name, phi in theorem1_functors():
            for ring in (ZZ, GF(2)):
                for spec in theorem1_systems(phi.source, ring, rng):
                    rep = verify_theorem1(phi, spec, 3)
                    assert rep.passed, (name, spec.name, ring.tag())
                    count += 1
    assert count >= 10
    announce(f"ACCEPTANCE 2 PASS projection-isomorphism sweep: {count} fixtures, "
             f"exact equality at n <= 3 ({t.elapsed:.1f}s < 60s)")


def test_acceptance_3_coefficient_reduction_lemmas(announce):
    rng = random.Random(7)
    cats = [chain_poset(1), chain_poset(2), cyclic_group_category(2)]
    checked = 0
    with timed(30.0) as t:
        for C in cats:
            FC, S, T = factorization_category(C)
            NC = nerve(C)
            naturals = [ModuleOverCategory.constant(FC, ZZ),
                        ModuleOverCategory.representable(FC, ZZ, 0),
                        ModuleOverCategory.representable(FC, ZZ, C.n_morphisms - 1)]
            if C.n_objects == 2:
                from catcohom.fixtures import arrow_indicator_system
                ind = arrow_indicator_system(C, FC, C.hom(0, 1)[0], ZZ)
                assert ind is not None
                naturals.append(ind)
            for M in naturals:
                a = simplicial_complex(NC, NaturalSystemOnNerve(NC, FC, M), 3)
                b = bw_complex(C, FC, M, 3, NC=NC)
                assert graded_iso(a.invariants(3), b.invariants(3), 3)
                checked += 1
            covariants = [ModuleOverCategory.constant(C, ZZ),
                          ModuleOverCategory.representable(C, ZZ, 0)]
            for Ncov in covariants:
                m_t = Ncov.precompose(T)
                a = bw_complex(C, FC, m_t, 3, NC=NC)
                b = quillen_complex(C, Ncov, 3, NC=NC)
                assert graded_iso(a.invariants(3), b.invariants(3), 3)
                checked += 1
            Cop = opposite(C)
            contras = [ModuleOverCategory.constant(Cop, ZZ),
                       ModuleOverCategory.representable(Cop, ZZ, 0)]
            for Nctr in contras:
                m_s = Nctr.precompose(S)
                a = bw_complex(C, FC, m_s, 3, NC=NC)
                b = quillen_contravariant_complex(C, Nctr, 3, NC=NC)
                assert graded_iso(a.invariants(3), b.invariants(3), 3)
                checked += 1
    announce(f"ACCEPTANCE 3 PASS coefficient-reduction identities: {checked} "
             f"fixture comparisons exact at n <= 3 ({t.elapsed:.1f}s < 30s)")


def test_acceptance_4_group_cohomology_oracle(announce):
    import json
    from importlib import resources
    table = json.loads(resources.files("catcohom")
                       .joinpath("data", "cyclic_oracle.json").read_text())
    with timed(60.0) as t:
        for n, want_key in ((2, "2:4"), (3, "3:4")):
            C = cyclic_group_category(n)
            K = quillen_complex(C, ModuleOverCategory.constant(C, ZZ), 4)
            got = [[rank, list(tors)] for rank, tors in K.invariants(4).entries]
            assert got == table[want_key]
            NC = nerve(C)
            FC, _, T = factorization_category(C)
            thom = simplicial_complex(
                NC, NaturalSystemOnNerve(NC, FC, ModuleOverCategory.constant(FC, ZZ)), 4)
            got2 = [[rank, list(tors)] for rank, tors in thom.invariants(4).entries]
            assert got2 == table[want_key]
    announce(f"ACCEPTANCE 4 PASS cyclic group cohomology matches the committed "
             f"periodic-resolution oracle for orders 2 and 3, n <= 4 "
             f"({t.elapsed:.1f}s < 60s)")


def test_acceptance_5_spectral_sequence(announce):
    with timed(120.0) as t:
        for ring in (GF(2), QQ):
            for name, F in theorem3_functors():
                rep = verify_theorem3(F, SystemSpec.constant(ring), 3)
                assert rep.passed, (name, ring.tag(), rep.to_dict())
                e2 = rep.notes[0]["e2"]
                assert all(cell["equal"] for cell in e2)
                assert rep.notes[1]["converges"]
    announce(f"ACCEPTANCE 5 PASS spectral sequence: second pages agree both "
             f"ways and stable dims match the construction over fp:2 and rat "
             f"({t.elapsed:.1f}s < 120s)")


class _ConstBis(BisCoefficientSystem):
    def __init__(self, carrier, ring):
        super().__init__(carrier, ring, name="const")
        self._eye = Mat.identity(ring, 1)

    def rank(self, p, q, x):
        return 1

    def induced(self, fh, fv, p, q, x):
        return self._eye


def test_acceptance_6_diag_total_and_chain_consequence(announce):
    pt = terminal_category()
    c1 = chain_poset(1)
    z2 = cyclic_group_category(2)
    functors = [
        FunctorToCat(pt, [pt], [FunctorData.identity_functor(pt)]),
        FunctorToCat(c1, [pt, pt], [FunctorData.identity_functor(pt)] * 3),
        FunctorToCat(z2, [pt], [FunctorData.identity_functor(pt)] * 2),
    ]
    checked = 0
    with timed(60.0) as t:
        for F in functors:
            for ring in (ZZ, GF(2)):
                X = simplicial_replacement(F)
                rep = verify_prop_diag(X, _ConstBis(X, ring), 3)
                assert rep.passed
                rep2 = verify_dold_puppe(X, ring, 3)
                assert rep2.passed
                checked += 2
    announce(f"ACCEPTANCE 6 PASS diagonal-vs-total agreement (cohomology and "
             f"homology): {checked} checks over int and fp:2, n <= 3 "
             f"({t.elapsed:.1f}s < 60s)")


def test_acceptance_7_kernel_properties(announce):
    rng = random.Random(1234)
    with timed(60.0) as t:
        for k in range(200):
            m, n = rng.randint(1, 40), rng.randint(1, 40)
            data = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
            A = Mat.from_rows(ZZ, data)
            U, S, V = snf(A)
            assert (U @ S @ V) == A
            assert abs(bareiss_det(U)) == 1 and abs(bareiss_det(V)) == 1
            diag = [S.data[i][i] for i in range(min(m, n)) if S.data[i][i]]
            for a, b in zip(diag, diag[1:]):
                assert b % a == 0
        # differentials square to zero on every assembled complex flavor
        for C in (chain_poset(2), cyclic_group_category(2)):
            FC, _, _ = factorization_category(C)
            NC = nerve(C)
            complexes = [
                quillen_complex(C, ModuleOverCategory.constant(C, ZZ), 3, NC=NC),
                bw_complex(C, FC, ModuleOverCategory.representable(FC, ZZ, 0), 3, NC=NC),
                simplicial_complex(NC, NaturalSystemOnNerve(
                    NC, FC, ModuleOverCategory.constant(FC, ZZ)), 3),
            ]
            for K in complexes:
                for i in range(len(K.diffs) - 1):
                    assert (K.diffs[i + 1] @ K.diffs[i]).is_zero()
        # simplicial identities exhaustively through degree 4 on the fixtures
        for C in (terminal_category(), chain_poset(2), cyclic_group_category(2)):
            assert check_simplicial_identities(nerve(C), 4)
    announce(f"ACCEPTANCE 7 PASS kernel properties: 200 reconstruction checks, "
             f"squared differentials, simplicial identities to degree 4 "
             f"({t.elapsed:.1f}s < 60s)")


def test_acceptance_8_negative_control(announce):
    rng = random.Random(2718)
    contradictions = 0
    hypothesis_failures = 0
    with timed(120.0) as t:
        for k in range(50):
            ring = ZZ if rng.random() < 0.5 else GF(2)
            phi, spec = theorem2_instance(rng, ring)
            rep = verify_theorem2(phi, spec, 2)
            if rep.verdict == "fail":
                contradictions += 1
            if rep.verdict == "hypothesis-failed":
                hypothesis_failures += 1
    assert contradictions == 0
    announce(f"ACCEPTANCE 8 PASS negative control: 50 seeded draws, "
             f"{hypothesis_failures} hypothesis failures, 0 contradictions "
             f"({t.elapsed:.1f}s < 120s)")
