"""Canned categories, functors, coefficient systems, and seeded random
generators used by the verification sweeps, the CLI, and the test suite.

Random module data is produced by free construction: direct sums of
representable modules (and constants), which are functorial by construction.
Random categories are drawn from posets and small cyclic groups so nerve
sizes stay desk-scale.
"""

from __future__ import annotations

import random

from .coeff import ModuleOverCategory, check_functoriality
from .core import (
    FiniteCategory,
    FunctorData,
    FunctorToCat,
    chain_poset,
    cyclic_group_category,
    discrete_category,
    factorization_category,
    indiscrete_category,
    poset_category,
    terminal_category,
)
from .homalg import GF, Mat, QQ, Ring, ZZ
from .verify import SystemSpec, husainov_fixture


# ---------------------------------------------------------------------------
# Named categories
# ---------------------------------------------------------------------------

def named_categories():
    return {
        "pt": terminal_category,
        "poset1": lambda: chain_poset(1),
        "poset2": lambda: chain_poset(2),
        "z2": lambda: cyclic_group_category(2),
        "z3": lambda: cyclic_group_category(3),
        "discrete2": lambda: discrete_category(2),
        "indiscrete2": lambda: indiscrete_category(2),
    }


def poset_functor(src: FiniteCategory, dst: FiniteCategory, obj_map,
                  name="") -> FunctorData:
    """Functor between thin categories determined by a relation-preserving
    object map."""
    mor_map = []
    for m in range(src.n_morphisms):
        s, d = obj_map[src.mor_src[m]], obj_map[src.mor_dst[m]]
        hom = dst.hom(s, d)
        if len(hom) != 1:
            raise ValueError("object map does not preserve the relation")
        mor_map.append(hom[0])
    return FunctorData(src, dst, obj_map, mor_map, name=name)


def face_inclusions():
    """The three injections of the arrow category into the two-step chain."""
    c1, c2 = chain_poset(1), chain_poset(2)
    return [poset_functor(c1, c2, om, name=f"face{k}")
            for k, om in enumerate([[1, 2], [0, 2], [0, 1]])]


def theorem1_functors():
    """The functor pool for the main-theorem sweep."""
    pt = terminal_category()
    c1 = chain_poset(1)
    z2 = cyclic_group_category(2)
    out = [
        ("id(pt)", FunctorData.identity_functor(pt)),
        ("id([1])", FunctorData.identity_functor(c1)),
        ("id([2])", FunctorData.identity_functor(chain_poset(2))),
        ("id(Z/2)", FunctorData.identity_functor(z2)),
        ("pt->[1]@0", FunctorData(pt, c1, [0], [c1.identity[0]], name="pt->[1]@0")),
        ("pt->Z/2", FunctorData(pt, z2, [0], [z2.identity[0]], name="pt->Z/2")),
    ]
    out += [(f"[1]->[2] face{k}", f) for k, f in enumerate(face_inclusions())]
    return out


def theorem3_functors():
    """The Cat-valued functor pool for the spectral-sequence checks."""
    pt = terminal_category()
    z2 = cyclic_group_category(2)
    d2 = discrete_category(2)
    swap = FunctorData(d2, d2, [1, 0], [1, 0])
    c1 = chain_poset(1)
    incl = FunctorData(pt, d2, [0], [0])
    return [
        ("z2-ptfiber", FunctorToCat(z2, [pt], [FunctorData.identity_functor(pt)] * 2,
                                    name="z2-ptfiber")),
        ("z2-swap", FunctorToCat(z2, [d2], [FunctorData.identity_functor(d2), swap],
                                 name="z2-swap")),
        ("poset1-mixed", FunctorToCat(
            c1, [pt, d2],
            [FunctorData.identity_functor(pt), incl, FunctorData.identity_functor(d2)],
            name="poset1-mixed")),
    ]


# ---------------------------------------------------------------------------
# Coefficient systems
# ---------------------------------------------------------------------------

def random_module(cat: FiniteCategory, ring: Ring, rng: random.Random,
                  name="random") -> ModuleOverCategory:
    """A random functorial module: a sum of one or two representables, with a
    constant summand half the time."""
    parts = []
    for _ in range(rng.randint(1, 2)):
        parts.append(ModuleOverCategory.representable(
            cat, ring, rng.randrange(cat.n_objects)))
    if rng.random() < 0.5:
        parts.append(ModuleOverCategory.constant(cat, ring, rank=rng.randint(1, 2)))
    M = parts[0]
    for p in parts[1:]:
        M = M.direct_sum(p)
    M.name = name
    return M


def arrow_indicator_system(C: FiniteCategory, FC: FiniteCategory, arrow: int,
                           ring: Ring):
    """The natural system with value rank 1 exactly at one morphism and the
    identity action on its endomorphisms; returns None when the data is not
    functorial (it is whenever the arrow admits no factorization detour)."""
    ranks = [1 if a == arrow else 0 for a in range(C.n_morphisms)]
    mats = []
    for m in range(FC.n_morphisms):
        a, b = FC.mor_src[m], FC.mor_dst[m]
        if a == arrow and b == arrow:
            mats.append(Mat.identity(ring, 1))
        else:
            mats.append(Mat(ring, ranks[b], ranks[a]))
    M = ModuleOverCategory(FC, ring, ranks, mats, name=f"indicator[{arrow}]")
    return M if M.check().ok else None


def theorem1_systems(C: FiniteCategory, ring: Ring, rng: random.Random):
    """System pool for a given source category: constants, composite-read
    natural systems generated freely (single representables keep ranks small
    on group-like categories), and last-vertex module systems."""
    FC, S, T = factorization_category(C)
    out = [SystemSpec.constant(ring, rank=1)]
    out.append(SystemSpec.natural(
        FC, ModuleOverCategory.representable(FC, ring, rng.randrange(FC.n_objects),
                                             name="nat")))
    out.append(SystemSpec.covariant(
        ModuleOverCategory.representable(C, ring, rng.randrange(C.n_objects),
                                         name="cov")))
    nonid = [m for m in range(C.n_morphisms) if m not in set(C.identity)]
    if nonid:
        ind = arrow_indicator_system(C, FC, rng.choice(nonid), ring)
        if ind is not None:
            out.append(SystemSpec.natural(FC, ind))
    return out


# ---------------------------------------------------------------------------
# Random categories and functors for the negative-control sweep
# ---------------------------------------------------------------------------

def random_poset(rng: random.Random, max_objects=4) -> FiniteCategory:
    k = rng.randint(1, max_objects)
    le = [[1 if x == y else 0 for y in range(k)] for x in range(k)]
    for x in range(k):
        for y in range(x + 1, k):
            if rng.random() < 0.5:
                le[x][y] = 1
    # transitive closure (order respects the index order, so no cycles)
    for x in range(k):
        for y in range(k):
            if le[x][y]:
                for z in range(k):
                    if le[y][z]:
                        le[x][z] = 1
    return poset_category(le)


def random_category(rng: random.Random) -> FiniteCategory:
    roll = rng.random()
    if roll < 0.6:
        return random_poset(rng)
    if roll < 0.8:
        return cyclic_group_category(2)
    return cyclic_group_category(3)


def random_functor(rng: random.Random):
    """A random functor with small source and target, including collapse
    functors and inclusions; always validated."""
    roll = rng.random()
    if roll < 0.3:
        C = random_category(rng)
        return FunctorData.identity_functor(C)
    if roll < 0.6:
        D = random_poset(rng)
        pt = terminal_category()
        d = rng.randrange(D.n_objects)
        return FunctorData(pt, D, [d], [D.identity[d]], name=f"pt->{d}")
    if roll < 0.85:
        # monotone map between random posets
        for _ in range(50):
            C, D = random_poset(rng), random_poset(rng)
            obj_map = [rng.randrange(D.n_objects) for _ in range(C.n_objects)]
            try:
                return poset_functor(C, D, obj_map, name="monotone")
            except ValueError:
                continue
        return FunctorData.identity_functor(random_poset(rng))
    G = cyclic_group_category(2)
    pt = terminal_category()
    return FunctorData(pt, G, [0], [G.identity[0]], name="pt->Z/2")


def theorem2_instance(rng: random.Random, ring: Ring):
    """One (functor, system) draw for the Theorem-A negative control."""
    phi = random_functor(rng)
    D = phi.target
    FC, S, T = factorization_category(D)
    roll = rng.random()
    if roll < 0.3:
        spec = SystemSpec.constant(ring)
    elif roll < 0.6:
        spec = SystemSpec.natural(FC, random_module(FC, ring, rng))
    elif roll < 0.8:
        spec = SystemSpec.covariant(random_module(D, ring, rng))
    else:
        nonid = [m for m in range(D.n_morphisms) if m not in set(D.identity)]
        ind = arrow_indicator_system(D, FC, rng.choice(nonid), ring) if nonid else None
        spec = (SystemSpec.natural(FC, ind) if ind is not None
                else SystemSpec.constant(ring))
    return phi, spec


def husainov_file_fixture():
    """(phi, FC over the arrow category, natural system) used by the CLI."""
    return husainov_fixture()
