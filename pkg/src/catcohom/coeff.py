"""Coefficient systems: modules over finite categories, natural systems on
factorization categories, and functors on simplex categories of (bi)simplicial
sets, given by explicit matrices on finitely generated free modules.

A simplicial coefficient system assigns each simplex a free-module rank and
each simplex-category morphism f: tau -> sigma (a monotone map with
f^*(sigma) = tau) a matrix from the value at tau to the value at sigma.
Systems on infinite simplex categories are evaluators, not tables; the
constructions below are the only entry points, so evaluation stays lazy.
"""

from __future__ import annotations

from .core import FiniteCategory, FunctorData, FunctorToCat, ValidationReport
from .homalg import Mat, Ring
from .simplicial import (
    BisimplicialMap,
    BisimplicialSet,
    Diagonal,
    HorizontallyConstant,
    Nerve,
    SimplicialMap,
    SimplicialSet,
    all_monotone,
    coface,
    codegeneracy,
    compose_monotone,
    identity_map,
)


class ModuleOverCategory:
    """A matrix-valued functor on a finite category: a rank per object and a
    (dst-rank x src-rank) matrix per morphism."""

    def __init__(self, cat: FiniteCategory, ring: Ring, ranks, mats, name=""):
        self.cat = cat
        self.ring = ring
        self.ranks = list(ranks)
        self.mats = list(mats)
        self.name = name
        if len(self.ranks) != cat.n_objects or len(self.mats) != cat.n_morphisms:
            raise ValueError("rank/matrix tables do not match the category")
        for m, mat in enumerate(self.mats):
            if mat.rows != self.ranks[cat.mor_dst[m]] or mat.cols != self.ranks[cat.mor_src[m]]:
                raise ValueError(
                    f"matrix for morphism {cat.morphism_names[m]} has shape "
                    f"{mat.rows}x{mat.cols}, expected "
                    f"{self.ranks[cat.mor_dst[m]]}x{self.ranks[cat.mor_src[m]]}")

    def rank(self, x: int) -> int:
        return self.ranks[x]

    def mat(self, m: int) -> Mat:
        return self.mats[m]

    def check(self) -> ValidationReport:
        rep = ValidationReport(self.name or "module")
        C = self.cat
        for x in range(C.n_objects):
            if self.mats[C.identity[x]] != Mat.identity(self.ring, self.ranks[x]):
                rep.add(f"value at identity of object {x} is not the identity matrix")
        for (g, f), h in C.compose_table.items():
            if self.mats[h] != self.mats[g] @ self.mats[f]:
                rep.add(f"M(compose({g},{f})) != M({g}) M({f})")
        return rep

    @classmethod
    def constant(cls, cat, ring, rank=1, name="const"):
        eye = Mat.identity(ring, rank)
        return cls(cat, ring, [rank] * cat.n_objects, [eye] * cat.n_morphisms, name=name)

    @classmethod
    def representable(cls, cat, ring, x: int, name=None):
        """The free module spanned by Hom(x, -); functorial by construction."""
        ranks = [len(cat.hom(x, c)) for c in range(cat.n_objects)]
        idx = [ {m: k for k, m in enumerate(cat.hom(x, c))} for c in range(cat.n_objects) ]
        mats = []
        for m in range(cat.n_morphisms):
            a, b = cat.mor_src[m], cat.mor_dst[m]
            mat = Mat(ring, ranks[b], ranks[a])
            one = ring.one()
            for k, mu in enumerate(cat.hom(x, a)):
                mat.data[idx[b][cat.compose(m, mu)]][k] = one
            mats.append(mat)
        return cls(cat, ring, ranks, mats, name=name or f"RHom({x},-)")

    def precompose(self, F: FunctorData, name="") -> "ModuleOverCategory":
        """The module on the source of F with values read through F."""
        ranks = [self.ranks[F.obj_map[x]] for x in range(F.source.n_objects)]
        mats = [self.mats[F.mor_map[m]] for m in range(F.source.n_morphisms)]
        return ModuleOverCategory(F.source, self.ring, ranks, mats,
                                  name=name or f"{self.name} o {F.name or 'F'}")

    def direct_sum(self, other: "ModuleOverCategory") -> "ModuleOverCategory":
        if other.cat is not self.cat or other.ring != self.ring:
            raise ValueError("direct sum needs matching category and ring")
        ranks = [a + b for a, b in zip(self.ranks, other.ranks)]
        mats = []
        for m in range(self.cat.n_morphisms):
            a, b = self.mats[m], other.mats[m]
            out = Mat(self.ring, a.rows + b.rows, a.cols + b.cols)
            out.set_block(0, 0, a)
            out.set_block(a.rows, a.cols, b)
            mats.append(out)
        return ModuleOverCategory(self.cat, self.ring, ranks, mats,
                                  name=f"{self.name}+{other.name}")


# ---------------------------------------------------------------------------
# The functor chi from the simplex category of a nerve to factorizations
# ---------------------------------------------------------------------------

def chi(NC: Nerve, n: int, sigma) -> int:
    """The composite of a nerve chain (the identity of the object if n = 0)."""
    return NC.composite(n, sigma, 0, n)


def chi_mor(NC: Nerve, f, n: int, sigma):
    """The factorization-category morphism chi(f^* sigma) -> chi(sigma)
    attached to a monotone f: [m] -> [n]: the pair (tail composite past f(m),
    head composite up to f(0))."""
    m = len(f) - 1
    u = NC.composite(n, sigma, f[m], n)
    v = NC.composite(n, sigma, 0, f[0])
    return u, v


# ---------------------------------------------------------------------------
# Simplicial coefficient systems
# ---------------------------------------------------------------------------

class CoefficientSystem:
    """Interface: rank(n, x) and induced(f, n, x) with f monotone into [n],
    returning the matrix value(f^* x) -> value(x)."""

    def __init__(self, carrier: SimplicialSet, ring: Ring, name=""):
        self.carrier = carrier
        self.ring = ring
        self.name = name

    def rank(self, n: int, x) -> int:
        raise NotImplementedError

    def induced(self, f, n: int, x) -> Mat:
        raise NotImplementedError

    def face_map(self, i: int, n: int, x) -> Mat:
        """The map value(d_i x) -> value(x) induced by the i-th coface."""
        return self.induced(coface(i, n), n, x)

    def __repr__(self):
        return f"CoefficientSystem({self.name or '?'} on {self.carrier.name})"


class ConstantSystem(CoefficientSystem):
    def __init__(self, carrier, ring, rank=1, name="const"):
        super().__init__(carrier, ring, name=name)
        self._rank = rank
        self._eye = Mat.identity(ring, rank)

    def rank(self, n, x):
        return self._rank

    def induced(self, f, n, x):
        return self._eye


class NaturalSystemOnNerve(CoefficientSystem):
    """A natural system (module over the factorization category) read on the
    nerve through chi: value(sigma) = M(composite of sigma)."""

    def __init__(self, NC: Nerve, FC: FiniteCategory, M: ModuleOverCategory, name=None):
        if M.cat is not FC:
            raise ValueError("module must live over the factorization category")
        super().__init__(NC, M.ring, name=name or f"{M.name} o chi")
        self.FC = FC
        self.M = M
        self.NC = NC

    def rank(self, n, x):
        return self.M.rank(chi(self.NC, n, x))

    def induced(self, f, n, x):
        tau = self.NC.apply(f, n, x)
        u, v = chi_mor(self.NC, f, n, x)
        src = chi(self.NC, len(f) - 1, tau)
        dst = chi(self.NC, n, x)
        return self.M.mat(self.FC.find_morphism(src, dst, (u, v)))


class LastVertexSystem(CoefficientSystem):
    """value(sigma) = M(c_n) for a covariant module, with induced maps given
    by the composite past f(m)."""

    def __init__(self, NC: Nerve, M: ModuleOverCategory, name=None):
        super().__init__(NC, M.ring, name=name or f"{M.name} at last vertex")
        self.NC = NC
        self.M = M

    def rank(self, n, x):
        return self.M.rank(self.NC.last_object(n, x))

    def induced(self, f, n, x):
        m = len(f) - 1
        return self.M.mat(self.NC.composite(n, x, f[m], n))


class FirstVertexSystem(CoefficientSystem):
    """value(sigma) = M'(c_0) for a module over the opposite category."""

    def __init__(self, NC: Nerve, Mop: ModuleOverCategory, name=None):
        # Mop lives over opposite(C); morphism ids agree with C
        super().__init__(NC, Mop.ring, name=name or f"{Mop.name} at first vertex")
        self.NC = NC
        self.Mop = Mop

    def rank(self, n, x):
        return self.Mop.rank(self.NC.first_object(n, x))

    def induced(self, f, n, x):
        return self.Mop.mat(self.NC.composite(n, x, 0, f[0]))


class PullbackSystem(CoefficientSystem):
    def __init__(self, smap: SimplicialMap, target_system: CoefficientSystem, name=None):
        if target_system.carrier is not smap.target and \
           target_system.carrier.name != smap.target.name:
            raise ValueError("carrier mismatch between map target and system")
        super().__init__(smap.source, target_system.ring,
                         name=name or f"{smap.name}^*({target_system.name})")
        self.smap = smap
        self.system = target_system

    def rank(self, n, x):
        return self.system.rank(n, self.smap.apply(n, x))

    def induced(self, f, n, x):
        return self.system.induced(f, n, self.smap.apply(n, x))


def pullback(lam: SimplicialMap, system: CoefficientSystem) -> CoefficientSystem:
    return PullbackSystem(lam, system)


# ---------------------------------------------------------------------------
# Bisimplicial coefficient systems
# ---------------------------------------------------------------------------

class BisCoefficientSystem:
    def __init__(self, carrier: BisimplicialSet, ring: Ring, name=""):
        self.carrier = carrier
        self.ring = ring
        self.name = name

    def rank(self, p: int, q: int, x) -> int:
        raise NotImplementedError

    def induced(self, fh, fv, p: int, q: int, x) -> Mat:
        raise NotImplementedError

    def hface_map(self, i, p, q, x) -> Mat:
        return self.induced(coface(i, p), identity_map(q), p, q, x)

    def vface_map(self, j, p, q, x) -> Mat:
        return self.induced(identity_map(p), coface(j, q), p, q, x)


class HConstExtension(BisCoefficientSystem):
    """A system on Y extended to Y_b with all horizontal induced maps the
    identity."""

    def __init__(self, system: CoefficientSystem, carrier: HorizontallyConstant | None = None):
        if carrier is None:
            carrier = HorizontallyConstant(system.carrier)
        super().__init__(carrier, system.ring, name=f"{system.name}_b")
        self.system = system

    def rank(self, p, q, x):
        return self.system.rank(q, x)

    def induced(self, fh, fv, p, q, x):
        return self.system.induced(fv, q, x)


def extend_horizontally(system: CoefficientSystem,
                        carrier: HorizontallyConstant | None = None) -> HConstExtension:
    return HConstExtension(system, carrier)


class BisPullbackSystem(BisCoefficientSystem):
    def __init__(self, bmap: BisimplicialMap, target_system: BisCoefficientSystem, name=None):
        super().__init__(bmap.source, target_system.ring,
                         name=name or f"{bmap.name}^*({target_system.name})")
        self.bmap = bmap
        self.system = target_system

    def rank(self, p, q, x):
        return self.system.rank(p, q, self.bmap.apply(p, q, x))

    def induced(self, fh, fv, p, q, x):
        return self.system.induced(fh, fv, p, q, self.bmap.apply(p, q, x))


def pullback_bis(bmap: BisimplicialMap, system: BisCoefficientSystem) -> BisCoefficientSystem:
    return BisPullbackSystem(bmap, system)


class DiagRestriction(CoefficientSystem):
    """J^* of a bisimplicial system: the simplicial system on diag X with
    value(x) at an n-simplex given by the (n,n)-value, and induced maps the
    (f,f)-induced maps."""

    def __init__(self, bis_system: BisCoefficientSystem, carrier: Diagonal | None = None):
        if carrier is None:
            carrier = Diagonal(bis_system.carrier)
        super().__init__(carrier, bis_system.ring, name=f"J^*({bis_system.name})")
        self.bis_system = bis_system

    def rank(self, n, x):
        return self.bis_system.rank(n, n, x)

    def induced(self, f, n, x):
        return self.bis_system.induced(f, f, n, n, x)


def restrict_to_diagonal(bis_system: BisCoefficientSystem,
                         carrier: Diagonal | None = None) -> DiagRestriction:
    return DiagRestriction(bis_system, carrier)


def is_horizontally_constant(system: BisCoefficientSystem, bound: int) -> bool:
    """All horizontal coface/codegeneracy-induced maps are identities on
    simplices with p+q <= bound (generators suffice for functorial systems)."""
    X = system.carrier
    for p in range(bound + 1):
        for q in range(bound + 1 - p):
            idv = identity_map(q)
            for x in X.simplices(p, q):
                r = system.rank(p, q, x)
                eye = Mat.identity(system.ring, r)
                if p >= 1:
                    for i in range(p + 1):
                        m = system.induced(coface(i, p), idv, p, q, x)
                        if m.rows != r or m.cols != r or m != eye:
                            return False
                for i in range(p + 1):
                    m = system.induced(codegeneracy(i, p), idv, p, q, x)
                    if m.rows != r or m.cols != r or m != eye:
                        return False
    return True


# ---------------------------------------------------------------------------
# Functoriality checks
# ---------------------------------------------------------------------------

def check_functoriality(system, bound: int, max_checks: int = 200_000) -> ValidationReport:
    """Bounded-exhaustive functoriality check.

    For a ModuleOverCategory: fully exhaustive.  For a simplicial system:
    identities plus all composable pairs of simplex-category morphisms with
    all three dimensions <= bound+1, truncated deterministically after
    max_checks comparisons (the report notes truncation).
    """
    if isinstance(system, ModuleOverCategory):
        return system.check()
    rep = ValidationReport(system.name or "coefficient system")
    X = system.carrier
    top = bound + 1
    checks = 0
    for n in range(top + 1):
        for x in X.simplices(n):
            if system.induced(identity_map(n), n, x) != Mat.identity(system.ring, system.rank(n, x)):
                rep.add(f"induced(identity) != identity at a {n}-simplex")
            for m in range(top + 1):
                for f in all_monotone(m, n):
                    fx = X.apply(f, n, x)
                    mf = system.induced(f, n, x)
                    for l in range(top + 1):
                        for g in all_monotone(l, m):
                            if checks >= max_checks:
                                rep.add(f"truncated after {max_checks} checks")
                                return rep
                            checks += 1
                            lhs = system.induced(compose_monotone(f, g), n, x)
                            rhs = mf @ system.induced(g, m, fx)
                            if lhs != rhs:
                                rep.add(
                                    f"induced(f o g) != induced(f) induced(g) at degree {n}, "
                                    f"f={f}, g={g}")
                                if len(rep.violations) > 10:
                                    return rep
    return rep


def group_action_to_cat(group_cat: FiniteCategory, C: FiniteCategory,
                        action) -> FunctorToCat:
    """A group action on a category packaged as a Cat-valued functor on the
    one-object group category; action maps each group element (morphism id)
    to an automorphism of C and must be a homomorphism (validated by check)."""
    return FunctorToCat(group_cat, [C], [action[g] for g in range(group_cat.n_morphisms)],
                        name="action")
