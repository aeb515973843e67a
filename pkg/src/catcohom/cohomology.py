"""Assembly of cochain complexes and induced cochain maps.

Four complex flavors: the classical module-coefficient complex on a nerve,
the natural-system complex on a nerve, the simplicial complex of any carrier
with a coefficient system, and the double complex of a bisimplicial carrier.
Cochain groups are direct sums over the deterministic simplex enumeration.
All differentials are verified to square to zero at construction time.
"""

from __future__ import annotations

from .coeff import (
    BisCoefficientSystem,
    CoefficientSystem,
    ModuleOverCategory,
    PullbackSystem,
    chi,
)
from .core import FiniteCategory
from .homalg import (
    ChainComplex,
    CochainComplex,
    ComplexError,
    DoubleCochainComplex,
    Mat,
    QQ,
    Ring,
    Subquotient,
    ZZ,
    cohomology_subquotient,
    field_kernel_basis,
)
from .simplicial import (
    BisimplicialSet,
    Nerve,
    SimplicialMap,
    SimplicialSet,
    coface,
)


def _offsets(ranks):
    out = []
    acc = 0
    for r in ranks:
        out.append(acc)
        acc += r
    return out, acc


class ComplexBasis:
    """Block layout of one cochain degree: simplices with value offsets."""

    def __init__(self, simplices, ranks):
        self.simplices = simplices
        self.ranks = ranks
        self.offsets, self.total = _offsets(ranks)
        self.index = {x: i for i, x in enumerate(simplices)}


def simplicial_complex(X: SimplicialSet, system: CoefficientSystem, N: int,
                       return_bases=False):
    """The cochain complex of a simplicial set with coefficients: degree n is
    the sum of the values over X_n and the coboundary is the alternating sum
    of coface-induced coefficient maps applied to the face values."""
    ring = system.ring
    bases = []
    for n in range(N + 2):
        xs = X.simplices(n)
        bases.append(ComplexBasis(xs, [system.rank(n, x) for x in xs]))
    diffs = []
    for n in range(N + 1):
        src, tgt = bases[n], bases[n + 1]
        d = Mat(ring, tgt.total, src.total)
        for row_i, x in enumerate(tgt.simplices):
            if tgt.ranks[row_i] == 0:
                continue
            for i in range(n + 2):
                fx = X.face(n + 1, i, x)
                col_j = src.index[fx]
                if src.ranks[col_j] == 0:
                    continue
                block = system.induced(coface(i, n + 1), n + 1, x)
                d.add_block(tgt.offsets[row_i], src.offsets[col_j], block,
                            sign=1 if i % 2 == 0 else -1)
        diffs.append(d)
    K = CochainComplex(ring, [b.total for b in bases], diffs)
    return (K, bases) if return_bases else K


def thomason_complex(C: FiniteCategory, system: CoefficientSystem, N: int):
    """Thomason cohomology complex: the simplicial complex of the nerve."""
    carrier = system.carrier
    if not isinstance(carrier, Nerve) or carrier.category is not C:
        raise ValueError("system must be carried by the nerve of the category")
    return simplicial_complex(carrier, system, N)


def quillen_complex(C: FiniteCategory, M: ModuleOverCategory, N: int,
                    NC: Nerve | None = None) -> CochainComplex:
    """The classical complex of a covariant module: cochains pick a value in
    M at the last vertex of each chain, and only the last face twists the
    coefficient (by M of the last arrow)."""
    if M.cat is not C:
        raise ValueError("module must live over the category")
    NC = NC if NC is not None else Nerve(C)
    ring = M.ring
    bases = []
    for n in range(N + 2):
        xs = NC.simplices(n)
        bases.append(ComplexBasis(xs, [M.rank(NC.last_object(n, x)) for x in xs]))
    diffs = []
    for n in range(N + 1):
        src, tgt = bases[n], bases[n + 1]
        d = Mat(ring, tgt.total, src.total)
        for row_i, x in enumerate(tgt.simplices):
            rk = tgt.ranks[row_i]
            if rk == 0:
                continue
            for i in range(n + 2):
                fx = NC.face(n + 1, i, x)
                col_j = src.index[fx]
                if src.ranks[col_j] == 0:
                    continue
                block = M.mat(x[-1]) if i == n + 1 else Mat.identity(ring, rk)
                d.add_block(tgt.offsets[row_i], src.offsets[col_j], block,
                            sign=1 if i % 2 == 0 else -1)
        diffs.append(d)
    return CochainComplex(ring, [b.total for b in bases], diffs)


def quillen_contravariant_complex(C: FiniteCategory, M: ModuleOverCategory,
                                  N: int, NC: Nerve | None = None) -> CochainComplex:
    """The dual classical complex: cochains pick a value at the first vertex
    and only the zeroth face twists the coefficient (by M of the first
    arrow, read in the opposite category)."""
    NC = NC if NC is not None else Nerve(C)
    ring = M.ring
    bases = []
    for n in range(N + 2):
        xs = NC.simplices(n)
        bases.append(ComplexBasis(xs, [M.rank(NC.first_object(n, x)) for x in xs]))
    diffs = []
    for n in range(N + 1):
        src, tgt = bases[n], bases[n + 1]
        d = Mat(ring, tgt.total, src.total)
        for row_i, x in enumerate(tgt.simplices):
            rk = tgt.ranks[row_i]
            if rk == 0:
                continue
            for i in range(n + 2):
                fx = NC.face(n + 1, i, x)
                col_j = src.index[fx]
                if src.ranks[col_j] == 0:
                    continue
                block = M.mat(x[0]) if i == 0 else Mat.identity(ring, rk)
                d.add_block(tgt.offsets[row_i], src.offsets[col_j], block,
                            sign=1 if i % 2 == 0 else -1)
        diffs.append(d)
    return CochainComplex(ring, [b.total for b in bases], diffs)


def bw_complex(C: FiniteCategory, FC: FiniteCategory, M: ModuleOverCategory,
               N: int, NC: Nerve | None = None) -> CochainComplex:
    """The natural-system complex: a cochain assigns each chain a value in M
    at its composite; the outer faces twist by pre-/post-composition, the
    inner faces keep the composite fixed."""
    if M.cat is not FC:
        raise ValueError("natural system must live over the factorization category")
    NC = NC if NC is not None else Nerve(C)
    ring = M.ring
    bases = []
    for n in range(N + 2):
        xs = NC.simplices(n)
        bases.append(ComplexBasis(xs, [M.rank(chi(NC, n, x)) for x in xs]))
    diffs = []
    for n in range(N + 1):
        src, tgt = bases[n], bases[n + 1]
        d = Mat(ring, tgt.total, src.total)
        m = n + 1  # degree of the target chains
        for row_i, x in enumerate(tgt.simplices):
            rk = tgt.ranks[row_i]
            if rk == 0:
                continue
            whole = chi(NC, m, x)
            for i in range(m + 1):
                fx = NC.face(m, i, x)
                col_j = src.index[fx]
                if src.ranks[col_j] == 0:
                    continue
                part = chi(NC, m - 1, fx)
                if i == 0:
                    # precomposition by the first arrow
                    mor = FC.find_morphism(part, whole,
                                           (C.identity[NC.last_object(m, x)], x[0]))
                    block = M.mat(mor)
                elif i == m:
                    # postcomposition by the last arrow
                    mor = FC.find_morphism(part, whole,
                                           (x[-1], C.identity[NC.first_object(m, x)]))
                    block = M.mat(mor)
                else:
                    block = Mat.identity(ring, rk)
                d.add_block(tgt.offsets[row_i], src.offsets[col_j], block,
                            sign=1 if i % 2 == 0 else -1)
        diffs.append(d)
    return CochainComplex(ring, [b.total for b in bases], diffs)


def bisimplicial_complex(X: BisimplicialSet, system: BisCoefficientSystem,
                         window: int, return_bases=False):
    """Double cochain complex of a bisimplicial carrier for p+q <= window."""
    ring = system.ring
    bases = {}
    for p in range(window + 1):
        for q in range(window + 1 - p):
            xs = X.simplices(p, q)
            bases[(p, q)] = ComplexBasis(xs, [system.rank(p, q, x) for x in xs])
    ranks = {k: b.total for k, b in bases.items()}
    dh = {}
    dv = {}
    for p in range(window + 1):
        for q in range(window - p):
            # horizontal: (p,q) -> (p+1,q)
            src, tgt = bases[(p, q)], bases[(p + 1, q)]
            d = Mat(ring, tgt.total, src.total)
            for row_i, x in enumerate(tgt.simplices):
                if tgt.ranks[row_i] == 0:
                    continue
                for i in range(p + 2):
                    fx = X.hface(p + 1, q, i, x)
                    col_j = src.index[fx]
                    if src.ranks[col_j] == 0:
                        continue
                    block = system.hface_map(i, p + 1, q, x)
                    d.add_block(tgt.offsets[row_i], src.offsets[col_j], block,
                                sign=1 if i % 2 == 0 else -1)
            dh[(p, q)] = d
            # vertical: (q,p) -> (q,p+1)
            src2, tgt2 = bases[(q, p)], bases[(q, p + 1)]
            d2 = Mat(ring, tgt2.total, src2.total)
            for row_i, x in enumerate(tgt2.simplices):
                if tgt2.ranks[row_i] == 0:
                    continue
                for j in range(p + 2):
                    fx = X.vface(q, p + 1, j, x)
                    col_j = src2.index[fx]
                    if src2.ranks[col_j] == 0:
                        continue
                    block = system.vface_map(j, q, p + 1, x)
                    d2.add_block(tgt2.offsets[row_i], src2.offsets[col_j], block,
                                 sign=1 if j % 2 == 0 else -1)
            dv[(q, p)] = d2
    D = DoubleCochainComplex(ring, window, ranks, dh, dv)
    return (D, bases) if return_bases else D


# ---------------------------------------------------------------------------
# Chain complexes of linearized (bi)simplicial sets
# ---------------------------------------------------------------------------

def moore_complex(X: SimplicialSet, ring: Ring, N: int) -> ChainComplex:
    """Levelwise linearization of a simplicial set with the alternating-sum
    boundary."""
    bases = [X.simplices(n) for n in range(N + 2)]
    idx = [{x: i for i, x in enumerate(b)} for b in bases]
    ranks = [len(b) for b in bases]
    diffs = []
    one = ring.one()
    for n in range(1, N + 2):
        d = Mat(ring, ranks[n - 1], ranks[n])
        for j, x in enumerate(bases[n]):
            for i in range(n + 1):
                r = idx[n - 1][X.face(n, i, x)]
                d.data[r][j] = ring.add(d.data[r][j], one if i % 2 == 0 else ring.neg(one))
        diffs.append(d)
    return ChainComplex(ring, ranks, diffs)


def total_moore_complex(B: BisimplicialSet, ring: Ring, window: int) -> ChainComplex:
    """Total chain complex of the levelwise linearization of a bisimplicial
    set: boundary d_h + (-1)^p d_v on the (p,q) summand."""
    bases = {}
    for p in range(window + 1):
        for q in range(window + 1 - p):
            bases[(p, q)] = B.simplices(p, q)
    idx = {k: {x: i for i, x in enumerate(b)} for k, b in bases.items()}

    def blocks(n):
        out = []
        off = 0
        for p in range(n + 1):
            q = n - p
            b = bases.get((p, q), [])
            out.append((p, q, off, len(b)))
            off += len(b)
        return out

    ranks = [sum(len(bases.get((p, n - p), [])) for p in range(n + 1))
             for n in range(window + 1)]
    one = ring.one()
    diffs = []
    for n in range(1, window + 1):
        src_blocks = blocks(n)
        tgt_off = {(p, q): off for p, q, off, _ in blocks(n - 1)}
        d = Mat(ring, ranks[n - 1], ranks[n])
        for p, q, off, cnt in src_blocks:
            for j in range(cnt):
                x = bases[(p, q)][j]
                if p >= 1:
                    for i in range(p + 1):
                        y = B.hface(p, q, i, x)
                        r = tgt_off[(p - 1, q)] + idx[(p - 1, q)][y]
                        d.data[r][off + j] = ring.add(
                            d.data[r][off + j], one if i % 2 == 0 else ring.neg(one))
                if q >= 1:
                    sgn_p = 1 if p % 2 == 0 else -1
                    for i in range(q + 1):
                        y = B.vface(p, q, i, x)
                        r = tgt_off[(p, q - 1)] + idx[(p, q - 1)][y]
                        s = sgn_p * (1 if i % 2 == 0 else -1)
                        d.data[r][off + j] = ring.add(
                            d.data[r][off + j], one if s > 0 else ring.neg(one))
        diffs.append(d)
    return ChainComplex(ring, ranks, diffs)


# ---------------------------------------------------------------------------
# Induced cochain maps
# ---------------------------------------------------------------------------

class CochainMap:
    """The map of cochain complexes induced by a simplicial map: a cochain on
    the target composes with the map.  Degreewise matrices commute with the
    coboundaries exactly (verified on construction)."""

    def __init__(self, smap: SimplicialMap, system: CoefficientSystem, N: int,
                 domain_data=None, codomain_data=None):
        self.smap = smap
        self.system = system
        if domain_data is None:
            domain_data = simplicial_complex(smap.target, system, N, return_bases=True)
        if codomain_data is None:
            codomain_data = simplicial_complex(
                smap.source, PullbackSystem(smap, system), N, return_bases=True)
        self.domain, self.domain_bases = domain_data
        self.codomain, self.codomain_bases = codomain_data
        ring = system.ring
        self.mats = []
        for n in range(N + 2):
            src_b = self.domain_bases[n]
            tgt_b = self.codomain_bases[n]
            T = Mat(ring, tgt_b.total, src_b.total)
            for i, x in enumerate(tgt_b.simplices):
                rk = tgt_b.ranks[i]
                if rk == 0:
                    continue
                j = src_b.index[self.smap.apply(n, x)]
                T.add_block(tgt_b.offsets[i], src_b.offsets[j], Mat.identity(ring, rk))
            self.mats.append(T)
        for n in range(N + 1):
            lhs = self.mats[n + 1] @ self.domain.differential(n)
            rhs = self.codomain.differential(n) @ self.mats[n]
            if lhs != rhs:
                raise ComplexError(
                    f"induced map does not commute with coboundaries at degree {n}")

    def matrix(self, n: int) -> Mat:
        return self.mats[n]

    def cohomology_map(self, n: int) -> Mat:
        """Matrix of the induced map on degree-n cohomology in fixed cocycle
        bases (field coefficients; integer complexes are rationalized, which
        computes the map on free parts)."""
        dom, cod, T = self.domain, self.codomain, self.mats[n]
        if dom.ring == ZZ:
            dom = dom.to_ring(QQ)
            cod = cod.to_ring(QQ)
            T = T.to_ring(QQ)
        sq_dom = cohomology_subquotient(dom, n)
        sq_cod = cohomology_subquotient(cod, n)
        return sq_dom.map_matrix(sq_cod, lambda v: T.mul_vec(v))

    def is_iso_on_free_part(self, n: int) -> bool:
        """The induced map on H^n is bijective after killing torsion.

        Rank criterion, exact and Fraction-free over the integers: with
        Z = ker d_dom^n and B = im d_cod^{n-1}, the induced map has rank
        rank([T Z | B]) - rank(B), and is an isomorphism on free parts iff
        that rank equals both Betti numbers.
        """
        from .homalg import field_kernel_basis, field_rank, int_rank
        from .homalg.kernel import int_kernel_basis

        dom, cod, T = self.domain, self.codomain, self.mats[n]
        if dom.ring == ZZ:
            kernel_basis, rank = int_kernel_basis, int_rank
        else:
            kernel_basis, rank = field_kernel_basis, field_rank
        Z = kernel_basis(dom.differential(n))
        b_dom = rank(dom.differential(n - 1)) if n else 0
        b_cod_im = rank(cod.differential(n - 1)) if n else 0
        betti_dom = Z.cols - b_dom
        betti_cod = (cod.rank(n) - rank(cod.differential(n))) - b_cod_im
        if betti_dom != betti_cod:
            return False
        if betti_dom == 0:
            return True
        TZ = T @ Z
        glued = Mat(dom.ring, cod.rank(n), TZ.cols + cod.differential(n - 1).cols
                    if n else TZ.cols)
        glued.set_block(0, 0, TZ)
        if n:
            glued.set_block(0, TZ.cols, cod.differential(n - 1))
        return rank(glued) - b_cod_im == betti_dom


def cochain_map(smap: SimplicialMap, system: CoefficientSystem, N: int) -> CochainMap:
    return CochainMap(smap, system, N)


# ---------------------------------------------------------------------------
# Fiberwise cohomology as a coefficient system on the base nerve
# ---------------------------------------------------------------------------

class FiberCohomologySystem(CoefficientSystem):
    """The coefficient system on the base nerve sending a chain to the
    degree-q cohomology of the comma fiber at its first vertex, with induced
    maps given by pullback along the fiber transport of the head composite.

    Field coefficients only: the values are the chosen cocycle bases."""

    def __init__(self, colim, system: CoefficientSystem, q: int, ring: Ring,
                 base_nerve: Nerve | None = None):
        # colim: a CommaColimit for the canonical projection of the
        # Grothendieck construction (or any comma family); system lives on the
        # nerve of the construction.
        if not ring.is_field:
            raise ValueError("fiber cohomology systems need field coefficients")
        if ring != system.ring:
            raise ValueError("ring mismatch")
        base = colim.family.base
        super().__init__(base_nerve if base_nerve is not None else Nerve(base),
                         ring, name=f"H^{q}(fibers; {system.name})")
        self.colim = colim
        self.base = base
        self.q = q
        self.system = system
        self._fiber = {}
        self._transport = {}

    def _fiber_data(self, d: int):
        if d not in self._fiber:
            j = self.colim.j_map(d)
            pulled = PullbackSystem(j, self.system)
            K, bases = simplicial_complex(j.source, pulled, self.q + 1,
                                          return_bases=True)
            self._fiber[d] = (K, bases, cohomology_subquotient(K, self.q))
        return self._fiber[d]

    def rank(self, n, x):
        d0 = self.carrier.first_object(n, x)
        return self._fiber_data(d0)[2].dim

    def _transport_matrix(self, d0: int, alpha: int) -> Mat:
        # H^q(fiber at dst(alpha)) -> H^q(fiber at d0) by pulling cochains
        # back along the fiber transport of alpha: d0 -> e
        key = (d0, alpha)
        if key not in self._transport:
            e = self.base.mor_dst[alpha]
            _, bases0, sq0 = self._fiber_data(d0)
            _, basese, sqe = self._fiber_data(e)
            act = self.colim.family.tocat.actions[alpha]
            q = self.q
            src_b, tgt_b = bases0[q], basese[q]
            T = Mat(self.ring, src_b.total, tgt_b.total)
            for i, x in enumerate(src_b.simplices):
                rk = src_b.ranks[i]
                if rk == 0:
                    continue
                img = (act.obj_map[x] if q == 0
                       else tuple(act.mor_map[m] for m in x))
                j = tgt_b.index[img]
                T.add_block(src_b.offsets[i], tgt_b.offsets[j],
                            Mat.identity(self.ring, rk))
            self._transport[key] = sqe.map_matrix(sq0, lambda v: T.mul_vec(v))
        return self._transport[key]

    def induced(self, f, n, x):
        NC = self.carrier
        d0 = NC.first_object(n, x)
        alpha = NC.composite(n, x, 0, f[0])
        if alpha == self.base.identity[d0]:
            return Mat.identity(self.ring, self.rank(n, x))
        return self._transport_matrix(d0, alpha)


def hq_system(colim, system: CoefficientSystem, q: int, ring: Ring,
              base_nerve: Nerve | None = None) -> FiberCohomologySystem:
    return FiberCohomologySystem(colim, system, q, ring, base_nerve=base_nerve)
