"""Bounded (co)chain complexes, double complexes, and graded invariants.

A complex stored through degree N+1 yields trusted H^n for n <= N only; every
result records the window it is valid in.  Over the integers, cohomology is
reported as free rank plus the elementary-divisor list of the torsion; over
fields, as a dimension.
"""

from __future__ import annotations

from . import kernel
from .matrix import Mat
from .rings import Ring, ZZ, QQ
from .snf import field_rank as _pure_field_rank


class ComplexError(ValueError):
    pass


class GradedInvariants:
    """Per-degree cohomology answer: free rank + elementary-divisor list."""

    def __init__(self, ring: Ring, entries, window: int):
        # entries: list over degrees 0..window of (rank, tuple of divisors > 1)
        if len(entries) != window + 1:
            raise ValueError("entries must cover degrees 0..window")
        for rank, tors in entries:
            if rank < 0:
                raise ValueError("negative rank")
            for i, d in enumerate(tors):
                if d <= 1:
                    raise ValueError("torsion divisors must exceed 1")
                if i and d % tors[i - 1]:
                    raise ValueError("divisors must form a chain")
            if ring.is_field and tors:
                raise ValueError("fields carry no torsion")
        self.ring = ring
        self.entries = [(rank, tuple(tors)) for rank, tors in entries]
        self.window = window

    def entry(self, n: int):
        if not 0 <= n <= self.window:
            raise ValueError(f"degree {n} outside trusted window 0..{self.window}")
        return self.entries[n]

    def as_dict(self):
        return {
            f"H{n}": {"rank": rank, "torsion": list(tors)}
            for n, (rank, tors) in enumerate(self.entries)
        }

    def __repr__(self):
        def show(rank, tors):
            parts = ["Z" if self.ring == ZZ else "k"] * rank
            parts += [f"Z/{d}" for d in tors]
            return "+".join(parts) if parts else "0"

        body = ", ".join(show(r, t) for r, t in self.entries)
        return f"({body})"

    def __eq__(self, other):
        if not isinstance(other, GradedInvariants):
            return NotImplemented
        return (self.ring == other.ring and self.window == other.window
                and self.entries == other.entries)


def graded_iso(a: GradedInvariants, b: GradedInvariants, upto: int) -> bool:
    """Equality of rank and torsion lists per degree <= upto."""
    if a.ring != b.ring:
        raise ValueError("graded_iso across different rings")
    if a.window < upto or b.window < upto:
        raise ValueError("trusted window too small for the comparison")
    return all(a.entries[n] == b.entries[n] for n in range(upto + 1))


def _rank(A: Mat) -> int:
    if A.rows == 0 or A.cols == 0:
        return 0
    if A.ring == ZZ:
        return kernel.int_rank(A)
    return kernel.field_rank(A) if A.ring.kind == "fp" else _pure_field_rank(A)


def _homology_invariants(ring: Ring, incoming: Mat, outgoing: Mat):
    """(free rank, divisors) of ker(outgoing)/im(incoming).

    `incoming` maps into the middle degree, `outgoing` maps out of it; both use
    column-vector convention, so outgoing.cols == incoming.rows == middle rank.
    """
    mid = outgoing.cols
    if incoming.rows != mid:
        raise ComplexError("rank mismatch between differentials")
    if ring == ZZ:
        if mid == 0:
            return 0, ()
        _, s, v = kernel.snf(outgoing, need_u=False, need_v=True)
        r = sum(1 for i in range(min(s.rows, s.cols)) if s.data[i][i])
        k = mid - r
        if k == 0:
            return 0, ()
        # rows r.. of V*incoming express im(incoming) in the kernel basis
        va = v @ incoming
        # columns of incoming lie in ker(outgoing), so rows < r of va vanish
        for i in range(r):
            if any(va.data[i]):
                raise ComplexError("differentials do not compose to zero")
        pres = Mat(ZZ, k, incoming.cols, [va.data[r + i] for i in range(k)])
        diag = [abs(d) for d in kernel.snf_diagonal(pres)]
        torsion = tuple(d for d in diag if d > 1)
        return k - len(diag), torsion
    dim_ker = mid - _rank(outgoing)
    return dim_ker - _rank(incoming), ()


class CochainComplex:
    """Degrees 0..N+1 with coboundaries d^n: rank(n) -> rank(n+1), n <= N."""

    def __init__(self, ring: Ring, ranks, diffs, check=True):
        if len(ranks) != len(diffs) + 1:
            raise ComplexError("need one more rank than differential")
        for n, d in enumerate(diffs):
            if d.rows != ranks[n + 1] or d.cols != ranks[n]:
                raise ComplexError(f"differential {n} has wrong shape")
            if d.ring != ring:
                raise ComplexError("differential over the wrong ring")
        if check:
            for n in range(len(diffs) - 1):
                if not (diffs[n + 1] @ diffs[n]).is_zero():
                    raise ComplexError(f"d^{n + 1} d^{n} != 0")
        self.ring = ring
        self.ranks = list(ranks)
        self.diffs = list(diffs)

    @property
    def trusted_degree(self) -> int:
        return len(self.diffs) - 1

    def rank(self, n: int) -> int:
        return self.ranks[n] if 0 <= n < len(self.ranks) else 0

    def differential(self, n: int) -> Mat:
        if 0 <= n < len(self.diffs):
            return self.diffs[n]
        raise ComplexError(f"differential {n} outside stored range")

    def cohomology_at(self, n: int):
        """(free rank, torsion divisors) of H^n; n must lie in the window."""
        if not 0 <= n <= self.trusted_degree:
            raise ComplexError(
                f"H^{n} outside trusted window 0..{self.trusted_degree}")
        incoming = self.diffs[n - 1] if n > 0 else Mat(self.ring, self.ranks[0], 0)
        return _homology_invariants(self.ring, incoming, self.diffs[n])

    def invariants(self, upto: int | None = None) -> GradedInvariants:
        upto = self.trusted_degree if upto is None else upto
        if upto > self.trusted_degree:
            raise ComplexError("requested window exceeds stored range")
        return GradedInvariants(
            self.ring, [self.cohomology_at(n) for n in range(upto + 1)], upto)

    def to_ring(self, ring: Ring) -> "CochainComplex":
        return CochainComplex(ring, self.ranks, [d.to_ring(ring) for d in self.diffs],
                              check=False)


class ChainComplex:
    """Degrees 0..N+1 with boundaries d_n: rank(n) -> rank(n-1), 1 <= n <= N+1."""

    def __init__(self, ring: Ring, ranks, diffs, check=True):
        # diffs[0] is d_1
        if len(ranks) != len(diffs) + 1:
            raise ComplexError("need one more rank than differential")
        for i, d in enumerate(diffs):
            n = i + 1
            if d.rows != ranks[n - 1] or d.cols != ranks[n]:
                raise ComplexError(f"boundary {n} has wrong shape")
        if check:
            for i in range(len(diffs) - 1):
                if not (diffs[i] @ diffs[i + 1]).is_zero():
                    raise ComplexError(f"d_{i + 1} d_{i + 2} != 0")
        self.ring = ring
        self.ranks = list(ranks)
        self.diffs = list(diffs)

    @property
    def trusted_degree(self) -> int:
        return len(self.diffs) - 1

    def rank(self, n: int) -> int:
        return self.ranks[n] if 0 <= n < len(self.ranks) else 0

    def homology_at(self, n: int):
        if not 0 <= n <= self.trusted_degree:
            raise ComplexError(
                f"H_{n} outside trusted window 0..{self.trusted_degree}")
        outgoing = self.diffs[n - 1] if n > 0 else Mat(self.ring, 0, self.ranks[0])
        incoming = self.diffs[n]
        return _homology_invariants(self.ring, incoming, outgoing)

    def invariants(self, upto: int | None = None) -> GradedInvariants:
        upto = self.trusted_degree if upto is None else upto
        if upto > self.trusted_degree:
            raise ComplexError("requested window exceeds stored range")
        return GradedInvariants(
            self.ring, [self.homology_at(n) for n in range(upto + 1)], upto)


class DoubleCochainComplex:
    """First-quadrant window p+q <= W with commuting d_h, d_v coboundaries.

    d_h maps (p,q) -> (p+1,q) and d_v maps (p,q) -> (p,q+1); both are stored
    for p+q <= W-1.  The squares commute (signs appear only in the total
    complex, where the vertical differential is twisted by (-1)^p).
    """

    def __init__(self, ring: Ring, window: int, ranks, dh, dv, check=True):
        self.ring = ring
        self.window = window
        self.ranks = dict(ranks)
        self.dh = dict(dh)
        self.dv = dict(dv)
        for (p, q), r in self.ranks.items():
            if p < 0 or q < 0 or p + q > window:
                raise ComplexError("rank outside the stored window")
        if check:
            self._check_squares()

    def rank(self, p: int, q: int) -> int:
        return self.ranks.get((p, q), 0)

    def _mat(self, table, p, q, rows, cols):
        m = table.get((p, q))
        if m is None:
            return Mat(self.ring, rows, cols)
        return m

    def hdiff(self, p: int, q: int) -> Mat:
        return self._mat(self.dh, p, q, self.rank(p + 1, q), self.rank(p, q))

    def vdiff(self, p: int, q: int) -> Mat:
        return self._mat(self.dv, p, q, self.rank(p, q + 1), self.rank(p, q))

    def _check_squares(self):
        W = self.window
        for p in range(W + 1):
            for q in range(W + 1 - p):
                if p + q <= W - 2:
                    if not (self.hdiff(p + 1, q) @ self.hdiff(p, q)).is_zero():
                        raise ComplexError(f"d_h^2 != 0 at ({p},{q})")
                    if not (self.vdiff(p, q + 1) @ self.vdiff(p, q)).is_zero():
                        raise ComplexError(f"d_v^2 != 0 at ({p},{q})")
                    lhs = self.vdiff(p + 1, q) @ self.hdiff(p, q)
                    rhs = self.hdiff(p, q + 1) @ self.vdiff(p, q)
                    if lhs != rhs:
                        raise ComplexError(f"d_h d_v != d_v d_h at ({p},{q})")

    def blocks(self, n: int):
        """(p, q, offset, rank) blocks of Tot^n, ascending in p."""
        out = []
        off = 0
        for p in range(n + 1):
            q = n - p
            r = self.rank(p, q)
            out.append((p, q, off, r))
            off += r
        return out

    def total_rank(self, n: int) -> int:
        return sum(self.rank(p, n - p) for p in range(n + 1))

    def total_complex(self) -> CochainComplex:
        """Tot^n with differential d_h + (-1)^p d_v."""
        W = self.window
        ranks = [self.total_rank(n) for n in range(W + 1)]
        diffs = []
        for n in range(W):
            src = self.blocks(n)
            tgt_off = {(p, q): off for p, q, off, r in self.blocks(n + 1)}
            d = Mat(self.ring, ranks[n + 1], ranks[n])
            for p, q, off, r in src:
                if r == 0:
                    continue
                h = self.hdiff(p, q)
                if h.rows:
                    d.add_block(tgt_off[(p + 1, q)], off, h)
                v = self.vdiff(p, q)
                if v.rows:
                    d.add_block(tgt_off[(p, q + 1)], off, v, sign=1 if p % 2 == 0 else -1)
            diffs.append(d)
        try:
            return CochainComplex(self.ring, ranks, diffs)
        except ComplexError as exc:
            raise ComplexError(f"total differential does not square to zero: {exc}")

    def transpose(self) -> "DoubleCochainComplex":
        ranks = {(q, p): r for (p, q), r in self.ranks.items()}
        dh = {(q, p): m for (p, q), m in self.dv.items()}
        dv = {(q, p): m for (p, q), m in self.dh.items()}
        return DoubleCochainComplex(self.ring, self.window, ranks, dh, dv, check=False)


def betti_numbers(K: CochainComplex, upto: int | None = None):
    """Free ranks of H^* after tensoring with the rationals."""
    KQ = K.to_ring(QQ) if K.ring == ZZ else K
    upto = K.trusted_degree if upto is None else upto
    return [KQ.cohomology_at(n)[0] for n in range(upto + 1)]
