"""Spectral sequence of a first-quadrant double cochain complex over a field.

Pages are computed from the column filtration of the total complex:

    Z_r(p,q) = { x in F^p Tot^{p+q} : dx in F^{p+r} }
    E_r(p,q) = Z_r(p,q) / ( Z_{r-1}(p+1,q-1) + d Z_{r-1}(p-r+1,q+r-2) )

with d_r induced by d.  Because blocks of Tot^n are stored in ascending p,
F^p is a coordinate suffix and all subspaces are plain column spans.

Entries are reliable for p+q <= window-1 and differentials for sources with
p+q <= window-2; convergence statements should therefore only be read off for
total degrees n <= window-2.
"""

from __future__ import annotations

from .complexes import ComplexError, DoubleCochainComplex
from .matrix import Mat, hstack_cols
from .subquotient import Subquotient


class SSPage:
    """One page: dims per spot, d_r matrices between chosen subquotient bases."""

    def __init__(self, ring, r, dims, differentials):
        self.ring = ring
        self.r = r
        self.dims = dims                  # {(p,q): int}
        self.differentials = differentials  # {(p,q): Mat to (p+r, q-r+1)}

    def dim(self, p, q):
        return self.dims.get((p, q), 0)

    def __repr__(self):
        spots = {k: v for k, v in sorted(self.dims.items()) if v}
        return f"SSPage(r={self.r}, dims={spots})"


def _suffix_start(blocks, p):
    """Coordinate where the F^p suffix starts in a block list."""
    for bp, _q, off, _r in blocks:
        if bp >= p:
            return off
    return blocks[-1][2] + blocks[-1][3] if blocks else 0


def _filtration_kernel(ring, d: Mat, n_dim, start, cut):
    """Basis of {x in F (coords >= start) : (d x) has zero coords < cut}."""
    width = n_dim - start
    if width == 0:
        return Mat(ring, n_dim, 0)
    if cut == 0:
        local = Mat.identity(ring, width)
    else:
        sub = Mat(ring, cut, width,
                  [d.data[i][start:] for i in range(cut)])
        from .snf import field_kernel_basis
        local = field_kernel_basis(sub)
    out = Mat(ring, n_dim, local.cols)
    out.set_block(start, 0, local)
    return out


def _image(ring, d: Mat, basis: Mat) -> Mat:
    if basis.cols == 0:
        return Mat(ring, d.rows, 0)
    return d @ basis


def _concat(ring, rows, *mats) -> Mat:
    cols = sum(m.cols for m in mats)
    out = Mat(ring, rows, cols)
    off = 0
    for m in mats:
        out.set_block(0, off, m)
        off += m.cols
    return out


def ss_pages(D: DoubleCochainComplex, r_max: int | None = None):
    """Pages E_1, E_2, ... of the column-filtration spectral sequence.

    Stops at r_max (default window+1, past which no differential fits in the
    first quadrant window) and returns the list of SSPage objects.
    """
    ring = D.ring
    if not ring.is_field:
        raise ComplexError("spectral sequence pages need field coefficients")
    W = D.window
    if r_max is None:
        r_max = W + 1
    tot = D.total_complex()

    blocks = {n: D.blocks(n) for n in range(W + 1)}
    dims = {n: tot.rank(n) for n in range(W + 1)}

    zcache = {}

    def zbasis(r, p, q):
        # Z_r(p,q) = {x in F^p C^n : dx in F^{p+r}}; F^level = C for level <= 0.
        # Valid for 0 <= n <= W-1; p may exceed q-range bookkeeping (suffix
        # clamping handles filtration levels outside 0..n).
        n = p + q
        if n < 0 or n > W - 1:
            return Mat(ring, dims.get(n, 0), 0)
        start = _suffix_start(blocks[n], p)
        cut = _suffix_start(blocks[n + 1], p + max(r, 0))
        key = (n, start, cut)
        if key not in zcache:
            zcache[key] = _filtration_kernel(ring, tot.differential(n), dims[n], start, cut)
        return zcache[key]

    pages = []
    for r in range(1, r_max + 1):
        dims_r = {}
        quots = {}
        for n in range(W):
            for p in range(n + 1):
                q = n - p
                z = zbasis(r, p, q)
                zb1 = zbasis(r - 1, p + 1, q - 1)
                src = zbasis(r - 1, p - r + 1, q + r - 2)
                img = _image(ring, tot.differential(n - 1), src) if n >= 1 else Mat(ring, dims[n], 0)
                b = _concat(ring, dims[n], zb1, img)
                sq = Subquotient(ring, dims[n], z, b)
                quots[(p, q)] = sq
                if sq.dim:
                    dims_r[(p, q)] = sq.dim
        diffs_r = {}
        for (p, q), sq in quots.items():
            if sq.dim == 0:
                continue
            n = p + q
            if n > W - 2:
                continue
            tgt = quots.get((p + r, q - r + 1))
            if tgt is None or tgt.dim == 0:
                continue  # differential is zero
            d = tot.differential(n)
            cols = [tgt.coords(d.mul_vec(sq.reps.column(j))) for j in range(sq.dim)]
            diffs_r[(p, q)] = hstack_cols(ring, tgt.dim, cols)
        pages.append(SSPage(ring, r, dims_r, diffs_r))
    return pages


def einf_dims(pages, n: int):
    """Sum over p+q = n of the last computed page's dimensions."""
    last = pages[-1]
    return sum(last.dim(p, n - p) for p in range(n + 1))
