"""Subquotients of coordinate spaces over a field, with chosen bases.

Used for spectral-sequence pages and for expressing induced maps on
cohomology in fixed cocycle bases.
"""

from __future__ import annotations

from .complexes import CochainComplex, ComplexError
from .matrix import Mat
from .snf import column_space_pivots, field_kernel_basis, field_solve


class Subquotient:
    """span(Z)/span(B) with B inside span(Z); keeps representative columns
    of Z extending a basis of B."""

    def __init__(self, ring, ambient_dim: int, zbasis: Mat, bbasis: Mat):
        self.ring = ring
        self.ambient = ambient_dim
        self.z = zbasis
        self.b = bbasis
        if zbasis.cols == 0:
            self.reps = Mat(ring, ambient_dim, 0)
        else:
            glued = Mat(ring, ambient_dim, bbasis.cols + zbasis.cols)
            glued.set_block(0, 0, bbasis)
            glued.set_block(0, bbasis.cols, zbasis)
            pivots = column_space_pivots(glued)
            chosen = [j - bbasis.cols for j in pivots if j >= bbasis.cols]
            self.reps = Mat(ring, ambient_dim, len(chosen))
            for k, j in enumerate(chosen):
                for i in range(ambient_dim):
                    self.reps.data[i][k] = zbasis.data[i][j]

    @property
    def dim(self) -> int:
        return self.reps.cols

    def coords(self, vec):
        """Coordinates of a span(Z)-vector in the representative basis."""
        if self.dim == 0:
            return []
        glued = Mat(self.ring, self.ambient, self.b.cols + self.reps.cols)
        glued.set_block(0, 0, self.b)
        glued.set_block(0, self.b.cols, self.reps)
        sol = field_solve(glued, vec)
        if sol is None:
            raise ComplexError("vector not in the expected subspace")
        return sol[self.b.cols:]

    def map_matrix(self, target: "Subquotient", apply_vec) -> Mat:
        """Matrix of an induced map in the chosen bases: apply_vec sends a
        representative (ambient) vector to an ambient vector on the target
        side lying in span(target.z)."""
        cols = [target.coords(apply_vec(self.reps.column(j))) for j in range(self.dim)]
        out = Mat(self.ring, target.dim, self.dim)
        for j, col in enumerate(cols):
            for i in range(target.dim):
                out.data[i][j] = col[i]
        return out


def cohomology_subquotient(K: CochainComplex, n: int) -> Subquotient:
    """H^n of a field-coefficient complex as ker/d-image with a fixed basis."""
    if not K.ring.is_field:
        raise ComplexError("cohomology_subquotient needs field coefficients")
    if not 0 <= n <= K.trusted_degree:
        raise ComplexError(f"degree {n} outside trusted window")
    z = field_kernel_basis(K.differential(n))
    if n == 0:
        b = Mat(K.ring, K.rank(0), 0)
    else:
        d = K.differential(n - 1)
        pivots = column_space_pivots(d)
        b = Mat(K.ring, d.rows, len(pivots))
        for k, j in enumerate(pivots):
            for i in range(d.rows):
                b.data[i][k] = d.data[i][j]
    return Subquotient(K.ring, K.rank(n), z, b)
