"""Exact linear algebra over a field: row reduction, kernels, images, quotients.

Matrices are lists of rows.  Entries are exact scalars (Fraction or
Cyclotomic); nothing here ever touches floating point.  Pivoting always takes
the leftmost nonzero column and the topmost nonzero row below the current
pivot row, so every result is reproducible.
"""

from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "rref",
    "rank",
    "kernel",
    "row_space",
    "quotient",
    "solve",
    "matmul",
    "matvec",
    "identity_matrix",
    "zero_matrix",
    "transpose",
    "SubspacePresentation",
    "Quotient",
]


def _inv(x):
    # ints would silently divide into floats
    if isinstance(x, int):
        return Fraction(1, x)
    return 1 / x


def _cols(m, cols):
    if cols is not None:
        return cols
    if not m:
        raise ValueError("cannot infer the column count of an empty matrix")
    return len(m[0])


def rref(m, cols=None):
    """Reduced row echelon form of ``m`` and its pivot columns.

    Zero rows are kept at the bottom, so the output has the shape of ``m``.
    """
    ncols = _cols(m, cols)
    a = [list(row) for row in m]
    for row in a:
        if len(row) != ncols:
            raise ValueError("ragged matrix")
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(a):
            break
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = _inv(a[r][c])
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m, cols=None):
    if not m:
        return 0
    return len(rref(m, cols)[1])


@dataclass(frozen=True)
class SubspacePresentation:
    """A subspace of k^ambient given by an RREF basis."""

    ambient: int
    basis: tuple
    pivots: tuple

    @property
    def dim(self):
        return len(self.basis)

    def reduce(self, v):
        """Canonical representative of ``v`` modulo the subspace."""
        v = list(v)
        for row, p in zip(self.basis, self.pivots):
            f = v[p]
            if f != 0:
                v = [x - f * y for x, y in zip(v, row)]
        return v

    def __contains__(self, v):
        return all(x == 0 for x in self.reduce(v))

    def coordinates(self, v):
        """Coordinates of a member ``v`` in the RREF basis (entries at pivots)."""
        return [v[p] for p in self.pivots]

    def combine(self, coords):
        out = [0] * self.ambient
        for c, row in zip(coords, self.basis):
            if c != 0:
                out = [x + c * y for x, y in zip(out, row)]
        return out


def row_space(rows, ambient):
    """Subspace spanned by ``rows`` inside k^ambient."""
    if not rows:
        return SubspacePresentation(ambient, (), ())
    red, pivots = rref(rows, ambient)
    basis = tuple(tuple(red[i]) for i in range(len(pivots)))
    return SubspacePresentation(ambient, basis, tuple(pivots))


def kernel(m, cols=None):
    """Null space ``{v : m v = 0}`` as a SubspacePresentation."""
    ncols = _cols(m, cols)
    if not m:
        rows = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
        return row_space(rows, ncols)
    red, pivots = rref(m, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    vecs = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        vecs.append(v)
    return row_space(vecs, ncols)


@dataclass(frozen=True)
class Quotient:
    """The quotient k^ambient / subspace in canonical coordinates.

    Coordinates are the non-pivot entries of the reduced representative, in
    ambient order.
    """

    subspace: SubspacePresentation

    @property
    def free(self):
        piv = set(self.subspace.pivots)
        return tuple(i for i in range(self.subspace.ambient) if i not in piv)

    @property
    def dim(self):
        return self.subspace.ambient - self.subspace.dim

    def coordinates(self, v):
        red = self.subspace.reduce(v)
        return tuple(red[i] for i in self.free)

    def section(self, coords):
        coords = tuple(coords)
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} quotient coordinates")
        out = [0] * self.subspace.ambient
        for i, c in zip(self.free, coords):
            out[i] = c
        return out

    def matrix(self):
        """The coordinate map as a (dim x ambient) matrix."""
        n = self.subspace.ambient
        cols = [self.coordinates([1 if i == j else 0 for i in range(n)]) for j in range(n)]
        return [[cols[j][r] for j in range(n)] for r in range(self.dim)]


def quotient(by):
    return Quotient(by)


def solve(m, b, cols=None):
    """One solution x of ``m x = b`` (free variables set to zero), or None."""
    ncols = _cols(m, cols)
    if len(m) != len(b):
        raise ValueError("right-hand side length does not match row count")
    if not m:
        return [0] * ncols
    aug = [list(row) + [rhs] for row, rhs in zip(m, b)]
    red, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [0] * ncols
    for r, p in enumerate(pivots):
        x[p] = red[r][ncols]
    return x


def matmul(a, b):
    if not a:
        return []
    inner = len(b)
    ncols = len(b[0]) if b else 0
    out = []
    for row in a:
        if len(row) != inner:
            raise ValueError("shape mismatch in matmul")
        out.append([sum((row[k] * b[k][j] for k in range(inner) if row[k] != 0), 0)
                    for j in range(ncols)])
    return out


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v) if x != 0), 0) for row in a]


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zero_matrix(r, c):
    return [[0] * c for _ in range(r)]


def transpose(m, cols=None):
    ncols = _cols(m, cols) if m else (cols or 0)
    return [[m[i][j] for i in range(len(m))] for j in range(ncols)]
