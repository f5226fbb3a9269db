"""Exact integral-lattice primitives.

Everything here is plain arbitrary-precision integer arithmetic: bilinear
pairings against a symmetric Gram matrix, integer kernels via Hermite normal
form, saturated orthogonal complements, and primitivity / divisibility tests.
All values are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

from .errors import UnsupportedInputError, UsageError

Vector = tuple[int, ...]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _det(matrix) -> int:
    # Bareiss fraction-free elimination; exact for integer matrices.
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class GramLattice:
    """Finite-rank integral lattice given by a symmetric Gram matrix."""

    rank: int
    gram: tuple[tuple[int, ...], ...]
    even: bool = field(default=False, compare=False)

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        if self.rank < 1:
            raise UsageError("lattice rank must be a positive integer")
        if len(gram) != self.rank or any(len(row) != self.rank for row in gram):
            raise UsageError(f"gram matrix must be {self.rank}x{self.rank}")
        for i in range(self.rank):
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise UsageError("gram matrix must be symmetric")
        if self.even and any(gram[i][i] % 2 for i in range(self.rank)):
            raise UsageError("even flag set but a diagonal entry is odd")

    @cached_property
    def determinant(self) -> int:
        return _det(self.gram)

    @cached_property
    def nondegenerate(self) -> bool:
        return self.determinant != 0

    def check_vector(self, x) -> Vector:
        v = tuple(int(c) for c in x)
        if len(v) != self.rank:
            raise UsageError(
                f"vector length {len(v)} does not match lattice rank {self.rank}"
            )
        return v

    def functional(self, x) -> Vector:
        """The row vector G.x, i.e. the functional pair(., x) in the dual basis."""
        v = self.check_vector(x)
        return tuple(
            sum(self.gram[i][j] * v[j] for j in range(self.rank))
            for i in range(self.rank)
        )


def pair(lattice: GramLattice, x, y) -> int:
    """Exact bilinear pairing x^T . gram . y."""
    xv = lattice.check_vector(x)
    fy = lattice.functional(y)
    return sum(a * b for a, b in zip(xv, fy))


def is_primitive(lattice: GramLattice, x) -> bool:
    v = lattice.check_vector(x)
    g = 0
    for c in v:
        g = gcd(g, c)
    if g == 0:
        raise UsageError("primitivity is undefined for the zero vector")
    return g == 1


def divisibility(lattice: GramLattice, x) -> int:
    """gcd of the pairings of x with the basis vectors (0 on the radical)."""
    g = 0
    for c in lattice.functional(x):
        g = gcd(g, c)
    return g


def hnf_with_transform(rows: list[list[int]], ncols: int):
    """Row-style Hermite normal form.

    Returns (H, U, r) with U unimodular, U*A = H, pivots positive, entries
    above each pivot reduced into [0, pivot), and r the rank.
    """
    m = len(rows)
    H = [list(row) for row in rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, m):
            if H[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            H[r], H[piv] = H[piv], H[r]
            U[r], U[piv] = U[piv], U[r]
        for i in range(r + 1, m):
            if H[i][c] == 0:
                continue
            g, x, y = _xgcd(H[r][c], H[i][c])
            pr, pi = H[r][c] // g, H[i][c] // g
            H[r], H[i] = (
                [x * a + y * b for a, b in zip(H[r], H[i])],
                [-pi * a + pr * b for a, b in zip(H[r], H[i])],
            )
            U[r], U[i] = (
                [x * a + y * b for a, b in zip(U[r], U[i])],
                [-pi * a + pr * b for a, b in zip(U[r], U[i])],
            )
        if H[r][c] < 0:
            H[r] = [-a for a in H[r]]
            U[r] = [-a for a in U[r]]
        for i in range(r):
            q = H[i][c] // H[r][c]
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
    return H, U, r


def hnf(rows: list[list[int]], ncols: int) -> list[list[int]]:
    H, _, r = hnf_with_transform(rows, ncols)
    return H[:r]


def integer_kernel(rows: list[Vector], n: int) -> list[Vector]:
    """Basis of the saturated lattice {x in Z^n : row . x = 0 for all rows}."""
    if not rows:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    m = len(rows)
    a = [[rows[i][j] for i in range(m)] for j in range(n)]  # transpose
    H, U, r = hnf_with_transform(a, m)
    return [tuple(U[i]) for i in range(r, n)]


def canonical_basis(vectors: list[Vector], n: int) -> list[Vector]:
    """Canonical form of a sublattice basis.

    HNF taken with the coordinates reversed (so the trailing nonzero entry of
    each vector is positive), rows then sorted in descending lexicographic
    order.  Deterministic; reproduces the identity basis on the full lattice.
    """
    rev = [list(v[::-1]) for v in vectors]
    reduced = hnf(rev, n)
    out = [tuple(row[::-1]) for row in reduced]
    return sorted(out, reverse=True)


def orthogonal_complement(lattice: GramLattice, generators):
    """Saturated orthogonal complement of the span of the generators.

    Returns (basis, induced_gram) where basis is a canonical list of vectors
    of the ambient lattice and induced_gram is the Gram matrix of the pairing
    restricted to that basis.
    """
    if not lattice.nondegenerate:
        raise UnsupportedInputError(
            "orthogonal complements require a nondegenerate lattice"
        )
    rows = [lattice.functional(g) for g in generators]
    kernel = integer_kernel(rows, lattice.rank)
    basis = canonical_basis(kernel, lattice.rank)
    induced = tuple(
        tuple(pair(lattice, b1, b2) for b2 in basis) for b1 in basis
    )
    return basis, induced
