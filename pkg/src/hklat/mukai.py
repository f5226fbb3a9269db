"""Rank-3 algebraic Mukai lattice of a Picard-rank-1 K3 of degree 2d.

A Mukai vector (r, a, b) stands for the class r + a*C + b*pt with C the
polarization, C^2 = 2d.  The pairing is
    <(r, a, b), (r', a', b')> = 2d*a*a' - r*b' - r'*b,
which in the basis {(1,0,0), (0,1,0), (0,0,1)} is the Gram matrix
[[0, 0, -1], [0, 2d, 0], [-1, 0, 0]].
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from . import lattice as lat
from .errors import UsageError


@dataclass(frozen=True)
class K3Context:
    """Degree parameter of the polarized K3: the polarization has square 2d."""

    d: int

    def __post_init__(self):
        if self.d < 1:
            raise UsageError("K3 degree parameter d must be >= 1")


@dataclass(frozen=True)
class MukaiVector:
    r: int
    a: int
    b: int
    ctx: K3Context

    @property
    def coords(self) -> tuple[int, int, int]:
        return (self.r, self.a, self.b)

    def __neg__(self) -> "MukaiVector":
        return MukaiVector(-self.r, -self.a, -self.b, self.ctx)

    def __sub__(self, other: "MukaiVector") -> "MukaiVector":
        _require_same_context(self, other)
        return MukaiVector(
            self.r - other.r, self.a - other.a, self.b - other.b, self.ctx
        )

    def scale(self, k: int) -> "MukaiVector":
        return MukaiVector(k * self.r, k * self.a, k * self.b, self.ctx)

    def content(self) -> int:
        return gcd(gcd(abs(self.r), abs(self.a)), abs(self.b))

    def to_json(self) -> dict:
        return {"r": self.r, "a": self.a, "b": self.b, "d": self.ctx.d}


def _require_same_context(x: MukaiVector, y: MukaiVector) -> None:
    if x.ctx != y.ctx:
        raise UsageError("Mukai vectors live on K3 surfaces of different degree")


def mukai_gram_lattice(d: int) -> lat.GramLattice:
    """The rank-3 Mukai lattice as a GramLattice (basis 1, C, pt)."""
    return lat.GramLattice(3, ((0, 0, -1), (0, 2 * d, 0), (-1, 0, 0)), even=True)


def mukai_pair(x: MukaiVector, y: MukaiVector) -> int:
    _require_same_context(x, y)
    d = x.ctx.d
    return 2 * d * x.a * y.a - x.r * y.b - y.r * x.b


def mukai_square(x: MukaiVector) -> int:
    return mukai_pair(x, x)


def tensor_by_polarization(v: MukaiVector, n: int) -> MukaiVector:
    """Multiply by exp(n*C): (r, a, b) -> (r, a + n*r, b + 2d*n*a + d*n^2*r)."""
    d = v.ctx.d
    return MukaiVector(
        v.r,
        v.a + n * v.r,
        v.b + 2 * d * n * v.a + d * n * n * v.r,
        v.ctx,
    )


FACTORIAL = "factorial"
TWO_FACTORIAL = "two_factorial"
NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class ModuliReport:
    """Metadata of the moduli space of semistable sheaves with vector m*v0."""

    dimension: int
    admits_symplectic_resolution: bool
    is_og10_type: bool
    factoriality: str
    ns_basis: tuple[MukaiVector, ...]
    ns_gram: tuple[tuple[int, ...], ...]
    positivity_checked: bool = False

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "admits_symplectic_resolution": self.admits_symplectic_resolution,
            "is_og10_type": self.is_og10_type,
            "factoriality": self.factoriality,
            "ns_basis": [v.to_json() for v in self.ns_basis],
            "ns_gram": [list(row) for row in self.ns_gram],
            "positivity_checked": self.positivity_checked,
        }


def moduli_report(m: int, v0: MukaiVector) -> ModuliReport:
    if m < 1:
        raise UsageError("multiplicity m must be a positive integer")
    g = v0.content()
    if g == 0:
        raise UsageError("v0 is the zero vector")
    if g != 1:
        raise UsageError(f"v0 is not primitive: coordinate gcd is {g}")
    sq = mukai_square(v0)
    if sq < 2:
        raise UsageError(f"v0^2 = {sq} < 2 is outside the supported range")
    resolution = m == 2 and sq == 2
    if m == 2:
        ambient = mukai_gram_lattice(v0.ctx.d)
        div = lat.divisibility(ambient, v0.coords)
        factoriality = FACTORIAL if div % 2 == 0 else TWO_FACTORIAL
    else:
        factoriality = NOT_APPLICABLE
    ambient = mukai_gram_lattice(v0.ctx.d)
    basis, gram = lat.orthogonal_complement(ambient, [v0.coords])
    ns_basis = tuple(MukaiVector(*b, v0.ctx) for b in basis)
    return ModuliReport(
        dimension=m * m * sq + 2,
        admits_symplectic_resolution=resolution,
        is_og10_type=resolution,
        factoriality=factoriality,
        ns_basis=ns_basis,
        ns_gram=gram,
    )
