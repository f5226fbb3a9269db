"""Shioda-Tate rank arithmetic for Lagrangian fibrations with a section.

For a fibration pi: M -> P^n with a rational section, with L the pullback of
the hyperplane class and D_1..D_k the irreducible non-regular-locus
components missing the section,

    rk MW(pi) = rk NS(M) - rk(Z L + sum_i Z D_i) - 1 = rk NS(M) - k - 2.

For an intermediate Jacobian fibration J(X) of a cubic fourfold X the
discriminant fibers are irreducible (k = 0) and rho(J) = rk H^{2,2}(X, Q) + 1,
so rk MW = rk H^{2,2}(X)_0 = rk H^{2,2}(X) - 1, at most 20.  MW(pi) of J(X)
is torsion free.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InconsistencyError, UnsupportedInputError, UsageError

MAX_JX_MW_RANK = 20


@dataclass(frozen=True)
class FibrationData:
    ns_rank: int
    boundary_components: int
    has_section: bool = True

    def __post_init__(self):
        if self.ns_rank < 1:
            raise UsageError("ns_rank must be a positive integer")
        if self.boundary_components < 0:
            raise UsageError("boundary_components must be nonnegative")
        if self.has_section and self.ns_rank < 2:
            raise UsageError(
                "a fibration with a section has ns_rank >= 2 (L and a "
                "section-meeting class are independent)"
            )

    def to_json(self) -> dict:
        return {
            "ns_rank": self.ns_rank,
            "boundary_components": self.boundary_components,
            "has_section": self.has_section,
        }


@dataclass(frozen=True)
class CubicFourfoldHodgeData:
    """Rank of H^{2,2}(X, Q) for a smooth cubic fourfold (b4 = 23, h31 = 1)."""

    h22_rank: int

    def __post_init__(self):
        if not 1 <= self.h22_rank <= 21:
            raise UsageError(
                f"h22_rank must lie in [1, 21], got {self.h22_rank}"
            )

    @property
    def h22_primitive_rank(self) -> int:
        return self.h22_rank - 1

    def to_json(self) -> dict:
        return {
            "h22_rank": self.h22_rank,
            "h22_primitive_rank": self.h22_primitive_rank,
        }


def shioda_tate_rank(data: FibrationData) -> int:
    if not data.has_section:
        raise UnsupportedInputError(
            "the Shioda-Tate count requires a (rational) section"
        )
    rank = data.ns_rank - (1 + data.boundary_components) - 1
    if rank < 0:
        raise InconsistencyError(
            f"ns_rank={data.ns_rank} with {data.boundary_components} boundary "
            "components violates the Shioda-Tate exact sequence"
        )
    return rank


def rho_of_j(data: CubicFourfoldHodgeData) -> int:
    """Picard rank of J(X): rk H^{2,2}(X, Q) + 1."""
    return data.h22_rank + 1


def mw_rank_of_jx(data: CubicFourfoldHodgeData) -> int:
    """Mordell-Weil rank of the intermediate Jacobian fibration of X."""
    rank = rho_of_j(data) - 2
    if rank > MAX_JX_MW_RANK:
        raise InconsistencyError(
            f"computed MW rank {rank} exceeds the maximum {MAX_JX_MW_RANK}"
        )
    return rank
