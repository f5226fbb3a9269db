"""Spherical-class enumeration and nef/movable chamber decomposition.

Walls of an OG10-type moduli space M_{2v0} (v0 primitive, v0^2 = 2) are cut
out by spherical classes x (x^2 = -2): divisorial walls have x.v0 = 0,
flopping walls have x.v0 = 2.  In the rank-2 Neron-Severi lattice v0-perp,
each wall is the rank-1 sublattice x-perp intersected with v0-perp.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from math import gcd, isqrt

from . import lattice as lat
from .errors import InconsistencyError, UnsupportedInputError, UsageError
from .mukai import (
    MukaiVector,
    moduli_report,
    mukai_pair,
    mukai_square,
    tensor_by_polarization,
)

PROVEN_FINITE = "proven_finite"
BOUNDED_SEARCH_ONLY = "bounded_search_only"

DIVISORIAL_BNU = "divisorial_BNU"
FLOPPING = "flopping"


def _signed_divisors(n: int):
    n = abs(n)
    for k in range(1, isqrt(n) + 1):
        if n % k == 0:
            yield k
            yield -k
            m = n // k
            if m != k:
                yield m
                yield -m


def _solve_r0_zero(d: int, a0: int, b0: int, p: int) -> list[tuple[int, int, int]]:
    """Complete solution set of x^2 = -2, x.v0 = p for v0 = (0, a0, b0), a0 != 0.

    The linear constraint 2d*a0*a - b0*r = p is parametrized over Z; the
    residual divisibility r | d*a^2 + 1 forces r to divide a fixed nonzero
    integer, so the solution set is finite and fully enumerable.
    """
    big_a, big_b = 2 * d * a0, -b0
    g, x, y = lat._xgcd(big_a, big_b)
    if p % g:
        return []
    a_p, r_p = x * (p // g), y * (p // g)
    u, v = big_b // g, -(big_a // g)  # direction of the solution line; v != 0
    bound_n = d * (a_p * v - u * r_p) ** 2 + v * v  # always >= 1
    sols = []
    for rv in _signed_divisors(bound_n):
        if (rv - r_p) % v:
            continue
        t = (rv - r_p) // v
        a = a_p + u * t
        num = d * a * a + 1
        if num % rv:
            continue
        sols.append((rv, a, num // rv))
    return sols


def _solve_full(v0: MukaiVector, p: int):
    """(solutions, certified) where certified means the list is complete."""
    d = v0.ctx.d
    if v0.r == 0 and v0.a != 0:
        return _solve_r0_zero(d, v0.a, v0.b, p), True
    if v0.b == 0 and v0.a != 0:
        # the pairing is symmetric under swapping the rank and degree-0 slots
        swapped = _solve_r0_zero(d, v0.a, v0.r, p)
        return [(b, a, r) for (r, a, b) in swapped], True
    return [], False


def _box_scan(v0: MukaiVector, p: int, bound: int) -> list[tuple[int, int, int]]:
    d = v0.ctx.d
    r0, a0, b0 = v0.coords
    out = []
    for r in range(-bound, bound + 1):
        for a in range(-bound, bound + 1):
            for b in range(-bound, bound + 1):
                if 2 * d * a * a - 2 * r * b != -2:
                    continue
                if 2 * d * a * a0 - r * b0 - r0 * b != p:
                    continue
                out.append((r, a, b))
    return out


def _sign_canonical(x: tuple[int, int, int]) -> tuple[int, int, int]:
    for c in x:
        if c:
            return x if c > 0 else tuple(-t for t in x)
    return x


def _validate_v0(v0: MukaiVector) -> None:
    if v0.content() != 1:
        raise UnsupportedInputError(
            f"v0 must be primitive (coordinate gcd is {v0.content()})"
        )
    sq = mukai_square(v0)
    if sq != 2:
        raise UnsupportedInputError(
            f"wall criteria are stated only for OG10-type vectors: v0^2 = {sq} != 2"
        )


@dataclass(frozen=True)
class EnumerationResult:
    classes: tuple[MukaiVector, ...]
    partner_pairs: tuple[tuple[MukaiVector, MukaiVector], ...]
    completeness: str

    def to_json(self) -> dict:
        return {
            "classes": [c.to_json() for c in self.classes],
            "partner_pairs": [
                [a.to_json(), b.to_json()] for a, b in self.partner_pairs
            ],
            "completeness": self.completeness,
        }


def _assemble(v0, p, raw, completeness) -> EnumerationResult:
    ctx = v0.ctx
    if p == 0:
        reps = sorted({_sign_canonical(x) for x in raw})
        classes = tuple(MukaiVector(*x, ctx) for x in reps)
        return EnumerationResult(classes, (), completeness)
    present = set(raw)
    classes = tuple(MukaiVector(*x, ctx) for x in sorted(present))
    pairs = []
    seen = set()
    target = v0.scale(p)
    for x in sorted(present):
        partner = (target.r - x[0], target.a - x[1], target.b - x[2])
        if partner in present and x not in seen and partner not in seen:
            seen.add(x)
            seen.add(partner)
            pairs.append(
                (MukaiVector(*min(x, partner), ctx), MukaiVector(*max(x, partner), ctx))
            )
    return EnumerationResult(classes, tuple(pairs), completeness)


def enumerate_constrained_spherical(
    v0: MukaiVector, pairing_value: int, bound: int
) -> EnumerationResult:
    """All spherical x with x.v0 = pairing_value and max |coordinate| <= bound.

    For pairing_value = 0 one sign-canonical representative per +-pair is
    returned; otherwise x and pairing_value*v0 - x are partners.
    """
    if bound < 1:
        raise UsageError("enumeration bound must be a positive integer")
    _validate_v0(v0)
    full, certified = _solve_full(v0, pairing_value)
    if certified:
        in_box = [x for x in full if max(abs(c) for c in x) <= bound]
        completeness = (
            PROVEN_FINITE if len(in_box) == len(full) else BOUNDED_SEARCH_ONLY
        )
        return _assemble(v0, pairing_value, in_box, completeness)
    raw = _box_scan(v0, pairing_value, bound)
    return _assemble(v0, pairing_value, raw, BOUNDED_SEARCH_ONLY)


@dataclass(frozen=True)
class WallClass:
    cls: MukaiVector
    wall_type: str
    wall_ray: tuple[int, int]  # primitive, in ns_basis coordinates
    partner: MukaiVector | None
    interpretation: str

    def to_json(self) -> dict:
        return {
            "cls": self.cls.to_json(),
            "wall_type": self.wall_type,
            "wall_ray": list(self.wall_ray),
            "partner": self.partner.to_json() if self.partner else None,
            "interpretation": self.interpretation,
        }


@dataclass(frozen=True)
class Ray:
    ambient: tuple[int, int, int]
    ns: tuple[int, int]
    label: str
    interpretation: str

    def to_json(self) -> dict:
        return {
            "ambient": list(self.ambient),
            "ns": list(self.ns),
            "label": self.label,
            "interpretation": self.interpretation,
        }


@dataclass(frozen=True)
class ThetaData:
    ambient: tuple[int, int, int]
    ns: tuple[int, int]
    square: int
    pair_with_lagrangian: int
    lagrangian_coeff: int
    boundary_coeff: int
    label: str

    def to_json(self) -> dict:
        return {
            "ambient": list(self.ambient),
            "ns": list(self.ns),
            "square": self.square,
            "pair_with_lagrangian": self.pair_with_lagrangian,
            "in_l_h_basis": {
                "l": self.lagrangian_coeff,
                "h": self.boundary_coeff,
            },
            "label": self.label,
        }


@dataclass(frozen=True)
class ChamberReport:
    ns_basis: tuple[MukaiVector, ...]
    ns_gram: tuple[tuple[int, ...], ...]
    rays: tuple[Ray, ...]
    chambers: tuple[tuple[tuple[int, ...], tuple[int, ...], str], ...]
    wall_classes: tuple[WallClass, ...]
    theta: ThetaData | None
    enumeration_bound: int
    completeness: str
    relabeled: bool

    def to_json(self) -> dict:
        return {
            "ns_basis": [v.to_json() for v in self.ns_basis],
            "ns_gram": [list(row) for row in self.ns_gram],
            "rays": [list(r.ambient) for r in self.rays],
            "ray_details": [r.to_json() for r in self.rays],
            "chambers": [
                {"rays": [list(a), list(b)], "label": label}
                for a, b, label in self.chambers
            ],
            "wall_classes": [w.to_json() for w in self.wall_classes],
            "theta": self.theta.to_json() if self.theta else None,
            "enumeration_bound": self.enumeration_bound,
            "completeness": self.completeness,
            "relabeled": self.relabeled,
        }


def _ns_coords(basis: tuple[MukaiVector, ...], x: MukaiVector) -> tuple[int, int]:
    """Coordinates of x in a rank-2 saturated basis (exact, must be integral)."""
    rows = [b.coords for b in basis]
    target = x.coords
    # solve c0*rows[0] + c1*rows[1] = target over Q
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            det = rows[0][i] * rows[1][j] - rows[0][j] * rows[1][i]
            if det:
                c0 = Fraction(target[i] * rows[1][j] - target[j] * rows[1][i], det)
                c1 = Fraction(rows[0][i] * target[j] - rows[0][j] * target[i], det)
                for k in range(3):
                    if c0 * rows[0][k] + c1 * rows[1][k] != target[k]:
                        raise InconsistencyError(
                            f"{target} does not lie in the span of the NS basis"
                        )
                if c0.denominator != 1 or c1.denominator != 1:
                    raise InconsistencyError(
                        f"non-integral NS coordinates for {target}"
                    )
                return (int(c0), int(c1))
    raise InconsistencyError("NS basis is degenerate")


def _ns_pair(ns_gram, x, y) -> int:
    return sum(
        x[i] * ns_gram[i][j] * y[j] for i in range(2) for j in range(2)
    )


def _primitive(v: tuple[int, int]) -> tuple[int, int]:
    g = gcd(abs(v[0]), abs(v[1]))
    return (v[0] // g, v[1] // g) if g else v


def _wall_ray(basis, ns_gram, l_ns, cls: MukaiVector) -> tuple[int, int]:
    m0 = mukai_pair(basis[0], cls)
    m1 = mukai_pair(basis[1], cls)
    if m0 == 0 and m1 == 0:
        raise InconsistencyError("wall class pairs to zero with the whole NS")
    ray = _primitive((m1, -m0))
    s = _ns_pair(ns_gram, ray, l_ns)
    if s < 0 or (s == 0 and not _is_first_nonzero_positive(ray)):
        ray = (-ray[0], -ray[1])
    return ray


def _is_first_nonzero_positive(v) -> bool:
    for c in v:
        if c:
            return c > 0
    return False


def _is_zero_section_flop(cls: MukaiVector, partner: MukaiVector | None) -> bool:
    # v(O_S(nC)) = (1, n, 1 + d n^2): the wall flops the zero section when a
    # partner equals the Mukai vector of a line bundle twist of O_S.
    o_s = MukaiVector(1, 0, 1, cls.ctx)
    for cand in (cls, partner):
        if cand is None:
            continue
        for n in range(-8, 9):
            if tensor_by_polarization(o_s, n) == cand:
                return True
    return False


def chamber_report(
    v0: MukaiVector, bound: int, relabel_as_intermediate_jacobian: bool = False
) -> ChamberReport:
    """Nef/movable chamber chain of M_{2v0} in its rank-2 Neron-Severi lattice.

    Rays run from the Lagrangian class l = (0, 0, 1) through the interior
    flopping walls to the movable boundary cut out by the divisorial wall.
    Wall classes whose ray falls outside the movable cone are dropped.
    """
    if bound < 1:
        raise UsageError("enumeration bound must be a positive integer")
    _validate_v0(v0)
    if v0.r != 0:
        raise UnsupportedInputError(
            "the Lagrangian class (0,0,1) is not orthogonal to v0 (rank component != 0)"
        )
    report = moduli_report(2, v0)
    basis, ns_gram = report.ns_basis, report.ns_gram
    if len(basis) != 2:
        raise UnsupportedInputError("chamber decomposition requires NS of rank 2")
    ctx = v0.ctx
    ell = MukaiVector(0, 0, 1, ctx)
    l_ns = _ns_coords(basis, ell)

    div_full, div_cert = _solve_full(v0, 0)
    flop_full, flop_cert = _solve_full(v0, 2)
    if not div_cert:
        div_full = _box_scan(v0, 0, bound)
    if not flop_cert:
        flop_full = _box_scan(v0, 2, bound)
    all_in_box = all(
        max(abs(c) for c in x) <= bound for x in div_full + flop_full
    )
    completeness = (
        PROVEN_FINITE if div_cert and flop_cert and all_in_box else BOUNDED_SEARCH_ONLY
    )

    div_reps = sorted({_sign_canonical(x) for x in div_full})

    div_rays = sorted(
        {_wall_ray(basis, ns_gram, l_ns, MukaiVector(*x, ctx)) for x in div_reps}
    )
    flop_classes: dict[tuple[int, int], list[MukaiVector]] = {}
    for x in sorted(set(flop_full)):
        cls = MukaiVector(*x, ctx)
        ray = _wall_ray(basis, ns_gram, l_ns, cls)
        flop_classes.setdefault(ray, []).append(cls)

    # All wall rays lie in the half-plane pair(., l) > 0, so their angular
    # order around the origin is total; orient it so l comes first.
    orient = 0
    for r in div_rays + list(flop_classes):
        c = l_ns[0] * r[1] - l_ns[1] * r[0]
        if c == 0:
            continue
        if orient == 0:
            orient = 1 if c > 0 else -1
        elif (orient > 0) != (c > 0):
            raise InconsistencyError(
                "wall rays are not on one side of the fibration ray"
            )
    if orient == 0:
        orient = 1

    def cmp_rays(u, v):
        cross = (u[0] * v[1] - u[1] * v[0]) * orient
        return -1 if cross > 0 else (1 if cross < 0 else 0)

    key = cmp_to_key(cmp_rays)
    boundary = min(div_rays, key=key) if div_rays else None

    interior = []
    for ray in sorted(flop_classes, key=key):
        if ray == tuple(l_ns) or ray == boundary:
            continue
        if cmp_rays(l_ns, ray) < 0 and (
            boundary is None or cmp_rays(ray, boundary) < 0
        ):
            interior.append(ray)

    def relabel(plain: str) -> str:
        return plain.upper() if relabel_as_intermediate_jacobian else plain

    def ambient_of(ray_ns) -> tuple[int, int, int]:
        return tuple(
            ray_ns[0] * basis[0].coords[k] + ray_ns[1] * basis[1].coords[k]
            for k in range(3)
        )

    rays = [Ray(ambient_of(l_ns), tuple(l_ns), relabel("l"), "Lagrangian fibration")]
    wall_classes: list[WallClass] = []
    for idx, ray in enumerate(interior):
        members = flop_classes[ray]
        partner_of = {}
        for cls in members:
            partner = v0.scale(2) - cls
            partner_of[cls] = partner if partner in members else None
        zero_section = any(
            _is_zero_section_flop(cls, partner_of[cls]) for cls in members
        )
        interp = "Mukai flop of zero section" if zero_section else "flopping wall"
        label = relabel("h0") if idx == 0 else relabel(f"h{idx}")
        rays.append(Ray(ambient_of(ray), ray, label, interp))
        for cls in members:
            wall_classes.append(
                WallClass(cls, FLOPPING, ray, partner_of[cls], interp)
            )

    theta = None
    if boundary is not None:
        boundary_interp = "divisorial contraction of theta"
        if relabel_as_intermediate_jacobian:
            boundary_interp = (
                "divisorial contraction of theta; "
                "exceptional image birational to LLSvS 8-fold"
            )
        rays.append(Ray(ambient_of(boundary), boundary, relabel("h"), boundary_interp))
        boundary_classes = [
            MukaiVector(*x, ctx)
            for x in div_reps
            if _wall_ray(basis, ns_gram, l_ns, MukaiVector(*x, ctx)) == boundary
        ]
        for cls in boundary_classes:
            wall_classes.append(
                WallClass(cls, DIVISORIAL_BNU, boundary, None, boundary_interp)
            )
        if boundary_classes:
            cls = boundary_classes[0]
            th = cls if mukai_pair(cls, ell) > 0 else -cls
            th_ns = _ns_coords(basis, th)
            h_ns = boundary
            det = l_ns[0] * h_ns[1] - l_ns[1] * h_ns[0]
            cl = Fraction(th_ns[0] * h_ns[1] - th_ns[1] * h_ns[0], det)
            ch = Fraction(l_ns[0] * th_ns[1] - l_ns[1] * th_ns[0], det)
            if cl.denominator != 1 or ch.denominator != 1:
                raise InconsistencyError("theta is not integral in the (l, h) frame")
            theta = ThetaData(
                ambient=th.coords,
                ns=th_ns,
                square=mukai_square(th),
                pair_with_lagrangian=mukai_pair(th, ell),
                lagrangian_coeff=int(cl),
                boundary_coeff=int(ch),
                label="Theta" if relabel_as_intermediate_jacobian else "theta",
            )

    chambers = []
    model_label = "Nef(J)" if relabel_as_intermediate_jacobian else "Nef(M_2v0)"
    flop_label = "p*Nef(N)" if relabel_as_intermediate_jacobian else "Nef(flop model)"
    for i in range(len(rays) - 1):
        label = model_label if i == 0 else (
            flop_label if len(rays) == 3 else f"{flop_label} {i}"
        )
        chambers.append((rays[i].ambient, rays[i + 1].ambient, label))

    return ChamberReport(
        ns_basis=basis,
        ns_gram=ns_gram,
        rays=tuple(rays),
        chambers=tuple(chambers),
        wall_classes=tuple(wall_classes),
        theta=theta,
        enumeration_bound=bound,
        completeness=completeness,
        relabeled=relabel_as_intermediate_jacobian,
    )
