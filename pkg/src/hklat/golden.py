"""Golden regression suite for the documented reference values.

Each check recomputes one published number or lattice identity from scratch.
The rank-3 Mukai Gram matrix used by the lattice-level checks can be
perturbed entry-wise (symmetrically) so that callers can verify the suite
actually notices a wrong Gram matrix.
"""

from __future__ import annotations

from fractions import Fraction

from . import fujiki, lattice as lat, mordell_weil as mw, walls
from .mukai import K3Context, MukaiVector, moduli_report, mukai_pair, tensor_by_polarization


def _mukai_gram_rows(d: int, perturb=None):
    rows = [[0, 0, -1], [0, 2 * d, 0], [-1, 0, 0]]
    if perturb is not None:
        i, j = perturb
        rows[i][j] += 1
        if i != j:
            rows[j][i] += 1
    return rows


def run_all(perturb=None) -> list[tuple[str, bool, str]]:
    """Run every golden check; returns (name, passed, detail) triples."""
    ctx = K3Context(1)
    v0 = MukaiVector(0, 1, -2, ctx)
    s = MukaiVector(1, -1, 2, ctx)
    w = MukaiVector(1, 0, 1, ctx)
    gram3 = lat.GramLattice(3, _mukai_gram_rows(1, perturb))
    u_theta = lat.GramLattice(2, ((0, 1), (1, -2)))

    results: list[tuple[str, bool, str]] = []

    def check(name: str, got, want):
        ok = got == want
        results.append((name, ok, f"got {got!r}, want {want!r}"))

    # pairing values of the <L, Theta> lattice
    check("theta-square", lat.pair(u_theta, (0, 1), (0, 1)), -2)
    check("L-theta-pairing", lat.pair(u_theta, (1, 0), (0, 1)), 1)

    # Mukai pairings, computed through the (possibly perturbed) Gram matrix
    check("v0-square", lat.pair(gram3, v0.coords, v0.coords), 2)
    check("s-orthogonal-to-v0", lat.pair(gram3, s.coords, v0.coords), 0)
    check("w-pairs-2-with-v0", lat.pair(gram3, w.coords, v0.coords), 2)

    # NS(M_{2v0}) = v0-perp with hyperbolic-type Gram
    basis, induced = lat.orthogonal_complement(gram3, [v0.coords])
    check("v0-perp-basis", basis, [(0, 0, 1), (-1, 1, 0)])
    check("v0-perp-gram", induced, ((0, 1), (1, 2)))

    # moduli metadata
    report = moduli_report(2, v0)
    check("moduli-dimension", report.dimension, 10)
    check("moduli-resolution", report.admits_symplectic_resolution, True)
    check("moduli-factorial", report.factoriality, "factorial")
    check(
        "moduli-ns-matches-gram",
        (tuple(v.coords for v in report.ns_basis), report.ns_gram),
        (tuple(basis), tuple(tuple(r) for r in induced)),
    )
    v1 = MukaiVector(0, 1, -1, ctx)
    check("moduli-v1-two-factorial", moduli_report(2, v1).factoriality, "two_factorial")

    # tensoring by the polarization shifts v_k by two
    check(
        "tensor-v0-is-v2", tensor_by_polarization(v0, 1), MukaiVector(0, 1, 0, ctx)
    )

    # wall enumeration
    div = walls.enumerate_constrained_spherical(v0, 0, 10)
    check("divisorial-class", [c.coords for c in div.classes], [(1, -1, 2)])
    flop = walls.enumerate_constrained_spherical(v0, 2, 10)
    flop_pairs = {tuple(sorted((a.coords, b.coords))) for a, b in flop.partner_pairs}
    check(
        "flopping-partner-pair",
        ((-1, 2, -5), (1, 0, 1)) in flop_pairs,
        True,
    )

    # chamber structure
    chambers = walls.chamber_report(v0, 10)
    check(
        "chamber-rays",
        [r.ambient for r in chambers.rays],
        [(0, 0, 1), (-1, 1, 1), (-1, 1, 0)],
    )
    check(
        "chamber-pairs",
        [(a, b) for a, b, _ in chambers.chambers],
        [((0, 0, 1), (-1, 1, 1)), ((-1, 1, 1), (-1, 1, 0))],
    )
    theta = chambers.theta
    if theta is None:
        results.append(("theta-data", False, "no theta emitted"))
    else:
        check("theta-class", theta.ambient, (-1, 1, -2))
        check("theta-square-in-ns", theta.square, -2)
        check("theta-dot-l", theta.pair_with_lagrangian, 1)
        check(
            "theta-is-h-minus-2l",
            (theta.lagrangian_coeff, theta.boundary_coeff),
            (-2, 1),
        )
        # cross-check theta against the (possibly perturbed) ambient Gram
        check(
            "theta-square-ambient",
            lat.pair(gram3, theta.ambient, theta.ambient),
            -2,
        )
    relabeled = walls.chamber_report(v0, 10, relabel_as_intermediate_jacobian=True)
    check(
        "relabeled-ray-names",
        [r.label for r in relabeled.rays],
        ["L", "H0", "H"],
    )

    # Fujiki expansion
    form = fujiki.og10_l_theta_form()
    check("L5-Theta5", fujiki.top_intersection(form, (5, 5)), Fraction(120))
    table = fujiki.full_table(form, require_integral=True)
    check("Theta10", table.entries[(0, 10)], Fraction(-30240))
    solved = fujiki.solve_gram(
        2, [[0, "p"], ["p", "u"]], 5, 945, [((5, 5), 120)]
    )
    check(
        "fujiki-solve-L-theta",
        ([dict(sol) for sol in solved.solutions], list(solved.undetermined)),
        ([{"p": Fraction(1)}], ["u"]),
    )

    # Mordell-Weil ranks
    check(
        "st-very-general",
        mw.shioda_tate_rank(mw.FibrationData(2, 0)),
        0,
    )
    check(
        "st-maximal",
        mw.shioda_tate_rank(mw.FibrationData(22, 0)),
        20,
    )
    check("rho-very-general", mw.rho_of_j(mw.CubicFourfoldHodgeData(1)), 2)
    check("mw-very-general", mw.mw_rank_of_jx(mw.CubicFourfoldHodgeData(1)), 0)
    check("mw-maximal", mw.mw_rank_of_jx(mw.CubicFourfoldHodgeData(21)), 20)

    return results


def run_and_report(perturb=None, out=None) -> int:
    import sys

    out = out or sys.stdout
    try:
        results = run_all(perturb=perturb)
    except Exception as exc:  # a perturbed Gram may break invariants outright
        print(f"FAIL suite aborted: {exc}", file=out)
        return 1
    failures = 0
    for name, ok, detail in results:
        if ok:
            print(f"PASS {name}", file=out)
        else:
            print(f"FAIL {name}: {detail}", file=out)
            failures += 1
    print(
        f"{len(results) - failures}/{len(results)} golden checks passed",
        file=out,
    )
    return 0 if failures == 0 else 1
