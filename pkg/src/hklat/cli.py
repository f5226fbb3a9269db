"""Command-line front end.

Every subcommand prints a deterministic report (JSON by default) on stdout.
Exit codes: 0 success, 2 usage error, 3 unsupported input, 4 internal
inconsistency or resource guard.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import fujiki, golden, mordell_weil as mw, walls
from .errors import (
    InconsistencyError,
    ResourceError,
    UnsupportedInputError,
    UsageError,
)
from .mukai import K3Context, MukaiVector, moduli_report, mukai_pair, mukai_square

DEFAULT_BOUND = 16


def _default_bound() -> int:
    raw = os.environ.get("HK_BOUND")
    if raw is None:
        return DEFAULT_BOUND
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"HK_BOUND must be an integer, got {raw!r}")
    if value < 1:
        raise UsageError("HK_BOUND must be positive")
    return value


def _parse_vector(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError(
            f"Mukai vectors are written r,a,b (three comma-separated integers); got {text!r}"
        )
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise UsageError(f"non-integer entry in Mukai vector {text!r}")


def _mukai_vector(text: str, d: int) -> MukaiVector:
    return MukaiVector(*_parse_vector(text), K3Context(d))


def _render(obj: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(obj, indent=2)
    return "\n".join(_text_lines(obj))


def _text_lines(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)):
                yield f"{prefix}{k}:"
                yield from _text_lines(v, prefix + "  ")
            else:
                yield f"{prefix}{k}: {v}"
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                yield from _text_lines(v, prefix + "  ")
            else:
                yield f"{prefix}- {v}"
    else:
        yield f"{prefix}{obj}"


def _cmd_mukai(args) -> dict:
    x = _mukai_vector(args.x, args.d)
    out = {"d": args.d, "x": list(x.coords)}
    if args.y is not None:
        y = _mukai_vector(args.y, args.d)
        out["y"] = list(y.coords)
        out["pair"] = mukai_pair(x, y)
    out["square"] = mukai_square(x)
    return out


def _cmd_moduli(args) -> dict:
    v0 = _mukai_vector(args.v0, args.d)
    report = moduli_report(args.m, v0)
    out = {"m": args.m, "v0": list(v0.coords), "d": args.d}
    out.update(report.to_json())
    return out


def _cmd_cones(args) -> dict:
    v0 = _mukai_vector(args.v0, args.d)
    bound = args.bound if args.bound is not None else _default_bound()
    report = walls.chamber_report(v0, bound, args.relabel)
    out = {"v0": list(v0.coords), "d": args.d}
    out.update(report.to_json())
    return out


def _parse_gram_template(text: str):
    rows = [row.split(",") for row in text.split(";")]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise UsageError("gram template must be square: rows 'a,b;b,c'")

    def cell(x: str):
        x = x.strip()
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError):
            return x  # unknown name

    return n, [[cell(x) for x in row] for row in rows]


def _parse_constraint(text: str):
    if "=" not in text:
        raise UsageError(f"constraints are written e0,e1,...=value; got {text!r}")
    lhs, rhs = text.split("=", 1)
    try:
        exponents = tuple(int(p) for p in lhs.split(","))
        value = Fraction(rhs)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"malformed constraint {text!r}")
    return exponents, value


def _cmd_fujiki_table(args) -> dict:
    if args.preset == "og10-L-theta":
        form = fujiki.og10_l_theta_form()
        require_integral = True
    else:
        if args.gram is None:
            raise UsageError("provide --preset og10-L-theta or an explicit --gram")
        rank, rows = _parse_gram_template(args.gram)
        for row in rows:
            if any(isinstance(x, str) for x in row):
                raise UsageError("fujiki-table needs a fully numeric gram matrix")
        form = fujiki.BBForm(rank, tuple(tuple(r) for r in rows), args.n, Fraction(args.c))
        require_integral = False
    table = fujiki.full_table(form, require_integral=require_integral)
    return {
        "n": form.n,
        "c": str(form.c),
        "gram": [[str(x) for x in row] for row in form.gram],
        "entries": table.to_json(),
    }


def _cmd_fujiki_solve(args) -> dict:
    if args.preset == "og10-L-theta":
        result = fujiki.solve_gram(
            2, [[Fraction(0), "p"], ["p", "u"]], 5, 945, [((5, 5), Fraction(120))]
        )
        if len(result.solutions) != 1:
            raise InconsistencyError(
                f"expected a unique solution for q(L,Theta), got {result.solutions}"
            )
        value = result.solutions[0]["p"]
        return {"q_L_Theta": int(value) if value.denominator == 1 else str(value)}
    if args.preset == "og10-theta-sq":
        result = fujiki.solve_gram(
            2,
            [[Fraction(0), Fraction(1)], [Fraction(1), "u"]],
            5,
            945,
            [((0, 10), Fraction(-30240))],
        )
        if len(result.solutions) != 1:
            raise InconsistencyError(
                f"expected a unique solution for q(Theta), got {result.solutions}"
            )
        value = result.solutions[0]["u"]
        return {"q_Theta": int(value) if value.denominator == 1 else str(value)}
    if args.gram is None or not args.constraint:
        raise UsageError(
            "provide --preset og10-L-theta|og10-theta-sq or --gram with --constraint"
        )
    rank, rows = _parse_gram_template(args.gram)
    constraints = [_parse_constraint(c) for c in args.constraint]
    result = fujiki.solve_gram(rank, rows, args.n, Fraction(args.c), constraints)
    return result.to_json()


def _cmd_mw_rank(args) -> dict:
    if args.h22 is not None:
        data = mw.CubicFourfoldHodgeData(args.h22)
        return {
            "mw_rank": mw.mw_rank_of_jx(data),
            "rho_J": mw.rho_of_j(data),
            "torsion_free": True,
        }
    if args.ns_rank is None:
        raise UsageError("provide --h22 for J(X) or --ns-rank/--boundary for Shioda-Tate")
    data = mw.FibrationData(args.ns_rank, args.boundary, has_section=not args.no_section)
    return {
        "mw_rank": mw.shioda_tate_rank(data),
        "ns_rank": data.ns_rank,
        "boundary_components": data.boundary_components,
    }


def _cmd_reproduce(args) -> int:
    perturb = None
    if args.perturb is not None:
        parts = args.perturb.split(",")
        if len(parts) != 2:
            raise UsageError("--perturb takes a Gram index pair i,j")
        try:
            perturb = (int(parts[0]), int(parts[1]))
        except ValueError:
            raise UsageError("--perturb indices must be integers")
        if not all(0 <= p <= 2 for p in perturb):
            raise UsageError("--perturb indices must lie in 0..2")
    return golden.run_and_report(perturb=perturb)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hklat",
        description=(
            "Exact lattice, cone and Fujiki-relation computations for "
            "OG10-type hyper-Kahler geometry."
        ),
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("json", "text"), default="json", help="output format"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mukai", help="Mukai pairing and square", parents=[common])
    p.add_argument("--d", type=int, default=1, help="K3 degree parameter (C^2 = 2d)")
    p.add_argument("--x", required=True, help="Mukai vector r,a,b")
    p.add_argument("--y", help="optional second Mukai vector r,a,b")
    p.set_defaults(fn=_cmd_mukai)

    p = sub.add_parser("moduli", parents=[common], help="moduli-space metadata for m*v0")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--v0", required=True, help="Mukai vector r,a,b")
    p.add_argument("--d", type=int, default=1)
    p.set_defaults(fn=_cmd_moduli)

    p = sub.add_parser("cones", parents=[common], help="nef/movable chamber decomposition")
    p.add_argument("--v0", required=True, help="Mukai vector r,a,b")
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--bound", type=int, default=None, help="enumeration box bound")
    p.add_argument(
        "--relabel",
        action="store_true",
        help="use intermediate Jacobian labels L, H0, H, Theta",
    )
    p.set_defaults(fn=_cmd_cones)

    p = sub.add_parser("fujiki-table", parents=[common], help="all top intersection numbers")
    p.add_argument("--preset", choices=("og10-L-theta",))
    p.add_argument("--gram", help="explicit gram matrix 'a,b;b,c'")
    p.add_argument("--n", type=int, default=5, help="half the manifold dimension")
    p.add_argument("--c", default="945", help="Fujiki constant (exact rational)")
    p.set_defaults(fn=_cmd_fujiki_table)

    p = sub.add_parser("fujiki-solve", parents=[common], help="solve for unknown gram entries")
    p.add_argument("--preset", choices=("og10-L-theta", "og10-theta-sq"))
    p.add_argument("--gram", help="gram template with unknown names, e.g. '0,p;p,u'")
    p.add_argument(
        "--constraint",
        action="append",
        default=[],
        help="constraint e0,e1,...=value (repeatable)",
    )
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--c", default="945")
    p.set_defaults(fn=_cmd_fujiki_solve)

    p = sub.add_parser("mw-rank", parents=[common], help="Mordell-Weil rank arithmetic")
    p.add_argument("--h22", type=int, help="rank of H^{2,2}(X, Q) of the cubic fourfold")
    p.add_argument("--ns-rank", type=int, help="Picard rank of the total space")
    p.add_argument("--boundary", type=int, default=0, help="boundary divisor count")
    p.add_argument("--no-section", action="store_true")
    p.set_defaults(fn=_cmd_mw_rank)

    p = sub.add_parser("reproduce-paper", parents=[common], help="run the golden regression suite")
    p.add_argument(
        "--perturb",
        help="perturb Mukai Gram entry i,j by +1 (mutation sanity check)",
    )
    p.set_defaults(fn=_cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.fn(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except UnsupportedInputError as exc:
        print(f"unsupported input: {exc}", file=sys.stderr)
        return 3
    except (InconsistencyError, ResourceError) as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 4
    if isinstance(result, int):
        return result
    print(_render(result, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
