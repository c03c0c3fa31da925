"""Command line front end: a thin client over the operation layer.

Exit codes: 0 success, 1 domain error (parse failures, empty masts,
budget overruns), 2 usage error.
"""

import argparse
import json
import os
import sys as _sys

from . import ops
from .enumeration import DEFAULT_BUDGET
from .errors import UnisvarError

COMMANDS = (
    "masts",
    "detours",
    "equations",
    "enumerate",
    "fibres",
    "module",
    "psi",
    "pluecker",
    "guni-count",
    "degen",
)

NEEDS_MAST = {"detours", "equations", "enumerate", "fibres", "module", "psi", "pluecker"}
NEEDS_POINT = {"module", "psi", "pluecker"}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiver", required=True, metavar="FILE",
                        help="quiver-with-relations input file")
    common.add_argument("--series", metavar="V0,V1,...",
                        help="composition series as a vertex list")
    common.add_argument("--mast", metavar="PATH",
                        help="mast named by its arrow list, e.g. b*a")
    common.add_argument("--point", metavar="ASSIGN",
                        help="variety point, e.g. k[1;b;0]=1,k[2;c;1]=1/2")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--budget", type=int, default=None,
                        help=f"enumeration budget (default {DEFAULT_BUDGET}, "
                             "env UNISVAR_BUDGET)")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(
        prog="unisvar",
        description="Uniserial variety computations for bounden quiver algebras",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub = subparsers.add_parser(name, parents=[common])
        if name == "degen":
            sub.add_argument("--left", required=True, metavar="MODULE.JSON")
            sub.add_argument("--right", required=True, metavar="MODULE.JSON")
    return parser


def resolve_budget(args):
    if args.budget is not None:
        return args.budget
    env = os.environ.get("UNISVAR_BUDGET")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UnisvarError(f"UNISVAR_BUDGET must be an integer, got {env!r}")
    return DEFAULT_BUDGET


def run_command(args, parser):
    if args.command != "degen" and not args.series:
        parser.error(f"{args.command} requires --series")
    if args.command in NEEDS_MAST and not args.mast:
        parser.error(f"{args.command} requires --mast")
    workspace = ops.Workspace(_read(args.quiver))
    budget = resolve_budget(args)
    if args.command == "masts":
        return ops.op_masts(workspace, args.series)
    if args.command == "detours":
        return ops.op_detours(workspace, args.series, args.mast)
    if args.command == "equations":
        return ops.op_equations(workspace, args.series, args.mast)
    if args.command == "enumerate":
        return ops.op_enumerate(
            workspace, args.series, args.mast, budget=budget, jobs=args.jobs
        )
    if args.command == "fibres":
        return ops.op_fibres(
            workspace, args.series, args.mast,
            budget=budget, jobs=args.jobs, seed=args.seed,
        )
    if args.command == "module":
        return ops.op_module(workspace, args.series, args.mast, args.point)
    if args.command == "psi":
        return ops.op_psi(workspace, args.series, args.mast, args.point)
    if args.command == "pluecker":
        return ops.op_pluecker(workspace, args.series, args.mast, args.point)
    if args.command == "guni-count":
        return ops.op_guni_count(
            workspace, args.series, budget=budget, jobs=args.jobs
        )
    if args.command == "degen":
        left = json.loads(_read(args.left))
        right = json.loads(_read(args.right))
        return ops.op_degen(workspace, left, right, seed=args.seed)
    raise AssertionError(args.command)


def _read(path):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise UnisvarError(f"cannot read {path}: {exc.strerror}")


def render_text(command, payload):
    lines = []
    if command == "masts":
        lines.extend(payload["masts"])
    elif command == "detours":
        for detour in payload["detours"]:
            indices = ",".join(str(i) for i in detour["indices"])
            lines.append(f"{detour['arrow']} @ {detour['position']} -> {indices}")
    elif command == "equations":
        lines.append("variables: " + (", ".join(payload["variables"]) or "none"))
        if not payload["polynomials"]:
            lines.append("no equations")
        for poly in payload["polynomials"]:
            lines.append(_poly_text(payload["variables"], poly))
    elif command == "enumerate":
        lines.append(f"{len(payload['points'])} points")
        for point in payload["points"]:
            lines.append(_point_text(point))
    elif command == "fibres":
        lines.append(f"{len(payload['fibres'])} fibres")
        for slot, fibre in enumerate(payload["fibres"]):
            body = "; ".join(_point_text(p) for p in fibre["points"])
            lines.append(f"fibre {slot}: {body}")
    elif command == "module":
        for name in sorted(payload["matrices"]):
            lines.append(name + ":")
            for row in payload["matrices"][name]:
                lines.append("  [" + " ".join(row) + "]")
    elif command == "psi":
        lines.append(f"dimension {payload['dimension']}")
        lines.append("basis: " + " ".join(payload["ambient_basis"]))
        for row in payload["rows"]:
            lines.append("[" + " ".join(row) + "]")
    elif command == "pluecker":
        lines.append("on chart" if payload["on_chart"] else "off chart")
        for coord in payload["coordinates"]:
            subset = ",".join(str(i) for i in coord["subset"])
            lines.append(f"{{{subset}}}: {coord['value']}")
        lines.append("recovered: " + _point_text(payload["recovered_point"]))
    elif command == "guni-count":
        lines.append(str(payload["total"]))
        for chart in payload["charts"]:
            lines.append(f"chart {chart['mast']}: {chart['size']}")
        for overlap in payload["overlaps"]:
            pair = " ".join(overlap["masts"])
            lines.append(f"overlap {pair}: {overlap['size']}")
    elif command == "degen":
        lines.append("no degeneration (certificate verified)")
        lines.extend(_certificate_text(payload["certificate"], 0))
    if not lines:
        return ""
    return "\n".join(lines) + "\n"


def _poly_text(variables, monomials):
    parts = []
    for mono in monomials:
        factors = [
            name if exp == 1 else f"{name}^{exp}"
            for name, exp in zip(variables, mono["exponents"])
            if exp
        ]
        coeff = mono["coefficient"]
        if not factors:
            parts.append(coeff)
        elif coeff == "1":
            parts.append("*".join(factors))
        else:
            parts.append("*".join([coeff] + factors))
    return " + ".join(parts) + " = 0"


def _point_text(point):
    if not point:
        return "{}"
    return ",".join(f"{name}={value}" for name, value in point.items())


def _certificate_text(node, depth):
    pad = "  " * depth
    if node["kind"] == "leaf":
        side = "Hom(X,-)" if node["inequality"] == "hom_into" else "Hom(-,X)"
        return [
            pad + f"leaf: {side} gives {node['dim_hom_left']} > "
            f"{node['dim_hom_right']}"
        ]
    lines = [
        pad + f"node: common socle at {node['socle_vertex']}, "
        f"recurse on quotients ({node['justification']})"
    ]
    lines.extend(_certificate_text(node["child"], depth + 1))
    return lines


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload = run_command(args, parser)
    except UnisvarError as exc:
        if args.format == "json":
            print(json.dumps(exc.payload(), indent=2), file=_sys.stderr)
        else:
            print(f"error[{exc.kind}]: {exc}", file=_sys.stderr)
        return 1
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        _sys.stdout.write(render_text(args.command, payload))
    return 0


if __name__ == "__main__":
    _sys.exit(main())
