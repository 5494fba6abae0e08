"""Command-line interface.

Subcommands: factor, compose, normalize, pushout, lift, check, export-dot.
Exit codes: 0 success, 2 input error, 3 safety-cap exceeded, 4 law or
lifting failure.  All output is deterministic for fixed inputs and seed.
"""

from __future__ import annotations

import argparse
import json
import sys

from .delta import (
    DeltaError,
    EMPTY,
    SimplicialMap,
    boundary_complex,
    coproduct,
    identity_map,
    inclusion_map,
    pushout,
    standard_simplex,
)
from .cellcx import compose_complexes, normalize
from .soa import CapExceededError, check_awfs_laws, free_complex, Factorizer
from .lifting import LiftError, solve_lifting
from .gen import rand_nat_square, rng_from_seed
from . import jsonio

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_LAW = 4

_PALETTE = ("black", "firebrick", "royalblue", "forestgreen", "darkorange",
            "purple", "saddlebrown", "deeppink")


def _load(path, loader):
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as err:
        raise _InputError(f"{path}: {err.strerror or err}") from err
    except json.JSONDecodeError as err:
        raise _InputError(
            f"{path}: invalid JSON at line {err.lineno} column "
            f"{err.colno}: {err.msg}") from err
    try:
        return loader(obj)
    except DeltaError as err:
        raise _InputError(f"{path}: {err}") from err


class _InputError(Exception):
    pass


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def builtin_fixtures():
    """The built-in law-check corpus of maps, in a fixed order."""
    pt = standard_simplex(0)
    two, _ = coproduct([pt, pt])
    d1 = standard_simplex(1)
    return [
        ("empty-to-point", SimplicialMap(EMPTY, pt, {})),
        ("boundary-1", inclusion_map(boundary_complex(1), d1)),
        ("fold", SimplicialMap(two, pt, {s: "0" for s in two.id_set})),
        ("boundary-2", inclusion_map(boundary_complex(2),
                                     standard_simplex(2))),
        ("identity-1", identity_map(d1)),
    ]


# -- subcommands ------------------------------------------------------------


def cmd_factor(args):
    f = _load(args.map, jsonio.map_from_json)
    fr = free_complex(f, safety_cap=args.cap)
    counts = "; ".join(
        f"stage {n}: {c} cell" + ("s" if c != 1 else "")
        for n, c in enumerate(fr.stage_counts))
    line = f"{counts}; height {fr.kf.height}" if counts \
        else f"height {fr.kf.height}"
    if args.format == "json":
        print(jsonio.dumps({"stage_counts": fr.stage_counts,
                            "height": fr.kf.height}), end="")
    else:
        print(line)
    if args.out:
        _emit(jsonio.dumps(jsonio.factor_result_to_json(fr)), args.out)
    return EXIT_OK


def cmd_compose(args):
    a = _load(args.first, jsonio.cellcx_from_json)
    b = _load(args.second, jsonio.cellcx_from_json)
    try:
        c = compose_complexes(a, b)
    except DeltaError as err:
        raise _InputError(str(err)) from err
    _emit(jsonio.dumps(jsonio.cellcx_to_json(c)), args.out)
    return EXIT_OK


def cmd_normalize(args):
    base, cells = _load(args.complex, jsonio.cellcx_cells_from_json)
    from .cellcx import assemble
    try:
        c = assemble(base, cells)
    except DeltaError as err:
        raise _InputError(str(err)) from err
    _emit(jsonio.dumps(jsonio.cellcx_to_json(c)), args.out)
    return EXIT_OK


def cmd_pushout(args):
    f = _load(args.first, jsonio.map_from_json)
    g = _load(args.second, jsonio.map_from_json)
    try:
        total, px, py = pushout(f, g)
    except DeltaError as err:
        raise _InputError(str(err)) from err
    payload = {"complex": jsonio.complex_to_json(total),
               "leg_first": jsonio.map_to_json(px),
               "leg_second": jsonio.map_to_json(py)}
    _emit(jsonio.dumps(payload), args.out)
    return EXIT_OK


def cmd_lift(args):
    c = _load(args.complex, jsonio.cellcx_from_json)
    ft = _load(args.table, jsonio.filler_table_from_json)
    u = _load(args.top, jsonio.map_from_json)
    v = _load(args.bottom, jsonio.map_from_json)
    d = solve_lifting(c, ft, (u, v))
    _emit(jsonio.dumps(jsonio.map_to_json(d)), args.out)
    return EXIT_OK


def cmd_check(args):
    fixtures = builtin_fixtures()
    for i, path in enumerate(args.maps):
        fixtures.append((f"input-{i}", _load(path, jsonio.map_from_json)))
    rng = rng_from_seed(args.seed)
    fz = Factorizer(args.cap)
    results = {}
    ok = True
    for name, f in fixtures:
        squares = [rand_nat_square(rng, f) for _ in range(5)]
        rep = check_awfs_laws(f, squares, safety_cap=args.cap,
                              factorizer=fz)
        results[name] = rep
        ok = ok and rep["all_pass"]
    if args.format == "json":
        out = jsonio.dumps(results)
    else:
        lines = []
        for name, rep in results.items():
            for law, passed in rep["laws"].items():
                lines.append(f"{name}: {law}: "
                             f"{'pass' if passed else 'FAIL'}")
        out = "\n".join(lines) + "\n"
    _emit(out, args.out)
    return EXIT_OK if ok else EXIT_LAW


def cmd_export_dot(args):
    c = _load(args.complex, jsonio.cellcx_from_json)
    body = c.body
    stage_ids = [st.id_set for st in c.filtration.stages]

    def stage_of(s):
        for n, ids in enumerate(stage_ids):
            if s in ids:
                return n
        raise AssertionError("simplex outside the top stage")

    def color(n):
        return _PALETTE[n % len(_PALETTE)]

    lines = ["digraph body {"]
    for v in sorted(body.ids(0)):
        lines.append(f'  "{v}" [color="{color(stage_of(v))}"];')
    for e in sorted(body.ids(1)) if body.max_dim >= 1 else []:
        d0, d1 = body.faces_of(e)
        lines.append(f'  "{d1}" -> "{d0}" [label="{e}" '
                     f'color="{color(stage_of(e))}"];')
    lines.append("}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# -- entry point -------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="relcell",
        description="Relative cell complexes: factor, compose, lift, check.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--cap", type=int, default=32,
                       help="safety cap on factorization height (>= 1)")
        p.add_argument("--format", choices=("json", "text"), default="text")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None, help="output file path")

    p = sub.add_parser("factor", help="free factorization of a map")
    p.add_argument("map")
    common(p)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("compose", help="compose two cell complexes")
    p.add_argument("first")
    p.add_argument("second")
    common(p)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("normalize",
                       help="renormalize a stratum sequence to proper form")
    p.add_argument("complex")
    common(p)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("pushout", help="pushout of two maps with one domain")
    p.add_argument("first")
    p.add_argument("second")
    common(p)
    p.set_defaults(func=cmd_pushout)

    p = sub.add_parser("lift",
                       help="solve a lifting square against a filler table")
    p.add_argument("complex")
    p.add_argument("table")
    p.add_argument("top")
    p.add_argument("bottom")
    common(p)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("check", help="run the factorization law suite")
    p.add_argument("maps", nargs="*")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("export-dot",
                       help="emit the body's vertex/edge graph as DOT")
    p.add_argument("complex")
    common(p)
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cap < 1:
        print("error: --cap must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except _InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceededError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_BUDGET
    except LiftError as err:
        payload = {"error": str(err), "square": list(err.square or ())}
        print(json.dumps(payload, sort_keys=True, default=list),
              file=sys.stderr)
        return EXIT_LAW
    except (DeltaError, AssertionError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_LAW


if __name__ == "__main__":
    sys.exit(main())
