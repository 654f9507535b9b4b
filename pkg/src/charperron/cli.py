"""Command-line front end.

Exit codes: 0 success or member, 1 semantic negative (not a member, failed
check), 2 input error, 3 numerical failure, 4 unsupported request.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import library
from ._config import DEFAULT_SEED, set_tolerance
from .char_table import CharacterTable, burnside_table, dephased_f4_theta, dft_table, walsh_table
from .errors import InputError, NumericalError, UnsupportedDimensionError
from .extremal import conjecture_probe
from .geometry import emit_plot_data, spectratope_volume
from .groups import build_cyclic, build_direct_product, group_from_spec, load_group_file, split_generators
from .perron import format_inequality, parse_spectrum, reduced_inequalities, spectracone_membership
from .verify import CATEGORIES, run_checks

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_NUMERIC, EXIT_UNSUPPORTED = 0, 1, 2, 3, 4


class _Unsupported(Exception):
    pass


def _add_source(p: argparse.ArgumentParser):
    g = p.add_argument_group("group or matrix source (exactly one)")
    g.add_argument("--cyclic", type=int, action="append", metavar="N",
                   help="cyclic factor; repeat for direct products")
    g.add_argument("--generators", metavar="PERMS", help='e.g. "(1 2),(1 2 3)"')
    g.add_argument("--dft", type=int, metavar="N", help="DFT matrix of order N")
    g.add_argument("--walsh", type=int, metavar="M", help="Walsh matrix of order M")
    g.add_argument("--f4theta", type=float, metavar="THETA", help="dephased 4x4 Hadamard family")
    g.add_argument("--builtin", metavar="NAME", help="built-in group, e.g. D8 or Sym(4)")
    g.add_argument("--file", metavar="PATH", help="group definition file (YAML or JSON)")


def _source(args):
    """Return a CharacterTable, or a plain matrix for ``--f4theta``."""
    chosen = [k for k in ("cyclic", "generators", "dft", "walsh", "f4theta", "builtin", "file")
              if getattr(args, k) is not None]
    if len(chosen) != 1:
        raise InputError(f"give exactly one group source, got {chosen or 'none'}")
    kind = chosen[0]
    if kind == "dft":
        return dft_table(args.dft)
    if kind == "walsh":
        return walsh_table(args.walsh)
    if kind == "f4theta":
        return dephased_f4_theta(args.f4theta)
    if kind == "cyclic":
        G = build_cyclic(args.cyclic[0])
        for n in args.cyclic[1:]:
            G = build_direct_product(G, build_cyclic(n))
    elif kind == "generators":
        G = group_from_spec({"generators": split_generators(args.generators)})
    elif kind == "builtin":
        try:
            G = library.builtin_group(args.builtin)
        except KeyError as exc:
            raise InputError(str(exc)) from None
    else:
        G = load_group_file(args.file)
    return burnside_table(G, seed=args.seed)


def _need_table(obj, what: str) -> CharacterTable:
    if not isinstance(obj, CharacterTable):
        raise _Unsupported(f"{what} needs a character table, not a general matrix")
    return obj


def cmd_chartab(args) -> int:
    print(_need_table(_source(args), "chartab"))
    return EXIT_OK


def cmd_cone(args) -> int:
    src = _source(args)
    if args.x is not None:
        x = parse_spectrum(args.x)
        if isinstance(src, CharacterTable):
            verdict = reduced_inequalities(src).contains(x)
        else:
            verdict = spectracone_membership(src, x)
        print(verdict)
        return EXIT_OK if verdict.member else EXIT_NEGATIVE
    Q = _need_table(src, "listing inequalities")
    for row in reduced_inequalities(Q).facet_coeffs:
        print(format_inequality(row))
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    first = None
    for res in run_checks(args.only, tol=args.tolerance, seed=args.seed):
        print(res)
        if not res.passed and first is None:
            first = res
    if first is not None:
        print(f"first failure: {first.name}")
        return EXIT_NEGATIVE
    print("all checks passed")
    return EXIT_OK


def cmd_volume(args) -> int:
    print(spectratope_volume(_need_table(_source(args), "volume")))
    return EXIT_OK


def cmd_plot(args) -> int:
    Q = _need_table(_source(args), "plot")
    path = emit_plot_data(Q, args.output)
    print(f"wrote {path}")
    return EXIT_OK


def cmd_probe(args) -> int:
    src = _source(args)
    print(conjecture_probe(src.entries if isinstance(src, CharacterTable) else np.asarray(src)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="charperron", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance", type=float, help="global comparison tolerance (default 1e-9)")
    common.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED,
                        help="seed for randomized internals (default 0x5EED)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chartab", parents=[common], help="print a character table")
    _add_source(p)
    p.set_defaults(func=cmd_chartab)

    p = sub.add_parser("cone", parents=[common], help="reduced inequalities or a membership verdict")
    _add_source(p)
    p.add_argument("--x", help="spectrum vector, e.g. 1,-0.5+0.2i,0 (use --x=-1,... for a leading minus)")
    p.set_defaults(func=cmd_cone)

    p = sub.add_parser("verify-paper", parents=[common], help="run the golden checks")
    p.add_argument("--only", action="append", choices=CATEGORIES, help="restrict to a category (repeatable)")
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("volume", parents=[common], help="projected spectratope volume")
    _add_source(p)
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("plot", parents=[common], help="write plot data for a 3x3 or 4x4 real table")
    _add_source(p)
    p.add_argument("-o", "--output", required=True, help="output path")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("probe", parents=[common], help="gather evidence for the abelian conjecture")
    _add_source(p)
    p.set_defaults(func=cmd_probe)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.tolerance is not None:
            set_tolerance(args.tolerance)
        return args.func(args)
    except (_Unsupported, UnsupportedDimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (InputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
