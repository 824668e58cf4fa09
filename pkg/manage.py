# manage.py
""" Command-line front end for the extended binomial coefficient toolkit """


import argparse
import sys
from typing import List, Optional

from src.delivery.config import DEFAULT_FORMATS, FORMATS


def handle_eval(args: argparse.Namespace):
    """Dispatcher for `eval`.

    Args:
        args: Parsed command-line arguments.
    """
    from src.delivery.commands import cmd_eval
    return cmd_eval(args.x, args.y)


def handle_table(args: argparse.Namespace):
    """Dispatcher for `table`."""
    from src.delivery.commands import cmd_table
    return cmd_table(args.n_min, args.n_max, args.k_min, args.k_max)


def handle_verify(args: argparse.Namespace):
    """Dispatcher for `verify`."""
    from src.delivery.commands import cmd_verify
    return cmd_verify(
        args.identity,
        window=args.window,
        samples=args.samples,
        seed=args.seed,
        at=args.at,
        delta=args.delta,
        tol=args.tol,
    )


def handle_expand(args: argparse.Namespace):
    """Dispatcher for `expand`."""
    from src.delivery.commands import cmd_expand
    return cmd_expand(args.n, args.x, args.y, tol=args.tol, max_terms=args.max_terms)


def handle_probe(args: argparse.Namespace):
    """Dispatcher for `probe`."""
    from src.delivery.commands import cmd_probe
    return cmd_probe(
        target=args.target,
        direction=args.dir,
        diverge=args.diverge,
        deltas=args.deltas,
        scan=args.scan,
        seed=args.seed,
    )


def _add_global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # Subcommands repeat the global flags with SUPPRESS defaults so that a flag
    # given before the subcommand is not overwritten.
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument('--format', choices=FORMATS, default=default, help='Output format (default depends on the command)')
    parser.add_argument('--seed', type=int, default=default, help='Seed for sampled sweeps and direction scans')
    parser.add_argument('--tol', type=float, default=default, help='Residual tolerance (verify) or relative series tolerance (expand)')


def build_parser() -> argparse.ArgumentParser:
    """Builds the argument parser with all subcommands."""
    parser = argparse.ArgumentParser(
        prog='binom',
        description=(
            "Extended binomial coefficients for all complex arguments.\n"
            "Complex literals are written a+bi; put '--' before a literal that starts with '-' "
            "and is not a plain number (e.g. -1+2i)."
        ),
        formatter_class=argparse.RawTextHelpFormatter
    )
    _add_global_flags(parser, suppress=False)
    parser.add_argument('--log-level', type=str, default=None, help='Logging level (default: BINOMIAL_LOG_LEVEL or WARNING)')
    subparsers = parser.add_subparsers(dest='command', required=True, help='Commands')

    common = argparse.ArgumentParser(add_help=False)
    _add_global_flags(common, suppress=True)

    # --- eval ---
    parser_eval = subparsers.add_parser('eval', parents=[common], help='Evaluate binom(x, y)')
    parser_eval.add_argument('x', type=str, help='Upper argument (decimal or a+bi)')
    parser_eval.add_argument('y', type=str, help='Lower argument (decimal or a+bi)')
    parser_eval.set_defaults(func=handle_eval)

    # --- table ---
    parser_table = subparsers.add_parser('table', parents=[common], help='Emit the exact lattice values over a window')
    for name in ('n_min', 'n_max', 'k_min', 'k_max'):
        parser_table.add_argument(name, type=str)
    parser_table.set_defaults(func=handle_table)

    # --- verify ---
    parser_verify = subparsers.add_parser('verify', parents=[common], help='Check binomial identities')
    # Validated by the command so that an unknown name gets an error record
    parser_verify.add_argument('identity', type=str, help='symmetry, trinomial, absorption, addition, delta, reduction or all')
    parser_verify.add_argument('--window', nargs=2, metavar=('LO', 'HI'), help='Square lattice window (default -16 16)')
    parser_verify.add_argument('--samples', type=int, default=0, help='Number of seeded complex sample points')
    parser_verify.add_argument('--at', nargs='+', metavar='V', help='Check a single point: X Y (or X Y Z for trinomial)')
    parser_verify.add_argument('--delta', type=str, help='Offset for the delta forms (default 1e-6)')
    parser_verify.set_defaults(func=handle_verify)

    # --- expand ---
    parser_expand = subparsers.add_parser('expand', parents=[common], help='Evaluate (x+y)^n with the binomial series')
    parser_expand.add_argument('n', type=str, help='Integer power')
    parser_expand.add_argument('x', type=str)
    parser_expand.add_argument('y', type=str)
    parser_expand.add_argument('--max-terms', type=int, default=None, help='Term cap for the infinite series')
    parser_expand.set_defaults(func=handle_expand)

    # --- probe ---
    parser_probe = subparsers.add_parser('probe', parents=[common], help='Probe limits toward lattice points or the infinite set')
    parser_probe.add_argument('--target', nargs=2, metavar=('N', 'K'), help='Lattice point to approach')
    parser_probe.add_argument('--dir', nargs=2, metavar=('DX', 'DY'), help='Probe direction (normalized); default depends on the target')
    parser_probe.add_argument('--diverge', nargs=2, metavar=('X', 'Y'), help='Negative integer x and non-integer y')
    parser_probe.add_argument('--deltas', nargs='+', metavar='D', help='Strictly decreasing offsets (default 1e-2 ... 1e-7)')
    parser_probe.add_argument('--scan', type=int, metavar='COUNT', help='Probe COUNT seeded random directions toward --target')
    parser_probe.set_defaults(func=handle_probe)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point. Writes the rendered record to stdout and returns the exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)

    from src.delivery.renderer import allow_long_integers, render_record
    from src.management.observability import setup_logging

    setup_logging(args.log_level)
    allow_long_integers()
    record = args.func(args)
    fmt = args.format or DEFAULT_FORMATS[args.command]
    sys.stdout.write(render_record(record, fmt))
    sys.stdout.flush()
    return record.exit_code


if __name__ == '__main__':
    sys.exit(main())
