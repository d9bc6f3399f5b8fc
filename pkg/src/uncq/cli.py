"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 unphysical state. Results go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import csv
import math
import sys

from . import bounds, verify
from .entropy import binary_entropy, cond_entropy_AB
from .errors import EmptySearchSpace, IncompatiblePair, NotDensity, SpecParseError, StateError
from .measure import EPS_EXCL, BlochDirection, MeasurementPair, Z, complementarity, \
    discord_probability, parse_direction
from .optimize import DEFAULT_GRID
from .states import parse_state

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_UNPHYSICAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def fmt(x) -> str:
    """10 significant digits, no negative zero."""
    if isinstance(x, str):
        return x
    return f"{float(x) + 0.0:.10g}"


def fmt_dir(n: BlochDirection) -> str:
    return f"{fmt(n.theta)},{fmt(n.phi)}"


def emit(rows: list[tuple[str, object]], form: str, out) -> None:
    if form == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow([k for k, _ in rows])
        writer.writerow([fmt(v) for _, v in rows])
    else:
        width = max(len(k) for k, _ in rows)
        for k, v in rows:
            out.write(f"{k.ljust(width)}  {fmt(v)}\n")


def parse_grid(text: str) -> tuple[int, int]:
    a, sep, b = text.lower().partition("x")
    if not sep or not a.isdigit() or not b.isdigit():
        raise SpecParseError("grid must be <N>x<M>", text)
    g = (int(a), int(b))
    if g[0] < 2 or g[1] < 1:
        raise SpecParseError("grid needs N >= 2 and M >= 1", text)
    return g


def _direction_arg(text: str) -> BlochDirection:
    try:
        return parse_direction(text)
    except SpecParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _grid_arg(text: str) -> tuple[int, int]:
    try:
        return parse_grid(text)
    except SpecParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uncq",
        description="Entropic uncertainty bounds for two-qubit states with quantum memory.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="<command>")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--eps", type=float, default=EPS_EXCL,
                        help="exclusion radius around +-R in radians (default 1e-6)")
    common.add_argument("--grid", type=_grid_arg, default=DEFAULT_GRID,
                        help="optimizer grid <N_theta>x<N_phi> (default 121x240)")
    common.add_argument("--format", choices=("table", "csv"), default=None)

    def with_state(p):
        p.add_argument("--state", required=True, help="state spec, e.g. mmm:c1=0.5,c2=-0.2,c3=-0.3")
        p.add_argument("--r", type=_direction_arg, default=Z, help="R direction (default z)")
        return p

    p = with_state(sub.add_parser("bound", parents=[common], help="both sides of the Fano-form bound"))
    p.add_argument("--s", type=_direction_arg, required=True)

    p = with_state(sub.add_parser("fg", parents=[common], help="fine-grained lower bound"))
    p.add_argument("--joint", action="store_true", help="optimise R as well as S")

    p = with_state(sub.add_parser("sweep", parents=[common], help="CSV sweep over theta_S"))
    p.add_argument("--from", dest="start", type=float, default=0.0)
    p.add_argument("--to", dest="stop", type=float, default=math.pi)
    p.add_argument("--steps", type=int, default=181, help="number of grid points, endpoints included")
    p.add_argument("--phi", type=float, default=0.0)

    p = with_state(sub.add_parser("game", parents=[common], help="game winning probability"))
    p.add_argument("--optimize", action="store_true")
    p.add_argument("--winning", choices=bounds.WINNING, default="chsh")
    p.add_argument("--alice", type=_direction_arg, action="append", default=None)
    p.add_argument("--bob", type=_direction_arg, action="append", default=None)

    p = with_state(sub.add_parser("keyrate", parents=[common], help="key-rate lower bounds"))
    p.add_argument("--s", type=_direction_arg, required=True)

    p = sub.add_parser("verify", parents=[common], help="run the randomized invariant suites")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)
    return parser


def cmd_bound(args, out) -> int:
    rho = parse_state(args.state)
    pair = MeasurementPair(args.r, args.s).check(args.eps)
    h_r = binary_entropy(discord_probability(rho, pair.r))
    h_s = binary_entropy(discord_probability(rho, pair.s))
    lhs = h_r + h_s
    rhs = bounds.berta_rhs(rho, pair)
    emit([
        ("state", rho.label), ("r", fmt_dir(pair.r)), ("s", fmt_dir(pair.s)),
        ("H_pd_R", h_r), ("H_pd_S", h_s), ("lhs", lhs),
        ("c", complementarity(pair.r, pair.s)), ("S_A_given_B", cond_entropy_AB(rho)),
        ("berta_rhs", rhs), ("slack", lhs - rhs),
    ], args.format or "table", out)
    return EXIT_OK


def cmd_fg(args, out) -> int:
    rho = parse_state(args.state)
    if args.joint:
        rep = bounds.joint_fine_grained(rho, args.eps, args.grid)
    else:
        rep = bounds.fine_grained_bound(rho, args.r, args.eps, args.grid)
    emit([
        ("state", rho.label), ("mode", "joint" if args.joint else "fixed-r"),
        ("r", fmt_dir(rep.r)), ("p_d_r", rep.p_d_r), ("h_r", rep.h_r),
        ("argmin_s", fmt_dir(rep.argmin_s)), ("p_extremal", rep.p_extremal),
        ("h_s_min", rep.h_s_min), ("fg_bound", rep.fg_bound),
        ("berta_rhs_at_argmin", rep.berta_rhs_at_argmin),
    ], args.format or "table", out)
    return EXIT_OK


SWEEP_COLUMNS = ("theta_s", "phi_s", "p_d_s", "h_s", "lhs_pair", "berta_rhs", "fg_bound")


def cmd_sweep(args, out) -> int:
    if args.steps < 2:
        raise UsageError(f"--steps must be >= 2, got {args.steps}")
    if not (0.0 <= args.start <= args.stop <= math.pi):
        raise UsageError("need 0 <= --from <= --to <= pi")
    rho = parse_state(args.state)
    fg = bounds.fine_grained_bound(rho, args.r, args.eps, args.grid).fg_bound
    h_r = binary_entropy(discord_probability(rho, args.r))
    rows = []
    for k in range(args.steps):
        theta = args.start + (args.stop - args.start) * k / (args.steps - 1)
        s = BlochDirection(theta, args.phi)
        p_s = discord_probability(rho, s)
        h_s = binary_entropy(p_s)
        rows.append((s.theta, s.phi, p_s, h_s, h_r + h_s,
                     bounds.berta_rhs(rho, MeasurementPair(args.r, s)), fg))
    if (args.format or "csv") == "csv":
        out.write(",".join(SWEEP_COLUMNS) + "\n")
        for row in rows:
            out.write(",".join(fmt(v) for v in row) + "\n")
    else:
        cells = [SWEEP_COLUMNS] + [tuple(fmt(v) for v in row) for row in rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(SWEEP_COLUMNS))]
        for r in cells:
            out.write("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n")
    return EXIT_OK


def cmd_game(args, out) -> int:
    rho = parse_state(args.state)
    if args.optimize:
        spec, value = bounds.game_max(rho, args.winning)
    else:
        if not args.alice or not args.bob:
            raise UsageError("game needs --optimize or at least one --alice and one --bob setting")
        spec = bounds.GameSpec(tuple(args.alice), tuple(args.bob), winning=args.winning)
        value = bounds.game_value(rho, spec)
    rows = [("state", rho.label), ("winning", spec.winning)]
    rows += [(f"alice_{i}", fmt_dir(n)) for i, n in enumerate(spec.alice_settings)]
    rows += [(f"bob_{i}", fmt_dir(n)) for i, n in enumerate(spec.bob_settings)]
    rows.append(("value", value))
    emit(rows, args.format or "table", out)
    return EXIT_OK


def cmd_keyrate(args, out) -> int:
    rho = parse_state(args.state)
    pair = MeasurementPair(args.r, args.s).check(args.eps)
    emit([
        ("state", rho.label), ("r", fmt_dir(pair.r)), ("s", fmt_dir(pair.s)),
        ("log2_inv_c", -math.log2(complementarity(pair.r, pair.s))),
        ("key_rate_berta", bounds.key_rate_berta(rho, pair)),
        ("key_rate_fine_grained", bounds.key_rate_fine_grained(rho, pair, args.eps, args.grid)),
    ], args.format or "table", out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    if args.seed < 0:
        raise UsageError("--seed must be non-negative")
    results = verify.run(args.trials, args.seed, args.tol, args.eps)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.failed == 0 else "FAIL"
        out.write(f"{r.name.ljust(width)}  {status}  passed={r.passed} failed={r.failed}\n")
        for f in r.failures:
            out.write(f"    {f}\n")
    bad = sum(r.failed for r in results)
    out.write(f"total failures: {bad}\n")
    return EXIT_OK if bad == 0 else EXIT_VERIFY


COMMANDS = {
    "bound": cmd_bound, "fg": cmd_fg, "sweep": cmd_sweep,
    "game": cmd_game, "keyrate": cmd_keyrate, "verify": cmd_verify,
}


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except (SpecParseError, UsageError, IncompatiblePair, EmptySearchSpace) as exc:
        print(f"uncq {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (StateError, NotDensity) as exc:
        print(f"uncq {args.command}: unphysical state: {exc}", file=sys.stderr)
        return EXIT_UNPHYSICAL


if __name__ == "__main__":
    sys.exit(main())
