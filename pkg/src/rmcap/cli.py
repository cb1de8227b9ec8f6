"""Command-line front end: ``rmcap <group> <command> [options]``.

Exit status: 0 success, 1 usage error, 2 parameter error, 3 resource guard.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from collections.abc import Sequence

from . import bounds, capability, montecarlo, rmcode
from .errors import DomainError, ParameterError, ResourceError

EXIT_USAGE = 1
EXIT_PARAM = 2
EXIT_RESOURCE = 3

MC_FIELDS = ["n", "r", "c", "t", "trials", "successes", "fraction", "ci_low", "ci_high", "seed"]


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(value: object) -> str:
    """Locale-free rendering: floats with 12 significant digits."""
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def _json_number(value: float | None) -> float | None:
    if value is None or not math.isfinite(value):
        return None
    return float(format(value, ".12g"))


def to_csv(fields: Sequence[str], rows: Sequence[dict[str, object]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for row in rows:
        writer.writerow([fmt(row[f]) for f in fields])
    return buf.getvalue()


def to_json(payload: object) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _code(args: argparse.Namespace) -> rmcode.RMCode:
    return rmcode.build_rm(args.n, args.r)


def cmd_code_info(args: argparse.Namespace) -> str:
    code = _code(args)
    info = rmcode.code_info(code)
    if args.format == "csv":
        return to_csv(list(info), [info])
    return to_json(info)


def cmd_code_weights(args: argparse.Namespace) -> str:
    code = _code(args)
    dist = rmcode.weight_distribution(code)
    if args.format == "json":
        return to_json(
            {
                **rmcode.code_info(code),
                "weights": {str(w): c for w, c in dist.items()},
                "far_codewords": rmcode.count_far_codewords(code, dist),
            }
        )
    return to_csv(["weight", "count"], [{"weight": w, "count": c} for w, c in dist.items()])


def cmd_capability_exact(args: argparse.Namespace) -> str:
    profile = capability.exact_capability_profile(_code(args))
    if args.format == "json":
        summary = profile.summary()
        summary["monotone"] = capability.check_monotonicity(profile).passed
        return to_json(summary)
    return to_csv(["t", "total_words", "correctable", "epsilon_num", "epsilon_den"], profile.rows())


def _mc_output(rows: list[montecarlo.McEstimate], fmt_name: str) -> str:
    if fmt_name == "json":
        return to_json(
            [
                {k: (_json_number(v) if isinstance(v, float) else v) for k, v in e.row().items()}
                for e in rows
            ]
        )
    return to_csv(MC_FIELDS, [e.row() for e in rows])


def _c_values(args: argparse.Namespace) -> list[float] | None:
    if args.c_range is not None:
        lo, hi, step = args.c_range
        if not (0 < lo <= hi and step > 0):
            raise ParameterError("c-range needs 0 < min <= max and step > 0")
        count = int(math.floor((hi - lo) / step + 1e-9)) + 1
        return [round(lo + i * step, 12) for i in range(count)]
    if args.c is not None:
        return [args.c]
    return None


def cmd_capability_mc(args: argparse.Namespace) -> str:
    given = [args.c is not None, args.c_range is not None, args.t is not None]
    if sum(given) != 1:
        raise ParameterError("give exactly one of --c, --c-range, --t")
    code = _code(args)
    if args.t is not None:
        rows = [montecarlo.estimate_correctable_fraction(code, args.t, args.trials, args.seed, args.threads)]
    else:
        rows = montecarlo.threshold_sweep(code, _c_values(args), args.trials, args.seed, args.threads)
    return _mc_output(rows, args.format)


def cmd_capability_sweep(args: argparse.Namespace) -> str:
    if (args.c is None) == (args.c_range is None):
        raise ParameterError("give exactly one of --c, --c-range")
    code = _code(args)
    rows = montecarlo.threshold_sweep(code, _c_values(args), args.trials, args.seed, args.threads)
    return _mc_output(rows, args.format)


def bounds_payload(c: float, n: int, r: int, alpha: float | None, k_dim: int | None = None) -> dict:
    tp = bounds.threshold(c, n, r, k_dim)
    N = 1 << n
    exact = bounds.ball_volume_log2(N, tp.t_c)
    asym = bounds.ball_volume_asymptotic_log2(c, n, r)
    e_left = e_right = None
    if r >= 1:
        if alpha is None:
            alpha = 0.5 * bounds.alpha_limit(c, r)
        e_left, e_right = bounds.certificate_exponents(c, n, r, alpha)
    return {
        "c": c,
        "n": n,
        "r": r,
        "lambda": _json_number(tp.lam),
        "delta": _json_number(tp.delta),
        "t_c": tp.t_c,
        "log2_vol_exact": _json_number(exact),
        "log2_vol_asymptotic": _json_number(asym),
        "e_left": _json_number(e_left),
        "e_right": _json_number(e_right),
    }


def cmd_bounds_eval(args: argparse.Namespace) -> str:
    if args.c is None:
        raise ParameterError("--c is required")
    payload = bounds_payload(args.c, args.n, args.r, args.alpha, args.k_dim)
    if args.format == "csv":
        return to_csv(list(payload), [payload])
    return to_json(payload)


def cmd_bounds_certificate(args: argparse.Namespace) -> str:
    if args.c is None:
        raise ParameterError("--c is required")
    alpha = args.alpha if args.alpha is not None else 0.5 * bounds.alpha_limit(args.c, args.r)
    cert = bounds.theorem1_certificate(args.c, args.n, args.r, alpha)
    payload = {
        "c": args.c,
        "n": args.n,
        "r": args.r,
        "alpha": _json_number(alpha),
        "e_left": _json_number(cert.e_left),
        "e_right": _json_number(cert.e_right),
        "n_min": cert.n_min,
    }
    if args.format == "csv":
        return to_csv(list(payload), [payload])
    return to_json(payload)


def cmd_bounds_volume(args: argparse.Namespace) -> str:
    if args.N is not None:
        N, t = args.N, args.t
        if t is None:
            raise ParameterError("--t is required with --N")
    else:
        if args.n is None or args.r is None or args.c is None:
            raise ParameterError("give --N and --t, or --n, --r and --c")
        N, t = 1 << args.n, bounds.threshold(args.c, args.n, args.r).t_c
    payload = {"N": N, "t": t, "log2_volume": _json_number(bounds.ball_volume_log2(N, t))}
    if N <= bounds.EXACT_VOLUME_N:
        payload["volume"] = str(bounds.ball_volume_exact(N, t))
    if args.n is not None and args.r is not None and args.c is not None:
        payload["log2_asymptotic"] = _json_number(bounds.ball_volume_asymptotic_log2(args.c, args.n, args.r))
    if args.format == "csv":
        return to_csv(list(payload), [payload])
    return to_json(payload)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rmcap", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def add(group: argparse._SubParsersAction, name: str, func, default_format: str, code=True):
        p = group.add_parser(name)
        if code:
            p.add_argument("--n", type=int, required=True)
            p.add_argument("--r", type=int, required=True)
        p.add_argument("--format", choices=["csv", "json"], default=default_format)
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.set_defaults(func=func)
        return p

    def add_mc_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--c", type=float)
        p.add_argument("--c-range", type=float, nargs=3, metavar=("MIN", "MAX", "STEP"))
        p.add_argument("--trials", type=int, default=1000)
        p.add_argument("--seed", type=lambda s: int(s, 0), default=montecarlo.DEFAULT_SEED)
        p.add_argument("--threads", type=int, default=1)

    code_p = groups.add_parser("code")
    code_cmds = code_p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    add(code_cmds, "info", cmd_code_info, "json")
    add(code_cmds, "weights", cmd_code_weights, "csv")

    cap_p = groups.add_parser("capability")
    cap_cmds = cap_p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    add(cap_cmds, "exact", cmd_capability_exact, "csv")
    mc = add(cap_cmds, "mc", cmd_capability_mc, "csv")
    add_mc_flags(mc)
    mc.add_argument("--t", type=int)
    add_mc_flags(add(cap_cmds, "sweep", cmd_capability_sweep, "csv"))

    b_p = groups.add_parser("bounds")
    b_cmds = b_p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, func in (("eval", cmd_bounds_eval), ("certificate", cmd_bounds_certificate)):
        p = add(b_cmds, name, func, "json")
        p.add_argument("--c", type=float)
        p.add_argument("--alpha", type=float)
        if name == "eval":
            p.add_argument("--k-dim", type=int, help="replace C(n, r) in the threshold")
    vol = add(b_cmds, "volume", cmd_bounds_volume, "json", code=False)
    vol.add_argument("--N", type=int)
    vol.add_argument("--t", type=int)
    vol.add_argument("--n", type=int)
    vol.add_argument("--r", type=int)
    vol.add_argument("--c", type=float)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = args.func(args)
    except (ParameterError, DomainError) as exc:
        print(f"rmcap: parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except ResourceError as exc:
        print(f"rmcap: resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    _emit(text, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
