"""``nregular`` command line: run check suites, explain check ids, list ids.

Exit status: 0 when every selected check passes, 1 when any fails,
2 for usage errors (bad suite names, n outside 1..4, l_max above 5/2
without --allow-large, unknown check ids).
"""

from __future__ import annotations

import argparse
import json
import sys

from .suites import SUITES, ConfigError, SuiteConfig, check_ids, explain, parse_half, run


def _int_list(text: str) -> tuple[int, ...]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if "-" in part:
                lo, hi = part.split("-", 1)
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise ConfigError(f"bad n range {text!r}; use e.g. 1,2 or 1-3") from None
    return tuple(out)


def _suite_list(text: str) -> tuple[str, ...]:
    if text.strip() == "all":
        return SUITES
    return tuple(s.strip() for s in text.split(",") if s.strip())


def _config(args) -> SuiteConfig:
    return SuiteConfig(
        suites=_suite_list(args.suites),
        n_range=_int_list(args.n),
        l2_max=parse_half(args.lmax),
        seed=args.seed,
        allow_large=args.allow_large,
    )


def _add_config_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--suites", default="all", help=f"comma-separated subset of: {', '.join(SUITES)} (default: all)")
    p.add_argument("--n", default="1,2,3", help="tensor ranks, e.g. 1,2 or 1-3 (allowed 1..4; default 1,2,3)")
    p.add_argument("--lmax", default="3/2", help="largest level l as a half-integer (default 3/2, capped at 5/2)")
    p.add_argument("--seed", type=int, default=0, help="seed for choosing spanning-set test vectors")
    p.add_argument("--allow-large", action="store_true", help="lift the l_max <= 5/2 cost guard")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nregular", description="Exact checks for n-regular functions on quaternions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run check suites and report")
    _add_config_args(p_run)
    p_run.add_argument("--format", choices=("text", "json"), default="text")
    p_run.add_argument("--out", default=None, help="write the report here instead of stdout")
    p_run.add_argument("--timing", action="store_true", help="include wall times in JSON output")

    p_list = sub.add_parser("list", help="print the check ids a configuration would run")
    _add_config_args(p_list)

    p_exp = sub.add_parser("explain", help="describe a check id")
    p_exp.add_argument("check_id")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "explain":
            print(explain(args.check_id))
            return 0
        cfg = _config(args)
        if args.command == "list":
            print("\n".join(check_ids(cfg)))
            return 0
        report = run(cfg)
    except (ConfigError, ValueError) as exc:
        print(f"nregular: error: {exc}", file=sys.stderr)
        return 2

    if args.format == "json":
        text = json.dumps(report.to_dict(timing=args.timing), indent=2, sort_keys=True) + "\n"
    else:
        text = report.to_text() + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        t = report.totals()
        print(f"{t['passed']}/{t['checks']} checks passed; report written to {args.out}")
    else:
        sys.stdout.write(text)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
