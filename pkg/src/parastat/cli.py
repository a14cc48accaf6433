"""Command line: ``parastat verify ...`` and ``parastat demo``.

Exit status is 0 when nothing failed (skips are fine), 1 when any relation
failed, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from .dsl import ParseError, load, run_program
from .suites import SUITES, ConfigError, Report, SuiteConfig, build_context, run_suites

FAMILY_TITLES = {
    "trilinear": "trilinear defining relations of the generators",
    "klein": "Klein operator: K Kd = Kd K = I, anticommutes with every generator",
    "iterated-coproduct": "iterated coproduct is the sum of its Green components; D(K) = K x ... x K",
    "green-canonical": "Green components: canonical brackets inside one set",
    "green-trilinear": "Green components: trilinear relations inside one set",
    "green-cross": "Green components: anomalous brackets between different sets vanish",
    "green-vacuum": "Green components annihilate the joint vacuum",
    "green-order": "Green components: a_k ad_l |0> = delta_kl p_alpha |0>",
    "order": "order of the combined operators: a_k ad_l |0> = delta_kl p |0>",
    "vacuum": "combined annihilators kill the product vacuum",
    "exclusion": "exclusion: no more than p quanta in the forbidden symmetry type",
    "coassociativity": "coassociativity of the coproduct",
    "relation-file": "relations from file",
}


def _int_list(text: str) -> List[int]:
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def _suite_list(text: str) -> List[str]:
    names = [x.strip() for x in text.split(",") if x.strip()]
    bad = [n for n in names if n != "all" and n not in SUITES]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown suite(s): {', '.join(bad)}")
    if "all" in names:
        return list(SUITES)
    return [s for s in SUITES if s in names]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="parastat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="build a representation and verify relations")
    v.add_argument("--stats", required=True, choices=["parabose", "parafermi"])
    v.add_argument("--modes", required=True, type=int, help="number of modes n")
    v.add_argument("--orders", required=True, type=_int_list, help="orders p1,p2,...,pr of the combined sets")
    v.add_argument("--cutoff", type=int, help="total-degree cutoff per boson set (parabose only)")
    v.add_argument("--suite", type=_suite_list, help=f"comma list of {','.join(SUITES)} or all")
    v.add_argument("--relations", type=Path, help=".pst relations file")
    v.add_argument("--out", type=Path, help="write the report here instead of stdout")
    v.add_argument("--format", choices=["json", "text"], default="json")

    d = sub.add_parser("demo", help="walk through the p = 3 parafermion Green ansatz")
    d.add_argument("--format", choices=["json", "text"], default="text")
    d.add_argument("--out", type=Path)
    return parser


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        out.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")


def cmd_verify(args, parser: argparse.ArgumentParser) -> int:
    if not args.suite and args.relations is None:
        parser.error("give --suite, --relations, or both")
    try:
        config = SuiteConfig(args.stats, args.modes, tuple(args.orders), args.cutoff, tuple(args.suite or ()))
    except ConfigError as exc:
        parser.error(str(exc))
    program = None
    if args.relations is not None:
        try:
            program = load(args.relations)
        except OSError as exc:
            parser.error(f"cannot read {args.relations}: {exc}")
        except ParseError as exc:
            parser.error(f"{args.relations}:{exc}")

    report = run_suites(config) if config.suites else Report(config.to_dict())
    if program is not None and report.error is None:
        _, ctx = build_context(config)
        extra = run_program(program, ctx)
        report.results.extend(extra.results)
        report.config["relations"] = str(args.relations)
    _emit(report.to_json() if args.format == "json" else report.to_text(), args.out)
    return 0 if report.ok else 1


def demo_text(report: Report) -> str:
    cfg = report.config
    lines = [
        "Green ansatz for parafermions of order p = 3",
        f"  three fermion sets, n = {cfg['n_modes']} modes each, combined by the iterated coproduct",
        "",
    ]
    seen = []
    for r in report.results:
        if r.family not in seen:
            seen.append(r.family)
    for fam in seen:
        group = [r for r in report.results if r.family == fam]
        ok = sum(r.passed for r in group)
        mark = "PASS" if ok == len(group) else "FAIL"
        lines.append(f"[{mark}] {FAMILY_TITLES.get(fam, fam)}: {ok}/{len(group)}")
        for r in group:
            tick = {"pass": "ok", "fail": "FAIL", "skipped": "skip"}[r.status]
            lines.append(f"    {tick:<4} {r.name}")
    s = report.summary
    lines += ["", f"passed {s['passed']}, failed {s['failed']}, skipped {s['skipped']}"]
    return "\n".join(lines)


def cmd_demo(args) -> int:
    report = run_suites(SuiteConfig("parafermi", 2, (1, 1, 1)))
    _emit(report.to_json() if args.format == "json" else demo_text(report), args.out)
    return 0 if report.ok else 1


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        return cmd_verify(args, parser)
    return cmd_demo(args)


if __name__ == "__main__":
    sys.exit(main())
