"""``tsvf-lab`` command line: list, run and selftest."""
from __future__ import annotations

import argparse
import sys
import time

from .report import FORMATS, RENDERERS, RunConfig, all_passed, build_report, run_catalog
from .scenarios import CATALOG, scenario_names
from .selftest import run_selftest

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


def cmd_list() -> str:
    width = max(map(len, CATALOG))
    return "\n".join(f"{n:<{width}}  {CATALOG[n].description}  [{CATALOG[n].anchor}]" for n in scenario_names()) + "\n"


def cmd_run(config: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        config.resolved_names()
    except KeyError as e:
        print(f"error: {e.args[0]}", file=err)
        return EXIT_USAGE
    report = build_report(config, run_catalog(config))
    text = RENDERERS[config.format](report)
    if config.output_path:
        try:
            with open(config.output_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as e:
            print(f"error: cannot write {config.output_path}: {e}", file=err)
            return EXIT_IO
    else:
        out.write(text)
    return EXIT_OK if all_passed(report) else EXIT_FAILED


def cmd_selftest(seed: int = 42, trials: int = 20_000, out=None) -> int:
    out = out or sys.stdout
    start = time.perf_counter()
    results = run_selftest(seed=seed, trials=trials)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        out.write(f"[{status}] {r.name}: {r.instances} instances, worst {r.worst:.3g} (tol {r.tolerance:.3g})\n")
    out.write(f"selftest finished in {time.perf_counter() - start:.1f} s\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tsvf-lab", description="Pre- and post-selected quantum systems lab")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list scenarios")

    run = sub.add_parser("run", help="run scenarios and report")
    run.add_argument("--scenario", action="append", dest="scenarios", metavar="NAME",
                     help="scenario to run (repeatable; default: all)")
    run.add_argument("--trials", type=int, default=100_000)
    run.add_argument("--seed", type=int, default=42)
    run.add_argument("--format", choices=FORMATS, default="text")
    run.add_argument("--sigma", type=float, default=4.0, help="Monte Carlo tolerance in binomial standard errors")
    run.add_argument("--out", default=None, help="write the report here instead of stdout")

    st = sub.add_parser("selftest", help="run random-instance property suites")
    st.add_argument("--seed", type=int, default=42)
    st.add_argument("--trials", type=int, default=20_000)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list":
        sys.stdout.write(cmd_list())
        return EXIT_OK
    if args.command == "selftest":
        return cmd_selftest(args.seed, args.trials)
    try:
        config = RunConfig(scenario_names=args.scenarios or ["all"], trials=args.trials, seed=args.seed,
                           format=args.format, tolerance_sigma=args.sigma, output_path=args.out)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    return cmd_run(config)


if __name__ == "__main__":
    sys.exit(main())
