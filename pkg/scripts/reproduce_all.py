"""Run the full scenario catalog and the selftest suites, writing reports to a directory.

    python scripts/reproduce_all.py --out results --trials 100000 --seed 42
"""
import argparse
import pathlib
import sys
import time

from tsvf_lab.cli import cmd_selftest
from tsvf_lab.report import RENDERERS, RunConfig, all_passed, build_report, run_catalog


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results")
    ap.add_argument("--trials", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()

    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    config = RunConfig(trials=args.trials, seed=args.seed)

    start = time.perf_counter()
    report = build_report(config, run_catalog(config))
    for fmt, render in RENDERERS.items():
        (out / f"report.{'txt' if fmt == 'text' else fmt}").write_text(render(report), encoding="utf-8")
    print(RENDERERS["text"](report), end="")
    print(f"catalog finished in {time.perf_counter() - start:.1f} s; reports in {out}/")

    with open(out / "selftest.txt", "w", encoding="utf-8") as fh:
        selftest_status = cmd_selftest(seed=args.seed, out=fh)
    print((out / "selftest.txt").read_text(encoding="utf-8"), end="")
    return 0 if all_passed(report) and selftest_status == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
