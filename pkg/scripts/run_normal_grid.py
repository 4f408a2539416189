"""Sweep the normal contamination grid and write a metrics CSV.

Covers (p, n) in (5,100), (10,100), (30,500), contamination rates 0.1-0.3,
shift sizes 5 and 10, and scale factors 0.1 and 1. Scenarios whose
construction fails are reported on stderr and skipped; the exit code is 1
when any scenario aborted.
"""

import argparse
import sys

from rmdshrink.io import atomic_write_text, metrics_to_csv, scenario_id
from rmdshrink.simulate import ScenarioSpec, run_scenario

SIZES = ((5, 100), (10, 100), (30, 500))
ALPHAS = (0.1, 0.2, 0.3)
DELTAS = (5.0, 10.0)
LAMBDAS = (0.1, 1.0)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--reps", type=int, default=100)
    parser.add_argument("--seed", type=int, default=20250819)
    parser.add_argument("--variant", default="v6")
    parser.add_argument("--output", default="normal_grid.csv")
    args = parser.parse_args(argv)

    specs = [
        ScenarioSpec(
            family="NormalMixture",
            p=p,
            n=n,
            alpha=alpha,
            delta=delta,
            lam=lam,
            reps=args.reps,
            seed=args.seed,
            variant=args.variant,
        )
        for p, n in SIZES
        for alpha in ALPHAS
        for delta in DELTAS
        for lam in LAMBDAS
    ]

    reports = []
    aborted = 0
    for spec in specs:
        try:
            report = run_scenario(spec)
        except ValueError as exc:
            aborted += 1
            print(f"ABORTED {scenario_id(spec)}: {exc}", file=sys.stderr)
            continue
        reports.append(report)
        print(
            f"{scenario_id(spec)}: c={report.c_mean:.4f} f={report.f_mean:.4f} "
            f"({report.wall_seconds:.1f}s)"
        )
    atomic_write_text(args.output, metrics_to_csv(reports))
    print(f"wrote {len(reports)} rows to {args.output}, {aborted} aborted")
    return 1 if aborted else 0


if __name__ == "__main__":
    raise SystemExit(main())
