"""Time a single detection per variant across sample sizes.

Reports the median of repeated wall-clock measurements on freshly
generated normal data with 10 percent far contamination.
"""

import argparse
import sys

from rmdshrink.io import atomic_write_text
from rmdshrink.scatter import VARIANTS
from rmdshrink.simulate import ScenarioSpec, bench_variant

SIZES = ((5, 100), (10, 100), (30, 500))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=20250819)
    parser.add_argument("--measurements", type=int, default=7)
    parser.add_argument("--output", default=None, help="optional CSV destination")
    args = parser.parse_args(argv)

    rows = []
    skipped = 0
    print(f"{'variant':<8} {'p':>4} {'n':>6} {'median seconds':>15}")
    for variant in sorted(VARIANTS):
        for p, n in SIZES:
            spec = ScenarioSpec(
                family="NormalMixture",
                p=p,
                n=n,
                alpha=0.1,
                delta=10.0,
                lam=1.0,
                reps=1,
                seed=args.seed,
                variant=variant,
            )
            try:
                row = bench_variant(spec, args.measurements)
            except ValueError as exc:
                skipped += 1
                print(f"SKIPPED {variant} p={p} n={n}: {exc}", file=sys.stderr)
                continue
            rows.append(row)
            print(f"{variant:<8} {p:>4} {n:>6} {row['median_seconds']:>15.4f}")

    if args.output:
        lines = ["variant,p,n,measurements,median_seconds"]
        lines += [
            f"{r['variant']},{r['p']},{r['n']},{r['measurements']},"
            f"{r['median_seconds']!r}"
            for r in rows
        ]
        atomic_write_text(args.output, "\n".join(lines) + "\n")
        print(f"wrote {len(rows)} rows to {args.output}")
    return 1 if skipped else 0


if __name__ == "__main__":
    raise SystemExit(main())
