"""Wall-clock scaling on 2-d blobs; prints per-stage times and doubling ratios.

    python3 scripts/bench_scaling.py [--sizes 10000 20000 40000 80000] [--repeats 3]
"""
import argparse
import json

from gdt.cli import BENCH_SIZES, run_bench
from gdt.pipeline import STAGES


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=list(BENCH_SIZES))
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--json", help="also write the report here")
    args = ap.parse_args()

    report = run_bench(args.sizes, repeats=args.repeats)
    print(f"{'n':>8}" + "".join(f"{s:>10}" for s in STAGES) + f"{'total':>10}")
    for r in report["runs"]:
        print(f"{r['n']:>8}" + "".join(f"{r[s]:>10.3f}" for s in STAGES) + f"{r['total']:>10.3f}")
    for r in report["ratios"]:
        flag = "ok" if r["ratio"] <= 2.6 else "SLOW"
        print(f"t({r['to']})/t({r['from']}) = {r['ratio']:.2f}  {flag}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report, fh, indent=2)


if __name__ == "__main__":
    main()
