"""Score the clustering on toy generators and the bundled UCI tables.

    python3 scripts/run_benchmarks.py [--seeds 5]

Toy rows report the median over seeds; tables are deterministic.
"""
import argparse
from pathlib import Path

import numpy as np

from gdt import data, metrics
from gdt.pipeline import run_gdt

DATA = Path(__file__).resolve().parents[1] / "data"

TOYS = {
    "circles": (lambda s: data.gen_circles(1000, sigma=0.1, seed=s), dict(k_d=20, k_s=20, alpha=0.4)),
    "moons": (lambda s: data.gen_moons(1000, sigma=0.15, seed=s), dict(k_d=30, k_s=20, alpha=0.3)),
    "smile": (lambda s: data.gen_smile(1000, seed=s), dict(k_d=15, k_s=15, alpha=0.2)),
}
TABLES = {
    "iris": dict(k_d=10, k_s=7, alpha=0.4),
    "wine": dict(k_d=20, k_s=10, alpha=0.3),
}


def _row(name, scores):
    print(f"{name:<10}" + "".join(f"{scores[k]:>10.4f}" for k in ("acc", "fscore", "ari", "coverage")))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=5)
    args = ap.parse_args()

    print(f"{'dataset':<10}{'acc':>10}{'fscore':>10}{'ari':>10}{'coverage':>10}")
    for name, (gen, params) in TOYS.items():
        per_seed = []
        for seed in range(args.seeds):
            s = gen(seed)
            per_seed.append(metrics.score_all(run_gdt(s.points, **params).labeling, s.truth))
        _row(name, {k: float(np.median([r[k] for r in per_seed])) for k in per_seed[0]})
    for name, params in TABLES.items():
        s = data.load_csv(DATA / f"{name}.csv", label_column="class")
        _row(name, metrics.score_all(run_gdt(s.points, **params).labeling, s.truth))


if __name__ == "__main__":
    main()
