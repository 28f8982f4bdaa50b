"""Command-line front end.

    gdt --mode cluster --input data.csv --label-column class --output-dir out/
    gdt --mode segment --input photo.png --kd 30 --ks 20 --alpha 0.05 --epsilon 0.0001
    gdt --mode bench --output-dir out/

Exit status: 0 on success, 1 on bad usage, 2 on runtime failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from scipy import ndimage

from . import data, metrics
from .growing import NOISE
from .pipeline import STAGES, GDTConfig, run_gdt
from .topology import graph_to_dict

log = logging.getLogger("gdt")

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2
BENCH_SIZES = (10_000, 20_000, 40_000, 80_000)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    mode: str = "cluster"
    input: Optional[Path] = None
    output_dir: Path = Path("gdt-output")
    k_d: int = 15
    k_s: int = 15
    alpha: float = 0.2
    epsilon: float = 0.0
    seed: int = 0
    label_column: Optional[str] = None
    has_header: bool = True
    standardize: bool = False
    max_pixels: int = 1_000_000
    sizes: tuple[int, ...] = BENCH_SIZES
    repeats: int = 3
    extra: dict = field(default_factory=dict)

    def gdt_config(self) -> GDTConfig:
        return GDTConfig(k_d=self.k_d, k_s=self.k_s, alpha=self.alpha, epsilon=self.epsilon)

    def params(self) -> dict:
        return {"k_d": self.k_d, "k_s": self.k_s, "alpha": self.alpha, "epsilon": self.epsilon}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="gdt",
        description="Density-topology clustering of tabular data and images.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
        allow_abbrev=False,
    )
    p.add_argument("--mode", choices=("cluster", "segment", "bench"), default="cluster",
                   help="cluster a CSV, segment a PNG, or run the scaling benchmark")
    p.add_argument("--input", type=Path, help="input CSV (cluster) or PNG (segment)")
    p.add_argument("--output-dir", type=Path, default=Path("gdt-output"),
                   help="directory for labels, graph and metrics files")
    p.add_argument("--kd", type=int, default=15, help="neighbors used for density estimation")
    p.add_argument("--ks", type=int, default=15, help="neighbors used for density growing")
    p.add_argument("--alpha", type=float, default=0.2, help="relative edge-strength cut, in [0, 1]")
    p.add_argument("--epsilon", type=float, default=0.0, help="relative-density noise cut, in [0, 1]")
    p.add_argument("--label-column", default=None,
                   help="ground-truth column (header name or 0-based index); enables metrics")
    p.add_argument("--no-header", action="store_true", help="CSV has no header row")
    p.add_argument("--seed", type=int, default=0, help="seed for generated benchmark data")
    p.add_argument("--standardize", action="store_true", help="z-score features before clustering")
    p.add_argument("--max-pixels", type=int, default=1_000_000, help="largest image accepted by segment")
    p.add_argument("--sizes", type=int, nargs="+", default=list(BENCH_SIZES),
                   help="sample sizes for bench")
    p.add_argument("--repeats", type=int, default=3, help="bench repetitions per size (fastest is kept)")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def parse_config(argv: Optional[Sequence[str]] = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        mode=args.mode,
        input=args.input,
        output_dir=args.output_dir,
        k_d=args.kd,
        k_s=args.ks,
        alpha=args.alpha,
        epsilon=args.epsilon,
        seed=args.seed,
        label_column=args.label_column,
        has_header=not args.no_header,
        standardize=args.standardize,
        max_pixels=args.max_pixels,
        sizes=tuple(args.sizes),
        repeats=args.repeats,
        extra={"verbose": args.verbose},
    )
    try:
        cfg.gdt_config()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if cfg.mode in ("cluster", "segment") and cfg.input is None:
        raise UsageError(f"--input is required for --mode {cfg.mode}")
    if cfg.repeats < 1 or any(s < 2 for s in cfg.sizes):
        raise UsageError("--repeats must be >= 1 and every --sizes entry >= 2")
    return cfg


def _write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, indent=2) + "\n", encoding="utf-8")


def _graph_dump(result, cfg: RunConfig) -> dict:
    dump = graph_to_dict(result.pruned)
    dump["params"] = cfg.params()
    dump["num_labels"] = result.labeling.num_labels
    dump["coverage"] = result.labeling.coverage
    return dump


def cmd_cluster(cfg: RunConfig) -> int:
    samples = data.load_csv(cfg.input, has_header=cfg.has_header, label_column=cfg.label_column)
    if cfg.standardize:
        samples = samples.standardized()
    result = run_gdt(samples.points, cfg.gdt_config())
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)

    lines = ["id,label"] + [f"{i},{int(lab)}" for i, lab in enumerate(result.labels)]
    (out / "labels.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    _write_json(out / "graph.json", _graph_dump(result, cfg))

    summary = f"{samples.n} points, {len(result.growth.clusters)} local clusters, " \
              f"{result.labeling.num_labels} labels, coverage {result.labeling.coverage:.4f}"
    if samples.truth is not None:
        try:
            scores = metrics.score_all(result.labeling, samples.truth)
        except ValueError as exc:
            print(f"gdt: metrics unavailable: {exc}", file=sys.stderr)
            scores = {"error": str(exc), "coverage": result.labeling.coverage}
        _write_json(out / "metrics.json", scores)
        summary += "".join(
            f", {k} {v:.4f}" for k, v in scores.items() if k != "coverage" and isinstance(v, float)
        )
    print(summary)
    return EXIT_OK


def spatial_regions(label_map) -> int:
    """Number of 4-connected patches of equal non-noise label."""
    total = 0
    for lab in np.unique(label_map):
        if lab != NOISE:
            total += ndimage.label(label_map == lab)[1]
    return int(total)


def cmd_segment(cfg: RunConfig) -> int:
    img = data.read_png(cfg.input, max_pixels=cfg.max_pixels)
    samples = data.image_to_samples(img)
    if cfg.standardize:
        samples = samples.standardized()
    result = run_gdt(samples.points, cfg.gdt_config())
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)

    data.write_png(data.labels_to_image(result.labeling, img.width, img.height), out / "segmentation.png")
    label_map = result.labels.reshape(img.height, img.width)
    _write_json(out / "graph.json", _graph_dump(result, cfg))
    summary = {
        "width": img.width,
        "height": img.height,
        "regions": result.labeling.num_labels,
        "spatial_regions": spatial_regions(label_map),
        "local_clusters": len(result.growth.clusters),
        "coverage": result.labeling.coverage,
        "params": cfg.params(),
    }
    _write_json(out / "summary.json", summary)
    print(f"{img.width}x{img.height} image: {summary['regions']} regions "
          f"from {summary['local_clusters']} local clusters, coverage {summary['coverage']:.4f}")
    return EXIT_OK


def run_bench(sizes: Sequence[int], k_d: int = 15, k_s: int = 15, alpha: float = 0.2,
              seed: int = 0, repeats: int = 3) -> dict:
    """Time the pipeline on 2-d blobs; per size the fastest of ``repeats`` runs is kept."""
    rows = []
    for n in sizes:
        pts = data.gen_blobs(n, seed=seed).points
        best = None
        for _ in range(repeats):
            res = run_gdt(pts, GDTConfig(k_d=k_d, k_s=k_s, alpha=alpha))
            total = sum(res.timings.values())
            if best is None or total < best["total"]:
                best = {"n": n, "total": total, **{s: res.timings[s] for s in STAGES}}
        rows.append(best)
    ratios = [
        {"from": a["n"], "to": b["n"], "ratio": b["total"] / a["total"]}
        for a, b in zip(rows, rows[1:])
    ]
    return {"k_d": k_d, "k_s": k_s, "seed": seed, "runs": rows, "ratios": ratios}


def cmd_bench(cfg: RunConfig) -> int:
    report = run_bench(cfg.sizes, cfg.k_d, cfg.k_s, cfg.alpha, cfg.seed, cfg.repeats)
    print(f"{'n':>8} " + " ".join(f"{s:>9}" for s in STAGES) + f" {'total':>9}")
    for row in report["runs"]:
        print(f"{row['n']:>8} " + " ".join(f"{row[s]:>9.3f}" for s in STAGES) + f" {row['total']:>9.3f}")
    for r in report["ratios"]:
        print(f"t({r['to']})/t({r['from']}) = {r['ratio']:.2f}")
    if cfg.output_dir is not None:
        out = Path(cfg.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        _write_json(out / "bench.json", report)
    return EXIT_OK


COMMANDS = {"cluster": cmd_cluster, "segment": cmd_segment, "bench": cmd_bench}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        print(f"gdt: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if cfg.extra.get("verbose") else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return COMMANDS[cfg.mode](cfg)
    except (OSError, ValueError) as exc:
        print(f"gdt: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
