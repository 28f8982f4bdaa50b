"""Segment a PNG (or a generated test card) and save the label image.

    python3 scripts/segment_image.py [--input photo.png] [--out seg.png]

Without --input a small synthetic picture is used: three flat color patches
plus mild pixel noise.
"""
import argparse

import numpy as np

from gdt import data
from gdt.pipeline import run_gdt


def test_card(h=48, w=64, seed=0):
    rng = np.random.default_rng(seed)
    px = np.empty((h, w, 3))
    px[:, : w // 2] = [200, 60, 40]
    px[:, w // 2:] = [40, 90, 200]
    yy, xx = np.mgrid[0:h, 0:w]
    px[(yy - h / 2) ** 2 + (xx - w / 2) ** 2 < (h / 4) ** 2] = [240, 220, 60]
    return data.ImageFrame(np.clip(px + rng.normal(0, 4, px.shape), 0, 255))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--input")
    ap.add_argument("--out", default="segmentation.png")
    ap.add_argument("--kd", type=int, default=30)
    ap.add_argument("--ks", type=int, default=20)
    ap.add_argument("--alpha", type=float, default=0.05)
    ap.add_argument("--epsilon", type=float, default=0.0001)
    args = ap.parse_args()

    img = data.read_png(args.input) if args.input else test_card()
    res = run_gdt(data.image_to_samples(img).points,
                  k_d=args.kd, k_s=args.ks, alpha=args.alpha, epsilon=args.epsilon)
    data.write_png(data.labels_to_image(res.labeling, img.width, img.height), args.out)
    print(f"{img.width}x{img.height}: {res.labeling.num_labels} regions, "
          f"{len(res.growth.clusters)} local clusters, coverage {res.labeling.coverage:.4f} -> {args.out}")


if __name__ == "__main__":
    main()
