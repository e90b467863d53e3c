#!/usr/bin/env python3
"""Score the pipeline against hand-drawn groundtruths with SSIM.

Runs three methods over an image directory (full pipeline, plain Canny
at (0.05, 0.4), single-pass smoothing at lambda 0.03 followed by Canny),
writes each method's edge maps and a per-method CSV report, and prints
the mean SSIM ordering. Groundtruths are edge-map PNGs named like the
images; only images with a matching groundtruth are scored.
"""

import argparse
import sys
from pathlib import Path

from isle import (
    CannyParams,
    SmoothParams,
    canny,
    default_config,
    isle_run,
    l0_smooth,
    load_image,
    save_image,
    to_luma,
)
from isle.metrics import SsimParams, evaluate_batch, write_report_csv


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--images", required=True, help="directory of input PNGs")
    parser.add_argument("--groundtruths", required=True, help="directory of groundtruth edge PNGs")
    parser.add_argument("--out", default="benchmark_out", help="output directory")
    args = parser.parse_args()

    images = Path(args.images)
    gts = Path(args.groundtruths)
    out = Path(args.out)
    cfg = default_config()
    baseline_canny = CannyParams(0.05, 0.4)

    stems = sorted(p.stem for p in gts.glob("*.png") if (images / p.name).exists())
    if not stems:
        print("no image/groundtruth pairs found", file=sys.stderr)
        return 1

    pairs = {"isle": [], "canny": [], "l0": []}
    for stem in stems:
        img = load_image(images / f"{stem}.png")
        outputs = {
            "isle": isle_run(img, cfg=cfg).raw_edges,
            "canny": canny(to_luma(img), baseline_canny),
            "l0": canny(to_luma(l0_smooth(img, SmoothParams(lam=0.03))), baseline_canny),
        }
        for method, edges in outputs.items():
            dest = out / method / f"{stem}.png"
            dest.parent.mkdir(parents=True, exist_ok=True)
            save_image(edges, dest)
            pairs[method].append((str(dest), str(gts / f"{stem}.png"), stem))
        print(f"processed {stem}")

    means = {}
    for method, method_pairs in pairs.items():
        report = evaluate_batch(method_pairs, method=method, p=SsimParams())
        write_report_csv(report, out / f"report_{method}.csv")
        means[method] = report.mean
        print(f"{method}: mean_ssim={report.mean:.4f} n={report.count}")

    ok = means["isle"] > means["canny"] and means["isle"] > means["l0"]
    print(f"pipeline beats both baselines: {ok}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
