"""Command-line surface: smooth, edges, isle, mask and eval subcommands.

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 config or contract
error. Every subcommand validates its inputs before writing any output.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys

import numpy as np

from .canny import CannyParams, canny
from .image import load_edge_map, load_image, save_image, to_luma
from .l0 import SmoothParams, l0_smooth
from .masks import (
    default_building_ids,
    dilate,
    load_class_config,
    load_label_map,
    mask_from_labels,
    resize_labels,
)
from .metrics import SsimParams, evaluate_batch, write_report_csv
from .pipeline import default_config, isle_run, load_config

__all__ = ["run_cli", "main"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_CONTRACT = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # raise instead of sys.exit(2)
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="isle", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_smooth = sub.add_parser("smooth", help="sparse-gradient smoothing at a fixed weight")
    p_smooth.add_argument("--lambda", dest="lam", type=float, required=True)
    p_smooth.add_argument("input")
    p_smooth.add_argument("output")

    p_edges = sub.add_parser("edges", help="Canny edge map of the image luminance")
    p_edges.add_argument("--low", type=float, default=0.05)
    p_edges.add_argument("--high", type=float, default=0.3)
    p_edges.add_argument("--sigma", type=float, default=1.4)
    p_edges.add_argument("input")
    p_edges.add_argument("output")

    p_isle = sub.add_parser("isle", help="full iterative smoothing and line enhancing")
    p_isle.add_argument("--config", default=None, help="pipeline config file")
    group = p_isle.add_mutually_exclusive_group()
    group.add_argument("--labels", default=None, help="label-map PNG for the building mask")
    group.add_argument("--mask", default=None, help="binary mask PNG for the building region")
    p_isle.add_argument("--dump-intermediates", dest="dump_dir", default=None)
    p_isle.add_argument("input")
    p_isle.add_argument("out_raw")
    p_isle.add_argument("out_refined")

    p_mask = sub.add_parser("mask", help="build a building mask from a label map")
    p_mask.add_argument("--labels", required=True)
    p_mask.add_argument("--classes", default=None, help="name=id class config file")
    p_mask.add_argument("--dilate", dest="radius", type=int, default=5)
    p_mask.add_argument("output")

    p_eval = sub.add_parser("eval", help="SSIM of result edge maps against groundtruths")
    p_eval.add_argument("--pairs", required=True, help="CSV: result_path,groundtruth_path,image_id")
    p_eval.add_argument("--out", required=True, help="report CSV path")
    p_eval.add_argument("--method", default="isle")
    return parser


def _cmd_smooth(args) -> int:
    img = load_image(args.input)
    out = l0_smooth(img, SmoothParams(lam=args.lam))
    save_image(out, args.output)
    return EXIT_OK


def _cmd_edges(args) -> int:
    img = load_image(args.input)
    edges = canny(to_luma(img), CannyParams(args.low, args.high, args.sigma))
    save_image(edges, args.output)
    return EXIT_OK


def _load_region(args, shape: tuple[int, int]) -> np.ndarray | None:
    if args.mask is not None:
        region = load_edge_map(args.mask)
        if region.shape != shape:
            raise ValueError(f"mask {args.mask} has shape {region.shape}, image is {shape}")
        return region
    if args.labels is not None:
        labels = resize_labels(load_label_map(args.labels), *shape)
        return mask_from_labels(labels, default_building_ids())
    return None


def _cmd_isle(args) -> int:
    cfg = load_config(args.config) if args.config else default_config()
    img = load_image(args.input)
    region = _load_region(args, img.shape[:2])
    if args.dump_dir is not None:
        os.makedirs(args.dump_dir, exist_ok=True)
    result = isle_run(img, mask=region, cfg=cfg, dump_dir=args.dump_dir)
    save_image(result.raw_edges, args.out_raw)
    save_image(result.refined_edges, args.out_refined)
    return EXIT_OK


def _cmd_mask(args) -> int:
    labels = load_label_map(args.labels)
    if args.classes:
        ids = set(load_class_config(args.classes).values())
    else:
        ids = default_building_ids()
    mask = mask_from_labels(labels, ids)
    if args.radius:
        mask = dilate(mask, args.radius)
    save_image(mask, args.output)
    return EXIT_OK


def _read_pairs(path: str) -> list[tuple[str, str, str]]:
    pairs = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.reader(fh):
            if not row or not any(cell.strip() for cell in row):
                continue
            if row[0].strip() == "result_path":  # header
                continue
            if len(row) < 3:
                raise ValueError(f"{path}: need result_path,groundtruth_path,image_id rows")
            pairs.append((row[0].strip(), row[1].strip(), row[2].strip()))
    if not pairs:
        raise ValueError(f"{path}: no pairs listed")
    return pairs


def _cmd_eval(args) -> int:
    pairs = _read_pairs(args.pairs)
    report = evaluate_batch(pairs, method=args.method, p=SsimParams())
    write_report_csv(report, args.out)
    print(f"{'image_id':<24} {'method':<12} ssim")
    for image_id, method, score in report.rows:
        print(f"{image_id:<24} {method:<12} {score:.4f}")
    print(f"{report.method}: mean_ssim={report.mean:.4f} n={report.count}")
    for image_id, message in report.errors:
        print(f"error: {image_id}: {message}", file=sys.stderr)
    return EXIT_IO if report.errors else EXIT_OK


_COMMANDS = {
    "smooth": _cmd_smooth,
    "edges": _cmd_edges,
    "isle": _cmd_isle,
    "mask": _cmd_mask,
    "eval": _cmd_eval,
}


def run_cli(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
