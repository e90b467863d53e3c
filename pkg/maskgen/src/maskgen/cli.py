"""Batch label-map inference: maskgen --weights W --out-dir D img1 img2 ...

Emits {stem}_labels.png per input image. Exit codes: 0 success, 1 usage
error, 2 missing or unloadable weights, 3 inference failure.
"""

from __future__ import annotations

import argparse
import sys

from .infer import InferenceConfig, MissingWeightsError, infer_labels, load_weights


def run_cli(argv: list[str]) -> int:
    parser = argparse.ArgumentParser(prog="maskgen", description=__doc__)
    parser.add_argument("--weights", required=True, help="model checkpoint path")
    parser.add_argument("--out-dir", required=True, help="directory for label PNGs")
    parser.add_argument("--max-side", type=int, default=512)
    parser.add_argument("images", nargs="+")
    try:
        args = parser.parse_args(argv)
    except SystemExit:
        return 1

    cfg = InferenceConfig(weights=args.weights, max_side=args.max_side)
    try:
        model = load_weights(cfg)
    except MissingWeightsError as exc:
        print(f"setup error: {exc}", file=sys.stderr)
        return 2

    for path in args.images:
        try:
            dest = infer_labels(path, cfg, args.out_dir, model=model)
        except Exception as exc:  # noqa: BLE001 - report and fail the batch
            print(f"inference failed on {path}: {exc}", file=sys.stderr)
            return 3
        print(dest)
    return 0


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
