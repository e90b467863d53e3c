"""Structural-similarity scoring of edge maps against groundtruths."""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .image import as_gray, load_edge_map

__all__ = ["SsimParams", "EvalReport", "ssim", "evaluate_batch", "write_report_csv"]


@dataclass(frozen=True)
class SsimParams:
    window_size: int = 11
    window_sigma: float = 1.5
    k1: float = 0.01
    k2: float = 0.03
    dynamic_range: float = 1.0

    def __post_init__(self) -> None:
        if self.window_size < 3 or self.window_size % 2 == 0:
            raise ValueError(f"window_size must be odd and >= 3, got {self.window_size}")
        if self.window_sigma <= 0:
            raise ValueError("window_sigma must be positive")
        if self.k1 <= 0 or self.k2 <= 0:
            raise ValueError("k1 and k2 must be positive")
        if self.dynamic_range <= 0:
            raise ValueError("dynamic_range must be positive")


def _window(p: SsimParams) -> np.ndarray:
    half = (p.window_size - 1) // 2
    x = np.arange(-half, half + 1, dtype=np.float64)
    g = np.exp(-(x * x) / (2.0 * p.window_sigma**2))
    w = np.outer(g, g)
    return w / w.sum()


def ssim(a: np.ndarray, b: np.ndarray, p: SsimParams = SsimParams()) -> float:
    """Mean single-scale structural similarity of two grayscale images.

    Local statistics use a Gaussian window (reflect boundary); the
    per-pixel index is averaged over all pixels.
    """
    x = as_gray(a)
    y = as_gray(b)
    if x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    w = _window(p)
    filt = lambda im: ndimage.correlate(im, w, mode="reflect")
    mu_x = filt(x)
    mu_y = filt(y)
    var_x = filt(x * x) - mu_x * mu_x
    var_y = filt(y * y) - mu_y * mu_y
    cov = filt(x * y) - mu_x * mu_y
    c1 = (p.k1 * p.dynamic_range) ** 2
    c2 = (p.k2 * p.dynamic_range) ** 2
    s = ((2.0 * mu_x * mu_y + c1) * (2.0 * cov + c2)) / (
        (mu_x * mu_x + mu_y * mu_y + c1) * (var_x + var_y + c2)
    )
    return float(s.mean())


@dataclass
class EvalReport:
    method: str
    rows: list[tuple[str, str, float]] = field(default_factory=list)  # (image_id, method, score)
    errors: list[tuple[str, str]] = field(default_factory=list)  # (image_id, message)

    @property
    def count(self) -> int:
        return len(self.rows)

    @property
    def mean(self) -> float:
        if not self.rows:
            return float("nan")
        return float(np.mean([r[2] for r in self.rows]))


def evaluate_batch(
    pairs: list[tuple[str, str, str]],
    method: str,
    p: SsimParams = SsimParams(),
) -> EvalReport:
    """Score (result_path, groundtruth_path, image_id) pairs with SSIM.

    Edge maps are compared as {0, 1}-valued rasters with dynamic range 1.
    Unreadable or mismatched pairs land in report.errors and are excluded
    from the mean. Rows are sorted by image id.
    """
    report = EvalReport(method=method)
    for result_path, gt_path, image_id in pairs:
        try:
            result = load_edge_map(result_path).astype(np.float64)
            gt = load_edge_map(gt_path).astype(np.float64)
            score = ssim(result, gt, p)
        except (OSError, ValueError) as exc:
            report.errors.append((image_id, str(exc)))
            continue
        report.rows.append((image_id, method, score))
    report.rows.sort(key=lambda r: r[0])
    report.errors.sort(key=lambda r: r[0])
    return report


def write_report_csv(report: EvalReport, path: str | os.PathLike) -> None:
    """CSV rows image_id,method,ssim followed by a summary line."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["image_id", "method", "ssim"])
        for image_id, method, score in report.rows:
            writer.writerow([image_id, method, f"{score:.6f}"])
        writer.writerow([])
        writer.writerow(["method", "mean_ssim", "n"])
        writer.writerow([report.method, f"{report.mean:.6f}", report.count])
        for image_id, message in report.errors:
            writer.writerow(["#error", image_id, message])
