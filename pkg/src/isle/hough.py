"""Straight-line extraction from edge maps and targeted sharpening.

Lines are detected with a (rho, theta) accumulator over edge pixels and
reported in normal form: rho is the signed perpendicular distance from
the origin (top-left pixel, x right, y down), theta the normal angle in
[0, pi). Sharpening convolves a 3x3 kernel with center weight 9 and -1
elsewhere, applied only at marked pixels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .image import as_rgb

__all__ = ["Line", "HoughParams", "hough_lines", "mark_line_pixels", "sharpen_at"]

# 3x3 sharpening stencil: center weight 9, all eight neighbors -1
_NEIGHBOR_OFFSETS = (
    (-1, -1), (-1, 0), (-1, 1),
    (0, -1), (0, 1),
    (1, -1), (1, 0), (1, 1),
)


@dataclass(frozen=True)
class Line:
    """Hough-detected line: x*cos(theta) + y*sin(theta) = rho."""

    rho: float
    theta: float
    votes: int


@dataclass(frozen=True)
class HoughParams:
    rho_res: float = 1.0
    theta_res: float = math.radians(1.0)
    vote_frac: float = 0.25
    nms_window: tuple[int, int] = (9, 9)

    def __post_init__(self) -> None:
        if self.rho_res <= 0 or self.theta_res <= 0:
            raise ValueError("rho_res and theta_res must be positive")
        if not 0.0 < self.vote_frac <= 1.0:
            raise ValueError(f"vote_frac must be in (0, 1], got {self.vote_frac}")
        wr, wt = self.nms_window
        if wr < 1 or wt < 1 or wr % 2 == 0 or wt % 2 == 0:
            raise ValueError(f"nms_window entries must be odd positives, got {self.nms_window}")


def _edge_mask(edges: np.ndarray) -> np.ndarray:
    a = np.asarray(edges)
    if a.ndim != 2 or a.dtype != bool:
        raise ValueError(f"expected boolean (H, W) edge map, got {a.dtype} {a.shape}")
    return a


def hough_lines(
    edges: np.ndarray,
    params: HoughParams = HoughParams(),
    region: np.ndarray | None = None,
) -> list[Line]:
    """Accumulator peaks as a list of lines, strongest first.

    Only edge pixels inside `region` vote when a region mask is given.
    Peaks must collect at least vote_frac * max(width, height) votes and
    survive a greedy non-max suppression over nms_window accumulator
    bins. Ties are broken by ascending (theta, rho), so the result is
    deterministic.
    """
    a = _edge_mask(edges)
    height, width = a.shape
    if region is not None:
        region = np.asarray(region, dtype=bool)
        if region.shape != a.shape:
            raise ValueError(f"region shape {region.shape} does not match edges {a.shape}")
        a = a & region
    ys, xs = np.nonzero(a)
    if ys.size == 0:
        return []

    n_theta = max(1, int(round(np.pi / params.theta_res)))
    thetas = np.arange(n_theta) * params.theta_res
    diag = float(np.hypot(width - 1, height - 1))
    offset = int(np.ceil(diag / params.rho_res))
    n_rho = 2 * offset + 1

    acc = np.zeros((n_rho, n_theta), dtype=np.int64)
    cos = np.cos(thetas)
    sin = np.sin(thetas)
    for j in range(n_theta):
        rho_idx = np.rint((xs * cos[j] + ys * sin[j]) / params.rho_res).astype(np.int64) + offset
        acc[:, j] += np.bincount(rho_idx, minlength=n_rho)

    min_votes = params.vote_frac * max(width, height)
    cand_r, cand_t = np.nonzero(acc >= min_votes)
    if cand_r.size == 0:
        return []
    votes = acc[cand_r, cand_t]
    order = np.lexsort((cand_r, cand_t, -votes))

    half_r = (params.nms_window[0] - 1) // 2
    half_t = (params.nms_window[1] - 1) // 2

    def near(r: int, t: int, kr: int, kt: int) -> bool:
        if abs(r - kr) <= half_r and abs(t - kt) <= half_t:
            return True
        # theta wraps at pi with rho negated: (r, t) aliases (2*offset - r, t +- n_theta)
        return abs(r - (2 * offset - kr)) <= half_r and n_theta - abs(t - kt) <= half_t

    kept: list[tuple[int, int, int]] = []
    for i in order:
        r, t, v = int(cand_r[i]), int(cand_t[i]), int(votes[i])
        if any(near(r, t, kr, kt) for kr, kt, _ in kept):
            continue
        kept.append((r, t, v))

    lines = [
        Line(rho=(r - offset) * params.rho_res, theta=float(thetas[t]), votes=v)
        for r, t, v in kept
    ]
    lines.sort(key=lambda ln: (-ln.votes, ln.theta, ln.rho))
    return lines


def mark_line_pixels(edges: np.ndarray, lines: list[Line], tol: float = 1.5) -> np.ndarray:
    """Boolean mask of edge pixels within `tol` pixels of any detected line."""
    a = _edge_mask(edges)
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    marked = np.zeros(a.shape, dtype=bool)
    if not lines:
        return marked
    ys, xs = np.nonzero(a)
    if ys.size == 0:
        return marked
    near = np.zeros(ys.size, dtype=bool)
    for ln in lines:
        dist = np.abs(xs * np.cos(ln.theta) + ys * np.sin(ln.theta) - ln.rho)
        near |= dist <= tol
    marked[ys[near], xs[near]] = True
    return marked


def sharpen_at(img: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Sharpen only the masked pixels of an RGB image.

    Each marked pixel becomes clamp(9 * center - sum of its 8 neighbors)
    computed from the original image with replicate boundary; unmarked
    pixels are copied through bit-for-bit.
    """
    a = as_rgb(img)
    m = np.asarray(mask, dtype=bool)
    if m.shape != a.shape[:2]:
        raise ValueError(f"mask shape {m.shape} does not match image {a.shape[:2]}")
    out = a.copy()
    if not m.any():
        return out
    # 9*center minus the neighbor total, summed in a fixed order; folding the
    # +9 into a single correlate drifts the constant-neighborhood case below
    # the clamp by a few ulps
    padded = np.pad(a, ((1, 1), (1, 1), (0, 0)), mode="edge")
    h, w = a.shape[:2]
    neighbor_sum = np.zeros_like(a)
    for dy, dx in _NEIGHBOR_OFFSETS:
        neighbor_sum += padded[1 + dy : 1 + dy + h, 1 + dx : 1 + dx + w]
    sharp = 9.0 * a - neighbor_sum
    out[m] = np.clip(sharp[m], 0.0, 1.0)
    return out
