"""Canny edge extraction with thresholds on the unit interval.

Thresholds are applied to the gradient magnitude normalized by its
per-image maximum, so (low, high) pairs keep their meaning across
exposures. Pipeline: Gaussian blur, Sobel gradients, normalization,
4-direction non-maximum suppression, hysteresis linking.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .image import as_gray

__all__ = ["CannyParams", "canny", "gradient_field"]

_SOBEL_X = np.array([[-1.0, 0.0, 1.0], [-2.0, 0.0, 2.0], [-1.0, 0.0, 1.0]])
_SOBEL_Y = np.array([[-1.0, -2.0, -1.0], [0.0, 0.0, 0.0], [1.0, 2.0, 1.0]])

# 8-connectivity for hysteresis linking
_LINK_STRUCTURE = np.ones((3, 3), dtype=bool)


@dataclass(frozen=True)
class CannyParams:
    low: float
    high: float
    sigma: float = 1.4

    def __post_init__(self) -> None:
        if not 0.0 <= self.low < self.high <= 1.0:
            raise ValueError(
                f"thresholds must satisfy 0 <= low < high <= 1, got ({self.low}, {self.high})"
            )
        if self.sigma <= 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")


def gradient_field(img: np.ndarray, sigma: float = 1.4) -> tuple[np.ndarray, np.ndarray]:
    """Gradient magnitude and direction of a Gaussian-smoothed image.

    Blur uses a 5x5 kernel with the given sigma; Sobel and blur both use
    replicate boundary. Direction is atan2(gy, gx) in radians.
    """
    a = as_gray(img)
    blurred = ndimage.gaussian_filter(a, sigma, radius=2, mode="nearest")
    gx = ndimage.correlate(blurred, _SOBEL_X, mode="nearest")
    gy = ndimage.correlate(blurred, _SOBEL_Y, mode="nearest")
    return np.hypot(gx, gy), np.arctan2(gy, gx)


def _shift(a: np.ndarray, dy: int, dx: int) -> np.ndarray:
    # neighbor values with out-of-bounds reading as 0
    out = np.zeros_like(a)
    h, w = a.shape
    ys = slice(max(dy, 0), h + min(dy, 0))
    xs = slice(max(dx, 0), w + min(dx, 0))
    yd = slice(max(-dy, 0), h + min(-dy, 0))
    xd = slice(max(-dx, 0), w + min(-dx, 0))
    out[yd, xd] = a[ys, xs]
    return out


def _non_max_suppress(mag: np.ndarray, direction: np.ndarray) -> np.ndarray:
    """Keep only ridge pixels along the quantized gradient direction.

    Comparison is strict against the neighbor earlier in row-major order
    and non-strict against the later one, so a two-pixel plateau keeps
    exactly its earlier pixel.
    """
    angle = np.rad2deg(direction) % 180.0
    bin0 = (angle < 22.5) | (angle >= 157.5)  # E-W
    bin45 = (angle >= 22.5) & (angle < 67.5)  # NE-SW
    bin90 = (angle >= 67.5) & (angle < 112.5)  # N-S
    bin135 = (angle >= 112.5) & (angle < 157.5)  # NW-SE

    keep = np.zeros(mag.shape, dtype=bool)
    # (earlier neighbor, later neighbor) in row-major order per direction;
    # y axis points down, so 45 degrees is the main diagonal
    pairs = [
        (bin0, (0, -1), (0, 1)),
        (bin45, (-1, -1), (1, 1)),
        (bin90, (-1, 0), (1, 0)),
        (bin135, (-1, 1), (1, -1)),
    ]
    for sel, earlier, later in pairs:
        ok = (mag > _shift(mag, *earlier)) & (mag >= _shift(mag, *later))
        keep |= sel & ok
    return keep & (mag > 0.0)


def canny(img: np.ndarray, params: CannyParams) -> np.ndarray:
    """Edge map of a grayscale image as a boolean array.

    The gradient magnitude is normalized by its maximum before
    thresholding; an all-zero gradient field yields an empty map. Weak
    pixels (>= low) survive only when 8-connected to a strong pixel
    (>= high) through other weak or strong pixels.
    """
    mag, direction = gradient_field(img, params.sigma)
    peak = mag.max()
    if peak <= 1e-12:  # all-zero field up to float cancellation noise
        return np.zeros(mag.shape, dtype=bool)
    norm = mag / peak
    ridge = _non_max_suppress(norm, direction)

    weak = ridge & (norm >= params.low)
    strong = ridge & (norm >= params.high)
    if not strong.any():
        return np.zeros(mag.shape, dtype=bool)
    labels, n = ndimage.label(weak, structure=_LINK_STRUCTURE)
    keep = np.zeros(n + 1, dtype=bool)
    keep[np.unique(labels[strong])] = True
    keep[0] = False
    return keep[labels]
