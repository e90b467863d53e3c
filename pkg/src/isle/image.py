"""Image containers and basic intensity operations.

Images are numpy float64 arrays with values in [0, 1]: RGB images have
shape (height, width, 3), grayscale images (height, width). Edge maps and
other binary rasters are boolean arrays of shape (height, width). All
file I/O quantizes to 8 bits.
"""

from __future__ import annotations

import os

import numpy as np
from PIL import Image, UnidentifiedImageError

__all__ = [
    "load_image",
    "save_image",
    "to_luma",
    "intensity_median",
    "scale_brightness",
    "as_rgb",
    "as_gray",
]

# Rec. 601 luminance weights.
_LUMA_WEIGHTS = np.array([0.299, 0.587, 0.114])


def as_rgb(img: np.ndarray) -> np.ndarray:
    """Validate an RGB image array, returning it as float64."""
    a = np.asarray(img, dtype=np.float64)
    if a.ndim != 3 or a.shape[2] != 3:
        raise ValueError(f"expected (H, W, 3) RGB array, got shape {a.shape}")
    if a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"image dimensions must be >= 1, got {a.shape[:2]}")
    if a.min() < 0.0 or a.max() > 1.0:
        raise ValueError("channel values must lie in [0, 1]")
    return a


def as_gray(img: np.ndarray) -> np.ndarray:
    """Validate a grayscale image array, returning it as float64."""
    a = np.asarray(img, dtype=np.float64)
    if a.ndim != 2:
        raise ValueError(f"expected (H, W) grayscale array, got shape {a.shape}")
    if a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"image dimensions must be >= 1, got {a.shape}")
    if a.min() < 0.0 or a.max() > 1.0:
        raise ValueError("intensity values must lie in [0, 1]")
    return a


def load_image(path: str | os.PathLike) -> np.ndarray:
    """Read an 8-bit PNG or PPM/PGM file as an (H, W, 3) float array in [0, 1].

    Grayscale files are replicated across the three channels; palette and
    RGBA images are converted to RGB. Raises OSError with the offending
    path for unreadable or unsupported files.
    """
    try:
        with Image.open(path) as im:
            if im.width < 1 or im.height < 1:
                raise OSError(f"zero-dimension image: {path}")
            mode = im.mode
            if mode in ("I;16", "I", "F"):
                raise OSError(f"unsupported sample depth {mode!r} in {path} (8-bit only)")
            if mode == "L":
                arr = np.asarray(im, dtype=np.float64)
                arr = np.repeat(arr[:, :, None], 3, axis=2)
            else:
                arr = np.asarray(im.convert("RGB"), dtype=np.float64)
    except (UnidentifiedImageError, ValueError) as exc:
        raise OSError(f"cannot read image {path}: {exc}") from exc
    except FileNotFoundError as exc:
        raise OSError(f"cannot read image {path}: {exc}") from exc
    return arr / 255.0


def _quantize(values: np.ndarray) -> np.ndarray:
    # round(v * 255) with ties away from zero; np.round would round half to even
    return np.floor(np.clip(values, 0.0, 1.0) * 255.0 + 0.5).astype(np.uint8)


def save_image(img: np.ndarray, path: str | os.PathLike) -> None:
    """Write an image as 8-bit PNG.

    RGB and grayscale arrays are quantized by round(v * 255); boolean maps
    are written as a single-channel PNG with 0 for false and 255 for true.
    """
    a = np.asarray(img)
    if a.dtype == bool:
        data = np.where(a, np.uint8(255), np.uint8(0))
        pil = Image.fromarray(data, mode="L")
    elif a.ndim == 2:
        pil = Image.fromarray(_quantize(as_gray(a)), mode="L")
    elif a.ndim == 3:
        pil = Image.fromarray(_quantize(as_rgb(a)), mode="RGB")
    else:
        raise ValueError(f"cannot save array of shape {a.shape}")
    try:
        pil.save(os.fspath(path), format="PNG")
    except (FileNotFoundError, PermissionError) as exc:
        raise OSError(f"cannot write image {path}: {exc}") from exc


def load_edge_map(path: str | os.PathLike) -> np.ndarray:
    """Read a single-channel edge-map PNG as a boolean array (>=128 is an edge)."""
    rgb = load_image(path)
    return rgb[:, :, 0] >= 128.0 / 255.0


def to_luma(img: np.ndarray) -> np.ndarray:
    """Rec. 601 luminance of an RGB image, clamped to [0, 1]."""
    a = as_rgb(img)
    return np.clip(a @ _LUMA_WEIGHTS, 0.0, 1.0)


def intensity_median(img: np.ndarray) -> int:
    """Lower median of the 8-bit intensity histogram of a grayscale image.

    Pixels are quantized to round(v * 255); the element at index
    floor((n - 1) / 2) of the sorted multiset is returned, so even pixel
    counts take the lower of the two middle values.
    """
    q = _quantize(as_gray(img)).ravel()
    k = (q.size - 1) // 2
    return int(np.partition(q, k)[k])


def scale_brightness(img: np.ndarray, factor: float) -> np.ndarray:
    """Multiply every channel by `factor`, clamping at 1.0."""
    if factor <= 0:
        raise ValueError(f"brightness factor must be positive, got {factor}")
    return np.minimum(as_rgb(img) * factor, 1.0)
