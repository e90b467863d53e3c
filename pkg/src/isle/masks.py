"""Building masks from semantic label maps.

Label maps are integer rasters of ADE20K class IDs (0-149) stored as
single-channel 8-bit PNGs where the pixel value is the class ID. The
class-name config maps names to IDs, one `name=id` per line; the six
building-related names shipped by default are door, building, house,
wall, awning and windowpane.
"""

from __future__ import annotations

import os
from importlib import resources

import numpy as np
from PIL import Image, UnidentifiedImageError
from scipy import ndimage

__all__ = [
    "BUILDING_CLASS_NAMES",
    "load_label_map",
    "load_class_config",
    "default_building_ids",
    "mask_from_labels",
    "dilate",
    "apply_mask",
    "resize_labels",
]

N_CLASSES = 150

BUILDING_CLASS_NAMES = ("door", "building", "house", "wall", "awning", "windowpane")


def load_label_map(path: str | os.PathLike) -> np.ndarray:
    """Read a label-map PNG as an (H, W) integer array of class IDs."""
    try:
        with Image.open(path) as im:
            if im.mode != "L":
                im = im.convert("L")
            ids = np.asarray(im, dtype=np.int64)
    except (UnidentifiedImageError, FileNotFoundError, ValueError) as exc:
        raise OSError(f"cannot read label map {path}: {exc}") from exc
    if ids.max(initial=0) >= N_CLASSES:
        raise ValueError(
            f"label map {path} contains class ID {ids.max()} outside [0, {N_CLASSES - 1}]"
        )
    return ids


def load_class_config(path: str | os.PathLike) -> dict[str, int]:
    """Parse `name=id` lines; blank lines and `#` comments are skipped."""
    mapping: dict[str, int] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected name=id, got {raw.rstrip()!r}")
            name, _, value = line.partition("=")
            try:
                cid = int(value.strip())
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: bad class ID {value.strip()!r}") from exc
            if not 0 <= cid < N_CLASSES:
                raise ValueError(f"{path}:{lineno}: class ID {cid} outside [0, {N_CLASSES - 1}]")
            mapping[name.strip().lower()] = cid
    if not mapping:
        raise ValueError(f"{path}: no class mappings found")
    return mapping


def default_building_ids() -> set[int]:
    """IDs of the six building-related classes from the packaged config."""
    ref = resources.files("isle").joinpath("data/ade20k_building_classes.txt")
    with resources.as_file(ref) as path:
        mapping = load_class_config(path)
    return {mapping[name] for name in BUILDING_CLASS_NAMES}


def mask_from_labels(labels: np.ndarray, building_ids: set[int]) -> np.ndarray:
    """Boolean mask that is true where the class ID is in building_ids."""
    if not building_ids:
        raise ValueError("building_ids must not be empty")
    ids = np.asarray(labels)
    return np.isin(ids, sorted(building_ids))


def dilate(mask: np.ndarray, radius: int) -> np.ndarray:
    """Morphological dilation with a disk of the given radius.

    A pixel is set when any true pixel lies within Euclidean distance
    radius; radius 1 therefore grows by the 4-neighborhood only.
    """
    if radius < 1:
        raise ValueError(f"radius must be >= 1, got {radius}")
    m = np.asarray(mask, dtype=bool)
    yy, xx = np.ogrid[-radius : radius + 1, -radius : radius + 1]
    disk = yy * yy + xx * xx <= radius * radius
    return ndimage.binary_dilation(m, structure=disk)


def apply_mask(edges: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Pointwise AND of an edge map and a region mask."""
    e = np.asarray(edges, dtype=bool)
    m = np.asarray(mask, dtype=bool)
    if e.shape != m.shape:
        raise ValueError(f"dimension mismatch: edges {e.shape} vs mask {m.shape}")
    return e & m


def resize_labels(labels: np.ndarray, height: int, width: int) -> np.ndarray:
    """Nearest-neighbor resize of a label map to the given dimensions."""
    ids = np.asarray(labels)
    if ids.shape == (height, width):
        return ids
    src_h, src_w = ids.shape
    rows = np.minimum((np.arange(height) + 0.5) * src_h / height, src_h - 1).astype(np.int64)
    cols = np.minimum((np.arange(width) + 0.5) * src_w / width, src_w - 1).astype(np.int64)
    return ids[rows[:, None], cols[None, :]]
