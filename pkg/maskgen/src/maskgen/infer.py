"""Label-map inference: image file in, class-ID PNG out.

Output files follow the consuming pipeline's LabelMap contract: a
single-channel 8-bit PNG whose pixel value is the ADE20K class ID
(0-149), at the input image's resolution.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
import torch
from PIL import Image

from .model import N_CLASSES, build_model

__all__ = ["InferenceConfig", "MissingWeightsError", "load_weights", "infer_labels"]

# ImageNet statistics used by the encoder
_MEAN = np.array([0.485, 0.456, 0.406], dtype=np.float32)
_STD = np.array([0.229, 0.224, 0.225], dtype=np.float32)

WEIGHTS_HINT = (
    "pretrained ADE20K scene-parsing checkpoints (ResNet50 encoder, pyramid "
    "pooling decoder) are published with the MIT scene-parsing model zoo; "
    "adapt the released state dict to build_model()'s module names and save "
    "it with torch.save, then pass the file via --weights"
)


class MissingWeightsError(RuntimeError):
    """Raised when the checkpoint path does not exist or cannot be loaded."""


@dataclass(frozen=True)
class InferenceConfig:
    weights: str
    max_side: int = 512  # long side cap before inference; aspect preserved
    output_pattern: str = "{stem}_labels.png"

    def __post_init__(self) -> None:
        if self.max_side < 32:
            raise ValueError(f"max_side must be at least 32, got {self.max_side}")
        if "{stem}" not in self.output_pattern:
            raise ValueError("output_pattern must contain {stem}")


def load_weights(cfg: InferenceConfig) -> torch.nn.Module:
    """Build the network and load the checkpoint, or explain how to get one."""
    if not os.path.isfile(cfg.weights):
        raise MissingWeightsError(f"weights file not found: {cfg.weights}; {WEIGHTS_HINT}")
    model = build_model()
    try:
        state = torch.load(cfg.weights, map_location="cpu", weights_only=True)
        model.load_state_dict(state)
    except (RuntimeError, ValueError, KeyError) as exc:
        raise MissingWeightsError(f"cannot load weights from {cfg.weights}: {exc}") from exc
    model.eval()
    return model


def _prepare(image_path: str, max_side: int) -> tuple[torch.Tensor, tuple[int, int]]:
    with Image.open(image_path) as im:
        im = im.convert("RGB")
        full_size = (im.height, im.width)
        scale = max(im.width, im.height) / float(max_side)
        if scale > 1.0:
            im = im.resize(
                (max(1, round(im.width / scale)), max(1, round(im.height / scale))),
                Image.BILINEAR,
            )
        arr = np.asarray(im, dtype=np.float32) / 255.0
    arr = (arr - _MEAN) / _STD
    tensor = torch.from_numpy(arr.transpose(2, 0, 1))[None]
    return tensor, full_size


def infer_labels(
    image_path: str | os.PathLike,
    cfg: InferenceConfig,
    out_dir: str | os.PathLike,
    model: torch.nn.Module | None = None,
) -> str:
    """Write the per-pixel argmax class-ID PNG for one image.

    The network runs at most at cfg.max_side resolution; the class-ID
    map is upsampled back to the input size with nearest-neighbor. The
    file is written atomically (temp + rename). Returns the output path.
    """
    if model is None:
        model = load_weights(cfg)
    tensor, (height, width) = _prepare(os.fspath(image_path), cfg.max_side)
    with torch.no_grad():
        logits = model(tensor)
    ids = logits[0].argmax(dim=0).numpy().astype(np.uint8)
    if ids.max(initial=0) >= N_CLASSES:
        raise RuntimeError(f"model produced class ID {ids.max()} outside [0, {N_CLASSES - 1}]")

    # nearest-neighbor upsample of the ID raster to the input resolution
    rows = np.minimum(
        (np.arange(height) + 0.5) * ids.shape[0] / height, ids.shape[0] - 1
    ).astype(np.int64)
    cols = np.minimum(
        (np.arange(width) + 0.5) * ids.shape[1] / width, ids.shape[1] - 1
    ).astype(np.int64)
    full = ids[rows[:, None], cols[None, :]]

    stem = os.path.splitext(os.path.basename(os.fspath(image_path)))[0]
    os.makedirs(out_dir, exist_ok=True)
    dest = os.path.join(os.fspath(out_dir), cfg.output_pattern.format(stem=stem))
    tmp = dest + ".tmp"
    Image.fromarray(full, mode="L").save(tmp, format="PNG")
    os.replace(tmp, dest)
    return dest
