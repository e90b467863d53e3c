"""Iterative smoothing and line enhancing for building-outline extraction."""

from .canny import CannyParams, canny, gradient_field
from .hough import HoughParams, Line, hough_lines, mark_line_pixels, sharpen_at
from .image import (
    intensity_median,
    load_image,
    save_image,
    scale_brightness,
    to_luma,
)
from .l0 import SmoothParams, gradient_support_count, l0_objective, l0_smooth
from .masks import apply_mask, dilate, mask_from_labels
from .metrics import SsimParams, evaluate_batch, ssim
from .pipeline import (
    IsleOutput,
    ModeConfig,
    PipelineConfig,
    default_config,
    isle_run,
    select_mode,
)

__version__ = "0.1.0"

__all__ = [
    "CannyParams",
    "HoughParams",
    "IsleOutput",
    "Line",
    "ModeConfig",
    "PipelineConfig",
    "SmoothParams",
    "SsimParams",
    "apply_mask",
    "canny",
    "default_config",
    "dilate",
    "evaluate_batch",
    "gradient_field",
    "gradient_support_count",
    "hough_lines",
    "intensity_median",
    "isle_run",
    "l0_objective",
    "l0_smooth",
    "load_image",
    "mark_line_pixels",
    "mask_from_labels",
    "save_image",
    "scale_brightness",
    "select_mode",
    "sharpen_at",
    "ssim",
    "to_luma",
]
