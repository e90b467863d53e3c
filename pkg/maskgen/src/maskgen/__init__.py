"""Scene-parsing inference that emits ADE20K label-map PNGs."""

from .infer import InferenceConfig, MissingWeightsError, infer_labels, load_weights
from .model import N_CLASSES, build_model

__version__ = "0.1.0"

__all__ = [
    "InferenceConfig",
    "MissingWeightsError",
    "N_CLASSES",
    "build_model",
    "infer_labels",
    "load_weights",
]
