"""Iterative smoothing and line enhancing.

One run selects an illumination mode from the intensity-histogram
median, brightens the working image by the mode's factor, then loops:
smooth with a growing gradient-count weight, extract edges, detect
straight lines, and sharpen the image at the detected line pixels. The
output is the edge map of the last sharpened image, optionally refined
by a dilated building mask.
"""

from __future__ import annotations

import dataclasses
import hashlib
import os
from dataclasses import dataclass, field

import numpy as np

from .canny import CannyParams, canny
from .hough import HoughParams, hough_lines, mark_line_pixels, sharpen_at
from .image import as_rgb, intensity_median, save_image, scale_brightness, to_luma
from .l0 import SmoothParams, l0_smooth
from .masks import apply_mask, dilate

__all__ = [
    "ModeConfig",
    "PipelineConfig",
    "IterationRecord",
    "IsleOutput",
    "select_mode",
    "isle_run",
    "default_config",
    "load_config",
    "save_config",
]

LINE_TOL = 1.5  # px, distance for marking edge pixels as line positions

MODE_NAMES = ("high", "medium", "low")


@dataclass(frozen=True)
class ModeConfig:
    name: str
    canny: CannyParams
    max_iter: int
    brightness_factor: float = 1.0

    def __post_init__(self) -> None:
        if self.name not in MODE_NAMES:
            raise ValueError(f"mode name must be one of {MODE_NAMES}, got {self.name!r}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.brightness_factor < 1.0:
            raise ValueError(f"brightness_factor must be >= 1, got {self.brightness_factor}")


@dataclass(frozen=True)
class PipelineConfig:
    t_high: int
    t_low: int
    lambda_seq: tuple[float, ...]
    modes: tuple[ModeConfig, ModeConfig, ModeConfig]  # high, medium, low
    hough: HoughParams = HoughParams()
    solver: SmoothParams = SmoothParams(lam=0.0)
    mask_dilation_radius: int = 5

    def __post_init__(self) -> None:
        if not 0 <= self.t_low < self.t_high <= 255:
            raise ValueError(
                f"need 0 <= t_low < t_high <= 255, got t_low={self.t_low} t_high={self.t_high}"
            )
        seq = tuple(float(v) for v in self.lambda_seq)
        if not seq or any(v <= 0 for v in seq):
            raise ValueError("lambda_seq must be a nonempty list of positive values")
        if any(a >= b for a, b in zip(seq, seq[1:])):
            raise ValueError(f"lambda_seq must be strictly ascending, got {seq}")
        object.__setattr__(self, "lambda_seq", seq)
        names = tuple(m.name for m in self.modes)
        if names != MODE_NAMES:
            raise ValueError(f"modes must be ordered {MODE_NAMES}, got {names}")
        for m in self.modes:
            if m.max_iter > len(seq):
                raise ValueError(
                    f"{m.name} mode max_iter={m.max_iter} exceeds lambda_seq length {len(seq)}"
                )
        if self.mask_dilation_radius < 1:
            raise ValueError("mask_dilation_radius must be >= 1")

    def mode(self, name: str) -> ModeConfig:
        for m in self.modes:
            if m.name == name:
                return m
        raise KeyError(name)


@dataclass(frozen=True)
class IterationRecord:
    lam: float
    line_count: int
    smoothed_checksum: str


@dataclass(frozen=True)
class IsleOutput:
    raw_edges: np.ndarray
    refined_edges: np.ndarray
    mode: str
    iterations: tuple[IterationRecord, ...] = field(default=())


def default_config() -> PipelineConfig:
    return PipelineConfig(
        t_high=120,
        t_low=90,
        lambda_seq=(0.001, 0.003, 0.005, 0.008, 0.01, 0.02, 0.03),
        modes=(
            ModeConfig("high", CannyParams(0.05, 0.45), max_iter=7, brightness_factor=1.0),
            ModeConfig("medium", CannyParams(0.05, 0.35), max_iter=5, brightness_factor=1.3),
            ModeConfig("low", CannyParams(0.05, 0.30), max_iter=3, brightness_factor=1.5),
        ),
    )


def select_mode(med: int, cfg: PipelineConfig) -> ModeConfig:
    """Mode for a given intensity median: strictly above t_high is high,
    strictly below t_low is low, boundaries fall to medium."""
    if not 0 <= med <= 255:
        raise ValueError(f"median must be in [0, 255], got {med}")
    if med > cfg.t_high:
        return cfg.mode("high")
    if med < cfg.t_low:
        return cfg.mode("low")
    return cfg.mode("medium")


def _checksum(img: np.ndarray) -> str:
    return hashlib.sha256(np.ascontiguousarray(img).tobytes()).hexdigest()[:16]


def isle_run(
    img: np.ndarray,
    mask: np.ndarray | None = None,
    cfg: PipelineConfig | None = None,
    dump_dir: str | os.PathLike | None = None,
) -> IsleOutput:
    """Run the full iterative pipeline on an RGB image.

    When a building mask is given it restricts line extraction and the
    final refinement, both through the same dilation radius. Identical
    inputs and config produce bit-identical outputs. With dump_dir set,
    per-iteration smoothed images, edge maps and line masks are written
    as iter_{k:02d}_{stage}.png.
    """
    cfg = cfg or default_config()
    a = as_rgb(img)
    dilated = None
    if mask is not None:
        m = np.asarray(mask, dtype=bool)
        if m.shape != a.shape[:2]:
            raise ValueError(f"mask shape {m.shape} does not match image {a.shape[:2]}")
        dilated = dilate(m, cfg.mask_dilation_radius)

    if dump_dir is not None:
        os.makedirs(dump_dir, exist_ok=True)
    mode = select_mode(intensity_median(to_luma(a)), cfg)
    working = scale_brightness(a, mode.brightness_factor)

    records = []
    for k in range(mode.max_iter):
        lam = cfg.lambda_seq[k]
        working = l0_smooth(working, dataclasses.replace(cfg.solver, lam=lam))
        edges_k = canny(to_luma(working), mode.canny)
        lines = hough_lines(edges_k, cfg.hough, region=dilated)
        marked = mark_line_pixels(edges_k, lines, LINE_TOL)
        records.append(IterationRecord(lam, len(lines), _checksum(working)))
        if dump_dir is not None:
            save_image(working, os.path.join(dump_dir, f"iter_{k + 1:02d}_smoothed.png"))
            save_image(edges_k, os.path.join(dump_dir, f"iter_{k + 1:02d}_edges.png"))
            save_image(marked, os.path.join(dump_dir, f"iter_{k + 1:02d}_linemask.png"))
        working = sharpen_at(working, marked)

    raw = canny(to_luma(working), mode.canny)
    refined = apply_mask(raw, dilated) if dilated is not None else raw.copy()
    return IsleOutput(raw, refined, mode.name, tuple(records))


# --- config file round-trip -------------------------------------------------
#
# Flat `key = value` lines with dotted keys; lists are space separated.


def save_config(cfg: PipelineConfig, path: str | os.PathLike) -> None:
    lines = [
        f"t_high = {cfg.t_high}",
        f"t_low = {cfg.t_low}",
        "lambda_seq = " + " ".join(repr(v) for v in cfg.lambda_seq),
        f"mask_dilation_radius = {cfg.mask_dilation_radius}",
        f"solver.beta0_factor = {cfg.solver.beta0_factor!r}",
        f"solver.kappa = {cfg.solver.kappa!r}",
        f"solver.beta_max = {cfg.solver.beta_max!r}",
        f"hough.rho_res = {cfg.hough.rho_res!r}",
        f"hough.theta_res = {cfg.hough.theta_res!r}",
        f"hough.vote_frac = {cfg.hough.vote_frac!r}",
        "hough.nms_window = {} {}".format(*cfg.hough.nms_window),
    ]
    for m in cfg.modes:
        p = f"mode.{m.name}"
        lines += [
            f"{p}.canny_low = {m.canny.low!r}",
            f"{p}.canny_high = {m.canny.high!r}",
            f"{p}.canny_sigma = {m.canny.sigma!r}",
            f"{p}.max_iter = {m.max_iter}",
            f"{p}.brightness_factor = {m.brightness_factor!r}",
        ]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_config(path: str | os.PathLike) -> PipelineConfig:
    """Read a key/value config file, starting from the shipped defaults."""
    kv: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value, got {raw.rstrip()!r}")
            key, _, value = line.partition("=")
            kv[key.strip()] = value.strip()

    base = default_config()

    def take(key: str, default):
        if key not in kv:
            return default
        text = kv.pop(key)
        try:
            if isinstance(default, int) and not isinstance(default, bool):
                return int(text)
            return float(text)
        except ValueError as exc:
            raise ValueError(f"{path}: bad value for {key}: {text!r}") from exc

    t_high = take("t_high", base.t_high)
    t_low = take("t_low", base.t_low)
    if "lambda_seq" in kv:
        try:
            lambda_seq = tuple(float(v) for v in kv.pop("lambda_seq").split())
        except ValueError as exc:
            raise ValueError(f"{path}: bad lambda_seq") from exc
    else:
        lambda_seq = base.lambda_seq
    radius = take("mask_dilation_radius", base.mask_dilation_radius)
    solver = SmoothParams(
        lam=0.0,
        beta0_factor=take("solver.beta0_factor", base.solver.beta0_factor),
        kappa=take("solver.kappa", base.solver.kappa),
        beta_max=take("solver.beta_max", base.solver.beta_max),
    )
    if "hough.nms_window" in kv:
        parts = kv.pop("hough.nms_window").split()
        if len(parts) != 2:
            raise ValueError(f"{path}: hough.nms_window needs two integers")
        nms_window = (int(parts[0]), int(parts[1]))
    else:
        nms_window = base.hough.nms_window
    hough = HoughParams(
        rho_res=take("hough.rho_res", base.hough.rho_res),
        theta_res=take("hough.theta_res", base.hough.theta_res),
        vote_frac=take("hough.vote_frac", base.hough.vote_frac),
        nms_window=nms_window,
    )
    modes = []
    for m in base.modes:
        p = f"mode.{m.name}"
        modes.append(
            ModeConfig(
                m.name,
                CannyParams(
                    low=take(f"{p}.canny_low", m.canny.low),
                    high=take(f"{p}.canny_high", m.canny.high),
                    sigma=take(f"{p}.canny_sigma", m.canny.sigma),
                ),
                max_iter=take(f"{p}.max_iter", m.max_iter),
                brightness_factor=take(f"{p}.brightness_factor", m.brightness_factor),
            )
        )
    if kv:
        raise ValueError(f"{path}: unknown config keys: {', '.join(sorted(kv))}")
    return PipelineConfig(
        t_high=t_high,
        t_low=t_low,
        lambda_seq=lambda_seq,
        modes=tuple(modes),
        hough=hough,
        solver=solver,
        mask_dilation_radius=radius,
    )
