"""Shared fixtures: a 20-image natural test set and synthetic scenes."""

from __future__ import annotations

import numpy as np
import pytest
import skimage.data


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    """One pass/fail line per acceptance criterion."""
    outcome = yield
    rep = outcome.get_result()
    if item.module.__name__ != "test_acceptance":
        return
    if rep.when == "call" or (rep.when == "setup" and rep.skipped):
        label = (item.function.__doc__ or item.name).strip().splitlines()[0]
        status = "PASS" if rep.passed else ("SKIP" if rep.skipped else "FAIL")
        print(f"\n[acceptance] {status}: {label}")


def _rgb(arr: np.ndarray) -> np.ndarray:
    a = np.asarray(arr)
    if a.dtype == np.uint8:
        a = a.astype(np.float64) / 255.0
    else:
        a = a.astype(np.float64)
        if a.max() > 1.0:
            a = a / a.max()
    if a.ndim == 2:
        a = np.repeat(a[:, :, None], 3, axis=2)
    elif a.shape[2] == 4:
        a = a[:, :, :3]
    return np.clip(a, 0.0, 1.0)


def _shrink(img: np.ndarray, limit: int = 192) -> np.ndarray:
    # block-mean downsampling; plain striding would alias texture into noise
    step = max(1, int(np.ceil(max(img.shape[:2]) / limit)))
    if step == 1:
        return img
    h, w = (img.shape[0] // step) * step, (img.shape[1] // step) * step
    a = img[:h, :w].reshape(h // step, step, w // step, step, 3)
    return a.mean(axis=(1, 3))


def natural_image_set() -> list[np.ndarray]:
    """20 structured natural photographs, downscaled for test speed.

    Scene and object photos matching the pipeline's target inputs; dense
    texture macros (grass, fur) sit outside the solver's working regime.
    """
    d = skimage.data
    retina = d.retina()
    base = [
        d.camera(), d.astronaut(), d.coins(), d.moon(), d.page(),
        d.text(), d.clock(), d.coffee(), d.rocket(), d.hubble_deep_field(),
        d.cell(), d.logo(), d.brick(),
        retina[:700, :700], retina[700:, 700:],
        d.astronaut()[:256, 100:356], d.coffee()[:300, 140:440],
        d.rocket()[100:356, 300:556], d.hubble_deep_field()[200:600, 300:700],
        d.clock()[:256, 60:316],
    ]
    return [_shrink(_rgb(a)) for a in base]


@pytest.fixture(scope="session")
def natural_images() -> list[np.ndarray]:
    imgs = natural_image_set()
    assert len(imgs) == 20
    return imgs
