import numpy as np
import pytest
import torch
from PIL import Image

from maskgen.model import build_model


@pytest.fixture(scope="session")
def checkpoint(tmp_path_factory):
    """A saved (randomly initialized) checkpoint exercising the real load path."""
    torch.manual_seed(0)
    model = build_model()
    path = tmp_path_factory.mktemp("weights") / "scene_parser.pt"
    torch.save(model.state_dict(), path)
    return str(path)


@pytest.fixture(scope="session")
def photo(tmp_path_factory):
    """A small synthetic photo on disk."""
    rng = np.random.default_rng(1)
    arr = (rng.uniform(0.2, 0.9, (96, 128, 3)) * 255).astype(np.uint8)
    arr[40:90, 30:100] = (140, 120, 100)  # a building-ish block
    path = tmp_path_factory.mktemp("photos") / "house.png"
    Image.fromarray(arr).save(path)
    return str(path)
