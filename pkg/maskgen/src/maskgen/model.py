"""Scene-parsing network: dilated ResNet50 encoder with a pyramid-pooling decoder.

The encoder is a standard ResNet50 with the last two stages dilated
(output stride 8). The decoder pools the 2048-channel feature map at
four scales, projects each pool to 512 channels, upsamples, concatenates
with the features, and classifies into the 150 ADE20K classes.
"""

from __future__ import annotations

import torch
from torch import nn
from torchvision.models import resnet50

N_CLASSES = 150

_POOL_SCALES = (1, 2, 3, 6)


class PyramidPooling(nn.Module):
    def __init__(self, in_channels: int = 2048, pool_channels: int = 512):
        super().__init__()
        self.stages = nn.ModuleList(
            nn.Sequential(
                nn.AdaptiveAvgPool2d(scale),
                nn.Conv2d(in_channels, pool_channels, kernel_size=1, bias=False),
                nn.BatchNorm2d(pool_channels),
                nn.ReLU(inplace=True),
            )
            for scale in _POOL_SCALES
        )
        fused = in_channels + pool_channels * len(_POOL_SCALES)
        self.fuse = nn.Sequential(
            nn.Conv2d(fused, pool_channels, kernel_size=3, padding=1, bias=False),
            nn.BatchNorm2d(pool_channels),
            nn.ReLU(inplace=True),
            nn.Dropout2d(0.1),
        )
        self.classify = nn.Conv2d(pool_channels, N_CLASSES, kernel_size=1)

    def forward(self, feats: torch.Tensor) -> torch.Tensor:
        size = feats.shape[-2:]
        pieces = [feats]
        for stage in self.stages:
            pooled = stage(feats)
            pieces.append(
                nn.functional.interpolate(pooled, size=size, mode="bilinear", align_corners=False)
            )
        return self.classify(self.fuse(torch.cat(pieces, dim=1)))


class SceneParser(nn.Module):
    """Per-pixel 150-class logits at 1/8 input resolution."""

    def __init__(self):
        super().__init__()
        backbone = resnet50(weights=None, replace_stride_with_dilation=[False, True, True])
        self.encoder = nn.Sequential(
            backbone.conv1,
            backbone.bn1,
            backbone.relu,
            backbone.maxpool,
            backbone.layer1,
            backbone.layer2,
            backbone.layer3,
            backbone.layer4,
        )
        self.decoder = PyramidPooling()

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return self.decoder(self.encoder(x))


def build_model() -> SceneParser:
    model = SceneParser()
    model.eval()
    return model
