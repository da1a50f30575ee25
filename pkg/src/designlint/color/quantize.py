"""Dominant-color extraction via median-cut quantization."""

from __future__ import annotations

import numpy as np

from ..errors import EmptyImageError
from ..model import RgbaColor


def _as_pixel_array(pixels) -> np.ndarray:
    """Normalize raster input (HxWx3/4 array, rows of tuples, or flat pixels) to Nx3."""
    arr = np.asarray(pixels)
    if arr.size == 0:
        raise EmptyImageError("image raster has no pixels")
    if arr.ndim == 3:
        arr = arr.reshape(-1, arr.shape[-1])
    elif arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2 or arr.shape[-1] not in (3, 4):
        raise EmptyImageError(f"expected RGB(A) pixels, got shape {np.asarray(pixels).shape}")
    return arr[:, :3].astype(np.int64)


def dominant_colors(pixels, k: int = 5) -> list[RgbaColor]:
    """The ``k`` dominant colors of a raster, most populous first.

    Median cut: repeatedly split the bucket with the widest channel range at
    its median until ``k`` buckets exist (buckets that cannot be split are
    left alone, so fewer than ``k`` colors may come back). Each bucket is
    averaged and the results are ordered by pixel population, descending.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    arr = _as_pixel_array(pixels)

    buckets = [arr]
    while len(buckets) < k:
        widest_idx = -1
        widest_range = 0
        widest_channel = 0
        for i, bucket in enumerate(buckets):
            if len(bucket) < 2:
                continue
            ranges = bucket.max(axis=0) - bucket.min(axis=0)
            channel = int(ranges.argmax())
            if ranges[channel] > widest_range:
                widest_range = int(ranges[channel])
                widest_idx = i
                widest_channel = channel
        if widest_idx < 0 or widest_range == 0:
            break
        bucket = buckets.pop(widest_idx)
        order = bucket[:, widest_channel].argsort(kind="stable")
        bucket = bucket[order]
        mid = len(bucket) // 2
        buckets.append(bucket[:mid])
        buckets.append(bucket[mid:])

    buckets.sort(key=len, reverse=True)
    out = []
    for bucket in buckets:
        mean = bucket.mean(axis=0)
        out.append(RgbaColor(int(round(mean[0])), int(round(mean[1])), int(round(mean[2]))))
    return out
