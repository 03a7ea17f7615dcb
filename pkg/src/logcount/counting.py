"""Component counting with noise suppression and box annotation.

The counting path is: label the mask, gather component statistics, drop
components smaller than a minimum area (speckle noise inflates counts
otherwise), and report the survivors with their bounding boxes.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .labeling import (
    DEFAULT_CONNECTIVITY,
    ComponentStats,
    LabelMap,
    component_stats,
    label_scan,
)
from .raster import as_mask, mask_to_gray

ACCURACY_MODES = ("symmetric", "ratio")

# minimum component area defaults to 0.05% of the image area
AUTO_MIN_AREA_FRACTION = 0.0005


@dataclass(frozen=True)
class CountReport:
    """Counting outcome for one image.

    ``count_accuracy`` is present exactly when ``observed`` is; boxes are
    (x, y, w, h) for each surviving component.
    """

    image_id: str
    raw_components: int
    filtered_components: int
    min_area: int
    boxes: list[tuple[int, int, int, int]]
    observed: int | None = None
    count_accuracy: float | None = None


def auto_min_area(width: int, height: int) -> int:
    return max(1, int(width * height * AUTO_MIN_AREA_FRACTION))


def filter_components(
    lm: LabelMap, stats: list[ComponentStats], min_area: int
) -> tuple[LabelMap, list[ComponentStats]]:
    """Relabel components below ``min_area`` to background.

    Survivors keep their relative order and are renumbered densely; the
    returned stats match the new map.
    """
    if len(stats) != lm.count:
        raise ValueError(f"stats has {len(stats)} entries for {lm.count} components")
    keep = [s for s in stats if s.area >= min_area]
    if len(keep) == lm.count:
        return lm, list(stats)
    lut = np.zeros(lm.count + 1, dtype=np.int32)
    new_stats = []
    for new_id, s in enumerate(keep, start=1):
        lut[s.label] = new_id
        new_stats.append(replace(s, label=new_id))
    return LabelMap(lut[lm.labels], len(keep)), new_stats


def count_accuracy(counted: int, observed: int, mode: str = "symmetric") -> float:
    """Percentage agreement between an algorithmic and an observed count.

    The symmetric form, 100 * (1 - |counted - observed| / observed)
    clamped below at zero, penalizes over- and under-counting equally.
    The ratio form is plain 100 * counted / observed and may exceed 100.
    """
    if observed < 1:
        raise ValueError(f"observed count must be >= 1, got {observed}")
    if mode == "symmetric":
        return max(0.0, 100.0 * (1.0 - abs(counted - observed) / observed))
    if mode == "ratio":
        return 100.0 * counted / observed
    raise ValueError(f"unknown accuracy mode {mode!r} (expected symmetric or ratio)")


def count(
    mask: np.ndarray,
    connectivity: int = DEFAULT_CONNECTIVITY,
    min_area: int = 1,
    image_id: str = "",
    observed: int | None = None,
    accuracy_mode: str = "symmetric",
) -> CountReport:
    """Label, filter and count one mask."""
    mask = as_mask(mask)
    lm = label_scan(mask, connectivity)
    stats = component_stats(lm)
    _, surviving = filter_components(lm, stats, min_area)
    acc = None
    if observed is not None:
        acc = count_accuracy(len(surviving), observed, accuracy_mode)
    return CountReport(
        image_id=image_id,
        raw_components=lm.count,
        filtered_components=len(surviving),
        min_area=min_area,
        boxes=[s.bbox for s in surviving],
        observed=observed,
        count_accuracy=acc,
    )


# 3x5 digit glyphs for the burned-in count caption
_GLYPHS = {
    "0": ("111", "101", "101", "101", "111"),
    "1": ("010", "110", "010", "010", "111"),
    "2": ("111", "001", "111", "100", "111"),
    "3": ("111", "001", "011", "001", "111"),
    "4": ("101", "101", "111", "001", "001"),
    "5": ("111", "100", "111", "001", "111"),
    "6": ("111", "100", "111", "101", "111"),
    "7": ("111", "001", "010", "010", "010"),
    "8": ("111", "101", "111", "101", "111"),
    "9": ("111", "101", "111", "001", "111"),
}

OVERLAY_VALUE = 128  # mid-gray: distinct from both mask levels
_CAPTION_SCALE = 2
_CAPTION_MARGIN = 2


def annotate(mask: np.ndarray, report: CountReport) -> np.ndarray:
    """Render the mask with one box outline per survivor and a count caption.

    Overlay pixels are drawn at intensity 128 so they stand apart from
    the 0/255 mask rendering.  Returns a gray image.
    """
    mask = as_mask(mask)
    h, w = mask.shape
    img = mask_to_gray(mask)
    for x, y, bw, bh in report.boxes:
        if x < 0 or y < 0 or x + bw > w or y + bh > h or bw < 1 or bh < 1:
            raise ValueError(f"box {(x, y, bw, bh)} falls outside the {w}x{h} image")
        img[y, x : x + bw] = OVERLAY_VALUE
        img[y + bh - 1, x : x + bw] = OVERLAY_VALUE
        img[y : y + bh, x] = OVERLAY_VALUE
        img[y : y + bh, x + bw - 1] = OVERLAY_VALUE
    _draw_caption(img, str(report.filtered_components))
    return img


def _draw_caption(img: np.ndarray, text: str) -> None:
    h, w = img.shape
    s = _CAPTION_SCALE
    cx = _CAPTION_MARGIN
    for ch in text:
        glyph = _GLYPHS.get(ch)
        if glyph is None:
            continue
        for gy, row in enumerate(glyph):
            for gx, bit in enumerate(row):
                if bit == "1":
                    y0 = _CAPTION_MARGIN + gy * s
                    x0 = cx + gx * s
                    img[y0 : min(y0 + s, h), x0 : min(x0 + s, w)] = OVERLAY_VALUE
        cx += (3 + 1) * s
        if cx >= w:
            break
