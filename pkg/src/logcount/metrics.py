"""Supervised segmentation scoring against ground-truth masks.

Foreground is the positive class.  Four indices are derived from the
pixel confusion counts:

    accuracy = (TP + TN) / N
    f1       = 2 TP / (2 TP + FP + FN)
    iou      = TP / (TP + FP + FN)
    kappa    = (p_o - p_e) / (1 - p_e),
               p_e = [(TP+FP)(TP+FN) + (FN+TN)(FP+TN)] / N^2

Degenerate denominators default to the perfect-agreement convention
(an all-background truth scored by an all-background prediction is a
perfect result); pass ``nan_degenerate=True`` to propagate NaN instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .raster import as_mask


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


@dataclass(frozen=True)
class IndexReport:
    accuracy: float
    f1: float
    kappa: float
    iou: float


def confusion(pred, truth) -> ConfusionCounts:
    """Tally per-pixel agreement between a prediction and its ground truth."""
    pred = as_mask(pred)
    truth = as_mask(truth)
    if pred.shape != truth.shape:
        raise ValueError(
            f"shape mismatch: prediction is {pred.shape[1]}x{pred.shape[0]}, "
            f"truth is {truth.shape[1]}x{truth.shape[0]}"
        )
    tp = int(np.count_nonzero(pred & truth))
    fp = int(np.count_nonzero(pred & ~truth))
    fn = int(np.count_nonzero(~pred & truth))
    tn = pred.size - tp - fp - fn
    return ConfusionCounts(tp=tp, fp=fp, tn=tn, fn=fn)


def indices(c: ConfusionCounts, nan_degenerate: bool = False) -> IndexReport:
    """Compute the four indices from confusion counts."""
    tp, fp, tn, fn = c.tp, c.fp, c.tn, c.fn
    n = tp + fp + tn + fn
    if n <= 0:
        raise ValueError("confusion counts are all zero; nothing to score")
    if min(tp, fp, tn, fn) < 0:
        raise ValueError("confusion counts must be non-negative")
    degenerate = math.nan if nan_degenerate else 1.0
    accuracy = (tp + tn) / n

    f1_den = 2 * tp + fp + fn
    f1 = 2 * tp / f1_den if f1_den else degenerate

    iou_den = tp + fp + fn
    iou = tp / iou_den if iou_den else degenerate

    # exact integer arithmetic keeps kappa stable near p_e = 1
    pe_num = (tp + fp) * (tp + fn) + (fn + tn) * (fp + tn)
    pe_den = n * n
    if pe_num == pe_den:
        if nan_degenerate:
            kappa = math.nan
        else:
            kappa = 1.0 if tp + tn == n else 0.0
    else:
        kappa = ((tp + tn) * n - pe_num) / (pe_den - pe_num)
    return IndexReport(accuracy=accuracy, f1=f1, kappa=kappa, iou=iou)


def evaluate_batch(
    pairs, nan_degenerate: bool = False
) -> tuple[list[IndexReport], IndexReport]:
    """Score (prediction, truth) pairs; means are unweighted over images.

    Returns per-pair reports plus the arithmetic mean of each index.
    Means are over images, not pooled pixels, so differently sized
    images carry equal weight.
    """
    pairs = list(pairs)
    if not pairs:
        raise ValueError("evaluate_batch needs at least one (prediction, truth) pair")
    reports = []
    for i, (pred, truth) in enumerate(pairs):
        try:
            reports.append(indices(confusion(pred, truth), nan_degenerate))
        except ValueError as exc:
            raise ValueError(f"pair {i}: {exc}") from exc
    k = len(reports)
    means = IndexReport(
        accuracy=sum(r.accuracy for r in reports) / k,
        f1=sum(r.f1 for r in reports) / k,
        kappa=sum(r.kappa for r in reports) / k,
        iou=sum(r.iou for r in reports) / k,
    )
    return reports, means
