"""Counting log faces in binary masks.

A library and CLI for the non-neural half of a log-counting flow:
binary morphology, connected-components labeling with statistics,
noise-suppressed counting with box annotation, supervised segmentation
scoring, and a seeded synthetic-pile generator for end-to-end checks.
"""

__version__ = "0.1.0"

from .counting import (
    CountReport,
    annotate,
    auto_min_area,
    count,
    count_accuracy,
    filter_components,
)
from .labeling import (
    ComponentStats,
    LabelMap,
    component_stats,
    label_scan,
    label_union_find,
)
from .metrics import ConfusionCounts, IndexReport, confusion, evaluate_batch, indices
from .morphology import StructuringElement, dilate, erode, erode_iterated
from .raster import (
    DecodeError,
    Resolution,
    UnsupportedFormatError,
    decode_image,
    encode_gray,
    encode_mask,
    encode_rgb,
    luminance,
    mask_to_gray,
    threshold,
)
from .synth import PRNG_NAME, PileSpec, PlacementError, SynthTruth, generate, oracle_count

__all__ = [
    "__version__",
    "ComponentStats",
    "ConfusionCounts",
    "CountReport",
    "DecodeError",
    "IndexReport",
    "LabelMap",
    "PRNG_NAME",
    "PileSpec",
    "PlacementError",
    "Resolution",
    "StructuringElement",
    "SynthTruth",
    "UnsupportedFormatError",
    "annotate",
    "auto_min_area",
    "component_stats",
    "confusion",
    "count",
    "count_accuracy",
    "decode_image",
    "dilate",
    "encode_gray",
    "encode_mask",
    "encode_rgb",
    "erode",
    "erode_iterated",
    "evaluate_batch",
    "filter_components",
    "generate",
    "indices",
    "label_scan",
    "label_union_find",
    "luminance",
    "mask_to_gray",
    "oracle_count",
    "threshold",
]
