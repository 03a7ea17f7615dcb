"""Connected-components labeling with per-component statistics.

Two independent labelers share one contract:

* :func:`label_scan` -- classic two-pass raster scan.  Pass 1 hands each
  foreground pixel a provisional label from its already-visited neighbors
  and records label equivalences in a table; pass 2 resolves the table
  and renumbers densely.
* :func:`label_union_find` -- single-scan variant that merges provisional
  labels in a disjoint-set forest the moment a conflict is seen, then
  renumbers in a second sweep.

Both number components 1..K in first-encounter raster order, so equal
inputs yield identical label maps; tests exploit that for cross-checks.

A note on neighbor sets: raster-scan formulations that probe the
northwest diagonal in isolation from west/north mix two adjacency
relations and can leak a label across a background gap.  The variants
here are strict: 4-connectivity consults west and north, 8-connectivity
additionally northwest and northeast.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .raster import as_mask

DEFAULT_CONNECTIVITY = 8


@dataclass(frozen=True, eq=False)
class LabelMap:
    """Dense component ids per pixel: 0 is background, components are 1..count."""

    labels: np.ndarray
    count: int

    @property
    def width(self) -> int:
        return self.labels.shape[1]

    @property
    def height(self) -> int:
        return self.labels.shape[0]


@dataclass(frozen=True)
class ComponentStats:
    """Area, bounding box and centroid of one component.

    ``bbox`` is (min_x, min_y, width, height); ``centroid`` is the mean
    (x, y) of member pixels.
    """

    label: int
    area: int
    bbox: tuple[int, int, int, int]
    centroid: tuple[float, float]


def _check_connectivity(connectivity: int) -> None:
    if connectivity not in (4, 8):
        raise ValueError(f"connectivity must be 4 or 8, got {connectivity}")


def label_scan(mask: np.ndarray, connectivity: int = DEFAULT_CONNECTIVITY) -> LabelMap:
    """Two-pass raster-scan labeling with an explicit equivalence table."""
    _check_connectivity(connectivity)
    mask = as_mask(mask)
    h, w = mask.shape
    n = h * w
    flat = mask.ravel().tolist()
    labels = [0] * n
    pairs: list[tuple[int, int]] = []
    nxt = 1
    eight = connectivity == 8
    wm1 = w - 1
    find_fg = flat.index
    append_pair = pairs.append
    idx = -1
    while True:
        try:
            idx = find_fg(True, idx + 1)
        except ValueError:
            break
        y, x = divmod(idx, w)
        a = labels[idx - 1] if x else 0  # west
        b = labels[idx - w] if y else 0  # north
        c = d = 0
        if eight and y:
            if x:
                c = labels[idx - w - 1]  # northwest
            if x != wm1:
                d = labels[idx - w + 1]  # northeast
        lab = a or b or c or d
        if lab:
            if b and b != lab:
                append_pair((lab, b))
            if c and c != lab:
                append_pair((lab, c))
            if d and d != lab:
                append_pair((lab, d))
        else:
            lab = nxt
            nxt += 1
        labels[idx] = lab

    # resolve the equivalence table: union by size with path compression
    parent = list(range(nxt))
    size = [1] * nxt
    for p, q in pairs:
        rp = p
        while parent[rp] != rp:
            parent[rp] = parent[parent[rp]]
            rp = parent[rp]
        rq = q
        while parent[rq] != rq:
            parent[rq] = parent[parent[rq]]
            rq = parent[rq]
        if rp != rq:
            if size[rp] < size[rq]:
                rp, rq = rq, rp
            parent[rq] = rp
            size[rp] += size[rq]
    return _renumber(labels, parent, nxt, h, w)


def label_union_find(
    mask: np.ndarray, connectivity: int = DEFAULT_CONNECTIVITY
) -> LabelMap:
    """Single-scan labeling merging provisional labels online."""
    _check_connectivity(connectivity)
    mask = as_mask(mask)
    h, w = mask.shape
    n = h * w
    flat = mask.ravel().tolist()
    labels = [0] * n
    # provisional labels are bounded by the checkerboard worst case
    parent = list(range(n // 2 + 2))
    nxt = 1
    eight = connectivity == 8
    wm1 = w - 1
    find_fg = flat.index
    idx = -1
    while True:
        try:
            idx = find_fg(True, idx + 1)
        except ValueError:
            break
        y, x = divmod(idx, w)
        a = labels[idx - 1] if x else 0
        b = labels[idx - w] if y else 0
        c = d = 0
        if eight and y:
            if x:
                c = labels[idx - w - 1]
            if x != wm1:
                d = labels[idx - w + 1]
        if not (a or b or c or d):
            labels[idx] = nxt
            nxt += 1
            continue
        best = 0
        for v in (a, b, c, d):
            if v:
                while parent[v] != v:  # find with path halving
                    parent[v] = parent[parent[v]]
                    v = parent[v]
                if best == 0 or v < best:
                    if best:
                        parent[best] = v  # smaller root absorbs larger
                    best = v
                elif v != best:
                    parent[v] = best
        labels[idx] = best
    return _renumber(labels, parent, nxt, h, w)


def _renumber(
    labels: list[int], parent: list[int], nxt: int, h: int, w: int
) -> LabelMap:
    """Map provisional labels to dense 1..K ids in first-encounter order."""
    lut = np.zeros(nxt, dtype=np.int32)
    root_of = [0] * nxt
    count = 0
    for p in range(1, nxt):
        r = p
        while parent[r] != r:
            parent[r] = parent[parent[r]]
            r = parent[r]
        m = root_of[r]
        if m == 0:
            count += 1
            m = count
            root_of[r] = m
        lut[p] = m
    lab = np.array(labels, dtype=np.int32).reshape(h, w)
    if count != nxt - 1:
        lab = lut[lab]
    return LabelMap(lab, count)


def component_stats(lm: LabelMap) -> list[ComponentStats]:
    """Per-component area, bounding box and centroid, ordered by label."""
    k = lm.count
    if k == 0:
        return []
    lab = lm.labels
    ys, xs = np.nonzero(lab)
    ls = lab[ys, xs]
    areas = np.bincount(ls, minlength=k + 1)
    sum_x = np.bincount(ls, weights=xs, minlength=k + 1)
    sum_y = np.bincount(ls, weights=ys, minlength=k + 1)
    min_x = np.full(k + 1, lm.width, dtype=np.int64)
    min_y = np.full(k + 1, lm.height, dtype=np.int64)
    max_x = np.full(k + 1, -1, dtype=np.int64)
    max_y = np.full(k + 1, -1, dtype=np.int64)
    np.minimum.at(min_x, ls, xs)
    np.minimum.at(min_y, ls, ys)
    np.maximum.at(max_x, ls, xs)
    np.maximum.at(max_y, ls, ys)
    out = []
    for lbl in range(1, k + 1):
        area = int(areas[lbl])
        out.append(
            ComponentStats(
                label=lbl,
                area=area,
                bbox=(
                    int(min_x[lbl]),
                    int(min_y[lbl]),
                    int(max_x[lbl] - min_x[lbl] + 1),
                    int(max_y[lbl] - min_y[lbl] + 1),
                ),
                centroid=(float(sum_x[lbl]) / area, float(sum_y[lbl]) / area),
            )
        )
    return out
