"""Shared independent oracles and seeded generators for the test suite.

Everything here is deliberately naive: per-pixel double loops and
stack-based flood fill that restate the definitions directly, so the
fast implementations are checked against something that cannot share
their bugs.
"""

from __future__ import annotations

import numpy as np


def flood_fill_label(mask, connectivity):
    """Label components by stack-based flood fill.

    Components are numbered 1..K in the raster order of their first
    pixel, matching the library's canonical numbering.
    """
    mask = np.asarray(mask, dtype=bool)
    h, w = mask.shape
    labels = np.zeros((h, w), dtype=np.int32)
    if connectivity == 4:
        steps = ((-1, 0), (1, 0), (0, -1), (0, 1))
    else:
        steps = (
            (-1, 0), (1, 0), (0, -1), (0, 1),
            (-1, -1), (-1, 1), (1, -1), (1, 1),
        )
    k = 0
    for sy in range(h):
        for sx in range(w):
            if not mask[sy, sx] or labels[sy, sx]:
                continue
            k += 1
            stack = [(sy, sx)]
            labels[sy, sx] = k
            while stack:
                y, x = stack.pop()
                for dy, dx in steps:
                    ny, nx = y + dy, x + dx
                    if 0 <= ny < h and 0 <= nx < w and mask[ny, nx] and not labels[ny, nx]:
                        labels[ny, nx] = k
                        stack.append((ny, nx))
    return labels, k


def erode_oracle(mask, se):
    """Per-pixel restatement of erosion: every kernel cell on foreground."""
    mask = np.asarray(mask, dtype=bool)
    h, w = mask.shape
    out = np.zeros((h, w), dtype=bool)
    offsets = se.offsets()
    for y in range(h):
        for x in range(w):
            ok = True
            for dy, dx in offsets:
                ny, nx = y + dy, x + dx
                if not (0 <= ny < h and 0 <= nx < w) or not mask[ny, nx]:
                    ok = False
                    break
            out[y, x] = ok
    return out


def dilate_oracle(mask, se):
    """Per-pixel restatement of dilation with the reflected kernel."""
    mask = np.asarray(mask, dtype=bool)
    h, w = mask.shape
    out = np.zeros((h, w), dtype=bool)
    offsets = se.offsets()
    for y in range(h):
        for x in range(w):
            hit = False
            for dy, dx in offsets:
                ny, nx = y - dy, x - dx
                if 0 <= ny < h and 0 <= nx < w and mask[ny, nx]:
                    hit = True
                    break
            out[y, x] = hit
    return out


def random_mask(rng, max_h=64, max_w=64, min_h=1, min_w=1):
    """Random mask with size and density drawn from the given generator."""
    h = int(rng.integers(min_h, max_h + 1))
    w = int(rng.integers(min_w, max_w + 1))
    density = rng.uniform(0.05, 0.95)
    return rng.random((h, w)) < density


def canonical_renumber(labels):
    """Renumber nonzero labels densely by first-encounter raster order."""
    labels = np.asarray(labels)
    out = np.zeros_like(labels)
    mapping = {}
    flat_in = labels.ravel()
    flat_out = out.ravel()
    for i, v in enumerate(flat_in):
        if v:
            m = mapping.get(v)
            if m is None:
                m = len(mapping) + 1
                mapping[v] = m
            flat_out[i] = m
    return out


def adversarial_masks():
    """Named fixture masks that stress the labelers."""
    out = {}

    spiral = np.zeros((21, 21), dtype=bool)
    x0, y0, x1, y1 = 0, 0, 20, 20
    while x0 <= x1 and y0 <= y1:
        spiral[y0, x0 : x1 + 1] = True
        spiral[y0 : y1 + 1, x1] = True
        spiral[y1, x0 : x1 + 1] = True
        spiral[y0 : y1 + 1, x0] = True
        x0 += 2
        y0 += 2
        x1 -= 2
        y1 -= 2
    out["spiral"] = spiral

    yy, xx = np.mgrid[0:16, 0:16]
    out["checkerboard"] = (yy + xx) % 2 == 0

    ry, rx = np.mgrid[0:25, 0:25]
    dist = np.maximum(np.abs(ry - 12), np.abs(rx - 12))
    out["concentric_rings"] = dist % 2 == 0

    out["single_row"] = np.ones((1, 40), dtype=bool)
    out["single_column"] = np.ones((40, 1), dtype=bool)
    out["single_pixel"] = np.ones((1, 1), dtype=bool)
    out["empty"] = np.zeros((9, 9), dtype=bool)
    out["full"] = np.ones((9, 9), dtype=bool)

    u = np.zeros((6, 7), dtype=bool)
    u[0:5, 1] = True
    u[0:5, 5] = True
    u[5, 1:6] = True
    out["u_shape"] = u

    diag = np.zeros((12, 12), dtype=bool)
    for i in range(12):
        diag[i, i] = True
    out["diagonal"] = diag

    stripes = np.zeros((10, 10), dtype=bool)
    stripes[:, ::2] = True
    out["vertical_stripes"] = stripes

    border = np.zeros((8, 8), dtype=bool)
    border[0, :] = border[-1, :] = border[:, 0] = border[:, -1] = True
    out["border_ring"] = border

    return out
