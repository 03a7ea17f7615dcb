"""Seeded synthetic pile generator with exact ground truth.

Log faces are modeled as digital disks: pixel (x, y) belongs to a disk
of radius r at (cx, cy) iff (x-cx)^2 + (y-cy)^2 <= r^2.  Disks are
placed by rejection sampling with integer centers and radii, so every
mask is a pure function of its spec.

Randomness comes from the Mersenne Twister as exposed by
``random.Random`` seeded with ``PileSpec.seed``; that generator choice
is part of the reproducibility contract and is fixed forever.

``min_gap`` semantics:

* ``min_gap >= 0``: centers keep a strictly larger distance than the
  sum of radii plus the gap, so with ``min_gap >= 1`` no two disks can
  share 4-adjacent pixels (and with ``min_gap >= 2`` not even diagonal
  ones), and speckles are kept clear of every other component.
* ``min_gap < 0``: each disk after the first is placed in contact with
  one randomly chosen earlier disk (and clear of all others), with an
  edge gap drawn from [min_gap, 0] strongly biased toward tangency.
  That forces clusters joined by thin intersection bridges -- the
  failure mode that makes raw component counts undershoot and that a
  light erosion pass can partially undo.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from .raster import Resolution, as_mask

PRNG_NAME = "Mersenne Twister (random.Random)"

_MAX_ATTEMPTS = 10_000


class PlacementError(RuntimeError):
    """Placement did not fit within the attempt budget."""

    def __init__(self, what: str, placed: int, requested: int):
        super().__init__(
            f"could not place {what} {placed + 1} of {requested} "
            f"within {_MAX_ATTEMPTS} attempts"
        )
        self.placed = placed
        self.requested = requested


@dataclass(frozen=True)
class PileSpec:
    resolution: Resolution = Resolution(256, 256)
    n_logs: int = 25
    radius_range: tuple[int, int] = (4, 12)
    min_gap: float = 2.0
    noise_speckles: int = 0
    speckle_area_range: tuple[int, int] = (1, 5)
    seed: int = 0

    def __post_init__(self) -> None:
        w, h = self.resolution
        if w < 1 or h < 1:
            raise ValueError(f"resolution must be positive, got {w}x{h}")
        if self.n_logs < 0:
            raise ValueError("n_logs must be >= 0")
        rmin, rmax = self.radius_range
        if not (1 <= rmin <= rmax):
            raise ValueError(f"bad radius range {self.radius_range}")
        amin, amax = self.speckle_area_range
        if not (1 <= amin <= amax):
            raise ValueError(f"bad speckle area range {self.speckle_area_range}")
        if self.noise_speckles < 0:
            raise ValueError("noise_speckles must be >= 0")


@dataclass(frozen=True, eq=False)
class SynthTruth:
    mask: np.ndarray
    clean_mask: np.ndarray
    observed: int
    disks: list[tuple[int, int, int]] = field(default_factory=list)


def generate(spec: PileSpec) -> SynthTruth:
    """Generate a pile mask plus its speckle-free twin and exact truth."""
    rng = random.Random(spec.seed)
    w, h = spec.resolution
    rmin, rmax = spec.radius_range
    clean = np.zeros((h, w), dtype=bool)
    disks: list[tuple[int, int, int]] = []

    for i in range(spec.n_logs):
        r = rng.randint(rmin, rmax)
        for _ in range(_MAX_ATTEMPTS):
            if spec.min_gap >= 0 or not disks:
                if 2 * r >= w or 2 * r >= h:
                    continue
                cx = rng.randint(r, w - 1 - r)
                cy = rng.randint(r, h - 1 - r)
                if disks and not _separated(disks, cx, cy, r, spec.min_gap):
                    continue
            else:
                anchor = rng.randrange(len(disks))
                ax, ay, ar = disks[anchor]
                # quintic bias keeps most contacts near tangency
                gap = spec.min_gap * rng.random() ** 5
                dist = ar + r + gap
                theta = rng.uniform(0.0, 2.0 * math.pi)
                cx = round(ax + dist * math.cos(theta))
                cy = round(ay + dist * math.sin(theta))
                if not (r <= cx <= w - 1 - r and r <= cy <= h - 1 - r):
                    continue
                if not _clear_of_others(disks, anchor, cx, cy, r):
                    continue
            disks.append((cx, cy, r))
            _stamp_disk(clean, cx, cy, r)
            break
        else:
            raise PlacementError("disk", len(disks), spec.n_logs)

    mask = clean.copy()
    if spec.noise_speckles:
        amin, amax = spec.speckle_area_range
        keep_clear = spec.min_gap >= 1
        blocked = _grow_by_one(clean) if keep_clear else None
        for j in range(spec.noise_speckles):
            area = rng.randint(amin, amax)
            cells = _place_speckle(rng, mask, blocked, area, j, spec.noise_speckles)
            for cy, cx in cells:
                mask[cy, cx] = True
            if blocked is not None:
                for cy, cx in cells:
                    blocked[
                        max(0, cy - 1) : cy + 2, max(0, cx - 1) : cx + 2
                    ] = True
    return SynthTruth(mask=mask, clean_mask=clean, observed=len(disks), disks=disks)


def _separated(
    disks: list[tuple[int, int, int]], cx: int, cy: int, r: int, min_gap: float
) -> bool:
    for dx, dy, dr in disks:
        limit = dr + r + min_gap
        if (cx - dx) ** 2 + (cy - dy) ** 2 <= limit * limit:
            return False
    return True


def _clear_of_others(
    disks: list[tuple[int, int, int]], anchor: int, cx: int, cy: int, r: int
) -> bool:
    """Contact-mode placements touch their anchor and nothing else."""
    for i, (dx, dy, dr) in enumerate(disks):
        if i == anchor:
            continue
        limit = dr + r + 2.0
        if (cx - dx) ** 2 + (cy - dy) ** 2 <= limit * limit:
            return False
    return True


def _stamp_disk(canvas: np.ndarray, cx: int, cy: int, r: int) -> None:
    h, w = canvas.shape
    y0, y1 = max(0, cy - r), min(h, cy + r + 1)
    x0, x1 = max(0, cx - r), min(w, cx + r + 1)
    yy, xx = np.ogrid[y0:y1, x0:x1]
    canvas[y0:y1, x0:x1] |= (xx - cx) ** 2 + (yy - cy) ** 2 <= r * r


def _grow_by_one(mask: np.ndarray) -> np.ndarray:
    """8-neighborhood dilation used to keep speckles off other components."""
    h, w = mask.shape
    out = mask.copy()
    out[1:, :] |= mask[:-1, :]
    out[:-1, :] |= mask[1:, :]
    out[:, 1:] |= mask[:, :-1]
    out[:, :-1] |= mask[:, 1:]
    out[1:, 1:] |= mask[:-1, :-1]
    out[1:, :-1] |= mask[:-1, 1:]
    out[:-1, 1:] |= mask[1:, :-1]
    out[:-1, :-1] |= mask[1:, 1:]
    return out


def _place_speckle(
    rng: random.Random,
    mask: np.ndarray,
    blocked: np.ndarray | None,
    area: int,
    index: int,
    requested: int,
) -> list[tuple[int, int]]:
    """Grow one 4-connected blob of exactly ``area`` free pixels."""
    h, w = mask.shape
    for _ in range(_MAX_ATTEMPTS):
        sy = rng.randrange(h)
        sx = rng.randrange(w)
        if mask[sy, sx] or (blocked is not None and blocked[sy, sx]):
            continue
        cells: list[tuple[int, int]] = []
        frontier = [(sy, sx)]
        seen = {(sy, sx)}
        while frontier and len(cells) < area:
            k = rng.randrange(len(frontier))
            cy, cx = frontier.pop(k)
            if mask[cy, cx] or (blocked is not None and blocked[cy, cx]):
                continue
            cells.append((cy, cx))
            for ny, nx in ((cy - 1, cx), (cy + 1, cx), (cy, cx - 1), (cy, cx + 1)):
                if 0 <= ny < h and 0 <= nx < w and (ny, nx) not in seen:
                    seen.add((ny, nx))
                    frontier.append((ny, nx))
        if len(cells) == area:
            return cells
    raise PlacementError("speckle", index, requested)


def oracle_count(mask: np.ndarray, connectivity: int = 8) -> int:
    """Count components by plain breadth-first flood fill.

    Deliberately naive and independent of the labeling module; meant as
    a cross-check, not a fast path.
    """
    if connectivity not in (4, 8):
        raise ValueError(f"connectivity must be 4 or 8, got {connectivity}")
    mask = as_mask(mask)
    h, w = mask.shape
    n = h * w
    flat = mask.ravel().tolist()
    visited = bytearray(n)
    eight = connectivity == 8
    count = 0
    idx = -1
    find_fg = flat.index
    while True:
        try:
            idx = find_fg(True, idx + 1)
        except ValueError:
            break
        if visited[idx]:
            continue
        count += 1
        visited[idx] = 1
        queue = [idx]
        head = 0
        while head < len(queue):
            p = queue[head]
            head += 1
            x = p % w
            if x and flat[p - 1] and not visited[p - 1]:
                visited[p - 1] = 1
                queue.append(p - 1)
            if x < w - 1 and flat[p + 1] and not visited[p + 1]:
                visited[p + 1] = 1
                queue.append(p + 1)
            if p >= w and flat[p - w] and not visited[p - w]:
                visited[p - w] = 1
                queue.append(p - w)
            if p < n - w and flat[p + w] and not visited[p + w]:
                visited[p + w] = 1
                queue.append(p + w)
            if eight:
                if p >= w and x and flat[p - w - 1] and not visited[p - w - 1]:
                    visited[p - w - 1] = 1
                    queue.append(p - w - 1)
                if p >= w and x < w - 1 and flat[p - w + 1] and not visited[p - w + 1]:
                    visited[p - w + 1] = 1
                    queue.append(p - w + 1)
                if p < n - w and x and flat[p + w - 1] and not visited[p + w - 1]:
                    visited[p + w - 1] = 1
                    queue.append(p + w - 1)
                if p < n - w and x < w - 1 and flat[p + w + 1] and not visited[p + w + 1]:
                    visited[p + w + 1] = 1
                    queue.append(p + w + 1)
    return count
