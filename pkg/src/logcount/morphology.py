"""Binary erosion and dilation with explicit structuring elements.

Out-of-bounds pixels count as background for both operations: erosion
shrinks components from the image border inward and dilation never wraps.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .raster import as_mask


@dataclass(frozen=True, eq=False)
class StructuringElement:
    """Odd-sized binary kernel anchored at its center cell.

    The anchor must be set and at least one cell must be true (both hold
    by construction for the box and cross factories).
    """

    pattern: np.ndarray
    _offsets: tuple[tuple[int, int], ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        pat = np.asarray(self.pattern, dtype=bool)
        if pat.ndim != 2:
            raise ValueError(f"pattern must be 2-D, got shape {pat.shape}")
        h, w = pat.shape
        if h < 1 or w < 1 or h % 2 == 0 or w % 2 == 0:
            raise ValueError(f"pattern dimensions must be odd and >= 1, got {w}x{h}")
        if not pat.any():
            raise ValueError("pattern must contain at least one true cell")
        if not pat[h // 2, w // 2]:
            raise ValueError("anchor (center) cell must be true")
        object.__setattr__(self, "pattern", pat)
        ys, xs = np.nonzero(pat)
        offs = tuple((int(y) - h // 2, int(x) - w // 2) for y, x in zip(ys, xs))
        object.__setattr__(self, "_offsets", offs)

    @classmethod
    def box(cls, size: int = 3) -> "StructuringElement":
        """Full size x size square."""
        return cls(np.ones((size, size), dtype=bool))

    @classmethod
    def cross(cls, size: int = 3) -> "StructuringElement":
        """Center row and column of a size x size square."""
        pat = np.zeros((size, size), dtype=bool)
        pat[size // 2, :] = True
        pat[:, size // 2] = True
        return cls(pat)

    def reflect(self) -> "StructuringElement":
        """Rotate the kernel 180 degrees about its anchor."""
        return StructuringElement(self.pattern[::-1, ::-1])

    def offsets(self) -> tuple[tuple[int, int], ...]:
        """(dy, dx) of every true cell relative to the anchor."""
        return self._offsets

    @property
    def width(self) -> int:
        return self.pattern.shape[1]

    @property
    def height(self) -> int:
        return self.pattern.shape[0]


def _shift(mask: np.ndarray, dy: int, dx: int) -> np.ndarray:
    """Translate content by (dy, dx), filling vacated cells with background."""
    h, w = mask.shape
    out = np.zeros_like(mask)
    sy0, sy1 = max(0, -dy), min(h, h - dy)
    sx0, sx1 = max(0, -dx), min(w, w - dx)
    if sy0 < sy1 and sx0 < sx1:
        out[sy0 + dy : sy1 + dy, sx0 + dx : sx1 + dx] = mask[sy0:sy1, sx0:sx1]
    return out


def erode(mask: np.ndarray, se: StructuringElement) -> np.ndarray:
    """Keep a pixel iff every true kernel cell lands on foreground."""
    mask = as_mask(mask)
    out = np.ones_like(mask)
    for dy, dx in se.offsets():
        out &= _shift(mask, -dy, -dx)
    return out


def dilate(mask: np.ndarray, se: StructuringElement) -> np.ndarray:
    """Set a pixel iff some true cell of the reflected kernel lands on foreground."""
    mask = as_mask(mask)
    out = np.zeros_like(mask)
    for dy, dx in se.offsets():
        out |= _shift(mask, dy, dx)
    return out


def erode_iterated(mask: np.ndarray, se: StructuringElement, n: int = 1) -> np.ndarray:
    """Apply erosion n times; n = 0 returns the input unchanged."""
    if n < 0:
        raise ValueError(f"iteration count must be >= 0, got {n}")
    out = as_mask(mask)
    for _ in range(n):
        out = erode(out, se)
    return out
