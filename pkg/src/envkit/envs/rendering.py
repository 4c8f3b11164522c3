"""Minimal software rasterizer for rgb_array frames.

Pure numpy: enough primitives (rectangles, discs, thick lines) to draw the
classic-control scenes without any windowing or GPU dependency.  Frames are
H x W x 3 uint8, row-major, origin at the top-left.
"""

from __future__ import annotations

import numpy as np


def blank_frame(height: int, width: int, color=(255, 255, 255)) -> np.ndarray:
    frame = np.empty((height, width, 3), dtype=np.uint8)
    frame[:] = np.asarray(color, dtype=np.uint8)
    return frame


def fill_rect(frame, x0: float, y0: float, x1: float, y1: float, color) -> None:
    """Fill the axis-aligned rectangle [x0, x1] x [y0, y1], clipped."""
    height, width = frame.shape[:2]
    xa, xb = sorted((int(round(x0)), int(round(x1))))
    ya, yb = sorted((int(round(y0)), int(round(y1))))
    xa, xb = max(xa, 0), min(xb + 1, width)
    ya, yb = max(ya, 0), min(yb + 1, height)
    if xa < xb and ya < yb:
        frame[ya:yb, xa:xb] = np.asarray(color, dtype=np.uint8)


def fill_disc(frame, cx: float, cy: float, radius: float, color) -> None:
    height, width = frame.shape[:2]
    x0 = max(int(cx - radius) - 1, 0)
    x1 = min(int(cx + radius) + 2, width)
    y0 = max(int(cy - radius) - 1, 0)
    y1 = min(int(cy + radius) + 2, height)
    if x0 >= x1 or y0 >= y1:
        return
    ys, xs = np.mgrid[y0:y1, x0:x1]
    mask = (xs - cx) ** 2 + (ys - cy) ** 2 <= radius**2
    frame[y0:y1, x0:x1][mask] = np.asarray(color, dtype=np.uint8)


def draw_thick_line(frame, x0, y0, x1, y1, half_width: float, color) -> None:
    """Stamp discs along the segment; round caps, no antialiasing."""
    length = float(np.hypot(x1 - x0, y1 - y0))
    steps = max(int(length), 1)
    for t in np.linspace(0.0, 1.0, steps + 1):
        fill_disc(frame, x0 + (x1 - x0) * t, y0 + (y1 - y0) * t, half_width, color)
