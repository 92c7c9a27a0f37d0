"""Deterministic image encoding for classification grids.

PPM (P6, 8-bit) is written by hand so the bytes are bit-exact and testable;
PNG goes through Pillow with the same pixel buffer.
"""

from __future__ import annotations

import io

import numpy as np

from .exceptions import UnmappedTag
from .plane import ClassificationGrid

# fixed label colors; unlisted labels fall back onto a rotating wheel
_LABEL_COLORS = {
    "undecided": (24, 24, 32),
    "zero": (69, 123, 157),
    "infinity": (29, 53, 87),
    "one": (230, 57, 70),
    "s1": (244, 162, 97),
    "s2": (42, 157, 143),
    "cycle": (156, 102, 246),
    "roots-only": (245, 245, 245),
    "strange-fixed-point": (16, 16, 16),
    "strange-cycle": (88, 24, 69),
}
_WHEEL = [(204, 102, 0), (0, 153, 153), (153, 0, 153), (102, 153, 0),
          (0, 102, 204), (204, 0, 102)]


def default_palette(grid: ClassificationGrid) -> dict[int, tuple[int, int, int]]:
    palette = {}
    spare = 0
    for tag, label in sorted(grid.legend.items()):
        base = label.split("-")[0]
        if label in _LABEL_COLORS:
            palette[tag] = _LABEL_COLORS[label]
        elif base.rstrip("0123456789") == "cycle":
            palette[tag] = _LABEL_COLORS["cycle"]
        else:
            palette[tag] = _WHEEL[spare % len(_WHEEL)]
            spare += 1
    return palette


def render_rgb(grid: ClassificationGrid, palette: dict[int, tuple[int, int, int]],
               shade_undecided: bool = True) -> np.ndarray:
    """(H, W, 3) uint8 pixels; undecided cells are shaded by iteration count."""
    present = set(np.unique(grid.tags).tolist())
    missing = present - set(palette)
    if missing:
        raise UnmappedTag(f"palette lacks tags {sorted(missing)}")
    h, w = grid.tags.shape
    rgb = np.zeros((h, w, 3), dtype=np.uint8)
    for tag, color in palette.items():
        rgb[grid.tags == tag] = color
    undecided = [t for t, lab in grid.legend.items() if lab == "undecided"]
    if shade_undecided and undecided:
        mask = grid.tags == undecided[0]
        if mask.any():
            max_it = max(int(grid.iters.max()), 1)
            ramp = 0.25 + 0.75 * (grid.iters[mask].astype(np.float64) / max_it)
            base = np.asarray(palette[undecided[0]], dtype=np.float64)
            rgb[mask] = np.clip(ramp[:, None] * base[None, :], 0, 255).astype(np.uint8)
    return rgb


def encode_ppm(grid: ClassificationGrid, palette: dict[int, tuple[int, int, int]],
               shade_undecided: bool = True) -> bytes:
    """Binary PPM: exact header 'P6\\n<w> <h>\\n255\\n' then row-major RGB."""
    rgb = render_rgb(grid, palette, shade_undecided)
    h, w = rgb.shape[:2]
    return b"P6\n%d %d\n255\n" % (w, h) + rgb.tobytes()


def encode_png(grid: ClassificationGrid, palette: dict[int, tuple[int, int, int]],
               shade_undecided: bool = True) -> bytes:
    from PIL import Image

    rgb = render_rgb(grid, palette, shade_undecided)
    img = Image.fromarray(rgb, mode="RGB")
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return buf.getvalue()


def encode_image(grid: ClassificationGrid, palette=None, fmt: str = "ppm",
                 shade_undecided: bool = True) -> bytes:
    if palette is None:
        palette = default_palette(grid)
    if fmt == "ppm":
        return encode_ppm(grid, palette, shade_undecided)
    if fmt == "png":
        return encode_png(grid, palette, shade_undecided)
    raise ValueError(f"unknown image format {fmt!r}")
