"""Visual encodings: genre colors and release-year graylevels.

Genres get categorical colors in the catalog's canonical order from a fixed
12-color palette, cycling with a lightness shift past twelve genres; the
assignment is injective over the catalog. Release years map linearly onto
graylevels in [0.15, 0.90], newer tracks darker, a degenerate year range
collapsing to the midpoint.
"""

from __future__ import annotations

import colorsys
from dataclasses import dataclass
from typing import Mapping

from ..model import Catalog

# 12 categorical base colors (colorblind-leaning, high-contrast).
PALETTE12 = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
)

GRAY_OLDEST = 0.90
GRAY_NEWEST = 0.15


def _hex_to_rgb(value: str) -> tuple[float, float, float]:
    value = value.lstrip("#")
    return tuple(int(value[i : i + 2], 16) / 255.0 for i in (0, 2, 4))


def _rgb_to_hex(rgb: tuple[float, float, float]) -> str:
    return "#" + "".join(f"{round(c * 255):02x}" for c in rgb)


def _shift_lightness(color: str, steps: int) -> str:
    """Each palette cycle nudges lightness toward white by 18% per step."""
    h, l, s = colorsys.rgb_to_hls(*_hex_to_rgb(color))
    l = min(0.95, l + 0.18 * steps)
    return _rgb_to_hex(colorsys.hls_to_rgb(h, l, s))


def _rotate_hue(color: str) -> str:
    """Golden-angle hue step; walks the wheel densely so nudging a clashing
    color always terminates."""
    h, l, s = colorsys.rgb_to_hls(*_hex_to_rgb(color))
    return _rgb_to_hex(colorsys.hls_to_rgb((h + 0.381966) % 1.0, min(l, 0.85), max(s, 0.25)))


def gray_hex(level: float) -> str:
    channel = round(level * 255)
    return f"#{channel:02x}{channel:02x}{channel:02x}"


@dataclass(frozen=True)
class StyleEncoding:
    genre_palette: Mapping[str, str]
    year_range: tuple[int, int]

    def genre_color(self, genre: str) -> str:
        return self.genre_palette[genre]

    def year_gray(self, year: int) -> float:
        """Graylevel in [0.15, 0.90]; linear in year, newer is darker."""
        lo, hi = self.year_range
        if hi == lo:
            return round((GRAY_OLDEST + GRAY_NEWEST) / 2, 6)
        year = min(max(year, lo), hi)
        frac = (year - lo) / (hi - lo)
        return round(GRAY_OLDEST + frac * (GRAY_NEWEST - GRAY_OLDEST), 6)


def encode_styles(catalog: Catalog) -> StyleEncoding:
    """Deterministic palette over the catalog's canonical genre order."""
    palette: dict[str, str] = {}
    used: set[str] = set()
    for index, genre in enumerate(catalog.genres):
        color = PALETTE12[index % len(PALETTE12)]
        color = _shift_lightness(color, index // len(PALETTE12))
        while color in used:  # keep the palette injective past many cycles
            color = _rotate_hue(color)
        used.add(color)
        palette[genre] = color
    return StyleEncoding(genre_palette=palette, year_range=catalog.year_range)
