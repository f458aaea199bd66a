"""Escape-time rendering of parameter slices and dynamical planes.

Parameter slices color each pixel by iterating BOTH critical values c +- 2*sqrt(a)
of the resolved map and averaging the two orbit colors channel-wise: an orbit that
never escapes contributes bounded_color, an escaping orbit contributes its base color
scaled linearly by how fast it escaped. Dynamical slices iterate the pixel's point
itself and shade escapes in grayscale.

Guarantees:
  - the pixel value is a pure function of (n, slice, pixel center, config) — thread
    count and row scheduling never change a byte of output;
  - a pixel equals bounded_color exactly when both orbits are classified bounded
    (escaped orbits always contribute at least one intensity step, so the bounded
    color is reserved for bounded orbits);
  - the escape threshold is the per-pixel escape radius max(4, |c|, |a|), which
    varies across a slice.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .family import (
    MapParams,
    escape_radius,
    iterate_orbit,
    iterate_orbits_bulk,
    np_principal_sqrt,
    principal_sqrt,
)

logger = logging.getLogger(__name__)

RGB8 = tuple[int, int, int]

# Rows are processed in fixed-size bands; the partition is a constant (never a
# function of the thread count) so the work decomposition itself is deterministic.
_ROW_BAND = 16


def _check_rgb(name: str, color: tuple) -> RGB8:
    if len(color) != 3 or not all(isinstance(ch, int) and 0 <= ch <= 255 for ch in color):
        raise ValueError(f"{name} must be three integers in [0, 255], got {color!r}")
    return (color[0], color[1], color[2])


@dataclass(frozen=True)
class Viewport:
    """Axis-aligned complex-plane window mapped onto a width x height pixel grid.
    Pixel (col, row) samples the CENTER of its cell; row 0 is the top of the image
    (maximum imaginary part)."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float
    width: int
    height: int

    def __post_init__(self) -> None:
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError("viewport requires re_min < re_max and im_min < im_max")
        if not (isinstance(self.width, int) and isinstance(self.height, int)):
            raise ValueError("width and height must be integers")
        if self.width < 1 or self.height < 1:
            raise ValueError("width and height must be >= 1")

    @property
    def pixel_dx(self) -> float:
        return (self.re_max - self.re_min) / self.width

    @property
    def pixel_dy(self) -> float:
        return (self.im_max - self.im_min) / self.height

    def point_at(self, col: int, row: int) -> complex:
        """Complex coordinate of the center of pixel (col, row)."""
        re = self.re_min + (col + 0.5) * self.pixel_dx
        im = self.im_max - (row + 0.5) * self.pixel_dy
        return complex(re, im)

    def pixel_of(self, z: complex) -> tuple[int, int] | None:
        """(col, row) of the pixel whose cell contains z, or None if outside."""
        col = math.floor((z.real - self.re_min) / self.pixel_dx)
        row = math.floor((self.im_max - z.imag) / self.pixel_dy)
        if 0 <= col < self.width and 0 <= row < self.height:
            return (col, row)
        return None

    def row_points(self, row: int) -> np.ndarray:
        """Pixel centers of one row as a complex array of length `width`."""
        cols = np.arange(self.width)
        re = self.re_min + (cols + 0.5) * self.pixel_dx
        im = self.im_max - (row + 0.5) * self.pixel_dy
        return re + 1j * im


@dataclass(frozen=True)
class FixedC:
    """Parameter slice: c held fixed, the pixel point is a."""

    c: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", complex(self.c))


@dataclass(frozen=True)
class FixedA:
    """Parameter slice: a held fixed (a != 0), the pixel point is c."""

    a: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", complex(self.a))
        if self.a == 0:
            raise ValueError("FixedA requires a != 0")


@dataclass(frozen=True)
class Diagonal:
    """Parameter slice c = t*a: the pixel point is a, with t != 0 fixed."""

    t: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "t", complex(self.t))
        if self.t == 0:
            raise ValueError("Diagonal requires t != 0")


@dataclass(frozen=True)
class Dynamical:
    """Dynamical-plane slice: the map is fixed and the pixel point is iterated."""

    params: MapParams


SliceSpec = Union[FixedC, FixedA, Diagonal, Dynamical]


@dataclass(frozen=True)
class RenderConfig:
    """Escape-time coloring knobs. color_plus/color_minus are the base colors of the
    two critical orbits (upper sign / lower sign); bounded_color marks non-escape."""

    max_iter: int = 256
    color_plus: RGB8 = (255, 0, 0)
    color_minus: RGB8 = (0, 0, 255)
    bounded_color: RGB8 = (0, 0, 0)

    def __post_init__(self) -> None:
        if not isinstance(self.max_iter, int) or self.max_iter < 1:
            raise ValueError(f"max_iter must be an integer >= 1, got {self.max_iter!r}")
        object.__setattr__(self, "color_plus", _check_rgb("color_plus", self.color_plus))
        object.__setattr__(self, "color_minus", _check_rgb("color_minus", self.color_minus))
        object.__setattr__(self, "bounded_color", _check_rgb("bounded_color", self.bounded_color))


@dataclass(frozen=True)
class Image:
    """Row-major RGB8 pixel grid."""

    width: int
    height: int
    pixels: tuple[RGB8, ...]

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError("image dimensions must be >= 1")
        object.__setattr__(self, "pixels", tuple(tuple(px) for px in self.pixels))
        if len(self.pixels) != self.width * self.height:
            raise ValueError(
                f"pixel count {len(self.pixels)} != width*height {self.width * self.height}"
            )

    def at(self, col: int, row: int) -> RGB8:
        if not (0 <= col < self.width and 0 <= row < self.height):
            raise IndexError(f"pixel ({col}, {row}) outside {self.width}x{self.height}")
        return self.pixels[row * self.width + col]


def _round_half_away(x: float) -> int:
    """Round a nonnegative value half away from zero."""
    return int(math.floor(x + 0.5))


def _intensity(m: int, max_iter: int) -> float:
    """Linear escape-rate shading, clamped to [0, 1]; at least one step so escaped
    orbits never collapse to the bounded color."""
    return min(1.0, max(m, 1) / max_iter)


def _orbit_color(base: RGB8, escaped: bool, m: int, cfg: RenderConfig) -> RGB8:
    if not escaped:
        return cfg.bounded_color
    inten = _intensity(m, cfg.max_iter)
    return tuple(_round_half_away(ch * inten) for ch in base)  # type: ignore[return-value]


def _resolve_params(n: int, slc: SliceSpec, point: complex) -> MapParams | None:
    """Concrete map for one parameter-slice pixel; None when the pixel sits at a = 0
    (outside the family)."""
    if isinstance(slc, FixedC):
        if point == 0:
            return None
        return MapParams(n, point, slc.c)
    if isinstance(slc, FixedA):
        return MapParams(n, slc.a, point)
    if isinstance(slc, Diagonal):
        if point == 0:
            return None
        return MapParams(n, point, slc.t * point)
    raise TypeError(f"not a parameter slice: {slc!r}")


def classify_pixel(n: int, slc: SliceSpec, point: complex, cfg: RenderConfig) -> RGB8:
    """Color of one pixel. Parameter slices: iterate both critical values of the
    resolved map with the per-pixel escape radius as threshold and average the two
    orbit colors channel-wise, rounding half away from zero; a = 0 pixels get
    bounded_color. Dynamical slices: iterate the point; escapes shade to grayscale."""
    point = complex(point)
    if isinstance(slc, Dynamical):
        p = slc.params
        res = iterate_orbit(p, point, cfg.max_iter, escape_radius(p))
        if not res.escaped:
            return cfg.bounded_color
        g = _round_half_away(255 * _intensity(res.iterations, cfg.max_iter))
        return (g, g, g)

    p = _resolve_params(n, slc, point)
    if p is None:
        return cfg.bounded_color
    thr = escape_radius(p)
    root = principal_sqrt(p.a)
    res_p = iterate_orbit(p, p.c + 2.0 * root, cfg.max_iter, thr)
    res_m = iterate_orbit(p, p.c - 2.0 * root, cfg.max_iter, thr)
    col_p = _orbit_color(cfg.color_plus, res_p.escaped, res_p.iterations, cfg)
    col_m = _orbit_color(cfg.color_minus, res_m.escaped, res_m.iterations, cfg)
    return tuple(
        _round_half_away((cp + cm) / 2.0) for cp, cm in zip(col_p, col_m)
    )  # type: ignore[return-value]


def _color_block(escaped: np.ndarray, iters: np.ndarray, base: RGB8, cfg: RenderConfig) -> np.ndarray:
    """Vectorized _orbit_color over a flat block; returns float (len, 3)."""
    inten = np.minimum(1.0, np.maximum(iters, 1) / cfg.max_iter)
    out = np.empty((escaped.size, 3), dtype=float)
    for ch in range(3):
        scaled = np.floor(base[ch] * inten + 0.5)
        out[:, ch] = np.where(escaped, scaled, float(cfg.bounded_color[ch]))
    return out


def _render_band(
    n: int, slc: SliceSpec, vp: Viewport, cfg: RenderConfig, row0: int, row1: int
) -> tuple[np.ndarray, int]:
    """Pixels of rows [row0, row1) as a uint8 array of shape (rows, width, 3), plus
    the count of a = 0 pixels encountered."""
    rows = [vp.row_points(r) for r in range(row0, row1)]
    pts = np.concatenate(rows)

    if isinstance(slc, Dynamical):
        p = slc.params
        thr = escape_radius(p)
        escaped, iters = iterate_orbits_bulk(p.n, p.a, p.c, pts, cfg.max_iter, thr)
        inten = np.minimum(1.0, np.maximum(iters, 1) / cfg.max_iter)
        gray = np.floor(255.0 * inten + 0.5)
        block = np.empty((pts.size, 3), dtype=float)
        for ch in range(3):
            block[:, ch] = np.where(escaped, gray, float(cfg.bounded_color[ch]))
        return block.astype(np.uint8).reshape(row1 - row0, vp.width, 3), 0

    if isinstance(slc, FixedC):
        a = pts
        c = np.full(pts.shape, complex(slc.c))
    elif isinstance(slc, FixedA):
        a = np.full(pts.shape, complex(slc.a))
        c = pts
    elif isinstance(slc, Diagonal):
        a = pts
        c = slc.t * pts
    else:  # pragma: no cover - SliceSpec is a closed union
        raise TypeError(f"unknown slice kind: {slc!r}")

    zero_a = a == 0
    n_zero = int(np.count_nonzero(zero_a))
    a_safe = np.where(zero_a, 1.0 + 0.0j, a)
    thr = np.maximum(4.0, np.maximum(np.abs(c), np.abs(a_safe)))
    root = np_principal_sqrt(a_safe)
    esc_p, it_p = iterate_orbits_bulk(n, a_safe, c, c + 2.0 * root, cfg.max_iter, thr)
    esc_m, it_m = iterate_orbits_bulk(n, a_safe, c, c - 2.0 * root, cfg.max_iter, thr)
    mean = (_color_block(esc_p, it_p, cfg.color_plus, cfg)
            + _color_block(esc_m, it_m, cfg.color_minus, cfg)) / 2.0
    block = np.floor(mean + 0.5)
    if n_zero:
        block[zero_a] = np.array(cfg.bounded_color, dtype=float)
    return block.astype(np.uint8).reshape(row1 - row0, vp.width, 3), n_zero


def render_slice(
    n: int, slc: SliceSpec, vp: Viewport, cfg: RenderConfig, threads: int = 1
) -> Image:
    """Classify every pixel center of the viewport. Rows are processed in fixed
    16-row bands; `threads` only schedules those bands, so output bytes are identical
    for any thread count."""
    if not isinstance(slc, Dynamical):
        if not isinstance(n, int) or isinstance(n, bool) or n < 3:
            raise ValueError(f"n must be an integer >= 3, got {n!r}")
    if threads < 1:
        raise ValueError("threads must be >= 1")
    bands = [(r, min(r + _ROW_BAND, vp.height)) for r in range(0, vp.height, _ROW_BAND)]
    grid = np.empty((vp.height, vp.width, 3), dtype=np.uint8)
    zero_total = 0
    if threads == 1:
        results = [_render_band(n, slc, vp, cfg, r0, r1) for r0, r1 in bands]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_render_band, n, slc, vp, cfg, r0, r1) for r0, r1 in bands]
            results = [f.result() for f in futures]
    for (r0, r1), (block, n_zero) in zip(bands, results):
        grid[r0:r1] = block
        zero_total += n_zero
    if zero_total:
        logger.info("render: %d pixel(s) at a = 0 rendered as bounded_color", zero_total)
    flat = grid.reshape(-1, 3)
    pixels = tuple((int(r), int(g), int(b)) for r, g, b in flat)
    return Image(vp.width, vp.height, pixels)


def draw_overlay(img: Image, vp: Viewport, curve: Sequence[complex], color: RGB8) -> Image:
    """New image with each curve point's nearest pixel recolored; points outside the
    viewport (or non-finite) are skipped."""
    color = _check_rgb("color", tuple(color))
    pixels = list(img.pixels)
    for z in curve:
        z = complex(z)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            continue
        hit = vp.pixel_of(z)
        if hit is None:
            continue
        col, row = hit
        pixels[row * img.width + col] = color
    return Image(img.width, img.height, tuple(pixels))


def encode_ppm(img: Image) -> bytes:
    """Binary PPM (P6, maxval 255): ASCII header then row-major RGB byte triples."""
    if len(img.pixels) != img.width * img.height:
        raise ValueError("pixel count does not match image dimensions")
    header = f"P6\n{img.width} {img.height}\n255\n".encode("ascii")
    body = np.array(img.pixels, dtype=np.uint8).tobytes()
    return header + body
