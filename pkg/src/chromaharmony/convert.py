"""sRGB <-> CIELCh conversion and gamut mapping.

Standard sRGB with D65 white point, 2-degree observer. Out-of-gamut colors
are mapped back by shrinking chroma at constant (L, h), which preserves the
hue patterns the rest of the engine reasons about.
"""

from __future__ import annotations

import math

import numpy as np

from .model import Color, _norm360

__all__ = [
    "srgb_to_color",
    "color_to_srgb",
    "is_in_gamut",
    "nearest_in_gamut",
    "max_chroma",
]

# Linear sRGB -> XYZ (D65, 2 deg); rows sum to the white point.
_RGB_TO_XYZ = np.array(
    [
        [0.4124564, 0.3575761, 0.1804375],
        [0.2126729, 0.7151522, 0.0721750],
        [0.0193339, 0.1191920, 0.9503041],
    ]
)
_XYZ_TO_RGB = np.linalg.inv(_RGB_TO_XYZ)
_WHITE = (0.95047, 1.0, 1.08883)
# Unrolled for the scalar hot path (gamut bisection calls this a lot).
_M = tuple(tuple(row) for row in _RGB_TO_XYZ)
_MI = tuple(tuple(row) for row in _XYZ_TO_RGB)

_DELTA = 6.0 / 29.0
_GAMUT_EPS = 1e-6
_CHROMA_TOL = 1e-3


def _srgb_decode(v: float) -> float:
    return v / 12.92 if v <= 0.04045 else ((v + 0.055) / 1.055) ** 2.4


def _srgb_encode(v: float) -> float:
    v = min(max(v, 0.0), 1.0)
    return 12.92 * v if v <= 0.0031308 else 1.055 * v ** (1.0 / 2.4) - 0.055


def _lab_f(t: float) -> float:
    return t ** (1.0 / 3.0) if t > _DELTA**3 else t / (3.0 * _DELTA**2) + 4.0 / 29.0


def _lab_f_inv(t: float) -> float:
    return t**3 if t > _DELTA else 3.0 * _DELTA**2 * (t - 4.0 / 29.0)


def _rgb8_to_lch(r8: int, g8: int, b8: int) -> tuple[float, float, float]:
    r, g, b = (_srgb_decode(v / 255.0) for v in (r8, g8, b8))
    f = [
        _lab_f((_M[i][0] * r + _M[i][1] * g + _M[i][2] * b) / _WHITE[i])
        for i in range(3)
    ]
    L = 116.0 * f[1] - 16.0
    a = 500.0 * (f[0] - f[1])
    b_star = 200.0 * (f[1] - f[2])
    c = math.hypot(a, b_star)
    h = _norm360(math.degrees(math.atan2(b_star, a))) if c > 1e-12 else 0.0
    return L, c, h


def _lch_to_linear_rgb(L: float, c: float, h: float) -> tuple[float, float, float]:
    hr = math.radians(h)
    a = c * math.cos(hr)
    b = c * math.sin(hr)
    fy = (L + 16.0) / 116.0
    x = _lab_f_inv(fy + a / 500.0) * _WHITE[0]
    y = _lab_f_inv(fy) * _WHITE[1]
    z = _lab_f_inv(fy - b / 200.0) * _WHITE[2]
    return (
        _MI[0][0] * x + _MI[0][1] * y + _MI[0][2] * z,
        _MI[1][0] * x + _MI[1][1] * y + _MI[1][2] * z,
        _MI[2][0] * x + _MI[2][1] * y + _MI[2][2] * z,
    )


def is_in_gamut(L: float, c: float, h: float) -> bool:
    """True when (L, c, h) maps inside the sRGB cube (within float tolerance)."""
    lo, hi = -_GAMUT_EPS, 1.0 + _GAMUT_EPS
    return all(lo <= v <= hi for v in _lch_to_linear_rgb(L, c, h))


def max_chroma(L: float, h: float, upper: float = 100.0) -> float:
    """Largest chroma <= upper that keeps (L, c, h) inside sRGB, by bisection."""
    if is_in_gamut(L, upper, h):
        return upper
    lo, hi = 0.0, upper  # c=0 is achromatic, always in gamut for L in [0,100]
    while hi - lo > _CHROMA_TOL:
        mid = 0.5 * (lo + hi)
        if is_in_gamut(L, mid, h):
            lo = mid
        else:
            hi = mid
    return lo


def nearest_in_gamut(color: Color) -> tuple[Color, bool]:
    """Map a color into sRGB by chroma reduction at constant (L, h).

    Returns (color, True) unchanged when already in gamut.
    """
    if is_in_gamut(color.L, color.c, color.h):
        return color, True
    return Color(L=color.L, c=max_chroma(color.L, color.h), h=color.h), False


def srgb_to_color(r8: int, g8: int, b8: int) -> tuple[Color, bool]:
    """Convert 8-bit sRGB to a Color.

    Chroma is clamped to the engine's [0,100] range; the returned flag is
    True when clamping occurred (saturated sRGB reds exceed chroma 100).
    """
    for name, v in (("r", r8), ("g", g8), ("b", b8)):
        if not (0 <= v <= 255):
            raise ValueError(f"channel {name} out of 8-bit range: {v}")
    L, c, h = _rgb8_to_lch(r8, g8, b8)
    L = min(max(L, 0.0), 100.0)
    clamped = c > 100.0
    return Color(L=L, c=min(c, 100.0), h=h), clamped


def color_to_srgb(color: Color) -> tuple[tuple[int, int, int], bool]:
    """Convert a Color to 8-bit sRGB.

    Out-of-gamut colors are first mapped to the nearest in-gamut color by
    chroma reduction; in that case the returned flag is False.
    """
    mapped, in_gamut = nearest_in_gamut(color)
    lin = _lch_to_linear_rgb(mapped.L, mapped.c, mapped.h)
    r8, g8, b8 = (int(round(_srgb_encode(v) * 255.0)) for v in lin)
    return (r8, g8, b8), in_gamut
