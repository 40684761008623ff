"""Construct harmonic test palettes along a tone-plane line.

Points are placed on the line inside the [0,100]^2 chroma-lightness square
with a minimum pairwise separation, a hue pattern is drawn (or forced), hues
are perturbed with the model's own hue noise, and each ideal color is snapped
to the nearest sRGB-realizable color at constant hue. Any failed gate yields
an empty palette rather than an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import convert
from .model import Color, HarmonyParams, hue_stddev, tone_distribution
from .tone import bhattacharyya_mv

__all__ = [
    "GenSpec",
    "GenResult",
    "ColorDiag",
    "place_points_on_line",
    "sample_hue_pattern",
    "assign_hues",
    "realize_color",
    "generate_line_palette",
]

HUE_PATTERNS = ("analog", "opposite", "triad", "incomplete-triad")
HUE_PATTERN_PROBS = (0.3, 0.3, 0.1, 0.3)

_MAX_PLACEMENT_TRIES = 1000


@dataclass(frozen=True)
class GenSpec:
    """Generation request: target line (r, phi in degrees), color count, seed."""

    r: float
    phi: float
    k: int = 3
    seed: int = 0
    pattern_override: str | None = None

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("k must be at least 2")
        if self.pattern_override is not None and self.pattern_override not in HUE_PATTERNS:
            raise ValueError(f"unknown hue pattern: {self.pattern_override}")


@dataclass(frozen=True)
class ColorDiag:
    """Per-color generation diagnostics."""

    target_c: float
    target_L: float
    target_h: float
    snapped_c: float
    snapped_L: float
    maha: float
    snap_delta: float


@dataclass(frozen=True)
class GenResult:
    """Generated palette; empty `colors` means some gate failed (see reason)."""

    colors: tuple[Color, ...]
    pattern_used: str | None  # None when placement failed before the draw
    diagnostics: tuple[ColorDiag, ...] = ()
    reason: str | None = None

    @property
    def ok(self) -> bool:
        return len(self.colors) > 0


def _segment_range(r: float, phi_rad: float) -> tuple[float, float] | None:
    """Parameter range of the line clipped to the [0,100]^2 tone square.

    The line is p(t) = r*(cos phi, sin phi) + t*(-sin phi, cos phi); each
    square edge constrains t to an interval.
    """
    cos_p = math.cos(phi_rad)
    sin_p = math.sin(phi_rad)
    lo, hi = -math.inf, math.inf
    # coordinate(t) = offset + slope * t, constrained to [0, 100]
    for offset, slope in ((r * cos_p, -sin_p), (r * sin_p, cos_p)):
        if abs(slope) < 1e-12:
            if not (0.0 <= offset <= 100.0):
                return None
            continue
        t0 = (0.0 - offset) / slope
        t1 = (100.0 - offset) / slope
        lo = max(lo, min(t0, t1))
        hi = min(hi, max(t0, t1))
    if not (lo < hi) or math.isinf(lo) or math.isinf(hi):
        return None
    return lo, hi


def place_points_on_line(
    r: float,
    phi: float,
    k: int,
    min_sep: float,
    rng: np.random.Generator,
) -> list[tuple[float, float]] | None:
    """Sample k points on the line (phi in degrees) inside the tone square.

    Points are uniform on the clipped segment, rejected until all pairwise
    distances reach min_sep; returns None when the segment is infeasible,
    shorter than (k-1)*min_sep, or sampling keeps failing.
    """
    phi_rad = math.radians(phi)
    span = _segment_range(r, phi_rad)
    if span is None:
        return None
    lo, hi = span
    if hi - lo < (k - 1) * min_sep:
        return None
    cos_p = math.cos(phi_rad)
    sin_p = math.sin(phi_rad)
    for _ in range(_MAX_PLACEMENT_TRIES):
        ts = np.sort(rng.uniform(lo, hi, size=k))
        if np.all(np.diff(ts) >= min_sep):
            return [
                (float(r * cos_p - t * sin_p), float(r * sin_p + t * cos_p))
                for t in ts
            ]
    return None


def sample_hue_pattern(rng: np.random.Generator) -> str:
    """Draw a hue pattern: analog 0.3, opposite 0.3, triad 0.1, incomplete 0.3."""
    u = rng.random()
    acc = 0.0
    for name, prob in zip(HUE_PATTERNS, HUE_PATTERN_PROBS):
        acc += prob
        if u < acc:
            return name
    return HUE_PATTERNS[-1]


def _nominal_hues(pattern: str, base_h: float, k: int) -> list[float]:
    if pattern == "analog":
        offsets = [0.0]
    elif pattern == "opposite":
        offsets = [0.0, 180.0]
    elif pattern == "triad":
        offsets = [0.0, 120.0, 240.0]
    elif pattern == "incomplete-triad":
        # A triad template with one vertex unused; still reads as triad.
        offsets = [0.0, 120.0]
    else:
        raise ValueError(f"unknown hue pattern: {pattern}")
    return [(base_h + offsets[i % len(offsets)]) % 360.0 for i in range(k)]


def assign_hues(
    pattern: str,
    base_h: float,
    k: int,
    chromas: list[float],
    p: HarmonyParams,
    rng: np.random.Generator,
    noise: bool = True,
) -> list[float]:
    """Pattern hues for k colors, round-robin over the pattern's positions.

    Each hue is perturbed by zero-mean Gaussian noise whose sigma is the
    model's own hue stddev at (nominal hue, ideal chroma); `noise=False` is
    a test hook for the deterministic nominal values.
    """
    hues = []
    for h, c in zip(_nominal_hues(pattern, base_h, k), chromas):
        if noise:
            h += rng.normal(0.0, hue_stddev(h, c, p))
        hues.append(h % 360.0)
    return hues


def realize_color(
    target_L: float, target_c: float, target_h: float, p: HarmonyParams
) -> tuple[Color, float]:
    """Snap an ideal (L, c, h) to the nearest sRGB-realizable color at fixed h.

    Returns the snapped color and the Mahalanobis distance between the
    snapped color's tone distribution and the target tone point. In-gamut
    targets snap to themselves with distance zero.
    """
    target_L = min(max(target_L, 0.0), 100.0)
    target_c = min(max(target_c, 0.0), 100.0)
    if convert.is_in_gamut(target_L, target_c, target_h):
        return Color(L=target_L, c=target_c, h=target_h), 0.0
    snapped = _nearest_realizable(target_L, target_c, target_h)
    dist = tone_distribution(snapped, p)
    delta = np.array([snapped.c - target_c, snapped.L - target_L])
    maha = math.sqrt(float(delta @ np.linalg.solve(dist.cov, delta)))
    return snapped, maha


def _nearest_realizable(L: float, c: float, h: float) -> Color:
    """Closest in-gamut (L, c) at fixed hue, Euclidean in the tone plane.

    Coarse scan over lightness (nearest-first, pruned by |dL| >= best, which
    is a lower bound on the distance), then ternary refinement around the
    scan's best bracket. Per-candidate chroma is clipped to the gamut.
    """

    def candidate(l_val: float) -> tuple[float, float, float]:
        c_max = convert.max_chroma(l_val, h)
        cc = min(c, c_max)
        return math.hypot(cc - c, l_val - L), cc, l_val

    grid = sorted(range(101), key=lambda i: abs(i - L))
    best = (math.inf, c, L)
    for i in grid:
        if abs(i - L) >= best[0]:
            break
        cand = candidate(float(i))
        if cand[0] < best[0]:
            best = cand
    lo = max(0.0, best[2] - 1.0)
    hi = min(100.0, best[2] + 1.0)
    while hi - lo > 1e-3:
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if candidate(m1)[0] <= candidate(m2)[0]:
            hi = m2
        else:
            lo = m1
    _, cc, ll = candidate(0.5 * (lo + hi))
    return Color(L=ll, c=cc, h=h)


def generate_line_palette(spec: GenSpec, p: HarmonyParams) -> GenResult:
    """Generate k colors following the requested tone-plane line.

    Deterministic for a fixed spec and params. The palette is empty when no
    valid point placement exists, any snapped color lands too far from its
    target tone (Mahalanobis gate), or any two colors are ambiguous.
    """
    rng = np.random.default_rng(spec.seed)
    points = place_points_on_line(spec.r, spec.phi, spec.k, p.min_sep, rng)
    if points is None:
        return GenResult(colors=(), pattern_used=spec.pattern_override,
                         reason="no_feasible_points")
    base_h = float(rng.uniform(0.0, 360.0))
    pattern = spec.pattern_override or sample_hue_pattern(rng)
    chromas = [x for x, _ in points]
    hues = assign_hues(pattern, base_h, spec.k, chromas, p, rng)

    colors: list[Color] = []
    diags: list[ColorDiag] = []
    for (x, y), h in zip(points, hues):
        color, maha = realize_color(target_L=y, target_c=x, target_h=h, p=p)
        diags.append(
            ColorDiag(
                target_c=x, target_L=y, target_h=h,
                snapped_c=color.c, snapped_L=color.L,
                maha=maha, snap_delta=math.hypot(color.c - x, color.L - y),
            )
        )
        if maha >= p.maha_threshold:
            return GenResult((), pattern, tuple(diags), reason="maha_gate")
        colors.append(color)

    dists = [tone_distribution(c, p) for c in colors]
    for i in range(len(dists)):
        for j in range(i + 1, len(dists)):
            if bhattacharyya_mv(dists[i], dists[j]) < p.ambiguity_db_threshold:
                return GenResult((), pattern, tuple(diags), reason="ambiguous_pair")
    return GenResult(tuple(colors), pattern, tuple(diags))
