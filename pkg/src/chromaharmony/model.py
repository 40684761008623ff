"""Core CIELCh color types and the per-color uncertainty model.

A color is a point (L, c, h) in CIELCh. Its hue is modeled as a univariate
Gaussian on the hue circle whose spread grows near the neutral axis, and its
tone (chroma, lightness) as a bivariate Gaussian whose axes scale with the
chroma/lightness weighting terms used by modern color-difference formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

__all__ = [
    "Color",
    "Tone",
    "HueDistribution",
    "ToneDistribution",
    "HarmonyParams",
    "rotation_term",
    "hue_stddev",
    "hue_distribution",
    "tone_scale_factors",
    "tone_distribution",
]


def _norm360(h: float) -> float:
    h = math.fmod(h, 360.0)
    return h + 360.0 if h < 0 else h


@dataclass(frozen=True)
class Color:
    """A CIELCh color: lightness L in [0,100], chroma c in [0,100], hue h in [0,360)."""

    L: float
    c: float
    h: float

    def __post_init__(self):
        if not (0.0 <= self.L <= 100.0):
            raise ValueError(f"lightness out of range: {self.L}")
        if not (0.0 <= self.c <= 100.0):
            raise ValueError(f"chroma out of range: {self.c}")
        object.__setattr__(self, "L", float(self.L))
        object.__setattr__(self, "c", float(self.c))
        object.__setattr__(self, "h", _norm360(float(self.h)))

    @property
    def tone(self) -> "Tone":
        return Tone(c=self.c, L=self.L)


@dataclass(frozen=True)
class Tone:
    """The (chroma, lightness) projection of a color."""

    c: float
    L: float

    def as_array(self) -> np.ndarray:
        return np.array([self.c, self.L], dtype=float)


@dataclass(frozen=True)
class HueDistribution:
    """Gaussian on the hue circle: mean in degrees, variance in degrees^2."""

    mean: float
    var: float

    def __post_init__(self):
        if self.var <= 0:
            raise ValueError("hue variance must be positive")
        object.__setattr__(self, "mean", _norm360(float(self.mean)))


@dataclass(frozen=True)
class ToneDistribution:
    """Bivariate Gaussian over (chroma, lightness) with diagonal covariance."""

    mean: Tone
    cov: np.ndarray  # 2x2, diag((k_c*S_c)^2, (k_L*S_L)^2)

    def __post_init__(self):
        cov = np.asarray(self.cov, dtype=float)
        if cov.shape != (2, 2):
            raise ValueError("tone covariance must be 2x2")
        if cov[0, 0] <= 0 or cov[1, 1] <= 0:
            raise ValueError("tone covariance diagonal must be positive")
        object.__setattr__(self, "cov", cov)


@dataclass(frozen=True)
class HarmonyParams:
    """Tunable model parameters; defaults documented in the README.

    k_h, k_N are in degrees, gamma in chroma units. The defaults give a
    neutral color (c=0) a hue sigma of k_h + k_N = 123 degrees, wide enough
    to pair with any hue, while for c >= 30 the neutral term drops below 4.
    """

    k_h: float = 3.0
    k_N: float = 120.0
    gamma: float = 5.0
    k_c: float = 2.0
    k_L: float = 2.0
    hue_db_threshold: float = 3.0
    ambiguity_db_threshold: float = 3.0
    t_line: float = 5.0
    maha_threshold: float = 3.0
    min_sep: float = 20.0
    # Test hook: force the hue rotation term to 1 so labels become exactly
    # rotation-invariant.
    rotation_term_enabled: bool = True

    def __post_init__(self):
        for f in fields(self):
            if f.type == "float" and getattr(self, f.name) <= 0:
                raise ValueError(f"parameter {f.name} must be strictly positive")


def rotation_term(h: float) -> float:
    """Hue-dependent weighting that evens out perceptual non-uniformity.

    Positive for all h (grid-sweep minimum is about 0.36).
    """
    hr = math.radians(_norm360(h))
    return (
        1.0
        - 0.17 * math.cos(hr - math.radians(30.0))
        + 0.24 * math.cos(2.0 * hr)
        + 0.32 * math.cos(3.0 * hr + math.radians(6.0))
        # 65 here; the CIEDE2000 hue-rotation term uses 63.
        - 0.20 * math.cos(4.0 * hr - math.radians(65.0))
    )


def hue_stddev(h: float, c: float, p: HarmonyParams) -> float:
    """Hue standard deviation in degrees for a color with hue h and chroma c.

    k_h*(1 + 0.015*c*H_T(h)) plus a neutral term k_N*gamma^2/(c^2+gamma^2)
    that dominates at low chroma and vanishes as c grows.
    """
    rot = rotation_term(h) if p.rotation_term_enabled else 1.0
    neutral = p.k_N * p.gamma**2 / (c * c + p.gamma**2)
    return p.k_h * (1.0 + 0.015 * c * rot) + neutral


def hue_distribution(color: Color, p: HarmonyParams) -> HueDistribution:
    """Gaussian hue distribution of a color; variance is hue_stddev squared."""
    s = hue_stddev(color.h, color.c, p)
    return HueDistribution(mean=color.h, var=s * s)


def tone_scale_factors(c: float, L: float) -> tuple[float, float]:
    """(S_c, S_L) scale factors; both >= 1, equal to 1 at c=0 / L=50."""
    s_c = 1.0 + 0.045 * c
    dl = L - 50.0
    s_l = 1.0 + 0.015 * dl * dl / math.sqrt(20.0 + dl * dl)
    return s_c, s_l


def tone_distribution(color: Color, p: HarmonyParams) -> ToneDistribution:
    """Bivariate tone Gaussian: mean (c, L), cov diag((k_c*S_c)^2, (k_L*S_L)^2)."""
    s_c, s_l = tone_scale_factors(color.c, color.L)
    cov = np.diag([(p.k_c * s_c) ** 2, (p.k_L * s_l) ** 2])
    return ToneDistribution(mean=color.tone, cov=cov)
