"""Pattern detection on the hue circle.

Hues are compared through a standardized difference that folds the circle by
the pattern order i (1 analog, 2 opposite, 3 triad), so opposite and triad
relations collapse to zero. Two hue Gaussians are harmonic for a pattern when
their Bhattacharyya distance, taken over the folded mean difference, stays
under a threshold; accepted hues are fused by inverse-variance weighting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

from .model import (
    Color,
    HarmonyParams,
    HueDistribution,
    hue_distribution,
    hue_stddev,
    _norm360,
)

__all__ = [
    "HuePattern",
    "FusedHue",
    "central_angle",
    "standardized_diff",
    "bhattacharyya_1d",
    "hue_pair_harmonic",
    "fuse_hues",
    "evaluate_hue_harmony",
    "HueState",
    "HueColorDiag",
    "analyze_hues",
]


class HuePattern(IntEnum):
    NO_HARMONY = 0
    ANALOG = 1
    OPPOSITE = 2
    TRIAD = 3


@dataclass(frozen=True)
class FusedHue:
    """Running fused hue estimate: mean hue, mean chroma, and distribution."""

    h_hat: float
    c_hat: float
    dist: HueDistribution


def central_angle(a: float, b: float) -> float:
    """Central angle between two hue angles, in [0, 180] degrees."""
    d = abs(_norm360(a) - _norm360(b)) % 360.0
    return min(d, 360.0 - d)


def standardized_diff(i: int, a: float, b: float) -> float:
    """Angular difference after folding the circle by i; range [0, 180/i].

    Folding maps theta to i*(theta mod 360/i), so hues that are multiples of
    360/i apart (opposite for i=2, triad for i=3) collapse to zero.
    """
    if i not in (1, 2, 3):
        raise ValueError(f"pattern order must be 1, 2 or 3, got {i}")
    period = 360.0 / i
    alpha_a = i * (_norm360(a) % period)
    alpha_b = i * (_norm360(b) % period)
    return central_angle(alpha_a, alpha_b) / i


def bhattacharyya_1d(var_a: float, var_b: float, d: float) -> float:
    """Bhattacharyya distance of two 1-D Gaussians with mean separation d."""
    s = var_a + var_b
    return d * d / (4.0 * s) + 0.5 * math.log(s / (2.0 * math.sqrt(var_a * var_b)))


def hue_pair_harmonic(
    i: int, A: HueDistribution, B: HueDistribution, p: HarmonyParams
) -> bool:
    """True when A and B are harmonic for the i-th pattern."""
    d = standardized_diff(i, A.mean, B.mean)
    return bhattacharyya_1d(A.var, B.var, d) <= p.hue_db_threshold


def _pattern_rep(i: int, h: float, anchor: float) -> float:
    """Pattern-equivalent representative of h nearest to anchor.

    Shifts h by multiples of the pattern period 360/i (the shift that the
    folding quotients out) so the linear fusion formula stays well defined
    across the 0/360 seam and across pattern sectors. Returned value is a
    real number within half a period of anchor, not normalized.
    """
    period = 360.0 / i
    return h + period * round((anchor - h) / period)


def fuse_hues(
    A: HueDistribution,
    c_a: float,
    B: HueDistribution,
    c_b: float,
    p: HarmonyParams,
    i: int = 1,
) -> FusedHue:
    """Fuse two harmonic hue distributions by inverse-variance weighting.

    The fused variance is recomputed from the uncertainty model at the fused
    (hue, chroma), not taken as the naive product-of-Gaussians variance. B's
    mean is first re-expressed as its pattern-equivalent representative
    nearest A's mean, so averaging is minimal-arc on the (folded) circle.
    """
    v_a = 1.0 / A.var
    v_b = 1.0 / B.var
    h_b = _pattern_rep(i, B.mean, A.mean)
    h_hat = _norm360((v_a * A.mean + v_b * h_b) / (v_a + v_b))
    c_hat = (v_a * c_a + v_b * c_b) / (v_a + v_b)
    s = hue_stddev(h_hat, c_hat, p)
    return FusedHue(h_hat=h_hat, c_hat=c_hat, dist=HueDistribution(h_hat, s * s))


@dataclass(frozen=True)
class HueColorDiag:
    """Per-color record for one pattern hypothesis."""

    std_diff: float | None  # folded difference to the fused hue; None for the seed
    d_b: float | None
    accepted: bool


@dataclass(frozen=True)
class HueState:
    """Fold state of one pattern hypothesis over a color sequence."""

    pattern: int
    alive: bool
    fused: FusedHue | None
    diags: tuple[HueColorDiag, ...]

    @classmethod
    def seed(cls, pattern: int) -> "HueState":
        return cls(pattern=pattern, alive=True, fused=None, diags=())

    def add(self, color: Color, p: HarmonyParams) -> "HueState":
        dist = hue_distribution(color, p)
        if self.fused is None:
            fused = FusedHue(h_hat=color.h, c_hat=color.c, dist=dist)
            diag = HueColorDiag(std_diff=None, d_b=None, accepted=True)
            return HueState(self.pattern, self.alive, fused, self.diags + (diag,))
        d = standardized_diff(self.pattern, self.fused.dist.mean, dist.mean)
        d_b = bhattacharyya_1d(self.fused.dist.var, dist.var, d)
        ok = self.alive and d_b <= p.hue_db_threshold
        diag = HueColorDiag(std_diff=d, d_b=d_b, accepted=ok)
        fused = self.fused
        if ok:
            fused = fuse_hues(
                self.fused.dist, self.fused.c_hat, dist, color.c, p, i=self.pattern
            )
        return HueState(self.pattern, ok, fused, self.diags + (diag,))


@dataclass(frozen=True)
class HueAnalysis:
    label: HuePattern
    states: tuple[HueState, HueState, HueState]

    @property
    def winner(self) -> HueState:
        """State of the reported pattern; the analog attempt when no harmony."""
        for st in self.states:
            if st.alive:
                return st
        return self.states[0]


def analyze_hues(
    colors: list[Color], p: HarmonyParams, patterns: tuple[int, ...] = (1, 2, 3)
) -> HueAnalysis:
    """Fold all pattern hypotheses over the color list.

    The reported label is the lowest-order pattern that accepted every color
    (simplest-pattern priority); restricting `patterns` disables the others,
    which is only useful for tests.
    """
    if not colors:
        raise ValueError("empty palette")
    states = []
    for i in (1, 2, 3):
        st = HueState.seed(i)
        if i in patterns:
            for color in colors:
                st = st.add(color, p)
        else:
            st = HueState(i, False, None, ())
        states.append(st)
    label = HuePattern.NO_HARMONY
    for st in states:
        if st.alive:
            label = HuePattern(st.pattern)
            break
    return HueAnalysis(label=label, states=tuple(states))


def evaluate_hue_harmony(colors: list[Color], p: HarmonyParams) -> HuePattern:
    """Label a color list on the hue circle: analog, opposite, triad, or none.

    A single color is labeled analog (the analog pass succeeds vacuously).
    """
    return analyze_hues(colors, p).label
