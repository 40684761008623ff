"""Chroma-lightness plane analysis.

Tones are compared with the multivariate Bhattacharyya distance (too-close
tones are ambiguous, hence inharmonic), and accepted tones must follow a
straight line. The line is the weighted perpendicular least-squares fit in
normal form (r, phi); each tone's covariance is propagated to a line
covariance and on to the variance of point-to-line distances, so the inlier
test can discount geometric distance by its own uncertainty.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .model import (
    Color,
    HarmonyParams,
    Tone,
    ToneDistribution,
    tone_distribution,
    tone_scale_factors,
)

__all__ = [
    "ToneLine",
    "TonePattern",
    "bhattacharyya_mv",
    "tones_unambiguous",
    "point_weight",
    "fit_line",
    "line_covariance",
    "perp_distance",
    "perp_distance_variance",
    "point_is_inlier",
    "evaluate_tone_harmony",
    "ToneState",
    "ToneColorDiag",
    "analyze_tones",
]

_TWO_PI = 2.0 * math.pi


class TonePattern(IntEnum):
    NO_HARMONY = 0
    POINT = 1
    LINE = 2


@dataclass(frozen=True)
class ToneLine:
    """Line in normal form: points (c, L) satisfy r = c*cos(phi) + L*sin(phi).

    r >= 0 by convention; phi is the inclination of the normal, in radians
    internally (interfaces report degrees).
    """

    r: float
    phi: float
    cov: np.ndarray | None = None  # 2x2 over (r, phi), phi in radians


def bhattacharyya_mv(A: ToneDistribution, B: ToneDistribution) -> float:
    """Bhattacharyya distance between two bivariate Gaussians."""
    mu = A.mean.as_array() - B.mean.as_array()
    sbar = 0.5 * (A.cov + B.cov)
    det_bar = float(np.linalg.det(sbar))
    det_a = float(np.linalg.det(A.cov))
    det_b = float(np.linalg.det(B.cov))
    if det_bar <= 0 or det_a <= 0 or det_b <= 0:
        raise ValueError("singular tone covariance")
    quad = float(mu @ np.linalg.solve(sbar, mu))
    return 0.125 * quad + 0.5 * math.log(det_bar / math.sqrt(det_a * det_b))


def tones_unambiguous(A: ToneDistribution, B: ToneDistribution, p: HarmonyParams) -> bool:
    """True when the two tones are separated enough to read as intentional."""
    return bhattacharyya_mv(A, B) >= p.ambiguity_db_threshold


def point_weight(c: float, L: float, p: HarmonyParams) -> float:
    """Fit weight of a tone measurement: (k_c*S_c*k_L*S_L)^-2.

    Maximal at (c=0, L=50) where both scale factors are 1.
    """
    s_c, s_l = tone_scale_factors(c, L)
    return (p.k_c * s_c * p.k_L * s_l) ** -2


def _fit_terms(points: list[Tone], weights: list[float]):
    w = np.asarray(weights, dtype=float)
    c = np.array([t.c for t in points], dtype=float)
    L = np.array([t.L for t in points], dtype=float)
    wsum = float(w.sum())
    c_bar = float(w @ c) / wsum
    l_bar = float(w @ L) / wsum
    u = c - c_bar
    v = L - l_bar
    num = -2.0 * float(w @ (u * v))
    den = float(w @ (v * v - u * u))
    return w, u, v, wsum, c_bar, l_bar, num, den


def fit_line(points: list[Tone], weights: list[float]) -> ToneLine:
    """Weighted perpendicular least-squares line through tone points.

    Minimizes sum w_i * (r - c_i*cos(phi) - L_i*sin(phi))^2. The returned
    line has r >= 0 (phi flipped by pi when needed). Raises on fewer than
    two points or an all-coincident set.
    """
    if len(points) < 2:
        raise ValueError("need at least 2 points to fit a line")
    if len(points) != len(weights):
        raise ValueError("points and weights length mismatch")
    w, u, v, wsum, c_bar, l_bar, num, den = _fit_terms(points, weights)
    if float(w @ (u * u + v * v)) / wsum < 1e-12:
        raise ValueError("degenerate fit: all points coincident")
    phi = 0.5 * math.atan2(num, den)
    r = c_bar * math.cos(phi) + l_bar * math.sin(phi)
    if r < 0:
        r, phi = -r, phi + math.pi
    return ToneLine(r=r, phi=phi % _TWO_PI)


def _fit_jacobians(points: list[Tone], weights: list[float], line: ToneLine) -> list[np.ndarray]:
    """Per-point 2x2 Jacobians d(r, phi)/d(c_i, L_i) at the fitted line.

    Weights are held fixed (they are inputs to the fit, not functions of the
    perturbed coordinates). phi partials come from the atan2 closed form;
    r partials chain through the weighted means and phi.
    """
    w, u, v, wsum, c_bar, l_bar, num, den = _fit_terms(points, weights)
    big_d = num * num + den * den
    if big_d < 1e-30:
        # isotropic weighted spread: every orientation fits equally well and
        # the phi sensitivity is undefined
        raise ValueError("line orientation indeterminate: isotropic point spread")
    cos_p = math.cos(line.phi)
    sin_p = math.sin(line.phi)
    # r = c_bar*cos(phi) + l_bar*sin(phi) evaluated at the sign-fixed phi.
    dr_dphi = l_bar * cos_p - c_bar * sin_p
    jacs = []
    for k in range(len(points)):
        dphi_dc = w[k] * (num * u[k] - den * v[k]) / big_d
        dphi_dl = -w[k] * (den * u[k] + num * v[k]) / big_d
        dr_dc = (w[k] / wsum) * cos_p + dr_dphi * dphi_dc
        dr_dl = (w[k] / wsum) * sin_p + dr_dphi * dphi_dl
        jacs.append(np.array([[dr_dc, dr_dl], [dphi_dc, dphi_dl]]))
    return jacs


def line_covariance(
    points: list[Tone],
    covs: list[np.ndarray],
    line: ToneLine,
    weights: list[float],
) -> np.ndarray:
    """Propagate per-point covariances through the fit: sum b_i C_i b_i^T."""
    jacs = _fit_jacobians(points, weights, line)
    out = np.zeros((2, 2))
    for b, cov in zip(jacs, covs):
        out += b @ np.asarray(cov, dtype=float) @ b.T
    return out


def perp_distance(t: Tone, line: ToneLine) -> float:
    """Perpendicular distance |r - c*cos(phi) - L*sin(phi)|."""
    return abs(line.r - t.c * math.cos(line.phi) - t.L * math.sin(line.phi))


def perp_distance_variance(t: Tone, C_t: np.ndarray, line: ToneLine) -> float:
    """First-order variance of the perpendicular distance.

    Combines the point's covariance with the line's (r, phi) covariance;
    the two blocks are treated as independent.
    """
    cos_p = math.cos(line.phi)
    sin_p = math.sin(line.phi)
    # Gradient of the signed distance; the sign cancels in the quadratic form.
    g_point = np.array([-cos_p, -sin_p])  # d/d(c, L)
    g_line = np.array([1.0, t.c * sin_p - t.L * cos_p])  # d/d(r, phi)
    var = float(g_point @ np.asarray(C_t, dtype=float) @ g_point)
    if line.cov is not None:
        var += float(g_line @ line.cov @ g_line)
    return max(var, 0.0)


def point_is_inlier(t: Tone, C_t: np.ndarray, line: ToneLine, p: HarmonyParams) -> bool:
    """Inlier test: distance discounted by twice its sigma stays under t_line."""
    d = perp_distance(t, line)
    var = perp_distance_variance(t, C_t, line)
    return d - 2.0 * math.sqrt(var) <= p.t_line


@dataclass(frozen=True)
class ToneColorDiag:
    """Per-color record from the incremental tone evaluator."""

    d_b_min: float | None  # smallest Bhattacharyya distance to accepted tones
    d_perp: float | None
    sigma_d: float | None
    inlier: bool | None
    accepted: bool


@dataclass(frozen=True)
class ToneState:
    """Fold state of the tone evaluator over a color sequence."""

    alive: bool
    accepted: tuple[ToneDistribution, ...]
    weights: tuple[float, ...]
    line: ToneLine | None
    diags: tuple[ToneColorDiag, ...]

    @classmethod
    def seed(cls) -> "ToneState":
        return cls(alive=True, accepted=(), weights=(), line=None, diags=())

    def add(self, color: Color, p: HarmonyParams) -> "ToneState":
        dist = tone_distribution(color, p)
        weight = point_weight(color.c, color.L, p)
        if not self.accepted:
            diag = ToneColorDiag(None, None, None, None, accepted=self.alive)
            if not self.alive:
                return ToneState(False, self.accepted, self.weights, self.line,
                                 self.diags + (diag,))
            return ToneState(True, (dist,), (weight,), None, self.diags + (diag,))

        d_b_min = min(bhattacharyya_mv(t, dist) for t in self.accepted)
        d_perp = sigma_d = None
        inlier = None
        if self.line is not None:
            d_perp = perp_distance(dist.mean, self.line)
            sigma_d = math.sqrt(perp_distance_variance(dist.mean, dist.cov, self.line))
            inlier = d_perp - 2.0 * sigma_d <= p.t_line
        ok = self.alive and d_b_min >= p.ambiguity_db_threshold
        if ok and len(self.accepted) >= 2:
            ok = bool(inlier)
        diag = ToneColorDiag(d_b_min, d_perp, sigma_d, inlier, accepted=ok)
        if not ok:
            return ToneState(False, self.accepted, self.weights, self.line,
                             self.diags + (diag,))
        accepted = self.accepted + (dist,)
        weights = self.weights + (weight,)
        points = [t.mean for t in accepted]
        line = fit_line(points, list(weights))
        cov = line_covariance(points, [t.cov for t in accepted], line, list(weights))
        line = ToneLine(r=line.r, phi=line.phi, cov=cov)
        return ToneState(True, accepted, weights, line, self.diags + (diag,))

    def label(self, n_colors: int) -> TonePattern:
        if n_colors == 1:
            return TonePattern.POINT
        if self.alive:
            return TonePattern.LINE
        return TonePattern.NO_HARMONY


@dataclass(frozen=True)
class ToneAnalysis:
    label: TonePattern
    state: ToneState


def analyze_tones(colors: list[Color], p: HarmonyParams) -> ToneAnalysis:
    if not colors:
        raise ValueError("empty palette")
    state = ToneState.seed()
    for color in colors:
        state = state.add(color, p)
    return ToneAnalysis(label=state.label(len(colors)), state=state)


def evaluate_tone_harmony(colors: list[Color], p: HarmonyParams) -> TonePattern:
    """Label a color list in the tone plane: point, line, or none.

    A later color is rejected when its tone is ambiguous with any accepted
    tone, or (from the third color on) when it is not an inlier of the line
    fitted to the accepted tones. The second color is accepted whenever it is
    unambiguous; two points always define a line.
    """
    return analyze_tones(colors, p).label
