"""Session orchestration: combined evaluation, incremental sessions, suggestions.

A palette is harmonic when it earns a non-zero label both on the hue circle
and in the tone plane. Sessions fold colors one at a time through the same
immutable states the batch evaluator uses, so incremental results are equal
to whole-list evaluation by construction, and undo is a snapshot pop.
"""

from __future__ import annotations

import math
import secrets
from dataclasses import dataclass, field

import numpy as np

from . import convert
from .generate import _segment_range
from .hue import HueAnalysis, HuePattern, HueState, analyze_hues
from .model import Color, HarmonyParams, hue_stddev, tone_distribution
from .tone import ToneLine, TonePattern, ToneState, analyze_tones

__all__ = [
    "ColorDiagnostics",
    "HarmonyReport",
    "Session",
    "evaluate_palette",
    "session_add_color",
    "session_undo",
    "session_report",
    "suggest_next",
]


@dataclass(frozen=True)
class ColorDiagnostics:
    """Merged per-color diagnostics from both evaluators."""

    color: Color
    hue_sigma: float
    hue_std_diff: float | None
    hue_db: float | None
    hue_accepted: bool
    tone_cov: np.ndarray
    tone_db_min: float | None
    d_perp: float | None
    sigma_d: float | None
    inlier: bool | None
    tone_accepted: bool


@dataclass(frozen=True)
class HarmonyReport:
    hue_label: HuePattern
    tone_label: TonePattern
    harmonic: bool
    score: float  # heuristic 0-10 margin score, 5 at a gate boundary
    per_color: tuple[ColorDiagnostics, ...]
    line: ToneLine | None
    fused_hue: tuple[float, float, float] | None  # (h, c, sigma) of the winner


def _gate_margins(
    hue_state: HueState, tone_state: ToneState, p: HarmonyParams
) -> list[float]:
    """Normalized signed margins of every gate a multi-color palette faced."""
    margins = []
    for d in hue_state.diags:
        if d.d_b is not None:
            margins.append((p.hue_db_threshold - d.d_b) / p.hue_db_threshold)
    for d in tone_state.diags:
        if d.d_b_min is not None:
            margins.append((d.d_b_min - p.ambiguity_db_threshold) / p.ambiguity_db_threshold)
        if d.inlier is not None and d.d_perp is not None:
            margins.append((p.t_line - (d.d_perp - 2.0 * d.sigma_d)) / p.t_line)
    return margins


def _score(hue_state: HueState, tone_state: ToneState, p: HarmonyParams) -> float:
    margins = _gate_margins(hue_state, tone_state, p)
    worst = min((min(m, 1.0) for m in margins), default=1.0)
    return round(min(max(5.0 + 5.0 * worst, 0.0), 10.0), 2)


def _assemble_report(
    colors: list[Color],
    hue_analysis: HueAnalysis,
    tone_state: ToneState,
    p: HarmonyParams,
) -> HarmonyReport:
    hue_label = hue_analysis.label
    tone_label = tone_state.label(len(colors))
    winner = hue_analysis.winner
    per_color = []
    for color, hd, td in zip(colors, winner.diags, tone_state.diags):
        per_color.append(
            ColorDiagnostics(
                color=color,
                hue_sigma=hue_stddev(color.h, color.c, p),
                hue_std_diff=hd.std_diff,
                hue_db=hd.d_b,
                hue_accepted=hd.accepted,
                tone_cov=tone_distribution(color, p).cov,
                tone_db_min=td.d_b_min,
                d_perp=td.d_perp,
                sigma_d=td.sigma_d,
                inlier=td.inlier,
                tone_accepted=td.accepted,
            )
        )
    fused = winner.fused
    fused_out = None
    if fused is not None:
        fused_out = (fused.h_hat, fused.c_hat, math.sqrt(fused.dist.var))
    return HarmonyReport(
        hue_label=hue_label,
        tone_label=tone_label,
        harmonic=hue_label != HuePattern.NO_HARMONY
        and tone_label != TonePattern.NO_HARMONY,
        score=_score(winner, tone_state, p),
        per_color=tuple(per_color),
        line=tone_state.line,
        fused_hue=fused_out,
    )


def evaluate_palette(colors: list[Color], params: HarmonyParams,
                     weights: list[float] | None = None) -> HarmonyReport:
    """Evaluate a palette on both the hue circle and the tone plane.

    Optional weights (e.g. the area each color covers) only reorder the list,
    largest weight first, before the incremental evaluators run.
    """
    if not colors:
        raise ValueError("empty palette")
    if weights is not None:
        if len(weights) != len(colors):
            raise ValueError("weights length mismatch")
        order = sorted(range(len(colors)), key=lambda i: -weights[i])
        colors = [colors[i] for i in order]
    hue_analysis = analyze_hues(colors, params)
    tone_analysis = analyze_tones(colors, params)
    return _assemble_report(colors, hue_analysis, tone_analysis.state, params)


@dataclass
class Session:
    """An incremental palette-building session.

    Not thread-safe for concurrent mutation; callers (the HTTP service)
    serialize operations per session.
    """

    params: HarmonyParams = field(default_factory=HarmonyParams)
    id: str = field(default_factory=lambda: secrets.token_urlsafe(8))
    colors: list[Color] = field(default_factory=list)
    hue_states: tuple[HueState, HueState, HueState] = field(
        default_factory=lambda: (HueState.seed(1), HueState.seed(2), HueState.seed(3))
    )
    tone_state: ToneState = field(default_factory=ToneState.seed)
    _history: list[tuple] = field(default_factory=list, repr=False)


def _session_hue_analysis(s: Session) -> HueAnalysis:
    label = HuePattern.NO_HARMONY
    for st in s.hue_states:
        if st.alive:
            label = HuePattern(st.pattern)
            break
    return HueAnalysis(label=label, states=s.hue_states)


def session_report(s: Session) -> HarmonyReport:
    if not s.colors:
        raise ValueError("empty session")
    return _assemble_report(s.colors, _session_hue_analysis(s), s.tone_state, s.params)


def session_add_color(s: Session, color: Color) -> HarmonyReport:
    """Fold one color into the session and report the updated state.

    A disharmonious addition is recorded and reflected in the report, never
    rejected; undo can remove it.
    """
    s._history.append((tuple(s.colors), s.hue_states, s.tone_state))
    s.colors.append(color)
    s.hue_states = tuple(st.add(color, s.params) for st in s.hue_states)
    s.tone_state = s.tone_state.add(color, s.params)
    return session_report(s)


def session_undo(s: Session) -> HarmonyReport | None:
    """Pop the last added color; returns the restored report (None if empty)."""
    if not s._history:
        raise ValueError("nothing to undo")
    colors, hue_states, tone_state = s._history.pop()
    s.colors = list(colors)
    s.hue_states = hue_states
    s.tone_state = tone_state
    return session_report(s) if s.colors else None


def _inclination_prior(phi_rad: float) -> float:
    """Piecewise-linear preference over line inclination.

    Near-vertical fitted lines (normal inclination within 10 degrees of 90)
    score lower, reflecting the observed dip in preference there.
    """
    phi_deg = math.degrees(phi_rad) % 180.0
    return min(1.0, abs(phi_deg - 90.0) / 10.0)


def _candidate_score(s: Session, color: Color) -> tuple[bool, float]:
    """Simulate adding `color`; return (keeps harmonic, ranking score)."""
    p = s.params
    hue_states = tuple(st.add(color, p) for st in s.hue_states)
    tone_state = s.tone_state.add(color, p)
    winner = next((st for st in hue_states if st.alive), None)
    tone_label = tone_state.label(len(s.colors) + 1)
    if winner is None or tone_label == TonePattern.NO_HARMONY:
        return False, 0.0
    margins = []
    hd = winner.diags[-1]
    if hd.d_b is not None:
        margins.append((p.hue_db_threshold - hd.d_b) / p.hue_db_threshold)
    td = tone_state.diags[-1]
    if td.d_b_min is not None:
        margins.append((td.d_b_min - p.ambiguity_db_threshold) / p.ambiguity_db_threshold)
    if td.inlier is not None and td.d_perp is not None:
        margins.append((p.t_line - (td.d_perp - 2.0 * td.sigma_d)) / p.t_line)
    worst = min(max(min(margins, default=1.0), 0.0), 1.0)
    prior = _inclination_prior(tone_state.line.phi) if tone_state.line else 1.0
    return True, 0.7 * worst + 0.3 * prior


def _sample_candidates(s: Session, rng: np.random.Generator, count: int) -> list[Color]:
    alive = [st for st in s.hue_states if st.alive]
    if not alive or not s.tone_state.alive:
        return []
    line = s.tone_state.line
    span = _segment_range(line.r, line.phi) if line is not None else None
    if line is not None and span is None:
        return []  # fitted line exited the tone square; nothing to offer
    out = []
    for _ in range(count):
        # Tone: on the current line when one exists, else anywhere in the square.
        if line is not None:
            t = rng.uniform(*span)
            c = line.r * math.cos(line.phi) - t * math.sin(line.phi)
            L = line.r * math.sin(line.phi) + t * math.cos(line.phi)
            c = min(max(c, 0.0), 100.0)
            L = min(max(L, 0.0), 100.0)
        else:
            c = rng.uniform(0.0, 100.0)
            L = rng.uniform(0.0, 100.0)
        # Hue: near a pattern position of some still-alive hypothesis.
        st = alive[rng.integers(len(alive))]
        period = 360.0 / st.pattern
        sigma = min(math.sqrt(st.fused.dist.var), 60.0)
        h = st.fused.h_hat + period * rng.integers(st.pattern) + rng.normal(0.0, sigma)
        cand, _ = convert.nearest_in_gamut(Color(L=float(L), c=float(c), h=h % 360.0))
        out.append(cand)
    return out


def suggest_next(s: Session, n: int) -> list[tuple[Color, float]]:
    """Up to n colors that keep the session harmonic when added, best first.

    Candidates are drawn along the session's tone line (or across the tone
    square before a line exists) at hues compatible with a still-alive hue
    pattern, then filtered by simulated addition: every returned color, once
    appended, yields a harmonic report. Fewer than n are returned when the
    pool runs dry; the list is empty when the session cannot stay harmonic.
    """
    if not s.colors:
        raise ValueError("empty session")
    if n <= 0:
        return []
    rng = np.random.default_rng(1000003 * len(s.colors) + n)
    seen = set()
    scored = []
    for cand in _sample_candidates(s, rng, count=max(40, 12 * n)):
        key = (round(cand.L, 1), round(cand.c, 1), round(cand.h, 1))
        if key in seen:
            continue
        seen.add(key)
        ok, score = _candidate_score(s, cand)
        if ok:
            scored.append((cand, round(score, 4)))
    scored.sort(key=lambda t: -t[1])
    return scored[:n]
