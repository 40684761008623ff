"""Uncertainty-based color harmony for CIELCh palettes.

Evaluate whether an ordered list of colors is harmonic (hue-circle patterns
plus a straight-line tone pattern under Gaussian uncertainty) and generate
harmonic palettes by construction. Ships a library, a CLI, and an HTTP API.
"""

from .convert import color_to_srgb, is_in_gamut, nearest_in_gamut, srgb_to_color
from .engine import (
    HarmonyReport,
    Session,
    evaluate_palette,
    session_add_color,
    session_report,
    session_undo,
    suggest_next,
)
from .generate import GenResult, GenSpec, generate_line_palette
from .hue import FusedHue, HuePattern, evaluate_hue_harmony
from .model import (
    Color,
    HarmonyParams,
    HueDistribution,
    Tone,
    ToneDistribution,
    hue_distribution,
    hue_stddev,
    rotation_term,
    tone_distribution,
    tone_scale_factors,
)
from .tone import ToneLine, TonePattern, evaluate_tone_harmony

__version__ = "0.1.0"

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
    "srgb_to_color",
    "color_to_srgb",
    "is_in_gamut",
    "nearest_in_gamut",
    "HuePattern",
    "FusedHue",
    "evaluate_hue_harmony",
    "ToneLine",
    "TonePattern",
    "evaluate_tone_harmony",
    "GenSpec",
    "GenResult",
    "generate_line_palette",
    "HarmonyReport",
    "Session",
    "evaluate_palette",
    "session_add_color",
    "session_undo",
    "session_report",
    "suggest_next",
    "__version__",
]
