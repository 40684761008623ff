"""Wire formats shared by the CLI and the HTTP service.

Colors come in as "#RRGGBB" hex strings, "lch(L,c,h)" triples, or raw
[L, c, h] JSON arrays. Reports and palettes go out as versioned JSON whose
schema is published here so clients can validate against it.
"""

from __future__ import annotations

import math
import re

from . import convert
from .engine import HarmonyReport
from .generate import GenResult
from .hue import HuePattern
from .model import Color, HarmonyParams
from .tone import TonePattern

__all__ = [
    "SCHEMA_VERSION",
    "parse_color",
    "color_to_hex",
    "color_to_json",
    "report_to_json",
    "gen_result_to_json",
    "params_from_mapping",
    "REPORT_SCHEMA",
    "PALETTE_SCHEMA",
]

SCHEMA_VERSION = 1

_HEX_RE = re.compile(r"^#?([0-9a-fA-F]{6})$")
_LCH_RE = re.compile(
    r"^lch\(\s*([0-9.eE+-]+)\s*,\s*([0-9.eE+-]+)\s*,\s*([0-9.eE+-]+)\s*\)$"
)

PATTERN_NAMES = {
    HuePattern.NO_HARMONY: "none",
    HuePattern.ANALOG: "analog",
    HuePattern.OPPOSITE: "opposite",
    HuePattern.TRIAD: "triad",
}
TONE_NAMES = {
    TonePattern.NO_HARMONY: "none",
    TonePattern.POINT: "point",
    TonePattern.LINE: "line",
}

# Overridable HarmonyParams keys accepted from config files and API bodies.
PARAM_KEYS = (
    "k_h", "k_N", "gamma", "k_c", "k_L",
    "hue_db_threshold", "ambiguity_db_threshold",
    "t_line", "maha_threshold", "min_sep",
)


def parse_color(token) -> Color:
    """Parse one color from a hex string, lch(...) string, or [L,c,h] list."""
    if isinstance(token, (list, tuple)):
        if len(token) != 3:
            raise ValueError(f"expected [L, c, h], got {token!r}")
        return Color(L=float(token[0]), c=float(token[1]), h=float(token[2]))
    if not isinstance(token, str):
        raise ValueError(f"cannot parse color from {token!r}")
    text = token.strip()
    m = _HEX_RE.match(text)
    if m:
        v = int(m.group(1), 16)
        color, _ = convert.srgb_to_color((v >> 16) & 255, (v >> 8) & 255, v & 255)
        return color
    m = _LCH_RE.match(text)
    if m:
        return Color(L=float(m.group(1)), c=float(m.group(2)), h=float(m.group(3)))
    raise ValueError(f"unrecognized color format: {token!r}")


def color_to_hex(color: Color) -> str:
    (r8, g8, b8), _ = convert.color_to_srgb(color)
    return f"#{r8:02x}{g8:02x}{b8:02x}"


def color_to_json(color: Color) -> dict:
    _, in_gamut = convert.color_to_srgb(color)
    return {
        "hex": color_to_hex(color),
        "lch": [round(color.L, 4), round(color.c, 4), round(color.h, 4)],
        "in_gamut": in_gamut,
    }


def params_from_mapping(data: dict | None) -> HarmonyParams:
    """Build HarmonyParams from a partial key->value mapping."""
    if not data:
        return HarmonyParams()
    unknown = set(data) - set(PARAM_KEYS)
    if unknown:
        raise ValueError(f"unknown parameter(s): {', '.join(sorted(unknown))}")
    return HarmonyParams(**{k: float(v) for k, v in data.items()})


def report_to_json(report: HarmonyReport) -> dict:
    per_color = []
    for d in report.per_color:
        entry = color_to_json(d.color)
        entry.update(
            {
                "hue_sigma": round(d.hue_sigma, 4),
                "hue_std_diff": _opt(d.hue_std_diff),
                "hue_db": _opt(d.hue_db),
                "hue_accepted": d.hue_accepted,
                "tone_cov": [[round(float(v), 6) for v in row] for row in d.tone_cov],
                "tone_db_min": _opt(d.tone_db_min),
                "d_perp": _opt(d.d_perp),
                "sigma_d_perp": _opt(d.sigma_d),
                "inlier": None if d.inlier is None else bool(d.inlier),
                "tone_accepted": bool(d.tone_accepted),
            }
        )
        per_color.append(entry)
    line = None
    if report.line is not None:
        line = {
            "r": round(float(report.line.r), 6),
            "phi_deg": round(math.degrees(float(report.line.phi)) % 360.0, 6),
            "cov": [[round(float(v), 9) for v in row] for row in report.line.cov]
            if report.line.cov is not None
            else None,
        }
    fused = None
    if report.fused_hue is not None:
        h, c, sigma = report.fused_hue
        fused = {"h": round(h, 4), "c": round(c, 4), "sigma": round(sigma, 4)}
    return {
        "schema_version": SCHEMA_VERSION,
        "hue_label": int(report.hue_label),
        "tone_label": int(report.tone_label),
        "hue_pattern": PATTERN_NAMES[report.hue_label],
        "tone_pattern": TONE_NAMES[report.tone_label],
        "harmonic": report.harmonic,
        "score": report.score,
        "fused_hue": fused,
        "line": line,
        "per_color": per_color,
    }


def gen_result_to_json(result: GenResult) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "colors": [color_to_json(c) for c in result.colors],
        "pattern": result.pattern_used,
        "reason": result.reason,
        "diagnostics": [
            {
                "target": [round(d.target_c, 4), round(d.target_L, 4), round(d.target_h, 4)],
                "maha": round(d.maha, 6),
                "snap_delta": round(d.snap_delta, 6),
            }
            for d in result.diagnostics
        ],
    }


def _opt(v):
    return None if v is None else round(float(v), 6)


_NULLABLE_NUMBER = {"type": ["number", "null"]}
_NULLABLE_BOOL = {"type": ["boolean", "null"]}

_COLOR_ENTRY_SCHEMA = {
    "type": "object",
    "required": ["hex", "lch", "in_gamut"],
    "properties": {
        "hex": {"type": "string", "pattern": "^#[0-9a-f]{6}$"},
        "lch": {
            "type": "array",
            "items": {"type": "number"},
            "minItems": 3,
            "maxItems": 3,
        },
        "in_gamut": {"type": "boolean"},
    },
}

REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": [
        "schema_version", "hue_label", "tone_label", "hue_pattern",
        "tone_pattern", "harmonic", "score", "line", "per_color",
    ],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "hue_label": {"type": "integer", "minimum": 0, "maximum": 3},
        "tone_label": {"type": "integer", "minimum": 0, "maximum": 2},
        "hue_pattern": {"enum": ["none", "analog", "opposite", "triad"]},
        "tone_pattern": {"enum": ["none", "point", "line"]},
        "harmonic": {"type": "boolean"},
        "score": {"type": "number", "minimum": 0, "maximum": 10},
        "fused_hue": {
            "type": ["object", "null"],
            "required": ["h", "c", "sigma"],
        },
        "line": {
            "type": ["object", "null"],
            "required": ["r", "phi_deg", "cov"],
            "properties": {
                "r": {"type": "number", "minimum": 0},
                "phi_deg": {"type": "number", "minimum": 0, "maximum": 360},
            },
        },
        "per_color": {
            "type": "array",
            "minItems": 1,
            "items": {
                "allOf": [_COLOR_ENTRY_SCHEMA],
                "type": "object",
                "required": [
                    "hue_sigma", "hue_std_diff", "hue_db", "hue_accepted",
                    "tone_cov", "tone_db_min", "d_perp", "sigma_d_perp",
                    "inlier", "tone_accepted",
                ],
                "properties": {
                    "hue_sigma": {"type": "number", "exclusiveMinimum": 0},
                    "hue_std_diff": _NULLABLE_NUMBER,
                    "hue_db": _NULLABLE_NUMBER,
                    "hue_accepted": {"type": "boolean"},
                    "tone_db_min": _NULLABLE_NUMBER,
                    "d_perp": _NULLABLE_NUMBER,
                    "sigma_d_perp": _NULLABLE_NUMBER,
                    "inlier": _NULLABLE_BOOL,
                    "tone_accepted": {"type": "boolean"},
                },
            },
        },
    },
}

PALETTE_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["schema_version", "colors", "pattern", "reason", "diagnostics"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "colors": {"type": "array", "items": _COLOR_ENTRY_SCHEMA},
        "pattern": {
            "enum": ["analog", "opposite", "triad", "incomplete-triad", None],
        },
        "reason": {
            "enum": [None, "no_feasible_points", "maha_gate", "ambiguous_pair"],
        },
        "diagnostics": {"type": "array"},
    },
}
