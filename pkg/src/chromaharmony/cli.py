"""Command-line front end: evaluate palettes, generate them, sweep parameters.

Exit codes: 0 harmonic, 1 usage/input error, 2 evaluated as not harmonic,
3 generation produced no palette. Parameters resolve as defaults, then the
config file (--config or $CHROMAHARMONY_PARAMS), then --param flags.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import formats
from .engine import evaluate_palette
from .generate import GenSpec, generate_line_palette
from .hue import HuePattern, evaluate_hue_harmony
from .model import Color, HarmonyParams
from .tone import TonePattern, evaluate_tone_harmony

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INHARMONIC = 2
EXIT_EMPTY_PALETTE = 3

PARAMS_ENV = "CHROMAHARMONY_PARAMS"


class CliError(Exception):
    pass


def _read_config_file(path: str) -> dict:
    """Parse a flat key=value config file; '#' starts a comment."""
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise CliError(f"{path}:{lineno}: expected key=value, got {raw!r}")
                key, value = (part.strip() for part in line.split("=", 1))
                values[key] = value
    except OSError as exc:
        raise CliError(f"cannot read config file {path}: {exc}") from exc
    return values


def _resolve_params(args) -> HarmonyParams:
    merged: dict = {}
    config_path = args.config or os.environ.get(PARAMS_ENV)
    if config_path:
        merged.update(_read_config_file(config_path))
    for item in args.param or []:
        if "=" not in item:
            raise CliError(f"--param expects key=value, got {item!r}")
        key, value = item.split("=", 1)
        merged[key.strip()] = value.strip()
    try:
        return formats.params_from_mapping(merged)
    except (ValueError, TypeError) as exc:
        raise CliError(str(exc)) from exc


def _parse_colors(args) -> list[Color]:
    tokens = list(args.colors)
    if args.file:
        try:
            with open(args.file, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(f"cannot read colors from {args.file}: {exc}") from exc
        if not isinstance(data, list):
            raise CliError(f"{args.file}: expected a JSON array of colors")
        tokens.extend(data)
    if not tokens:
        raise CliError("no colors given (pass tokens or --file)")
    colors = []
    for token in tokens:
        try:
            colors.append(formats.parse_color(token))
        except ValueError as exc:
            raise CliError(str(exc)) from exc
    return colors


def _print_report(report_json: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report_json, indent=2))
        return
    print(f"hue pattern:  {report_json['hue_pattern']}")
    print(f"tone pattern: {report_json['tone_pattern']}")
    print(f"harmonic:     {'yes' if report_json['harmonic'] else 'no'}"
          f"  (score {report_json['score']}/10)")
    if report_json["line"]:
        line = report_json["line"]
        print(f"tone line:    r={line['r']:.3f} phi={line['phi_deg']:.2f} deg")
    for i, entry in enumerate(report_json["per_color"]):
        flags = []
        if not entry["hue_accepted"]:
            flags.append("hue rejected")
        if not entry["tone_accepted"]:
            flags.append("tone rejected")
        lch = entry["lch"]
        print(f"  [{i}] {entry['hex']}  L={lch[0]:.1f} c={lch[1]:.1f} h={lch[2]:.1f}"
              + (f"  ({', '.join(flags)})" if flags else ""))


def cmd_evaluate(args) -> int:
    params = _resolve_params(args)
    colors = _parse_colors(args)
    report = evaluate_palette(colors, params)
    _print_report(formats.report_to_json(report), args.format)
    return EXIT_OK if report.harmonic else EXIT_INHARMONIC


def _render_png(colors: list[Color], path: str, layout: str) -> None:
    from PIL import Image, ImageDraw

    from . import convert

    rgbs = [convert.color_to_srgb(c)[0] for c in colors]
    if layout == "circle" and len(colors) == 3:
        # Disc split into three equal sectors on a neutral gray field.
        size = 360
        img = Image.new("RGB", (size, size), (128, 128, 128))
        draw = ImageDraw.Draw(img)
        box = (30, 30, size - 30, size - 30)
        for i, rgb in enumerate(rgbs):
            draw.pieslice(box, start=i * 120 - 90, end=(i + 1) * 120 - 90, fill=rgb)
    else:
        band = 120
        img = Image.new("RGB", (band * len(colors), band))
        draw = ImageDraw.Draw(img)
        for i, rgb in enumerate(rgbs):
            draw.rectangle([i * band, 0, (i + 1) * band, band], fill=rgb)
    img.save(path)


def _print_ansi(colors: list[Color]) -> None:
    from . import convert

    cells = []
    for color in colors:
        (r8, g8, b8), _ = convert.color_to_srgb(color)
        cells.append(f"\x1b[48;2;{r8};{g8};{b8}m        \x1b[0m")
    print("".join(cells))


def cmd_generate(args) -> int:
    params = _resolve_params(args)
    try:
        spec = GenSpec(r=args.r, phi=args.phi, k=args.k, seed=args.seed,
                       pattern_override=args.pattern)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    result = generate_line_palette(spec, params)
    payload = formats.gen_result_to_json(result)
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    elif args.format == "png":
        if not result.ok:
            print(f"no palette generated ({result.reason})", file=sys.stderr)
        else:
            path = args.out or "palette.png"
            _render_png(list(result.colors), path, args.layout)
            print(f"wrote {path}")
    elif args.format == "ansi":
        if result.ok:
            _print_ansi(list(result.colors))
        else:
            print(f"no palette generated ({result.reason})")
    else:
        if result.ok:
            print(f"pattern: {result.pattern_used}")
            for entry in payload["colors"]:
                lch = entry["lch"]
                print(f"  {entry['hex']}  L={lch[0]:.1f} c={lch[1]:.1f} h={lch[2]:.1f}")
        else:
            print(f"no palette generated ({result.reason})")
    return EXIT_OK if result.ok else EXIT_EMPTY_PALETTE


def _parse_range(text: str) -> list[float]:
    """Accept 'start:stop:step' (inclusive) or a comma-separated list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise CliError(f"range must be start:stop:step, got {text!r}")
        start, stop, step = (float(v) for v in parts)
        if step <= 0 or stop < start:
            raise CliError(f"bad range {text!r}")
        out = []
        v = start
        while v <= stop + 1e-9:
            out.append(round(v, 9))
            v += step
        return out
    values = [float(v) for v in text.split(",") if v.strip()]
    if not values:
        raise CliError(f"empty range: {text!r}")
    return values


def cmd_sweep(args) -> int:
    params = _resolve_params(args)
    phis = _parse_range(args.phi)
    rs = _parse_range(args.r)
    if not phis or not rs or args.trials < 1:
        raise CliError("empty sweep ranges")
    seed_stream = np.random.default_rng(args.seed)
    rows = []
    for r in rs:
        for phi in phis:
            ok = passed = 0
            for _ in range(args.trials):
                spec = GenSpec(r=r, phi=phi, k=args.k,
                               seed=int(seed_stream.integers(1 << 62)))
                result = generate_line_palette(spec, params)
                if not result.ok:
                    continue
                ok += 1
                colors = list(result.colors)
                tone_ok = evaluate_tone_harmony(colors, params) == TonePattern.LINE
                hue_ok = evaluate_hue_harmony(colors, params) != HuePattern.NO_HARMONY
                passed += tone_ok and hue_ok
            # round-trip rate is undefined (nan) in cells without a success
            rows.append([r, phi, f"{ok / args.trials:.4f}",
                         f"{passed / ok:.4f}" if ok else "nan"])

    def write(out) -> None:
        writer = csv.writer(out)
        writer.writerow(["r", "phi_deg", "success_rate", "round_trip_pass_rate"])
        writer.writerows(rows)

    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            write(fh)
    else:
        write(sys.stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chromaharmony",
        description="Evaluate and generate harmonic CIELCh color palettes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value parameter file")
    common.add_argument("--param", action="append", metavar="KEY=VALUE",
                        help="override one model parameter (repeatable)")

    p_eval = sub.add_parser("evaluate", parents=[common],
                            help="evaluate a palette for harmony")
    p_eval.add_argument("colors", nargs="*",
                        help='colors as "#RRGGBB" or "lch(L,c,h)"')
    p_eval.add_argument("--file", help="JSON file with an array of colors")
    p_eval.add_argument("--format", choices=["text", "json"], default="text")
    p_eval.add_argument("--json", dest="format", action="store_const",
                        const="json", help="shorthand for --format json")
    p_eval.set_defaults(func=cmd_evaluate)

    p_gen = sub.add_parser("generate", parents=[common],
                           help="generate a palette along a tone-plane line")
    p_gen.add_argument("--r", type=float, required=True,
                       help="length of the line's normal")
    p_gen.add_argument("--phi", type=float, required=True,
                       help="inclination of the normal, degrees")
    p_gen.add_argument("--k", type=int, default=3, help="number of colors")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--pattern",
                       choices=["analog", "opposite", "triad", "incomplete-triad"],
                       help="force the hue pattern instead of sampling")
    p_gen.add_argument("--format", choices=["text", "json", "png", "ansi"],
                       default="text")
    p_gen.add_argument("--json", dest="format", action="store_const",
                       const="json", help="shorthand for --format json")
    p_gen.add_argument("--layout", choices=["strip", "circle"], default="strip",
                       help="png layout; circle needs k=3")
    p_gen.add_argument("--out", help="output path for --format png")
    p_gen.set_defaults(func=cmd_generate)

    p_sweep = sub.add_parser("sweep", parents=[common],
                             help="sweep (r, phi) and report generation rates as CSV")
    p_sweep.add_argument("--phi", required=True, help="range start:stop:step or list")
    p_sweep.add_argument("--r", required=True, help="range start:stop:step or list")
    p_sweep.add_argument("--k", type=int, default=3)
    p_sweep.add_argument("--trials", type=int, default=100)
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.add_argument("--out", help="write CSV here instead of stdout")
    p_sweep.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; the documented contract is 1
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
