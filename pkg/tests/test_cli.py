import csv
import io
import json

import jsonschema
import pytest

from chromaharmony.cli import (
    EXIT_EMPTY_PALETTE,
    EXIT_INHARMONIC,
    EXIT_OK,
    EXIT_USAGE,
    main,
)
from chromaharmony.formats import PALETTE_SCHEMA, REPORT_SCHEMA

HARMONIC = ["lch(20,10,100)", "lch(40,30,102)", "lch(60,50,98)"]
INHARMONIC = ["lch(50,30,10)", "lch(50,30,10)"]


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEvaluate:
    def test_harmonic_exit_zero(self, capsys):
        code, out, _ = run(capsys, "evaluate", *HARMONIC)
        assert code == EXIT_OK
        assert "harmonic:     yes" in out

    def test_inharmonic_exit_two(self, capsys):
        code, out, _ = run(capsys, "evaluate", *INHARMONIC)
        assert code == EXIT_INHARMONIC
        assert "harmonic:     no" in out

    def test_hex_input(self, capsys):
        code, out, _ = run(capsys, "evaluate", "#808080", "#4060a0", "#90c0f0")
        assert code in (EXIT_OK, EXIT_INHARMONIC)
        # deterministic: same command, same outcome
        code2, out2, _ = run(capsys, "evaluate", "#808080", "#4060a0", "#90c0f0")
        assert (code, out) == (code2, out2)

    def test_no_colors_is_usage_error(self, capsys):
        code, _, err = run(capsys, "evaluate")
        assert code == EXIT_USAGE
        assert "no colors" in err

    def test_bad_token_named(self, capsys):
        code, _, err = run(capsys, "evaluate", "#nothex")
        assert code == EXIT_USAGE
        assert "#nothex" in err

    def test_json_validates_schema(self, capsys):
        code, out, _ = run(capsys, "evaluate", "--format", "json", *HARMONIC)
        assert code == EXIT_OK
        report = json.loads(out)
        jsonschema.validate(report, REPORT_SCHEMA)
        assert report["harmonic"] is True

    def test_file_input(self, capsys, tmp_path):
        path = tmp_path / "colors.json"
        path.write_text(json.dumps(["#808080", [40.0, 30.0, 100.0]]))
        code, out, _ = run(capsys, "evaluate", "--file", str(path), "--format", "json")
        assert code in (EXIT_OK, EXIT_INHARMONIC)
        assert len(json.loads(out)["per_color"]) == 2


class TestGenerate:
    def test_deterministic_under_seed(self, capsys):
        args = ("generate", "--r", "7.07", "--phi", "135", "--k", "3",
                "--seed", "42", "--format", "json")
        code1, out1, _ = run(capsys, *args)
        code2, out2, _ = run(capsys, *args)
        assert code1 == code2 and out1 == out2
        jsonschema.validate(json.loads(out1), PALETTE_SCHEMA)

    def test_successful_generation(self, capsys):
        code, out, _ = run(capsys, "generate", "--r", "7.07", "--phi", "135",
                           "--k", "3", "--seed", "5", "--format", "json")
        assert code == EXIT_OK
        payload = json.loads(out)
        jsonschema.validate(payload, PALETTE_SCHEMA)
        assert len(payload["colors"]) == 3

    def test_line_misses_square_exit_three(self, capsys):
        code, out, _ = run(capsys, "generate", "--phi", "90", "--r", "200",
                           "--k", "3", "--format", "json")
        assert code == EXIT_EMPTY_PALETTE
        assert json.loads(out)["reason"] == "no_feasible_points"

    def test_invalid_numerics_usage_error(self, capsys):
        code, _, _ = run(capsys, "generate", "--r", "abc", "--phi", "90")
        assert code == EXIT_USAGE

    def test_k_one_usage_error(self, capsys):
        code, _, _ = run(capsys, "generate", "--r", "10", "--phi", "90", "--k", "1")
        assert code == EXIT_USAGE

    def test_png_strip(self, capsys, tmp_path):
        out_path = tmp_path / "strip.png"
        code, out, _ = run(capsys, "generate", "--r", "7.07", "--phi", "135",
                           "--k", "3", "--seed", "5", "--format", "png",
                           "--out", str(out_path))
        assert code == EXIT_OK
        from PIL import Image

        with Image.open(out_path) as img:
            assert img.size == (360, 120)

    def test_png_circle_layout(self, capsys, tmp_path):
        out_path = tmp_path / "circle.png"
        code, _, _ = run(capsys, "generate", "--r", "7.07", "--phi", "135",
                         "--k", "3", "--seed", "5", "--format", "png",
                         "--layout", "circle", "--out", str(out_path))
        assert code == EXIT_OK
        from PIL import Image

        with Image.open(out_path) as img:
            assert img.size == (360, 360)

    def test_ansi_output(self, capsys):
        code, out, _ = run(capsys, "generate", "--r", "7.07", "--phi", "135",
                           "--k", "3", "--seed", "5", "--format", "ansi")
        assert code == EXIT_OK
        assert "\x1b[48;2;" in out


class TestSweep:
    def test_csv_shape_and_ranges(self, capsys):
        code, out, _ = run(capsys, "sweep", "--phi", "0:150:30", "--r", "40",
                           "--k", "3", "--trials", "8", "--seed", "1")
        assert code == EXIT_OK
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 6
        assert set(rows[0]) == {"r", "phi_deg", "success_rate", "round_trip_pass_rate"}
        for row in rows:
            assert 0.0 <= float(row["success_rate"]) <= 1.0

    def test_empty_range_usage_error(self, capsys):
        code, _, _ = run(capsys, "sweep", "--phi", ",", "--r", "40", "--trials", "5")
        assert code == EXIT_USAGE

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "sweep.csv"
        code, _, _ = run(capsys, "sweep", "--phi", "90", "--r", "30,50",
                         "--trials", "4", "--out", str(path))
        assert code == EXIT_OK
        rows = list(csv.DictReader(path.open()))
        assert len(rows) == 2

    def test_deterministic_under_seed(self, capsys):
        args = ("sweep", "--phi", "45,135", "--r", "40", "--trials", "6",
                "--seed", "9")
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2


class TestParams:
    def test_config_file_applied(self, capsys, tmp_path):
        cfg = tmp_path / "params.cfg"
        cfg.write_text("# loose hue gate\nhue_db_threshold = 50\n")
        # hues 60 degrees apart at sigma ~7: fails default gate, passes 50
        colors = ["lch(20,60,0)", "lch(60,60,60)"]
        strict, _, _ = run(capsys, "evaluate", *colors)
        loose, _, _ = run(capsys, "evaluate", "--config", str(cfg), *colors)
        assert strict == EXIT_INHARMONIC
        assert loose == EXIT_OK

    def test_param_flag_wins_over_config(self, capsys, tmp_path):
        cfg = tmp_path / "params.cfg"
        cfg.write_text("hue_db_threshold = 50\n")
        colors = ["lch(20,60,0)", "lch(60,60,60)"]
        code, _, _ = run(capsys, "evaluate", "--config", str(cfg),
                         "--param", "hue_db_threshold=3", *colors)
        assert code == EXIT_INHARMONIC

    def test_env_var_config(self, capsys, tmp_path, monkeypatch):
        cfg = tmp_path / "params.cfg"
        cfg.write_text("hue_db_threshold = 50\n")
        monkeypatch.setenv("CHROMAHARMONY_PARAMS", str(cfg))
        code, _, _ = run(capsys, "evaluate", "lch(20,60,0)", "lch(60,60,60)")
        assert code == EXIT_OK

    def test_unknown_param_rejected(self, capsys):
        code, _, err = run(capsys, "evaluate", "--param", "bogus=1", "#808080")
        assert code == EXIT_USAGE
        assert "bogus" in err

    def test_missing_config_file(self, capsys):
        code, _, err = run(capsys, "evaluate", "--config", "/no/such/file", "#808080")
        assert code == EXIT_USAGE
