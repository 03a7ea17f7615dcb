import json

import pytest

from logcount import __version__
from logcount.cli import main
from logcount.raster import decode_image, threshold
from logcount.synth import oracle_count

PNG_SIG = b"\x89PNG\r\n\x1a\n"


def write_p2(path, grid):
    """grid: list of rows of 0/255 ints."""
    h = len(grid)
    w = len(grid[0])
    body = "\n".join(" ".join(str(v) for v in row) for row in grid)
    path.write_text(f"P2\n{w} {h}\n255\n{body}\n")


def blocks_mask_rows():
    """6x6: 2x2 blocks at (0,0) and (4,4), one speckle pixel at (0,5)."""
    rows = [[0] * 6 for _ in range(6)]
    for x, y in [(0, 0), (1, 0), (0, 1), (1, 1), (4, 4), (5, 4), (4, 5), (5, 5), (0, 5)]:
        rows[y][x] = 255
    return rows


def square_mask_rows():
    """6x6: single 3x3 block at (1,1)."""
    rows = [[0] * 6 for _ in range(6)]
    for y in range(1, 4):
        for x in range(1, 4):
            rows[y][x] = 255
    return rows


EVAL_TRUTH = [[255, 255, 0], [255, 255, 0], [0, 0, 0]]
EVAL_PRED = [[255, 255, 0], [0, 0, 0], [0, 0, 255]]

# hand computation for the pair above: tp=2 fp=1 fn=2 tn=4,
# accuracy 6/9, f1 4/7, iou 2/5, kappa 12/39
EVAL_GOLDEN_JSON = """\
{
  "images": [
    {
      "name": "img.pgm",
      "tp": 2,
      "fp": 1,
      "tn": 4,
      "fn": 2,
      "accuracy": 0.666667,
      "f1": 0.571429,
      "kappa": 0.307692,
      "iou": 0.400000
    }
  ],
  "means": {
    "accuracy": 0.666667,
    "f1": 0.571429,
    "kappa": 0.307692,
    "iou": 0.400000
  }
}
"""

COUNT_GOLDEN_CSV = """\
image_id,raw,filtered,observed,count_accuracy
a.pgm,3,2,2,100.000000
b.pgm,1,1,2,50.000000
"""

# full pipeline report for the two hand-checkable masks with truths
# equal to the inputs: counts and boxes enumerated by hand, indices
# perfect by construction, mean count accuracy (100 + 50) / 2
PIPELINE_GOLDEN_JSON = """\
{
  "schema_version": "1",
  "config": {
    "cutoff": 127,
    "connectivity": 8,
    "erode_first": false,
    "se_shape": "box",
    "se_size": 3,
    "iterations": 1,
    "min_area": 3,
    "accuracy_mode": "symmetric",
    "report": "json"
  },
  "images": [
    {
      "name": "a.pgm",
      "raw": 3,
      "filtered": 2,
      "min_area": 3,
      "boxes": [
        [0, 0, 2, 2],
        [4, 4, 2, 2]
      ],
      "observed": 2,
      "count_accuracy": 100.000000,
      "tp": 9,
      "fp": 0,
      "tn": 27,
      "fn": 0,
      "accuracy": 1.000000,
      "f1": 1.000000,
      "kappa": 1.000000,
      "iou": 1.000000
    },
    {
      "name": "b.pgm",
      "raw": 1,
      "filtered": 1,
      "min_area": 3,
      "boxes": [
        [1, 1, 3, 3]
      ],
      "observed": 2,
      "count_accuracy": 50.000000,
      "tp": 9,
      "fp": 0,
      "tn": 27,
      "fn": 0,
      "accuracy": 1.000000,
      "f1": 1.000000,
      "kappa": 1.000000,
      "iou": 1.000000
    }
  ],
  "means": {
    "count_accuracy": 75.000000,
    "accuracy": 1.000000,
    "f1": 1.000000,
    "kappa": 1.000000,
    "iou": 1.000000
  },
  "errors": []
}
"""


class TestVersion:
    def test_version_line(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--version"])
        assert exc.value.code == 0
        out = capsys.readouterr().out.strip()
        assert out.count("\n") == 0
        assert __version__ in out
        assert "report-schema 1" in out
        assert "Mersenne Twister" in out

    def test_stable_across_calls(self, capsys):
        lines = []
        for _ in range(2):
            with pytest.raises(SystemExit):
                main(["--version"])
            lines.append(capsys.readouterr().out)
        assert lines[0] == lines[1]


class TestEval:
    def _setup(self, tmp_path):
        (tmp_path / "pred").mkdir()
        (tmp_path / "truth").mkdir()
        write_p2(tmp_path / "pred" / "img.pgm", EVAL_PRED)
        write_p2(tmp_path / "truth" / "img.pgm", EVAL_TRUTH)

    def test_golden_json(self, tmp_path):
        self._setup(tmp_path)
        out = tmp_path / "report.json"
        rc = main(
            ["eval", "--pred-dir", str(tmp_path / "pred"),
             "--truth-dir", str(tmp_path / "truth"), "--out", str(out)]
        )
        assert rc == 0
        assert out.read_text() == EVAL_GOLDEN_JSON

    def test_csv_report(self, tmp_path):
        self._setup(tmp_path)
        out = tmp_path / "report.csv"
        rc = main(
            ["eval", "--pred-dir", str(tmp_path / "pred"),
             "--truth-dir", str(tmp_path / "truth"), "--report", "csv", "--out", str(out)]
        )
        assert rc == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "name,tp,fp,tn,fn,accuracy,f1,kappa,iou"
        assert lines[1] == "img.pgm,2,1,4,2,0.666667,0.571429,0.307692,0.400000"
        assert lines[2] == "mean,,,,,0.666667,0.571429,0.307692,0.400000"

    def test_missing_truth_is_failure(self, tmp_path, capsys):
        self._setup(tmp_path)
        write_p2(tmp_path / "pred" / "orphan.pgm", EVAL_PRED)
        rc = main(
            ["eval", "--pred-dir", str(tmp_path / "pred"),
             "--truth-dir", str(tmp_path / "truth"), "--out", str(tmp_path / "r.json")]
        )
        assert rc == 1
        err = capsys.readouterr().err
        assert "orphan.pgm" in err
        # scored image still reported
        assert json.loads((tmp_path / "r.json").read_text())["images"][0]["name"] == "img.pgm"

    def test_orphan_truth_is_failure(self, tmp_path, capsys):
        self._setup(tmp_path)
        write_p2(tmp_path / "truth" / "extra.pgm", EVAL_TRUTH)
        rc = main(
            ["eval", "--pred-dir", str(tmp_path / "pred"),
             "--truth-dir", str(tmp_path / "truth"), "--out", str(tmp_path / "r.json")]
        )
        assert rc == 1
        assert "extra.pgm" in capsys.readouterr().err

    def test_figures_written(self, tmp_path):
        self._setup(tmp_path)
        rc = main(
            ["eval", "--pred-dir", str(tmp_path / "pred"),
             "--truth-dir", str(tmp_path / "truth"),
             "--out", str(tmp_path / "r.json"), "--figures-dir", str(tmp_path / "figs")]
        )
        assert rc == 0
        fig = tmp_path / "figs" / "segmentation_indices.png"
        assert fig.read_bytes()[:8] == PNG_SIG


class TestCount:
    def _setup(self, tmp_path):
        write_p2(tmp_path / "a.pgm", blocks_mask_rows())
        write_p2(tmp_path / "b.pgm", square_mask_rows())
        (tmp_path / "counts.csv").write_text("image_id,observed\na.pgm,2\nb,2\n")

    def test_golden_csv(self, tmp_path):
        self._setup(tmp_path)
        out = tmp_path / "report.csv"
        rc = main(
            ["count", str(tmp_path / "a.pgm"), str(tmp_path / "b.pgm"),
             "--min-area", "3", "--observed", str(tmp_path / "counts.csv"),
             "--report", "csv", "--out", str(out)]
        )
        assert rc == 0
        assert out.read_text() == COUNT_GOLDEN_CSV

    def test_json_boxes(self, tmp_path):
        self._setup(tmp_path)
        out = tmp_path / "report.json"
        rc = main(["count", str(tmp_path / "a.pgm"), "--min-area", "3", "--out", str(out)])
        assert rc == 0
        doc = json.loads(out.read_text())
        assert doc["images"][0]["raw"] == 3
        assert doc["images"][0]["filtered"] == 2
        assert doc["images"][0]["boxes"] == [[0, 0, 2, 2], [4, 4, 2, 2]]
        assert doc["mean_count_accuracy"] is None

    def test_annotate_dir(self, tmp_path):
        self._setup(tmp_path)
        rc = main(
            ["count", str(tmp_path / "a.pgm"), "--min-area", "3",
             "--annotate-dir", str(tmp_path / "ann"), "--out", str(tmp_path / "r.json")]
        )
        assert rc == 0
        data = (tmp_path / "ann" / "a.png").read_bytes()
        img = decode_image(data)
        assert (img == 128).any()  # overlay ink present

    def test_erode_first(self, tmp_path):
        self._setup(tmp_path)
        out = tmp_path / "r.json"
        rc = main(
            ["count", str(tmp_path / "b.pgm"), "--erode-first", "--min-area", "1",
             "--out", str(out)]
        )
        assert rc == 0
        doc = json.loads(out.read_text())
        # the 3x3 block erodes to its single center pixel
        assert doc["images"][0]["raw"] == 1
        assert doc["images"][0]["boxes"] == [[2, 2, 1, 1]]

    def test_unreadable_file_continues(self, tmp_path, capsys):
        self._setup(tmp_path)
        bad = tmp_path / "bad.pgm"
        bad.write_bytes(b"P5\n9 9\n255\nshort")
        out = tmp_path / "r.json"
        rc = main(
            ["count", str(tmp_path / "a.pgm"), str(bad), "--min-area", "3",
             "--out", str(out)]
        )
        assert rc == 1
        assert "bad.pgm" in capsys.readouterr().err
        doc = json.loads(out.read_text())
        assert [i["image_id"] for i in doc["images"]] == ["a.pgm"]

    def test_fail_fast_stops(self, tmp_path, capsys):
        self._setup(tmp_path)
        bad = tmp_path / "aa_bad.pgm"  # sorts before a.pgm? no: 'a.pgm' < 'aa_bad.pgm'
        bad.write_bytes(b"P5\n9 9\n255\nshort")
        out = tmp_path / "r.json"
        rc = main(
            ["count", str(bad), str(tmp_path / "b.pgm"), "--min-area", "3",
             "--fail-fast", "--out", str(out)]
        )
        assert rc == 1
        doc = json.loads(out.read_text())
        assert doc["images"] == []  # aborted before b.pgm

    def test_config_error_exit_2(self, tmp_path):
        self._setup(tmp_path)
        assert main(["count", str(tmp_path / "a.pgm"), "--se-size", "4"]) == 2

    def test_missing_input_exit_2(self, tmp_path):
        assert main(["count", str(tmp_path / "nope.pgm")]) == 2

    def test_auto_min_area(self, tmp_path):
        self._setup(tmp_path)
        out = tmp_path / "r.json"
        rc = main(["count", str(tmp_path / "a.pgm"), "--out", str(out)])
        assert rc == 0
        doc = json.loads(out.read_text())
        # 6x6 image: auto floor is 1 pixel, so the speckle survives
        assert doc["images"][0]["min_area"] == 1
        assert doc["images"][0]["filtered"] == 3


class TestPipeline:
    def _setup(self, tmp_path):
        masks = tmp_path / "masks"
        truths = tmp_path / "truths"
        masks.mkdir()
        truths.mkdir()
        write_p2(masks / "a.pgm", blocks_mask_rows())
        write_p2(masks / "b.pgm", square_mask_rows())
        write_p2(truths / "a.pgm", blocks_mask_rows())
        write_p2(truths / "b.pgm", square_mask_rows())
        (tmp_path / "counts.csv").write_text("image_id,observed\na,2\nb,2\n")

    def _run(self, tmp_path, out_name):
        out = tmp_path / out_name
        rc = main(
            ["pipeline", str(tmp_path / "masks"),
             "--truth-dir", str(tmp_path / "truths"),
             "--observed", str(tmp_path / "counts.csv"),
             "--min-area", "3", "--out", str(out)]
        )
        return rc, out

    def test_golden_report(self, tmp_path):
        self._setup(tmp_path)
        rc, out = self._run(tmp_path, "pipe.json")
        assert rc == 0
        assert out.read_text() == PIPELINE_GOLDEN_JSON

    def test_schema_and_values(self, tmp_path):
        self._setup(tmp_path)
        rc, out = self._run(tmp_path, "pipe.json")
        assert rc == 0
        doc = json.loads(out.read_text())
        assert doc["schema_version"] == "1"
        assert doc["config"]["min_area"] == 3
        assert doc["config"]["cutoff"] == 127
        assert [i["name"] for i in doc["images"]] == ["a.pgm", "b.pgm"]
        a, b = doc["images"]
        # truths equal inputs, so indices are all perfect
        assert a["accuracy"] == a["f1"] == a["kappa"] == a["iou"] == 1.0
        assert a["raw"] == 3 and a["filtered"] == 2 and a["count_accuracy"] == 100.0
        assert b["filtered"] == 1 and b["count_accuracy"] == 50.0
        assert doc["means"]["count_accuracy"] == 75.0
        assert doc["means"]["accuracy"] == 1.0
        assert doc["errors"] == []

    def test_byte_identical_reruns(self, tmp_path):
        self._setup(tmp_path)
        rc1, out1 = self._run(tmp_path, "pipe1.json")
        rc2, out2 = self._run(tmp_path, "pipe2.json")
        assert rc1 == rc2 == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_threading_does_not_change_output(self, tmp_path, monkeypatch):
        self._setup(tmp_path)
        monkeypatch.setenv("LOGCOUNT_THREADS", "1")
        rc1, out1 = self._run(tmp_path, "seq.json")
        monkeypatch.setenv("LOGCOUNT_THREADS", "4")
        rc2, out2 = self._run(tmp_path, "par.json")
        assert rc1 == rc2 == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_without_truths_omits_indices(self, tmp_path):
        self._setup(tmp_path)
        out = tmp_path / "nm.json"
        rc = main(["pipeline", str(tmp_path / "masks"), "--min-area", "3", "--out", str(out)])
        assert rc == 0
        doc = json.loads(out.read_text())
        assert "accuracy" not in doc["images"][0]
        assert "accuracy" not in doc["means"]

    def test_csv_report(self, tmp_path):
        self._setup(tmp_path)
        out = tmp_path / "pipe.csv"
        rc = main(
            ["pipeline", str(tmp_path / "masks"), "--truth-dir", str(tmp_path / "truths"),
             "--observed", str(tmp_path / "counts.csv"), "--min-area", "3",
             "--report", "csv", "--out", str(out)]
        )
        assert rc == 0
        lines = out.read_text().splitlines()
        assert lines[0].startswith("name,raw,filtered,observed,count_accuracy,tp")
        assert lines[1].startswith("a.pgm,3,2,2,100.000000,9,0,27,0,1.000000")

    def test_figures_alongside_report(self, tmp_path):
        self._setup(tmp_path)
        rc = main(
            ["pipeline", str(tmp_path / "masks"), "--truth-dir", str(tmp_path / "truths"),
             "--observed", str(tmp_path / "counts.csv"), "--min-area", "3",
             "--out", str(tmp_path / "pipe.json"), "--figures-dir", str(tmp_path / "figs")]
        )
        assert rc == 0
        for name in ("count_summary.png", "segmentation_indices.png"):
            assert (tmp_path / "figs" / name).read_bytes()[:8] == PNG_SIG


class TestSynthCli:
    GOLDEN_TRUTH = """\
{
  "observed": 3,
  "disks": [
    {
      "cx": 14,
      "cy": 30,
      "r": 5
    },
    {
      "cx": 9,
      "cy": 10,
      "r": 6
    },
    {
      "cx": 43,
      "cy": 9,
      "r": 6
    }
  ],
  "seed": 7
}
"""

    def _argv(self, tmp_path):
        return [
            "synth", "--width", "64", "--height", "64", "--n-logs", "3",
            "--radius-min", "4", "--radius-max", "6", "--min-gap", "2",
            "--speckles", "5", "--speckle-area-min", "1", "--speckle-area-max", "3",
            "--seed", "7",
            "--mask-out", str(tmp_path / "pile.png"),
            "--clean-out", str(tmp_path / "pile_clean.png"),
            "--truth-out", str(tmp_path / "pile_truth.json"),
        ]

    def test_golden_truth_json(self, tmp_path):
        # frozen output of the fixed generator; guards the PRNG contract
        assert main(self._argv(tmp_path)) == 0
        assert (tmp_path / "pile_truth.json").read_text() == self.GOLDEN_TRUTH

    def test_masks_consistent_with_truth(self, tmp_path):
        assert main(self._argv(tmp_path)) == 0
        mask = threshold(decode_image((tmp_path / "pile.png").read_bytes()), 127)
        clean = threshold(decode_image((tmp_path / "pile_clean.png").read_bytes()), 127)
        assert oracle_count(clean, 8) == 3
        assert oracle_count(mask, 8) == 3 + 5  # disks plus isolated speckles
        assert (clean & ~mask).sum() == 0

    def test_infeasible_spec_exit_1(self, tmp_path, capsys):
        rc = main(
            ["synth", "--width", "30", "--height", "30", "--n-logs", "40",
             "--radius-min", "8", "--radius-max", "8",
             "--mask-out", str(tmp_path / "x.png")]
        )
        assert rc == 1
        assert "could not place" in capsys.readouterr().err

    def test_invalid_radius_range_exit_2(self, tmp_path, capsys):
        rc = main(
            ["synth", "--radius-min", "9", "--radius-max", "3",
             "--mask-out", str(tmp_path / "x.png")]
        )
        assert rc == 2
        assert "radius" in capsys.readouterr().err

    def test_unwritable_output_exit_1(self, tmp_path):
        rc = main(
            ["synth", "--n-logs", "1",
             "--mask-out", str(tmp_path / "missing" / "x.png")]
        )
        assert rc == 1


class TestMorphCli:
    def test_erode_golden_pgm(self, tmp_path):
        # 5x5 full square erodes to the central 3x3 (hand-checkable)
        write_p2(tmp_path / "full.pgm", [[255] * 5 for _ in range(5)])
        out = tmp_path / "eroded.pgm"
        rc = main(["morph", str(tmp_path / "full.pgm"), str(out), "--op", "erode"])
        assert rc == 0
        payload = bytes(
            255 if (1 <= y <= 3 and 1 <= x <= 3) else 0 for y in range(5) for x in range(5)
        )
        assert out.read_bytes() == b"P5\n5 5\n255\n" + payload

    def test_dilate_round_trips_extension(self, tmp_path):
        rows = [[0] * 5 for _ in range(5)]
        rows[2][2] = 255
        write_p2(tmp_path / "dot.pgm", rows)
        out = tmp_path / "grown.png"
        rc = main(["morph", str(tmp_path / "dot.pgm"), str(out), "--op", "dilate"])
        assert rc == 0
        mask = threshold(decode_image(out.read_bytes()), 127)
        assert int(mask.sum()) == 9

    def test_bad_extension_exit_2(self, tmp_path):
        write_p2(tmp_path / "dot.pgm", [[0]])
        assert main(["morph", str(tmp_path / "dot.pgm"), str(tmp_path / "out.tiff")]) == 2

    def test_even_se_size_exit_2(self, tmp_path, capsys):
        write_p2(tmp_path / "dot.pgm", [[0]])
        rc = main(["morph", str(tmp_path / "dot.pgm"), str(tmp_path / "o.png"), "--se-size", "4"])
        assert rc == 2
        assert "odd" in capsys.readouterr().err


class TestLabelCli:
    def test_stats_golden(self, tmp_path, capsys):
        write_p2(tmp_path / "m.pgm", blocks_mask_rows())
        stats_out = tmp_path / "stats.json"
        rc = main(
            ["label", str(tmp_path / "m.pgm"), "--connectivity", "4",
             "--stats-out", str(stats_out), "--colorize", str(tmp_path / "c.png")]
        )
        assert rc == 0
        assert capsys.readouterr().out == "components: 3\n"
        doc = json.loads(stats_out.read_text())
        assert doc["component_count"] == 3
        assert doc["components"][0] == {
            "label": 1, "area": 4, "bbox": [0, 0, 2, 2], "centroid": [0.5, 0.5]
        }
        assert (tmp_path / "c.png").read_bytes()[:8] == PNG_SIG

    def test_colorize_marks_components_only(self, tmp_path):
        write_p2(tmp_path / "m.pgm", blocks_mask_rows())
        rc = main(["label", str(tmp_path / "m.pgm"), "--colorize", str(tmp_path / "c.png")])
        assert rc == 0
        lum = decode_image((tmp_path / "c.png").read_bytes())
        assert lum[0, 0] > 0 and lum[4, 4] > 0 and lum[5, 0] > 0
        assert lum[3, 3] == 0 and lum[0, 5] == 0  # background stays black

    def test_union_find_algo_flag(self, tmp_path, capsys):
        write_p2(tmp_path / "m.pgm", blocks_mask_rows())
        rc = main(["label", str(tmp_path / "m.pgm"), "--algo", "union-find"])
        assert rc == 0
        assert capsys.readouterr().out == "components: 3\n"
