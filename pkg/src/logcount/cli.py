"""Command-line interface.

Subcommands cover the two batch flows (segmentation scoring and
counting) plus the individual stages: ``synth``, ``morph``, ``label``,
``eval``, ``count`` and ``pipeline``.  Reports are deterministic: files
are processed in sorted path order, floats are fixed to six decimals,
and reruns on identical inputs produce byte-identical output.

Per-image work may fan out over threads; ``LOGCOUNT_THREADS`` caps the
pool size (0 or unset picks a size automatically).  Results are always
gathered in input order, so threading never changes output.

Exit codes: 0 success, 1 per-file failures, 2 usage or config errors.
"""

from __future__ import annotations

import argparse
import colorsys
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .counting import ACCURACY_MODES, annotate, auto_min_area, count
from .labeling import component_stats, label_scan, label_union_find
from .metrics import IndexReport, confusion, indices
from .morphology import StructuringElement, dilate, erode_iterated
from .raster import (
    DecodeError,
    Resolution,
    decode_image,
    encode_gray,
    encode_mask,
    encode_rgb,
    threshold,
)
from .report import SCHEMA_VERSION, csv_lines, dumps
from .synth import PRNG_NAME, PileSpec, PlacementError, generate

_IMAGE_SUFFIXES = {".png", ".pgm"}


def version_line() -> str:
    return f"logcount {__version__} (report-schema {SCHEMA_VERSION}, prng {PRNG_NAME})"


@dataclass(frozen=True)
class PipelineConfig:
    """Validated knobs for the counting/evaluation flows.

    ``min_area=None`` means 0.05% of each image's area.  The dict form
    is embedded in pipeline reports so a run can be reproduced from its
    own output.
    """

    cutoff: int = 127
    connectivity: int = 8
    erode_first: bool = False
    se_shape: str = "box"
    se_size: int = 3
    iterations: int = 1
    min_area: int | None = None
    accuracy_mode: str = "symmetric"
    report: str = "json"

    def __post_init__(self) -> None:
        if not 0 <= self.cutoff <= 255:
            raise ValueError(f"cutoff must be in [0, 255], got {self.cutoff}")
        if self.connectivity not in (4, 8):
            raise ValueError(f"connectivity must be 4 or 8, got {self.connectivity}")
        if self.se_shape not in ("box", "cross"):
            raise ValueError(f"se-shape must be box or cross, got {self.se_shape!r}")
        if self.se_size < 1 or self.se_size % 2 == 0:
            raise ValueError(f"se-size must be odd and >= 1, got {self.se_size}")
        if self.iterations < 0:
            raise ValueError(f"iterations must be >= 0, got {self.iterations}")
        if self.min_area is not None and self.min_area < 0:
            raise ValueError(f"min-area must be >= 0, got {self.min_area}")
        if self.accuracy_mode not in ACCURACY_MODES:
            raise ValueError(f"accuracy-mode must be one of {ACCURACY_MODES}")
        if self.report not in ("json", "csv"):
            raise ValueError(f"report must be json or csv, got {self.report!r}")

    def structuring_element(self) -> StructuringElement:
        factory = StructuringElement.box if self.se_shape == "box" else StructuringElement.cross
        return factory(self.se_size)

    def to_dict(self) -> dict:
        return {
            "cutoff": self.cutoff,
            "connectivity": self.connectivity,
            "erode_first": self.erode_first,
            "se_shape": self.se_shape,
            "se_size": self.se_size,
            "iterations": self.iterations,
            "min_area": "auto" if self.min_area is None else self.min_area,
            "accuracy_mode": self.accuracy_mode,
            "report": self.report,
        }


# ---------------------------------------------------------------------------
# shared helpers


def _worker_count() -> int:
    raw = os.environ.get("LOGCOUNT_THREADS", "")
    try:
        cap = int(raw) if raw else 0
    except ValueError:
        cap = 0
    if cap <= 0:
        return min(os.cpu_count() or 1, 8)
    return cap


def _map_ordered(fn, items):
    workers = _worker_count()
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _collect_inputs(paths: list[str]) -> list[Path]:
    out: list[Path] = []
    for raw in paths:
        p = Path(raw)
        if p.is_dir():
            out.extend(
                q
                for q in p.iterdir()
                if q.is_file() and q.suffix.lower() in _IMAGE_SUFFIXES
            )
        elif p.is_file():
            out.append(p)
        else:
            raise FileNotFoundError(f"input path does not exist: {raw}")
    return sorted(out)


def _read_mask(path: Path, cutoff: int) -> np.ndarray:
    return threshold(decode_image(path.read_bytes()), cutoff)


def _read_observed(path: Path) -> dict[str, int]:
    mapping: dict[str, int] = {}
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if lineno == 1 and line.lower().replace(" ", "") == "image_id,observed":
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected 'image_id,observed'")
        try:
            mapping[parts[0].strip()] = int(parts[1])
        except ValueError:
            raise ValueError(
                f"{path}:{lineno}: observed count {parts[1]!r} is not an integer"
            ) from None
    return mapping


def _lookup_observed(mapping: dict[str, int] | None, path: Path) -> int | None:
    if mapping is None:
        return None
    if path.name in mapping:
        return mapping[path.name]
    return mapping.get(path.stem)


def _write_report(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _report_failures(failures: list[tuple[str, str]]) -> int:
    for name, message in failures:
        print(f"failed: {name}: {message}", file=sys.stderr)
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# synth


def _cmd_synth(args) -> int:
    spec = PileSpec(
        resolution=Resolution(args.width, args.height),
        n_logs=args.n_logs,
        radius_range=(args.radius_min, args.radius_max),
        min_gap=args.min_gap,
        noise_speckles=args.speckles,
        speckle_area_range=(args.speckle_area_min, args.speckle_area_max),
        seed=args.seed,
    )
    try:
        truth = generate(spec)
    except PlacementError as exc:
        print(f"synth: {exc}", file=sys.stderr)
        return 1
    Path(args.mask_out).write_bytes(encode_mask(truth.mask, "png"))
    if args.clean_out:
        Path(args.clean_out).write_bytes(encode_mask(truth.clean_mask, "png"))
    if args.truth_out:
        doc = {
            "observed": truth.observed,
            "disks": [{"cx": cx, "cy": cy, "r": r} for cx, cy, r in truth.disks],
            "seed": args.seed,
        }
        Path(args.truth_out).write_text(dumps(doc))
    return 0


# ---------------------------------------------------------------------------
# morph


def _cmd_morph(args) -> int:
    fmt = Path(args.output).suffix.lower().lstrip(".")
    if fmt not in ("png", "pgm"):
        print(f"morph: output must end in .png or .pgm, got {args.output!r}", file=sys.stderr)
        return 2
    se = (
        StructuringElement.box(args.se_size)
        if args.se_shape == "box"
        else StructuringElement.cross(args.se_size)
    )
    try:
        mask = _read_mask(Path(args.input), args.cutoff)
    except (OSError, DecodeError) as exc:
        print(f"morph: {args.input}: {exc}", file=sys.stderr)
        return 1
    if args.op == "erode":
        out = erode_iterated(mask, se, args.iterations)
    else:
        out = mask
        for _ in range(args.iterations):
            out = dilate(out, se)
    Path(args.output).write_bytes(encode_mask(out, fmt))
    return 0


# ---------------------------------------------------------------------------
# label


def _component_palette(k: int) -> np.ndarray:
    colors = [(0, 0, 0)]
    for i in range(1, k + 1):
        hue = (i * 0.6180339887498949) % 1.0
        r, g, b = colorsys.hsv_to_rgb(hue, 0.65, 1.0)
        colors.append((round(r * 255), round(g * 255), round(b * 255)))
    return np.array(colors, dtype=np.uint8)


def _cmd_label(args) -> int:
    try:
        mask = _read_mask(Path(args.input), args.cutoff)
    except (OSError, DecodeError) as exc:
        print(f"label: {args.input}: {exc}", file=sys.stderr)
        return 1
    labeler = label_scan if args.algo == "scan" else label_union_find
    lm = labeler(mask, args.connectivity)
    print(f"components: {lm.count}")
    if args.stats_out:
        stats = component_stats(lm)
        doc = {
            "component_count": lm.count,
            "components": [
                {
                    "label": s.label,
                    "area": s.area,
                    "bbox": list(s.bbox),
                    "centroid": [s.centroid[0], s.centroid[1]],
                }
                for s in stats
            ],
        }
        Path(args.stats_out).write_text(dumps(doc))
    if args.colorize:
        palette = _component_palette(lm.count)
        Path(args.colorize).write_bytes(encode_rgb(palette[lm.labels]))
    return 0


# ---------------------------------------------------------------------------
# eval


def _cmd_eval(args) -> int:
    pred_dir = Path(args.pred_dir)
    truth_dir = Path(args.truth_dir)
    try:
        preds = _collect_inputs([str(pred_dir)])
        truths = _collect_inputs([str(truth_dir)])
    except FileNotFoundError as exc:
        print(f"eval: {exc}", file=sys.stderr)
        return 2
    failures: list[tuple[str, str]] = []
    pred_names = {p.name for p in preds}
    for t in truths:
        if t.name not in pred_names:
            failures.append((t.name, "truth file has no matching prediction"))

    def score(path: Path):
        t = truth_dir / path.name
        if not t.is_file():
            raise FileNotFoundError("prediction has no matching truth file")
        pred = _read_mask(path, args.cutoff)
        truth = _read_mask(t, args.cutoff)
        c = confusion(pred, truth)
        return c, indices(c, nan_degenerate=args.nan_degenerate)

    rows: list[tuple[str, object, IndexReport]] = []
    for path in preds:
        try:
            c, rep = score(path)
        except (OSError, DecodeError, ValueError) as exc:
            failures.append((path.name, str(exc)))
            if args.fail_fast:
                return _report_failures(failures)
            continue
        rows.append((path.name, c, rep))
    if not rows:
        failures.append((str(pred_dir), "no images scored"))
        return _report_failures(failures)

    k = len(rows)
    means = IndexReport(
        accuracy=sum(r.accuracy for _, _, r in rows) / k,
        f1=sum(r.f1 for _, _, r in rows) / k,
        kappa=sum(r.kappa for _, _, r in rows) / k,
        iou=sum(r.iou for _, _, r in rows) / k,
    )
    if args.report == "json":
        doc = {
            "images": [
                {
                    "name": name,
                    "tp": c.tp,
                    "fp": c.fp,
                    "tn": c.tn,
                    "fn": c.fn,
                    "accuracy": rep.accuracy,
                    "f1": rep.f1,
                    "kappa": rep.kappa,
                    "iou": rep.iou,
                }
                for name, c, rep in rows
            ],
            "means": {
                "accuracy": means.accuracy,
                "f1": means.f1,
                "kappa": means.kappa,
                "iou": means.iou,
            },
        }
        _write_report(dumps(doc), args.out)
    else:
        header = ["name", "tp", "fp", "tn", "fn", "accuracy", "f1", "kappa", "iou"]
        body = [
            [name, c.tp, c.fp, c.tn, c.fn, rep.accuracy, rep.f1, rep.kappa, rep.iou]
            for name, c, rep in rows
        ]
        body.append(
            ["mean", None, None, None, None, means.accuracy, means.f1, means.kappa, means.iou]
        )
        _write_report(csv_lines(header, body), args.out)
    if args.figures_dir:
        from . import figures

        fig_dir = Path(args.figures_dir)
        fig_dir.mkdir(parents=True, exist_ok=True)
        figures.save_index_chart(
            [name for name, _, _ in rows],
            [rep for _, _, rep in rows],
            means,
            fig_dir / "segmentation_indices.png",
        )
    return _report_failures(failures)


# ---------------------------------------------------------------------------
# count / pipeline


def _count_one(
    path: Path,
    config: PipelineConfig,
    observed_map: dict[str, int] | None,
    truth_dir: Path | None,
    annotate_dir: Path | None,
):
    """Process one image; returns (CountReport, confusion, IndexReport or None)."""
    mask = _read_mask(path, config.cutoff)
    conf = rep = None
    if truth_dir is not None:
        tpath = truth_dir / path.name
        if not tpath.is_file():
            raise FileNotFoundError("no matching truth file")
        truth = _read_mask(tpath, config.cutoff)
        conf = confusion(mask, truth)
        rep = indices(conf)
    counted = mask
    if config.erode_first:
        counted = erode_iterated(mask, config.structuring_element(), config.iterations)
    min_area = (
        auto_min_area(mask.shape[1], mask.shape[0])
        if config.min_area is None
        else config.min_area
    )
    creport = count(
        counted,
        connectivity=config.connectivity,
        min_area=min_area,
        image_id=path.name,
        observed=_lookup_observed(observed_map, path),
        accuracy_mode=config.accuracy_mode,
    )
    if annotate_dir is not None:
        annotate_dir.mkdir(parents=True, exist_ok=True)
        rendered = annotate(counted, creport)
        (annotate_dir / (path.stem + ".png")).write_bytes(encode_gray(rendered, "png"))
    return creport, conf, rep


def _run_batch(args, config: PipelineConfig, with_metrics: bool):
    try:
        inputs = _collect_inputs(args.inputs)
    except FileNotFoundError as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return None, None, 2
    if not inputs:
        print(f"{args.command}: no input images found", file=sys.stderr)
        return None, None, 2
    observed_map = None
    if getattr(args, "observed", None):
        try:
            observed_map = _read_observed(Path(args.observed))
        except (OSError, ValueError) as exc:
            print(f"{args.command}: {exc}", file=sys.stderr)
            return None, None, 2
    truth_dir = None
    if with_metrics and getattr(args, "truth_dir", None):
        truth_dir = Path(args.truth_dir)
        if not truth_dir.is_dir():
            print(f"{args.command}: truth dir not found: {truth_dir}", file=sys.stderr)
            return None, None, 2
    annotate_dir = Path(args.annotate_dir) if getattr(args, "annotate_dir", None) else None

    failures: list[tuple[str, str]] = []
    results = []

    def process(path: Path):
        try:
            return path, _count_one(path, config, observed_map, truth_dir, annotate_dir), None
        except (OSError, DecodeError, ValueError) as exc:
            return path, None, str(exc)

    if args.fail_fast:
        gathered = []
        for path in inputs:
            item = process(path)
            gathered.append(item)
            if item[2] is not None:
                break
    else:
        gathered = _map_ordered(process, inputs)
    for path, payload, error in gathered:
        if error is not None:
            failures.append((path.name, error))
        else:
            results.append((path, *payload))
    return results, failures, None


def _cmd_count(args) -> int:
    try:
        config = PipelineConfig(
            cutoff=args.cutoff,
            connectivity=args.connectivity,
            erode_first=args.erode_first,
            se_shape=args.se_shape,
            se_size=args.se_size,
            iterations=args.iterations,
            min_area=args.min_area,
            accuracy_mode=args.accuracy_mode,
            report=args.report,
        )
    except ValueError as exc:
        print(f"count: {exc}", file=sys.stderr)
        return 2
    results, failures, err = _run_batch(args, config, with_metrics=False)
    if err is not None:
        return err
    reports = [creport for _, creport, _, _ in results]
    accs = [r.count_accuracy for r in reports if r.count_accuracy is not None]
    mean_acc = sum(accs) / len(accs) if accs else None
    if config.report == "json":
        doc = {
            "images": [
                {
                    "image_id": r.image_id,
                    "raw": r.raw_components,
                    "filtered": r.filtered_components,
                    "min_area": r.min_area,
                    "boxes": [list(b) for b in r.boxes],
                    "observed": r.observed,
                    "count_accuracy": r.count_accuracy,
                }
                for r in reports
            ],
            "mean_count_accuracy": mean_acc,
        }
        _write_report(dumps(doc), args.out)
    else:
        header = ["image_id", "raw", "filtered", "observed", "count_accuracy"]
        body = [
            [r.image_id, r.raw_components, r.filtered_components, r.observed, r.count_accuracy]
            for r in reports
        ]
        _write_report(csv_lines(header, body), args.out)
    if args.figures_dir and reports:
        from . import figures

        fig_dir = Path(args.figures_dir)
        fig_dir.mkdir(parents=True, exist_ok=True)
        figures.save_count_chart(reports, fig_dir / "count_summary.png")
    return _report_failures(failures)


def _cmd_pipeline(args) -> int:
    try:
        config = PipelineConfig(
            cutoff=args.cutoff,
            connectivity=args.connectivity,
            erode_first=args.erode_first,
            se_shape=args.se_shape,
            se_size=args.se_size,
            iterations=args.iterations,
            min_area=args.min_area,
            accuracy_mode=args.accuracy_mode,
            report=args.report,
        )
    except ValueError as exc:
        print(f"pipeline: {exc}", file=sys.stderr)
        return 2
    results, failures, err = _run_batch(args, config, with_metrics=True)
    if err is not None:
        return err

    image_rows = []
    for path, creport, conf, rep in results:
        row = {
            "name": creport.image_id,
            "raw": creport.raw_components,
            "filtered": creport.filtered_components,
            "min_area": creport.min_area,
            "boxes": [list(b) for b in creport.boxes],
            "observed": creport.observed,
            "count_accuracy": creport.count_accuracy,
        }
        if rep is not None:
            row.update(
                {
                    "tp": conf.tp,
                    "fp": conf.fp,
                    "tn": conf.tn,
                    "fn": conf.fn,
                    "accuracy": rep.accuracy,
                    "f1": rep.f1,
                    "kappa": rep.kappa,
                    "iou": rep.iou,
                }
            )
        image_rows.append(row)

    means: dict[str, float] = {}
    accs = [r["count_accuracy"] for r in image_rows if r["count_accuracy"] is not None]
    if accs:
        means["count_accuracy"] = sum(accs) / len(accs)
    scored = [r for r in image_rows if "accuracy" in r]
    if scored:
        for key in ("accuracy", "f1", "kappa", "iou"):
            means[key] = sum(r[key] for r in scored) / len(scored)

    if config.report == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "config": config.to_dict(),
            "images": image_rows,
            "means": means,
            "errors": [{"name": n, "error": e} for n, e in failures],
        }
        _write_report(dumps(doc), args.out)
    else:
        header = [
            "name", "raw", "filtered", "observed", "count_accuracy",
            "tp", "fp", "tn", "fn", "accuracy", "f1", "kappa", "iou",
        ]
        body = [[r.get(k) for k in header] for r in image_rows]
        _write_report(csv_lines(header, body), args.out)

    if args.figures_dir and results:
        from . import figures

        fig_dir = Path(args.figures_dir)
        fig_dir.mkdir(parents=True, exist_ok=True)
        figures.save_count_chart(
            [creport for _, creport, _, _ in results], fig_dir / "count_summary.png"
        )
        with_metrics = [(r, rep) for _, r, _, rep in results if rep is not None]
        if with_metrics:
            k = len(with_metrics)
            mean_rep = IndexReport(
                accuracy=sum(rep.accuracy for _, rep in with_metrics) / k,
                f1=sum(rep.f1 for _, rep in with_metrics) / k,
                kappa=sum(rep.kappa for _, rep in with_metrics) / k,
                iou=sum(rep.iou for _, rep in with_metrics) / k,
            )
            figures.save_index_chart(
                [r.image_id for r, _ in with_metrics],
                [rep for _, rep in with_metrics],
                mean_rep,
                fig_dir / "segmentation_indices.png",
            )
    return _report_failures(failures)


# ---------------------------------------------------------------------------
# parser


def _add_cutoff(p) -> None:
    p.add_argument(
        "--cutoff", type=int, default=127, metavar="N",
        help="binarization cutoff; foreground is intensity > N (default 127)",
    )


def _add_se_flags(p) -> None:
    p.add_argument("--se-shape", choices=("box", "cross"), default="box",
                   help="structuring element shape (default box)")
    p.add_argument("--se-size", type=int, default=3, metavar="N",
                   help="structuring element size, odd (default 3)")
    p.add_argument("--iterations", type=int, default=1, metavar="K",
                   help="number of morphology passes (default 1)")


def _add_batch_flags(p, with_truth: bool) -> None:
    p.add_argument("inputs", nargs="+", help="mask image files or directories")
    _add_cutoff(p)
    p.add_argument("--connectivity", type=int, choices=(4, 8), default=8)
    p.add_argument("--min-area", type=int, default=None, metavar="PX",
                   help="drop components smaller than PX pixels (default: 0.05%% of image area)")
    p.add_argument("--erode-first", action="store_true",
                   help="erode each mask before counting")
    _add_se_flags(p)
    p.add_argument("--observed", metavar="CSV",
                   help="sidecar CSV of observed counts (image_id,observed)")
    p.add_argument("--accuracy-mode", choices=ACCURACY_MODES, default="symmetric")
    p.add_argument("--annotate-dir", metavar="DIR",
                   help="write annotated PNGs (boxes + count caption) here")
    p.add_argument("--report", choices=("json", "csv"), default="json")
    p.add_argument("--out", metavar="PATH", help="report destination (default stdout)")
    p.add_argument("--figures-dir", metavar="DIR",
                   help="render summary charts here alongside the report")
    p.add_argument("--fail-fast", action="store_true",
                   help="abort at the first per-file failure")
    if with_truth:
        p.add_argument("--truth-dir", metavar="DIR",
                       help="ground-truth masks matched by filename; adds the four indices")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logcount",
        description="Count log faces in binary masks and score segmentations.",
    )
    parser.add_argument("--version", action="version", version=version_line())
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a synthetic pile mask with known truth")
    p.add_argument("--width", type=int, default=256)
    p.add_argument("--height", type=int, default=256)
    p.add_argument("--n-logs", type=int, default=25)
    p.add_argument("--radius-min", type=int, default=4)
    p.add_argument("--radius-max", type=int, default=12)
    p.add_argument("--min-gap", type=float, default=2.0,
                   help="minimum edge gap between disks; negative forces overlap")
    p.add_argument("--speckles", type=int, default=0, help="number of noise speckles")
    p.add_argument("--speckle-area-min", type=int, default=1)
    p.add_argument("--speckle-area-max", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mask-out", required=True, metavar="PNG")
    p.add_argument("--clean-out", metavar="PNG", help="speckle-free mask")
    p.add_argument("--truth-out", metavar="JSON", help="ground-truth sidecar")
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("morph", help="erode or dilate a mask")
    p.add_argument("input")
    p.add_argument("output", help="output mask (.png or .pgm)")
    p.add_argument("--op", choices=("erode", "dilate"), default="erode")
    _add_se_flags(p)
    _add_cutoff(p)
    p.set_defaults(func=_cmd_morph)

    p = sub.add_parser("label", help="label connected components in one mask")
    p.add_argument("input")
    p.add_argument("--connectivity", type=int, choices=(4, 8), default=8)
    p.add_argument("--algo", choices=("scan", "union-find"), default="scan")
    p.add_argument("--stats-out", metavar="JSON", help="write per-component statistics")
    p.add_argument("--colorize", metavar="PNG",
                   help="write an RGB rendering with one color per component")
    _add_cutoff(p)
    p.set_defaults(func=_cmd_label)

    p = sub.add_parser("eval", help="score predictions against ground truth")
    p.add_argument("--pred-dir", required=True, metavar="DIR")
    p.add_argument("--truth-dir", required=True, metavar="DIR")
    _add_cutoff(p)
    p.add_argument("--report", choices=("json", "csv"), default="json")
    p.add_argument("--out", metavar="PATH", help="report destination (default stdout)")
    p.add_argument("--figures-dir", metavar="DIR",
                   help="render summary charts here alongside the report")
    p.add_argument("--nan-degenerate", action="store_true",
                   help="propagate NaN for degenerate denominators instead of scoring 1.0")
    p.add_argument("--fail-fast", action="store_true")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("count", help="count components across masks")
    _add_batch_flags(p, with_truth=False)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("pipeline", help="full counting + evaluation flow")
    _add_batch_flags(p, with_truth=True)
    p.set_defaults(func=_cmd_pipeline)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:  # invalid configuration reaching a constructor
        print(f"{args.command}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
