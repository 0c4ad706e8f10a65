"""Command line interface.

Three subcommands: ``sim`` scores two vectors under one or more measures,
``bench`` runs a nearest-neighbour evaluation over a CSV dataset and writes
a report, ``synth`` generates the circle/line sample layouts and writes the
per-sample measure columns as plot data.

Exit codes: 0 success, 1 usage or configuration error, 2 runtime error
(file contents, domain violations). Reports are byte-deterministic for a
fixed configuration: keys are sorted, floats use shortest round-trip
formatting, and the parallelism degree never changes any result.
"""

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .classify import leave_one_out, train_test_evaluate
from .data import CsvSchema, SyntheticSpec, filter_classes, gen_circle, gen_line, load_csv, scale_features
from .exceptions import BregsimError
from .similarity import MEASURE_NAMES, get_measure

__all__ = ["main", "build_parser"]


class _Parser(argparse.ArgumentParser):
    # usage errors exit 1; runtime errors exit 2 (argparse default is 2 for both)
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_vector(text, parser, what):
    if text.startswith("@"):
        try:
            text = Path(text[1:]).read_text()
        except OSError as e:
            parser.error(f"{what}: cannot read vector file: {e}")
    parts = [p for p in text.replace(",", " ").split() if p]
    if not parts:
        parser.error(f"{what}: no components given")
    try:
        return [float(p) for p in parts]
    except ValueError:
        parser.error(f"{what}: could not parse {text!r} as a list of numbers")


def _parse_columns(text):
    cols = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if ":" in token:
            lo, hi = token.split(":", 1)
            cols.extend(range(int(lo), int(hi)))
        else:
            try:
                cols.append(int(token))
            except ValueError:
                cols.append(token)
    return cols


def _parse_label_column(text):
    try:
        return int(text)
    except ValueError:
        return text


def _resolve_measures(args, parser):
    names = args.measure if isinstance(args.measure, list) else [args.measure]
    try:
        return [
            get_measure(
                name,
                sign_zero=args.sign_zero,
                paper_literal=args.paper_literal,
                max_cosine_subgradient=getattr(args, "max_cosine_subgradient", False),
            )
            for name in names
        ]
    except ValueError as e:
        parser.error(str(e))


def _resolve_output(path):
    # The environment only supplies a default directory for bare file names.
    if path is None:
        return None
    out = Path(path)
    default_dir = os.environ.get("BREGSIM_OUTPUT_DIR")
    if default_dir and out.parent == Path("."):
        out = Path(default_dir) / out
    return out


def _write_text(path, text):
    with open(path, "w", newline="") as fh:
        fh.write(text)


def _json_dumps(payload):
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _add_tv_flags(sub):
    sub.add_argument(
        "--sign-zero",
        type=float,
        default=0.0,
        metavar="T",
        help="subdifferential element in [-1, 1] used for zero TV differences (default 0)",
    )
    sub.add_argument(
        "--paper-literal",
        action="store_true",
        help="use the as-published +sign(x2 - x1) first TV component "
        "(not a valid subgradient; for reproducing published numbers)",
    )


def _add_measure_flag(sub, *, multiple, default=None, required=False):
    sub.add_argument(
        "--measure",
        action="append" if multiple else "store",
        choices=MEASURE_NAMES,
        default=default,
        required=required,
        help="measure name" + (" (repeatable)" if multiple else ""),
    )


def build_parser():
    parser = _Parser(prog="bregsim", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True, metavar="{sim,bench,synth}")

    sim = commands.add_parser("sim", help="score two vectors under one or more measures")
    sim.add_argument("--x1", required=True, help="first vector: comma/space separated numbers, or @file")
    sim.add_argument("--x2", required=True, help="second vector")
    _add_measure_flag(sim, multiple=True, required=True)
    _add_tv_flags(sim)
    sim.add_argument(
        "--max-cosine-subgradient",
        action="store_true",
        help="at TV kinks, pick the first vector's subgradient maximizing the normal cosine",
    )
    sim.add_argument("--output", metavar="FILE", help="also write the JSON result to FILE")
    sim.set_defaults(handler=cmd_sim)

    bench = commands.add_parser("bench", help="nearest-neighbour benchmark over a CSV dataset")
    bench.add_argument("--data", required=True, metavar="FILE", help="dataset CSV")
    bench.add_argument("--label-col", default="-1", metavar="COL",
                       help="label column: header name or zero-based index (default: last column)")
    bench.add_argument("--feature-cols", default=None, metavar="COLS",
                       help="feature columns: comma list of names/indices, ranges like 0:18 "
                            "(default: all columns except the label)")
    bench.add_argument("--no-header", action="store_true", help="file has no header row")
    bench.add_argument("--delimiter", default=",", metavar="CH", help="field delimiter (default ,)")
    bench.add_argument("--classes", default=None, metavar="A,B",
                       help="keep only instances with these labels")
    bench.add_argument("--scale", type=float, default=None, metavar="F",
                       help="multiply features by F before evaluating (default 1)")
    _add_measure_flag(bench, multiple=False, required=True)
    _add_tv_flags(bench)
    bench.add_argument(
        "--max-cosine-subgradient",
        action="store_true",
        help="optimized TV subgradient selection on the query side",
    )
    bench.add_argument("--protocol", choices=("loo", "split"), default=None,
                       help="leave-one-out (default) or train/test split")
    bench.add_argument("--test", metavar="FILE", default=None,
                       help="test CSV for --protocol split (same schema as --data)")
    bench.add_argument("--preset", choices=("gesture",), default=None,
                       help="gesture preset: scale 1e7, leave-one-out, keep the first "
                            "two classes appearing in the file unless --classes is given")
    bench.add_argument("--output", metavar="FILE", default=None,
                       help="report file (default: print the report to stdout)")
    bench.add_argument("--format", choices=("json", "csv"), default="json",
                       help="report format (default json)")
    bench.add_argument("--jobs", type=int, default=1, metavar="N",
                       help="fold evaluation threads (results do not depend on N)")
    bench.set_defaults(handler=cmd_bench)

    synth = commands.add_parser("synth", help="synthetic circle/line experiment plot data")
    synth.add_argument("--shape", choices=("circle", "line"), required=True)
    synth.add_argument("--count", type=int, default=16, help="number of samples (default 16)")
    synth.add_argument("--center", default="2,2", metavar="X,Y", help="circle center (default 2,2)")
    synth.add_argument("--radius", type=float, default=1.0, help="circle radius (default 1)")
    synth.add_argument("--direction", default="1,1", metavar="X,Y",
                       help="line direction, strictly positive (default 1,1)")
    synth.add_argument("--step", type=float, default=0.5, help="line step size (default 0.5)")
    synth.add_argument("--reference-index", type=int, default=None,
                       help="override which sample is the comparison anchor")
    _add_measure_flag(synth, multiple=True)
    _add_tv_flags(synth)
    synth.add_argument(
        "--max-cosine-subgradient",
        action="store_true",
        help="optimized TV subgradient selection on the sample side",
    )
    synth.add_argument("--output", metavar="FILE", default=None,
                       help="plot data CSV (default: print to stdout)")
    synth.set_defaults(handler=cmd_synth)
    return parser


def cmd_sim(args, parser):
    x1 = _parse_vector(args.x1, parser, "--x1")
    x2 = _parse_vector(args.x2, parser, "--x2")
    measures = _resolve_measures(args, parser)
    out = _resolve_output(args.output)
    values = {}
    for m in measures:
        try:
            values[m.name] = m.pair(x1, x2)
        except BregsimError as e:
            raise type(e)(f"measure {m.name!r}: {e}") from e
    text = _json_dumps(values)
    sys.stdout.write(text)
    if out is not None:
        _write_text(out, text)
    return 0


def _bench_schema(args):
    return CsvSchema(
        label_column=_parse_label_column(args.label_col),
        feature_columns=_parse_columns(args.feature_cols) if args.feature_cols else None,
        has_header=not args.no_header,
        delimiter=args.delimiter,
    )


def _report_payload(report, dataset, config):
    payload = report.to_dict()
    payload["dataset"] = {
        "name": dataset.name,
        "instances": len(dataset),
        "dimension": dataset.dimension,
        "applied_scale": dataset.applied_scale,
        "classes": list(dataset.classes),
    }
    payload["config"] = config
    return payload


def _report_csv(report):
    lines = ["index,predicted,actual"]
    lines += [f"{p.index},{p.predicted},{p.actual}" for p in report.per_instance]
    return "\n".join(lines) + "\n"


def cmd_bench(args, parser):
    data_path = Path(args.data)
    if not data_path.exists():
        parser.error(f"--data: file not found: {data_path}")
    if args.jobs < 1:
        parser.error(f"--jobs must be >= 1, got {args.jobs}")
    protocol = args.protocol or "loo"
    scale = args.scale if args.scale is not None else (1e7 if args.preset == "gesture" else 1.0)
    if protocol == "split" and not args.test:
        parser.error("--protocol split needs --test FILE")
    if args.test and not Path(args.test).exists():
        parser.error(f"--test: file not found: {args.test}")
    measure = _resolve_measures(args, parser)[0]
    schema = _bench_schema(args)
    out = _resolve_output(args.output)

    dataset = load_csv(data_path, schema)
    classes = args.classes.split(",") if args.classes else None
    if classes is None and args.preset == "gesture":
        classes = list(dataset.classes[:2])
    if classes is not None:
        dataset = filter_classes(dataset, classes)
    if scale != 1.0:
        dataset = scale_features(dataset, scale)

    if protocol == "loo":
        report = leave_one_out(dataset, measure, jobs=args.jobs)
    else:
        test = load_csv(Path(args.test), schema)
        if classes is not None:
            test = filter_classes(test, classes)
        if scale != 1.0:
            test = scale_features(test, scale)
        report = train_test_evaluate(dataset, test, measure, jobs=args.jobs)

    config = {
        "command": "bench",
        "data": str(args.data),
        "test": args.test,
        "label_column": _parse_label_column(args.label_col),
        "feature_columns": list(schema.feature_columns) if schema.feature_columns else None,
        "has_header": schema.has_header,
        "delimiter": schema.delimiter,
        "classes": classes,
        "scale": scale,
        "measure": measure.name,
        "sign_zero": args.sign_zero,
        "paper_literal": args.paper_literal,
        "max_cosine_subgradient": args.max_cosine_subgradient,
        "protocol": report.protocol,
        "format": args.format,
    }
    text = (
        _json_dumps(_report_payload(report, dataset, config))
        if args.format == "json"
        else _report_csv(report)
    )
    if out is None:
        sys.stdout.write(text)
    else:
        _write_text(out, text)
        print(
            f"{measure.name} {report.protocol}: accuracy {report.accuracy:.4f} "
            f"({report.correct}/{report.total}), report written to {out}"
        )
    return 0


def _parse_point(text, parser, what):
    values = _parse_vector(text, parser, what)
    if len(values) != 2:
        parser.error(f"{what}: expected 2 components, got {len(values)}")
    return tuple(values)


def cmd_synth(args, parser):
    if not args.measure:
        args.measure = ["euclidean", "cosine", "bregman-angle-entropy"]
    measures = _resolve_measures(args, parser)
    spec_kwargs = {
        "shape": args.shape,
        "count": args.count,
        "center": _parse_point(args.center, parser, "--center"),
        "radius": args.radius,
        "direction": _parse_point(args.direction, parser, "--direction"),
        "step": args.step,
        "reference_index": args.reference_index,
    }
    out = _resolve_output(args.output)
    spec = SyntheticSpec(**spec_kwargs)
    dataset, ref = (gen_circle if args.shape == "circle" else gen_line)(spec)
    reference = dataset.vectors[ref]
    rows = [i for i in range(len(dataset)) if i != ref]
    columns = {
        m.name: m.matrix(dataset.vectors[rows], reference[None, :])[:, 0] for m in measures
    }

    lines = ["index,x0,x1," + ",".join(m.name for m in measures)]
    for r, i in enumerate(rows):
        x0, x1 = dataset.vectors[i]
        cells = [str(i), f"{x0:.17g}", f"{x1:.17g}"]
        cells += [f"{columns[m.name][r]:.17g}" for m in measures]
        lines.append(",".join(cells))
    text = "\n".join(lines) + "\n"

    if out is None:
        sys.stdout.write(text)
    else:
        _write_text(out, text)
        config = dict(spec_kwargs)
        config.update(
            command="synth",
            measures=[m.name for m in measures],
            reference_index=ref,
            reference=[float(v) for v in reference],
            output=str(out),
        )
        sys.stdout.write(_json_dumps(config))
    return 0


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:  # argparse --help and usage errors
        return int(e.code) if e.code is not None else 0
    try:
        return args.handler(args, parser)
    except SystemExit as e:  # configuration errors routed through parser.error
        return int(e.code) if e.code is not None else 0
    except BrokenPipeError:
        return 0
    except (BregsimError, OSError, ValueError) as e:
        print(f"bregsim {args.command}: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
