"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data error. Settings resolve as
built-in defaults < ``--config`` JSON file < explicit flags.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import __version__
from .embedding import (
    EmbeddingConfig,
    average_mutual_information,
    delay_embed,
    false_nearest_neighbors,
    first_below,
    first_minimum,
    normalize,
)
from .errors import NoCrisisDetected, RQAError
from .io import (
    export_chart,
    export_rp_raster,
    load_csv,
    read_measures_csv,
    write_measures_csv,
    write_segment_json,
)
from .measures import MEASURE_NAMES
from .monitor import MonitorConfig, monitor_series
from .recurrence import build_rp
from .segmentation import SegmentParams, segment_lam
from .windowed import windowed_measures

logger = logging.getLogger("rqamon")

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


@dataclass
class RunConfig:
    input: Optional[str] = None
    column: str = "close"
    m: int = 1
    tau: int = 1
    epsilon: float = 0.1
    norm: str = "maximum"
    l_min: int = 2
    v_min: int = 2
    theiler: int = 1
    ws: int = 250
    step: int = 1
    lpr: int = 1500
    normalization: Optional[str] = None
    measures: Optional[list] = None
    width: int = 11
    band: float = 0.02
    instability_drop: float = 0.02
    crisis_drop: float = 0.05
    max_lag: int = 100
    bins: int = 16
    max_m: int = 10
    rtol: float = 15.0
    atol: float = 2.0
    fnn_threshold: float = 0.05
    lam_column: str = "lam"
    out_dir: str = "."
    output: Optional[str] = None

    def embedding(self):
        return EmbeddingConfig(
            m=self.m,
            tau=self.tau,
            epsilon=self.epsilon,
            norm=self.norm,
            l_min=self.l_min,
            v_min=self.v_min,
            theiler=self.theiler,
        )

    def segment_params(self):
        return SegmentParams(self.width, self.band, self.instability_drop, self.crisis_drop)

    def target(self, default_name):
        if self.output:
            return Path(self.output)
        return Path(self.out_dir) / default_name


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _measure_list(text):
    names = [t.strip().lower() for t in text.split(",") if t.strip()]
    unknown = [n for n in names if n not in MEASURE_NAMES]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown measures: {', '.join(unknown)}")
    return names


def _common(p, embedding=True):
    p.add_argument("--config", help="JSON file with RunConfig fields")
    p.add_argument("--out-dir", dest="out_dir", help="directory for output files")
    p.add_argument("-o", "--output", help="explicit output file path")
    if embedding:
        g = p.add_argument_group("embedding")
        g.add_argument("--column", help="value column (default close)")
        g.add_argument("--m", type=int, help="embedding dimension (default 1)")
        g.add_argument("--tau", type=int, help="delay (default 1)")
        g.add_argument("--eps", "--epsilon", dest="epsilon", type=float,
                       help="recurrence threshold in sd units (default 0.1)")
        g.add_argument("--norm", choices=["maximum", "euclidean"])
        g.add_argument("--lmin", dest="l_min", type=int)
        g.add_argument("--vmin", dest="v_min", type=int)
        g.add_argument("--theiler", type=int)


def build_parser():
    parser = _Parser(prog="rqamon", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"rqamon {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("embed", help="AMI and FNN curves with suggested tau and m")
    p.add_argument("input")
    _common(p)
    p.add_argument("--max-lag", dest="max_lag", type=int)
    p.add_argument("--bins", type=int)
    p.add_argument("--max-m", dest="max_m", type=int)
    p.add_argument("--rtol", type=float)
    p.add_argument("--atol", type=float)
    p.add_argument("--fnn-threshold", dest="fnn_threshold", type=float)

    p = sub.add_parser("analyze", help="windowed RQA measures over the full series")
    p.add_argument("input")
    _common(p)
    p.add_argument("--ws", type=int, help="window size (default 250)")
    p.add_argument("--step", type=int)
    p.add_argument("--measures", type=_measure_list, help="comma list (default all)")
    p.add_argument("--normalization", choices=["global", "none"])

    p = sub.add_parser("monitor", help="rolling real-time LAM over trailing subseries")
    p.add_argument("input")
    _common(p)
    p.add_argument("--ws", type=int)
    p.add_argument("--lpr", type=int, help="trailing subseries length (default 1500)")
    p.add_argument("--measures", type=_measure_list, help="comma list (default lam)")
    p.add_argument("--normalization", choices=["subseries", "global", "none"])

    p = sub.add_parser("segment", help="regime periods from a measures CSV")
    p.add_argument("input", help="measures CSV with a lam column")
    _common(p, embedding=False)
    p.add_argument("--column", dest="lam_column", help="measure column (default lam)")
    p.add_argument("--width", type=int, help="smoothing width, odd (default 11)")
    p.add_argument("--band", type=float, help="normal band depth (default 0.02)")
    p.add_argument("--instability-drop", dest="instability_drop", type=float)
    p.add_argument("--crisis-drop", dest="crisis_drop", type=float)

    p = sub.add_parser("render", help="recurrence-plot raster and/or chart")
    p.add_argument("input")
    _common(p)
    p.add_argument("--rp", dest="rp_path", help="write a PGM raster here")
    p.add_argument("--start", type=int, default=0, help="first state of the raster")
    p.add_argument("--size", type=int, help="raster side (default: whole series)")
    p.add_argument("--no-normalize", action="store_true")
    p.add_argument("--chart", dest="chart_path", help="write an SVG chart here")
    p.add_argument("--measures-file", dest="measures_file", help="measures CSV to chart")
    return parser


_CLI_ONLY = {"command", "config", "rp_path", "start", "size", "no_normalize",
             "chart_path", "measures_file"}


def resolve_config(args) -> RunConfig:
    """Merge defaults, the optional config file and explicit flags."""
    cfg = RunConfig()
    names = {f.name for f in dataclasses.fields(RunConfig)}
    if getattr(args, "config", None):
        try:
            data = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(data, dict):
            raise UsageError("config file must hold a JSON object")
        unknown = set(data) - names
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        for k, v in data.items():
            setattr(cfg, k, v)
        if isinstance(cfg.measures, str):
            try:
                cfg.measures = _measure_list(cfg.measures)
            except argparse.ArgumentTypeError as exc:
                raise UsageError(str(exc)) from None
    for k, v in vars(args).items():
        if k in _CLI_ONLY or v is None:
            continue
        setattr(cfg, k, v)
    return cfg


def _cmd_embed(cfg, args):
    ts = load_csv(cfg.input, cfg.column)
    x = normalize(ts.values)
    ami = average_mutual_information(x, cfg.max_lag, cfg.bins)
    tau = first_minimum(ami)
    fnn = false_nearest_neighbors(x, tau or cfg.tau, cfg.max_m, cfg.rtol, cfg.atol)
    m = first_below(fnn, cfg.fnn_threshold)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with (out / "ami.csv").open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("lag,ami\n")
        fh.writelines(f"{lag},{v!r}\n" for lag, v in enumerate(ami.tolist()))
    with (out / "fnn.csv").open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("m,fnn\n")
        fh.writelines(f"{k},{v!r}\n" for k, v in enumerate(fnn.tolist(), start=1))
    summary = {"tau": tau, "m": m, "fnn_tau": tau or cfg.tau, "bins": cfg.bins,
               "max_lag": cfg.max_lag, "rtol": cfg.rtol, "atol": cfg.atol}
    (out / "embed.json").write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")
    print(f"suggested tau={tau} m={m}")


def _cmd_analyze(cfg, args):
    ts = load_csv(cfg.input, cfg.column)
    emb = cfg.embedding()
    x = ts.values if cfg.normalization == "none" else normalize(ts.values)
    rp = build_rp(delay_embed(x, emb.m, emb.tau), emb.epsilon, emb.norm, config=emb)
    result = windowed_measures(rp, emb, cfg.ws, cfg.step, cfg.measures, ts.dates)
    target = cfg.target("measures.csv")
    target.parent.mkdir(parents=True, exist_ok=True)
    write_measures_csv(result, target)
    logger.info("wrote %d windows to %s", len(next(iter(result.values()))), target)


def _cmd_monitor(cfg, args):
    ts = load_csv(cfg.input, cfg.column)
    mcfg = MonitorConfig(
        lpr=cfg.lpr,
        ws=cfg.ws,
        embedding=cfg.embedding(),
        measures=tuple(cfg.measures or ("lam",)),
        normalization=cfg.normalization or "subseries",
    )
    result = monitor_series(ts, mcfg)
    target = cfg.target("monitor.csv")
    target.parent.mkdir(parents=True, exist_ok=True)
    write_measures_csv(result, target)
    logger.info("wrote %d monitor points to %s", len(next(iter(result.values()))), target)


def _cmd_segment(cfg, args):
    column = cfg.lam_column
    series = read_measures_csv(cfg.input)
    if column not in series:
        raise UsageError(f"{cfg.input} has no {column!r} column")
    try:
        report = segment_lam(series[column], cfg.segment_params())
    except NoCrisisDetected as exc:
        logger.warning("no crisis detected; writing partial report")
        report = exc.report
    target = cfg.target("segment.json")
    target.parent.mkdir(parents=True, exist_ok=True)
    write_segment_json(report, target)


def _cmd_render(cfg, args):
    if not args.rp_path and not args.chart_path:
        raise UsageError("render needs --rp and/or --chart")
    ts = load_csv(cfg.input, cfg.column)
    if args.rp_path:
        emb = cfg.embedding()
        x = ts.values if args.no_normalize else normalize(ts.values)
        size = args.size or (x.size - args.start)
        x = x[args.start : args.start + size + emb.span]
        rp = build_rp(delay_embed(x, emb.m, emb.tau, start=args.start), emb.epsilon,
                      emb.norm, config=emb)
        export_rp_raster(rp, args.rp_path)
    if args.chart_path:
        if not args.measures_file:
            raise UsageError("--chart needs --measures-file")
        measures = read_measures_csv(args.measures_file)
        if cfg.measures:
            measures = {k: v for k, v in measures.items() if k in cfg.measures}
        export_chart(ts, measures, args.chart_path)


_COMMANDS = {
    "embed": _cmd_embed,
    "analyze": _cmd_analyze,
    "monitor": _cmd_monitor,
    "segment": _cmd_segment,
    "render": _cmd_render,
}


def _setup_logging():
    level = os.environ.get("RQA_LOG", "WARNING").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def main(argv=None) -> int:
    _setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        cfg = resolve_config(args)
        _COMMANDS[args.command](cfg, args)
    except UsageError as exc:
        print(f"rqamon: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (RQAError, OSError) as exc:
        print(f"rqamon: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ValueError, TypeError) as exc:
        # invalid parameter values surface as ValueError from the config types
        print(f"rqamon: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
