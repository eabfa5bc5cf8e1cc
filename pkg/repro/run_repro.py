"""Compare rolling-LAM crisis statistics on user data with the published tables.

Usage::

    python repro/run_repro.py --data-dir DATA --out-dir OUT [--only DJI,GBP/USD]

``DATA/<STEM>.csv`` holds daily closes (``date,close``) for each asset, where
``STEM`` is the asset name with non-alphanumerics removed (``SP``, ``EURUSD``,
``Oil``...). Missing files are reported and skipped.
"""

import argparse
import csv
import json
import logging
import re
import sys
from datetime import date
from pathlib import Path

from rqamon import EmbeddingConfig, MonitorConfig, NoCrisisDetected, TimeSeries, monitor_series
from rqamon import segment_lam
from rqamon.io import load_csv, write_measures_csv, write_segment_json

HERE = Path(__file__).resolve().parent
log = logging.getLogger("repro")


def stem(name):
    return re.sub(r"[^A-Za-z0-9]", "", name)


def trim(ts, last_date, points):
    """Last ``points`` observations on or before ``last_date``."""
    keep = [i for i, d in enumerate(ts.dates) if d <= last_date]
    if not keep:
        raise ValueError(f"no data on or before {last_date}")
    end = keep[-1] + 1
    start = max(0, end - points)
    if end - start < points:
        log.warning("%s: %d points available, the published run used %d",
                    ts.name, end - start, points)
    return TimeSeries(ts.values[start:end], ts.dates[start:end], ts.name)


def compare(target, report, tol):
    """Rows of (field, published, ours, |diff|, within tolerance)."""
    rows = []

    def add(field, ref, got, check=True):
        if ref is None:
            return
        if got is None:
            rows.append((field, ref, None, None, False if check else None))
            return
        diff = abs(got - ref)
        rows.append((field, ref, got, diff, diff <= tol if check else None))

    band = report.lam_normal_band
    if target["lam_normal_band"] is not None:
        add("normal_band_low", target["lam_normal_band"][0], band and band[0])
        add("normal_band_high", target["lam_normal_band"][1], band and band[1])
    add("lam_at_crisis_start", target["lam_at_crisis_start"], report.lam_at_crisis_start)
    add("lam_minimum", target["lam_minimum"], report.lam_minimum)
    add("lam_drop", target["lam_drop"], report.lam_drop)
    # percentages and day counts are listed for reference, not scored
    add("lam_drop_pct", target["lam_drop_pct"], report.lam_drop_pct, check=False)
    add("crisis_time_days", target["crisis_time_days"], report.crisis_time_days, check=False)
    return rows


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--data-dir", required=True, type=Path)
    p.add_argument("--out-dir", required=True, type=Path)
    p.add_argument("--targets", type=Path, default=HERE / "published_targets.json")
    p.add_argument("--only", help="comma list of asset names")
    p.add_argument("--tolerance", type=float, help="absolute LAM tolerance (default 0.03)")
    args = p.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")

    published = json.loads(args.targets.read_text(encoding="utf-8"))
    tol = args.tolerance if args.tolerance is not None else published["tolerance"]
    last = date.fromisoformat(published["last_date"])
    wanted = None if not args.only else {s.strip() for s in args.only.split(",")}
    emb = EmbeddingConfig(m=published["m"], tau=published["tau"],
                          epsilon=published["epsilon"], norm=published["norm"])
    args.out_dir.mkdir(parents=True, exist_ok=True)

    table = []
    for target in published["assets"]:
        name = target["name"]
        if wanted is not None and name not in wanted and stem(name) not in wanted:
            continue
        path = args.data_dir / f"{stem(name)}.csv"
        if not path.is_file():
            log.info("%s: %s not found, skipped", name, path)
            table.append((name, "missing", None, None, None, None))
            continue
        ts = trim(load_csv(path), last, target["points"])
        cfg = MonitorConfig(lpr=target["lpr"], ws=published["ws"], embedding=emb)
        lam = monitor_series(ts, cfg)["lam"]
        write_measures_csv(lam, args.out_dir / f"{stem(name)}_lam.csv")
        try:
            report = segment_lam(lam)
        except NoCrisisDetected as exc:
            report = exc.report
        write_segment_json(report, args.out_dir / f"{stem(name)}_segment.json")
        for field, ref, got, diff, ok in compare(target, report, tol):
            verdict = {True: "ok", False: "off", None: "info"}[ok]
            table.append((name, field, ref, got, diff, verdict))

    out = args.out_dir / "comparison.csv"
    with out.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["asset", "field", "published", "ours", "abs_diff", "verdict"])
        w.writerows(table)
    scored = [r for r in table if r[-1] in ("ok", "off")]
    hits = sum(r[-1] == "ok" for r in scored)
    print(f"{hits}/{len(scored)} scored fields within {tol} LAM; details in {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
