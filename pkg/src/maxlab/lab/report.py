"""CSV, JSON and SVG report files.

Reports carry no timestamps or timings, so identical configs give
byte-identical files.
"""

import csv
import json
import math
import os

import numpy as np

from .. import __version__

PASS, FAIL, INCONCLUSIVE, CONFIG_ERROR = 0, 1, 2, 3
STATUS = {PASS: "pass", FAIL: "fail", INCONCLUSIVE: "inconclusive", CONFIG_ERROR: "config-error"}


def plain(obj):
    """Convert numpy scalars/arrays and non-finite floats to JSON-safe values."""
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return plain(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    return obj


def _cell(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def report_paths(cfg):
    base = os.path.join(cfg.output_dir, cfg.name)
    return {"csv": base + ".csv", "json": base + ".json", "svg": base + ".svg"}


def write_report(cfg, code, outcome=None, error=None):
    """Write the files for one run and return their paths."""
    os.makedirs(cfg.output_dir or ".", exist_ok=True)
    paths = report_paths(cfg)
    doc = {
        "version": __version__,
        "kind": cfg.kind,
        "name": cfg.name,
        "seed": cfg.seed,
        "status": STATUS[code],
        "exit_code": code,
        "config": cfg.resolved,
    }
    written = {"json": paths["json"]}
    if outcome is not None:
        doc["summary"] = outcome.summary
        with open(paths["csv"], "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(outcome.header)
            for row in outcome.rows:
                w.writerow([_cell(v) for v in row])
        written["csv"] = paths["csv"]
        if outcome.plot:
            with open(paths["svg"], "w", encoding="utf-8") as fh:
                fh.write(outcome.plot)
            written["svg"] = paths["svg"]
    if error is not None:
        doc["error"] = error
    with open(paths["json"], "w", encoding="utf-8") as fh:
        json.dump(plain(doc), fh, indent=2, sort_keys=True)
        fh.write("\n")
    return written
