"""Report bundle directory: config.json, reports.csv, population_*.csv, plots/*.svg."""
from __future__ import annotations

import csv
import hashlib
import json
from pathlib import Path

import numpy as np

from ..metrics import GramReport, fmt


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2)


def config_hash(config: dict) -> str:
    canon = json.dumps(_jsonable(config), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


class Bundle:
    def __init__(self, root: str | Path, config: dict):
        self.root = Path(root)
        self.config = dict(config)
        self.hash = config_hash(self.config)
        self.root.mkdir(parents=True, exist_ok=True)
        (self.root / "config.json").write_text(dumps(dict(self.config, config_hash=self.hash)) + "\n")

    def write_csv(self, name: str, header, rows) -> Path:
        path = self.root / name
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["config_hash", *header])
            for row in rows:
                w.writerow([self.hash, *(fmt(v) for v in row)])
        return path

    def write_reports(self, reports: list[GramReport]) -> Path:
        path = self.root / "reports.csv"
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["config_hash", *GramReport.CSV_FIELDS])
            for r in reports:
                w.writerow([self.hash, *r.csv_values()])
        return path

    def write_json(self, name: str, obj) -> Path:
        path = self.root / name
        path.write_text(dumps(obj) + "\n")
        return path

    def write_plot(self, name: str, svg: str) -> Path:
        plots = self.root / "plots"
        plots.mkdir(exist_ok=True)
        path = plots / name
        path.write_text(svg)
        return path
