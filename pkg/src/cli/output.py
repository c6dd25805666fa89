"""
Output files - deterministic CSV/JSON artifacts with an embedded run header.
"""
import json
import re
from pathlib import Path
from typing import Any, Dict, List, Sequence

from src.config import ARTIFACT_VERSION, PHYSICS_DEFAULTS
from src.master_equation.scan import ScanResult
from src.pairing.curve_io import (
    CURVE_COLUMNS,
    RANKING_COLUMNS,
    SCAN_COLUMNS,
    curve_rows,
    format_csv,
    format_json,
    json_safe,
    write_text,
)
from src.pairing.models import CorrelationCurve
from .models import RunConfig


def run_header(config: RunConfig) -> Dict[str, Any]:
    """Version, command and resolved config; no timestamps."""
    return {
        "version": ARTIFACT_VERSION,
        "command": config.command,
        "config": {**config.resolved(), "defaults": PHYSICS_DEFAULTS},
    }


def safe_filename(name: str) -> str:
    cleaned = re.sub(r"[^A-Za-z0-9_.-]+", "_", name).strip("._")
    return cleaned or "medium"


def write_curve(curve: CorrelationCurve, out_dir: Path, config: RunConfig) -> Path:
    header = run_header(config)
    path = out_dir / f"{safe_filename(curve.medium_name)}.{config.fmt}"
    if config.fmt == "csv":
        text = format_csv(curve_rows(curve), CURVE_COLUMNS, header)
    else:
        group = {
            "medium": curve.medium_name,
            "metadata": json_safe(curve.metadata),
            "points": curve_rows(curve),
        }
        text = format_json([group], header)
    return write_text(path, text)


def write_ranking(tables: Sequence[Dict[str, Any]], out_dir: Path, config: RunConfig) -> Path:
    """tables: [{"center_cm1": x, "entries": rank_media(...)}], one per center."""
    header = run_header(config)
    path = out_dir / f"ranking.{config.fmt}"
    if config.fmt == "csv":
        rows = [
            {**entry, "center_cm1": table["center_cm1"]}
            for table in tables for entry in table["entries"]
        ]
        text = format_csv(rows, RANKING_COLUMNS, header)
    else:
        groups = [
            {"center_cm1": table["center_cm1"], "points": list(table["entries"])}
            for table in tables
        ]
        text = format_json(groups, header, key="rankings")
    return write_text(path, text)


def write_scan(result: ScanResult, out_dir: Path, config: RunConfig) -> Path:
    header = run_header(config)
    header["scan"] = json_safe(result.config)
    path = out_dir / f"scan.{config.fmt}"
    if config.fmt == "csv":
        rows: List[Dict[str, Any]] = [row for curve in result.curves for row in curve.to_rows()]
        text = format_csv(rows, SCAN_COLUMNS, header)
    else:
        groups = [
            {
                "medium": "single-mode",
                "t1": curve.t1,
                "nu": curve.nu,
                "g_s": curve.g_s,
                "g_as": curve.g_as,
                "n_max": curve.n_max,
                "points": [
                    {k: v for k, v in row.items() if k not in ("medium", "t1", "nu", "g_s", "g_as", "n_max")}
                    for row in curve.to_rows()
                ],
            }
            for curve in result.curves
        ]
        text = format_json(groups, header)
    return write_text(path, text)


def write_report(payload: Dict[str, Any], path: Path, config: RunConfig) -> Path:
    """JSON report (counts, cs-check, compare); always JSON."""
    document = {**run_header(config), **json_safe(payload)}
    return write_text(path, json.dumps(document, indent=1, sort_keys=True) + "\n")
