"""
Curve tables - CSV/JSON serialization of correlation curves and scans.

CSV files start with a ``# {json header}`` comment line, then a column row.
JSON files hold the header fields plus a ``curves`` list. Floats are written
with repr; NaN becomes an empty cell (CSV) or null (JSON).
"""
import csv
import io
import json
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from src.exceptions import ConfigError, SpectrumParseError
from .models import CorrelationCurve

CURVE_COLUMNS = [
    "shift_cm1", "g2_norm", "overlap", "regime",
    "g2_raw", "correlated_rate", "accidental_rate", "flags", "medium",
]
SCAN_COLUMNS = CURVE_COLUMNS + ["t1", "nu", "g_s", "g_as", "n_max"]
RANKING_COLUMNS = ["center_cm1", "rank", "medium", "g2_raw", "g2_norm", "regime", "flags"]

_TEXT_COLUMNS = {"regime", "flags", "medium"}
_INT_COLUMNS = {"rank", "n_max"}


def curve_rows(curve: CorrelationCurve) -> List[Dict[str, Any]]:
    rows = []
    for point in curve.points:
        row = point.to_dict()
        row["g2_norm"] = point.g2_normalized
        row["g2_raw"] = point.g2_raw
        row["medium"] = curve.medium_name
        rows.append(row)
    return rows


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (list, tuple)):
        return "|".join(str(v) for v in value)
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return "" if not math.isfinite(value) else repr(value)
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, tuple):
        return list(value)
    return value


def json_safe(value: Any) -> Any:
    """Recursively replace non-finite floats with None and tuples with lists."""
    if isinstance(value, dict):
        return {str(k): json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_safe(v) for v in value]
    return _json_value(value)


def format_csv(rows: Sequence[Dict[str, Any]], columns: Sequence[str], header: Dict[str, Any]) -> str:
    buffer = io.StringIO()
    buffer.write("# " + json.dumps(header, sort_keys=True) + "\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(col)) for col in columns])
    return buffer.getvalue()


def format_json(groups: Sequence[Dict[str, Any]], header: Dict[str, Any], key: str = "curves") -> str:
    payload = dict(header)
    payload[key] = [
        {
            **{k: _json_value(v) for k, v in group.items() if k != "points"},
            "points": [{k: _json_value(v) for k, v in row.items()} for row in group["points"]],
        }
        for group in groups
    ]
    return json.dumps(payload, indent=1, sort_keys=True) + "\n"


def write_text(path: Union[str, Path], text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


def _parse_cell(column: str, text: str) -> Any:
    if column == "flags":
        return [flag for flag in text.split("|") if flag]
    if column in _TEXT_COLUMNS:
        return text
    if text == "":
        return math.nan
    if column in _INT_COLUMNS:
        return int(text)
    return float(text)


def read_table(path: Union[str, Path]) -> Tuple[Dict[str, Any], List[Dict[str, Any]]]:
    """
    Read a curve or scan file back into (header, flat rows).

    JSON groups are flattened; group-level fields are copied onto each row.
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"curve file not found: {path}")
    text = path.read_text(encoding="utf-8-sig")
    suffix = path.suffix.lower()

    if suffix == ".json":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as e:
            raise SpectrumParseError(f"invalid JSON: {e.msg}", row=e.lineno)
        groups = payload.pop("curves", None)
        if not isinstance(groups, list):
            raise SpectrumParseError(f"{path.name}: no 'curves' list")
        rows = []
        for group in groups:
            shared = {k: v for k, v in group.items() if k not in ("points", "metadata")}
            for point in group.get("points", []):
                row = {**shared, **point}
                rows.append({k: math.nan if v is None and k not in _TEXT_COLUMNS else v for k, v in row.items()})
        return payload, rows

    if suffix != ".csv":
        raise ConfigError(f"unsupported curve file {path.name!r}")
    lines = text.splitlines()
    header: Dict[str, Any] = {}
    if lines and lines[0].startswith("#"):
        try:
            header = json.loads(lines[0][1:].strip())
        except json.JSONDecodeError:
            header = {}
        lines = lines[1:]
    reader = csv.DictReader(lines)
    rows = []
    for line_no, raw in enumerate(reader, start=3 if header else 2):
        try:
            rows.append({col: _parse_cell(col, value or "") for col, value in raw.items()})
        except ValueError as e:
            raise SpectrumParseError(f"bad value in {path.name}: {e}", row=line_no)
    return header, rows


def group_rows(rows: Sequence[Dict[str, Any]], key: Optional[str] = None) -> Dict[Any, List[Dict[str, Any]]]:
    """Split flat rows into curves by a column (e.g. t1), keeping row order."""
    groups: Dict[Any, List[Dict[str, Any]]] = {}
    for row in rows:
        groups.setdefault(row.get(key) if key else None, []).append(row)
    return groups
