"""
Spectrum Loader - Read and write Raman spectra as CSV or JSON.

CSV: optional header, two numeric columns ``shift_cm1,intensity``.
JSON: ``{"medium", "temperature_K", "excitation_power_mW"?, "points": [[shift, intensity], ...]}``.
Both accept UTF-8 with LF or CRLF line endings.
"""
import csv
import io
import json
import logging
from pathlib import Path
from typing import List, Optional, Tuple, Union

from src.config import DEFAULT_TEMPERATURE_K
from src.exceptions import ConfigError, SpectrumParseError
from .models import RamanSpectrum

logger = logging.getLogger(__name__)

SUPPORTED_FORMATS = ("csv", "json")


def infer_format(path: Union[str, Path]) -> str:
    suffix = Path(path).suffix.lower().lstrip(".")
    if suffix not in SUPPORTED_FORMATS:
        raise ConfigError(f"cannot infer spectrum format from {Path(path).name!r}; pass csv or json")
    return suffix


def _parse_float(text, row: Optional[int], column: str) -> float:
    if isinstance(text, bool):
        raise SpectrumParseError(f"non-numeric {column} {text!r}", row=row)
    try:
        return float(text)
    except (TypeError, ValueError):
        raise SpectrumParseError(f"non-numeric {column} {text!r}", row=row)


def _parse_csv(text: str) -> List[Tuple[float, float]]:
    points = []
    header_seen = False
    reader = csv.reader(io.StringIO(text))
    for line_no, row in enumerate(reader, start=1):
        cells = [cell.strip() for cell in row]
        if not cells or all(not cell for cell in cells):
            continue
        if cells[0].startswith("#"):
            continue
        if len(cells) != 2:
            raise SpectrumParseError(f"expected 2 columns, got {len(cells)}", row=line_no)
        # The first data row may be a header
        if not points and not header_seen:
            header_seen = True
            try:
                float(cells[0])
            except ValueError:
                continue
        shift = _parse_float(cells[0], line_no, "shift")
        intensity = _parse_float(cells[1], line_no, "intensity")
        points.append((shift, intensity))
    return points


def _parse_json(text: str) -> Tuple[dict, List[Tuple[float, float]]]:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpectrumParseError(f"invalid JSON: {e.msg}", row=e.lineno)
    if not isinstance(payload, dict) or "points" not in payload:
        raise SpectrumParseError("JSON spectrum must be an object with a 'points' list")

    if not isinstance(payload["points"], list):
        raise SpectrumParseError(f"'points' must be a list, got {type(payload['points']).__name__}")

    points = []
    for idx, item in enumerate(payload["points"], start=1):
        if not isinstance(item, list) or len(item) != 2:
            raise SpectrumParseError("point must be a [shift, intensity] pair", row=idx)
        points.append((
            _parse_float(item[0], idx, "shift"),
            _parse_float(item[1], idx, "intensity"),
        ))
    return payload, points


def load_spectrum(
    path: Union[str, Path],
    format: Optional[str] = None,
    medium_name: Optional[str] = None,
    temperature_k: Optional[float] = None,
    normalize: bool = True,
) -> RamanSpectrum:
    """
    Load and validate a spectrum file.

    Args:
        path: CSV or JSON file
        format: "csv" or "json"; inferred from the suffix when omitted
        medium_name: overrides the medium stored in the file (CSV files
            default to the file stem)
        temperature_k: overrides the file temperature
        normalize: rescale so the maximum intensity is 1

    Returns:
        Validated RamanSpectrum
    """
    path = Path(path)
    fmt = (format or infer_format(path)).lower()
    if fmt not in SUPPORTED_FORMATS:
        raise ConfigError(f"unsupported spectrum format {fmt!r}")
    if not path.is_file():
        raise ConfigError(f"spectrum file not found: {path}")

    raw = path.read_bytes()
    try:
        text = raw.decode("utf-8-sig")
    except UnicodeDecodeError as e:
        raise SpectrumParseError("file is not valid UTF-8", row=raw[:e.start].count(b"\n") + 1)
    power = None
    if fmt == "csv":
        points = _parse_csv(text)
        file_medium, file_temperature = path.stem, DEFAULT_TEMPERATURE_K
    else:
        payload, points = _parse_json(text)
        file_medium = str(payload.get("medium", path.stem))
        file_temperature = _parse_float(payload.get("temperature_K", DEFAULT_TEMPERATURE_K), None, "temperature_K")
        if payload.get("excitation_power_mW") is not None:
            power = _parse_float(payload["excitation_power_mW"], None, "excitation_power_mW")

    spectrum = RamanSpectrum(
        medium_name=medium_name or file_medium,
        shifts=[p[0] for p in points],
        intensities=[p[1] for p in points],
        temperature_k=file_temperature if temperature_k is None else temperature_k,
        excitation_power_mw=power,
    )
    if spectrum.peak <= 0:
        logger.warning("[WARN] Spectrum %s is identically zero", path.name)
        return spectrum

    logger.debug("Loaded %d points from %s", len(spectrum.shifts), path)
    return spectrum.normalized() if normalize else spectrum


def dump_spectrum(spectrum: RamanSpectrum, path: Union[str, Path], format: Optional[str] = None) -> Path:
    """Write a spectrum so that load_spectrum reproduces the same floats."""
    path = Path(path)
    fmt = (format or infer_format(path)).lower()
    path.parent.mkdir(parents=True, exist_ok=True)

    if fmt == "csv":
        lines = ["shift_cm1,intensity"]
        lines.extend(f"{shift!r},{intensity!r}" for shift, intensity in spectrum.points)
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    elif fmt == "json":
        payload = {
            "medium": spectrum.medium_name,
            "temperature_K": spectrum.temperature_k,
            "points": [[shift, intensity] for shift, intensity in spectrum.points],
        }
        if spectrum.excitation_power_mw is not None:
            payload["excitation_power_mW"] = spectrum.excitation_power_mw
        path.write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")
    else:
        raise ConfigError(f"unsupported spectrum format {fmt!r}")
    return path
