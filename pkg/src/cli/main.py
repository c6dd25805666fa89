"""
Raman Pair Correlator - Command Line Entry Point

Usage:
    python -m src.cli predict --spectrum water.csv --grid 1000:3600:50 --out out/
    python -m src.cli simulate --nu 1640 --grid 1400:1900:10 --t1 0.5 2 --out out/
    python -m src.cli compare --predict out/water.csv --simulate out/scan.csv --out out/
"""
import argparse
import json
import logging
import sys
import uuid
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from src import __version__
from src.config import DEFAULT_WORKERS, LOG_LEVEL
from src.exceptions import ConfigError, RamanPairError
from src.observability.metrics import MetricsContext
from src.spectrum.models import UniformGrid
from .commands import COMMANDS
from .models import RunConfig

logger = logging.getLogger("src.cli")


def setup_logging(level: str = LOG_LEVEL) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", default="out", help="Output directory")
    parser.add_argument("--format", dest="fmt", choices=["csv", "json"], default="csv")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--workers", type=int, default=DEFAULT_WORKERS)
    parser.add_argument("--log-level", default=LOG_LEVEL)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ramanpair",
        description="Stokes/anti-Stokes photon pair correlations in Raman media",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    predict = sub.add_parser("predict", help="Perturbative g2(0) curves from Raman spectra")
    predict.add_argument("--spectrum", nargs="+", default=[], dest="spectra", metavar="PATH")
    predict.add_argument("--reference", nargs="+", default=[], dest="reference_media", metavar="MEDIUM",
                         help="Built-in reference medium (water, acetonitrile, toluene)")
    predict.add_argument("--grid", help="Band centers START:STOP:STEP in cm^-1")
    predict.add_argument("--band-width", type=float)
    predict.add_argument("--shape", choices=["tophat", "gaussian"])
    predict.add_argument("--temp", type=float, dest="temperature_k")
    predict.add_argument("--laser-scale", type=float)
    predict.add_argument("--threshold", type=float)
    predict.add_argument("--default-gamma", type=float)
    predict.add_argument("--incoherent", action="store_true", default=None)
    predict.add_argument("--no-sas-background", action="store_false", dest="sas_background", default=None)
    predict.add_argument("--sas-coefficient", type=float)
    predict.add_argument("--rank-at", nargs="+", type=float, metavar="CENTER")
    _add_common(predict)

    simulate = sub.add_parser("simulate", help="Single-mode master-equation resonance scan")
    simulate.add_argument("--grid", help="Filter shifts START:STOP:STEP in cm^-1")
    simulate.add_argument("--nu", type=float)
    simulate.add_argument("--g-s", type=float)
    simulate.add_argument("--g-as", type=float)
    simulate.add_argument("--t1", nargs="+", type=float, metavar="V")
    simulate.add_argument("--n-max", type=int)
    simulate.add_argument("--dt", type=float)
    simulate.add_argument("--pulse-duration", type=float)
    simulate.add_argument("--temp", type=float, dest="temperature_k")
    _add_common(simulate)

    counts = sub.add_parser("counts", help="g2 estimates and Cauchy-Schwarz test from photon counts")
    counts.add_argument("--counts", help="Counts JSON file")
    counts.add_argument("--windows", type=int, help="Sample a seeded classical mixture instead")
    counts.add_argument("--mixture-components", type=int)
    _add_common(counts)

    cs = sub.add_parser("cs-check", help="Cauchy-Schwarz classicality verdict")
    cs.add_argument("--g2", nargs=3, type=float, metavar=("SAS", "SS", "ASAS"))
    cs.add_argument("--counts")
    _add_common(cs)

    compare = sub.add_parser("compare", help="Compare predict and simulate curves")
    compare.add_argument("--predict", required=True)
    compare.add_argument("--simulate", required=True)
    compare.add_argument("--reference-shift", type=float)
    compare.add_argument("--tolerance", type=float)
    _add_common(compare)

    return ap


def build_run_config(args: argparse.Namespace) -> RunConfig:
    """Drop unset flags so RunConfig defaults apply, then validate."""
    values = {k: v for k, v in vars(args).items() if v is not None}
    if "grid" in values:
        values["grid"] = UniformGrid.parse(values["grid"])
    values["out"] = Path(values["out"])
    return RunConfig(**values)


def config_error(error: ValidationError) -> ConfigError:
    """First pydantic error as a ConfigError (exit 2)."""
    first = error.errors()[0]
    field = ".".join(str(part) for part in first["loc"]) or "config"
    return ConfigError(f"invalid {field}: {first['msg']}")


def _error_envelope(error: RamanPairError, command: str) -> str:
    payload = error.to_dict()
    payload["command"] = command
    return json.dumps(payload, sort_keys=True, default=str)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)
    command = args.command

    with MetricsContext(run_id=uuid.uuid4().hex[:8], command=command) as ctx:
        try:
            config = build_run_config(args)
            written = COMMANDS[command](config, ctx)
        except (ValidationError, RamanPairError) as e:
            error = config_error(e) if isinstance(e, ValidationError) else e
            ctx.metrics.exit_code = error.exit_code
            ctx.metrics.error = type(error).__name__
            print(_error_envelope(error, command), file=sys.stderr)
            return error.exit_code

    for path in written:
        logger.info("[OK] Wrote %s", path)
    logger.info("Run summary: %s", json.dumps(ctx.summary(), sort_keys=True))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
