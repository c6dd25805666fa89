"""
CLI Module - predict, simulate, counts, cs-check and compare commands.
"""
from .models import RunConfig
from .commands import COMMANDS, compare_curves
from .main import build_parser, main

__all__ = ["RunConfig", "COMMANDS", "compare_curves", "build_parser", "main"]
