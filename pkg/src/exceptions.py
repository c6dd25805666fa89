"""
Error hierarchy shared by the engines, the CLI and the HTTP layer.
Each class carries the process exit code the CLI reports for it.
"""
from typing import Any, Dict, Optional


class RamanPairError(Exception):
    """Base class for every library error."""

    exit_code = 1

    def with_context(self, **context: Any) -> "RamanPairError":
        """Attach where the error happened (e.g. shift, t1, file)."""
        self.context = {**getattr(self, "context", {}), **context}
        return self

    def to_dict(self) -> Dict[str, Any]:
        payload = {"error": type(self).__name__, "detail": str(self)}
        context = getattr(self, "context", None)
        if context:
            payload["context"] = context
        return payload


class InputError(RamanPairError):
    """Bad input file, bad configuration or precondition violation."""

    exit_code = 2


class NumericalError(RamanPairError):
    """Failure inside a numerical engine."""

    exit_code = 3


class ConfigError(InputError):
    pass


class SpectrumParseError(InputError):
    """Malformed row in a spectrum file."""

    def __init__(self, message: str, row: Optional[int] = None):
        self.row = row
        prefix = f"row {row}: " if row is not None else ""
        super().__init__(f"{prefix}{message}")

    def to_dict(self) -> Dict[str, Any]:
        return {**super().to_dict(), "row": self.row}


class SpectrumValidationError(SpectrumParseError):
    """Spectrum violates an invariant (ordering, sign, length)."""


class BandOutsideSupportError(InputError):
    """A filter band or resampling grid reaches outside the spectrum."""


class EmptyModeSetError(InputError):
    """No spectral bin survives the detection threshold."""


class GridMismatchError(InputError):
    """Two curves do not share any shift."""


class StepSizeError(NumericalError):
    """Integrator time step violates the stability precondition."""


class InvariantBreachError(NumericalError):
    """Density operator left the physical set during integration."""

    def __init__(self, message: str, time: Optional[float] = None):
        self.time = time
        prefix = f"t={time:.6g}: " if time is not None else ""
        super().__init__(f"{prefix}{message}")

    def to_dict(self) -> Dict[str, Any]:
        return {**super().to_dict(), "time": self.time}


class ZeroOccupationError(NumericalError):
    """A correlation ratio was requested for an empty mode or channel."""
