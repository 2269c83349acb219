"""
Configuration for betashift.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional
import os

from .errors import ConfigError

OUTPUT_FORMATS = ("text", "json", "dot")


def parse_rational(text: str) -> Fraction:
    """
    Parse ``a/b``, an integer or a decimal literal into an exact Fraction.

    Raises:
        ConfigError: if the text is not a rational literal
    """
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"not a rational number: {text!r}") from exc


def _env_int(name: str, default: str) -> int:
    raw = os.getenv(name, default)
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from exc


@dataclass
class BetaShiftConfig:
    """
    Configuration for betashift computations and CLI output.

    Attributes:
        max_digits: Digit bound for beta-expansions (default: 4096)
        precision: Width bound for recovered beta intervals (default: 1/10^12)
        output_format: One of text, json, dot (default: text)
        emit_steps: Stream reduction steps from the CLI (default: False)
        workers: Thread count for batch comparisons (default: 0 = auto)
        log_level: Level for the betashift logger (default: WARNING)
    """
    max_digits: Optional[int] = None
    precision: Optional[Fraction] = None
    output_format: Optional[str] = None
    emit_steps: bool = False
    workers: Optional[int] = None
    log_level: Optional[str] = None

    def __post_init__(self):
        if self.max_digits is None:
            self.max_digits = _env_int("BETASHIFT_MAX_DIGITS", "4096")
        if self.precision is None:
            self.precision = parse_rational(os.getenv("BETASHIFT_PRECISION", "1/1000000000000"))
        if self.output_format is None:
            self.output_format = os.getenv("BETASHIFT_FORMAT", "text")
        if self.workers is None:
            self.workers = _env_int("BETASHIFT_WORKERS", "0")
        if self.log_level is None:
            self.log_level = os.getenv("BETASHIFT_LOG_LEVEL", "WARNING")

        self.precision = Fraction(self.precision)
        if self.max_digits <= 0:
            raise ConfigError(f"max_digits must be positive, got {self.max_digits}")
        if self.precision <= 0:
            raise ConfigError(f"precision must be positive, got {self.precision}")
        if self.workers < 0:
            raise ConfigError(f"workers must be nonnegative, got {self.workers}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(
                f"output_format must be one of {', '.join(OUTPUT_FORMATS)}, "
                f"got {self.output_format!r}"
            )
        self.log_level = self.log_level.upper()


# Global default config
_default_config: Optional[BetaShiftConfig] = None


def get_config() -> BetaShiftConfig:
    """Get the global default config."""
    global _default_config
    if _default_config is None:
        _default_config = BetaShiftConfig()
    return _default_config


def set_config(config: Optional[BetaShiftConfig]) -> None:
    """Set the global default config (None resets to environment defaults)."""
    global _default_config
    _default_config = config


__all__ = ['BetaShiftConfig', 'OUTPUT_FORMATS', 'get_config', 'set_config', 'parse_rational']
