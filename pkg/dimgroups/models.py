from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, Field, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .exceptions import ConfigurationError, ValidationError
from .scalar_field import START_PRECISION_BITS, parse_rational
from .simplex_builder import SimplexSpec


class Settings(BaseSettings):
    """
    Runtime configuration shared by every command.

    Values come from, in increasing priority: defaults, ``DIMGROUPS_*`` environment
    variables, an optional JSON config file and command-line flags. The oracle
    decides the transcendental ``t`` every sign question is asked about:
      - ``pi_minus_3`` (default) computes t = pi - 3 with mpmath
      - ``digits_file`` reads the decimal expansion of t from ``digits_file``
    """

    model_config = SettingsConfigDict(env_prefix="DIMGROUPS_", title="dimgroups")
    oracle: Literal["pi_minus_3", "digits_file"] = Field(
        default="pi_minus_3",
        description="Source of enclosures of the transcendental generator t",
    )
    digits_file: Path | None = Field(
        default=None,
        description="File with the decimal expansion of t, used by the digits_file oracle",
    )
    max_precision_bits: int = Field(
        default=16384,
        description="Refinement cap of the sign oracle; reaching it is an error",
    )

    @field_validator("max_precision_bits")
    @classmethod
    def validate_max_precision_bits(cls, v: int) -> int:
        """Validate that the cap allows at least the first refinement."""
        if v < START_PRECISION_BITS:
            raise ValidationError(
                f"max_precision_bits must be at least {START_PRECISION_BITS}, got {v}"
            )
        return v

    output: Literal["text", "json"] = Field(default="text", description="Report format")

    @field_validator("output", mode="before")
    @classmethod
    def validate_output(cls, v: Any) -> Any:
        """Accept the format name in any case."""
        return v.lower() if isinstance(v, str) else v

    seed: int = Field(default=0, description="Seed of the MT19937 generator behind random draws")
    log_level: str = Field(default="WARNING", description="Sets the log level of stderr logging")

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate that log level is supported."""
        valid_levels = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
        if v.upper() not in valid_levels:
            raise ValidationError(
                f"Invalid log level '{v}'. Must be one of: {', '.join(sorted(valid_levels))}"
            )
        return v.upper()

    parallel: bool = Field(
        default=False,
        description="Classify independent batch items on a thread pool; output order is kept",
    )

    @model_validator(mode="after")
    def validate_digits_file(self) -> "Settings":
        """The digits oracle needs a readable file."""
        if self.oracle == "digits_file":
            if self.digits_file is None:
                raise ConfigurationError("The digits_file oracle requires digits_file to be set")
            if not self.digits_file.is_file():
                raise ConfigurationError(f"Digits file {self.digits_file} does not exist")
        return self


class SimplexSpecInput(BaseModel):
    """JSON form of a simplex construction: ``{"m", "u", "schedule"}``."""

    m: int = Field(ge=1)
    u: list[list[str | int]]
    schedule: list[int] = Field(default_factory=list)

    def to_spec(self) -> SimplexSpec:
        rows = tuple(tuple(parse_rational(str(c)) for c in row) for row in self.u)
        return SimplexSpec(self.m, rows, tuple(self.schedule))


class ReportItem(BaseModel):
    input: dict[str, Any]
    verdict: str
    finding: bool = False
    witness: dict[str, Any] | None = None
    elapsed_ms: float = 0.0


class ReportSummary(BaseModel):
    total: int = 0
    findings: int = 0
    counts: dict[str, int] = Field(default_factory=dict)


class Report(BaseModel):
    """Outcome of one command; ``elapsed_ms`` is the only nondeterministic field."""

    command: list[str]
    config: dict[str, Any]
    items: list[ReportItem] = Field(default_factory=list)
    summary: ReportSummary = Field(default_factory=ReportSummary)

    @property
    def exit_code(self) -> int:
        return 3 if self.summary.findings else 0
