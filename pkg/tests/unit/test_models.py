import os
from fractions import Fraction
from pathlib import Path
from unittest.mock import patch

import pytest
from pydantic import ValidationError as PydanticValidationError

from dimgroups.exceptions import ConfigurationError, DependentBasis, ValidationError
from dimgroups.models import Report, ReportItem, ReportSummary, Settings, SimplexSpecInput


class TestSettings:
    """Test the Settings model."""

    def test_default_values(self) -> None:
        """Test that default values are properly set"""
        settings = Settings()
        assert settings.oracle == "pi_minus_3"
        assert settings.digits_file is None
        assert settings.max_precision_bits == 16384
        assert settings.output == "text"
        assert settings.seed == 0
        assert settings.log_level == "WARNING"
        assert settings.parallel is False

    def test_environment_variables(self) -> None:
        """Test that DIMGROUPS_* variables are read"""
        env = {"DIMGROUPS_SEED": "42", "DIMGROUPS_OUTPUT": "json", "DIMGROUPS_PARALLEL": "true"}
        with patch.dict(os.environ, env, clear=True):
            settings = Settings()
        assert settings.seed == 42
        assert settings.output == "json"
        assert settings.parallel is True

    def test_output_case_insensitive(self) -> None:
        """Test that the output format accepts any case"""
        assert Settings(output="JSON").output == "json"

    def test_invalid_output(self) -> None:
        """Test that unknown formats are rejected"""
        with pytest.raises(PydanticValidationError):
            Settings(output="yaml")

    def test_log_level_validation(self) -> None:
        """Test log level validation."""
        for level in ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]:
            assert Settings(log_level=level).log_level == level
        assert Settings(log_level="info").log_level == "INFO"
        with pytest.raises(ValidationError, match="Invalid log level"):
            Settings(log_level="VERBOSE")

    def test_precision_cap_validation(self) -> None:
        """Test that the precision cap allows the first refinement"""
        assert Settings(max_precision_bits=64).max_precision_bits == 64
        with pytest.raises(ValidationError, match="at least 64"):
            Settings(max_precision_bits=32)

    def test_digits_oracle_requires_file(self) -> None:
        """Test that the digits oracle needs digits_file"""
        with pytest.raises(ConfigurationError, match="requires digits_file"):
            Settings(oracle="digits_file")

    def test_digits_oracle_missing_file(self, tmp_path: Path) -> None:
        """Test that the digits file must exist"""
        with pytest.raises(ConfigurationError, match="does not exist"):
            Settings(oracle="digits_file", digits_file=tmp_path / "missing.txt")

    def test_digits_oracle_with_file(self, tmp_path: Path) -> None:
        """Test a complete digits oracle configuration"""
        path = tmp_path / "digits.txt"
        path.write_text("0.14159265358979323846")
        settings = Settings(oracle="digits_file", digits_file=path)
        assert settings.digits_file == path


class TestSimplexSpecInput:
    """Test the JSON form of simplex specs."""

    def test_to_spec(self) -> None:
        """Rational strings and integers both parse"""
        spec = SimplexSpecInput(m=2, u=[[1, 1], ["1/2", 0]]).to_spec()
        assert spec.u[1] == (Fraction(1, 2), Fraction(0))
        assert spec.schedule == (1,)

    def test_dependent_rows(self) -> None:
        """Validation of the spec itself still applies"""
        with pytest.raises(DependentBasis):
            SimplexSpecInput(m=2, u=[[1, 1], [3, 3]]).to_spec()

    def test_m_positive(self) -> None:
        """m must be at least 1"""
        with pytest.raises(PydanticValidationError):
            SimplexSpecInput(m=0, u=[[1]])


class TestReport:
    """Test the report model."""

    def test_exit_code(self) -> None:
        """Findings turn the exit code to 3"""
        clean = Report(command=["ex3", "batch"], config={})
        assert clean.exit_code == 0
        finding = Report(
            command=["ex3", "classify"],
            config={},
            items=[ReportItem(input={}, verdict="VIOLATION", finding=True)],
            summary=ReportSummary(total=1, findings=1, counts={"VIOLATION": 1}),
        )
        assert finding.exit_code == 3

    def test_json_field_order(self) -> None:
        """Serialized reports keep the declared field order"""
        report = Report(command=["scalar", "sign", "t"], config={"seed": 0})
        dumped = report.model_dump_json()
        assert dumped.index('"command"') < dumped.index('"config"') < dumped.index('"summary"')

    def test_schema(self) -> None:
        """The JSON schema names every top-level field"""
        schema = Report.model_json_schema()
        assert set(schema["properties"]) == {"command", "config", "items", "summary"}
