import typing as t
from pathlib import Path

from pydantic import Field, field_validator

from .config_base import PhField, PlaceholderModel, PlaceholderSettings

PathName = t.Literal["elimination", "cellular", "both"]


class FieldSection(PlaceholderModel):
    """Configuration options in the field section."""

    max_order: int = Field(default=1024, ge=2)


class GroebnerSection(PlaceholderModel):
    """Budgets of the Buchberger engine."""

    max_pairs: int = Field(default=2_000_000, ge=1)
    max_degree: int = Field(default=64, ge=1)
    max_saturation_rounds: int = Field(default=32, ge=1)


class EnumerationSection(PlaceholderModel):
    """Budgets of point and cell enumeration."""

    max_points: int = Field(default=10**7, ge=1)
    max_cellular_vars: int = Field(default=16, ge=1)


class CodesSection(PlaceholderModel):
    """Budgets of the minimum distance search."""

    max_codewords: int = Field(default=10**8, ge=1)
    chunk_rows: int = Field(default=4096, ge=1)


class VerificationSection(PlaceholderModel):
    """Cross checks performed on every job."""

    sample_size: int = Field(default=100, ge=0)
    seed: int = 0
    check_saturation: bool = True


class SuiteSection(PlaceholderModel):
    """Location of the golden jobs run by `verify`."""

    dir: Path | str = PhField("{package_dir}/goldens")


class ToricConfig(PlaceholderSettings):
    """The root section."""

    # sections
    field: FieldSection = Field(default_factory=FieldSection)
    groebner: GroebnerSection = Field(default_factory=GroebnerSection)
    enumeration: EnumerationSection = Field(default_factory=EnumerationSection)
    codes: CodesSection = Field(default_factory=CodesSection)
    verification: VerificationSection = Field(default_factory=VerificationSection)
    suite: SuiteSection = Field(default_factory=SuiteSection)

    # top-level options
    verbosity: str = "WARNING"
    path: PathName = "cellular"
    report_timing: bool = False
    hash_algo: str = "sha256"
    hash_len: int = 16

    @field_validator("verbosity")
    @classmethod
    def upper_case_level(cls, value: str) -> str:
        return value.upper()
