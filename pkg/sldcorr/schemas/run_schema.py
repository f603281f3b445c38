from enum import Enum
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from sldcorr.core.config import settings
from sldcorr.schemas.common import Scenario, ScenarioKind


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class RunConfig(BaseModel):
    """
    Validated arguments of one CLI command. Cross-field checks belonging to a
    single operation (c <= rho, |rho| > rho_0, ...) are left to the services.
    """
    model_config = ConfigDict(frozen=True)

    command: str
    scenario: ScenarioKind = ScenarioKind.SPHERICAL_CENTERED
    n: Optional[int] = Field(default=None, ge=5)
    n_list: Optional[List[int]] = None
    c: Optional[float] = Field(default=None, ge=-1.0, le=1.0)
    rho: float = Field(default=0.0, gt=-1.0, lt=1.0)
    lam: Optional[float] = None
    order: int = Field(default=1, ge=0)
    samples: int = Field(default=0, ge=0)
    seed: int = settings.MC_SEED
    threads: int = Field(default=settings.MC_PARTITIONS, ge=1)
    format: OutputFormat = OutputFormat.CSV
    out: Optional[Path] = None

    @field_validator("n_list")
    @classmethod
    def _check_sizes(cls, value):
        if value is not None:
            if not value:
                raise ValueError("n-list must not be empty")
            small = [n for n in value if n < 5]
            if small:
                raise ValueError(f"every sample size must be at least 5, got {small}")
        return value

    @property
    def scenario_model(self) -> Scenario:
        return Scenario(kind=self.scenario, rho=self.rho)

    @property
    def sizes(self) -> List[int]:
        """--n-list if given, else the single --n."""
        if self.n_list:
            return list(self.n_list)
        if self.n is not None:
            return [self.n]
        return []
