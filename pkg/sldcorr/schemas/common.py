from enum import Enum

from pydantic import BaseModel, ConfigDict, model_validator


class ScenarioKind(str, Enum):
    SPHERICAL_CENTERED = "spherical-centered"
    SPHERICAL_KNOWN_MEAN = "spherical-known"
    GAUSSIAN_CENTERED = "gaussian"
    GAUSSIAN_KNOWN_MEAN_RHO_ZERO = "gaussian-known-rho0"


class Scenario(BaseModel):
    """
    Which coefficient (centered r_n or known-mean r~_n) under which sampling
    model. Only the Gaussian centered model carries a non-zero correlation.
    """
    model_config = ConfigDict(frozen=True)

    kind: ScenarioKind
    rho: float = 0.0

    @model_validator(mode="after")
    def _check_rho(self):
        if not -1.0 < self.rho < 1.0:
            raise ValueError(f"rho must lie in (-1, 1), got {self.rho}")
        if self.kind is not ScenarioKind.GAUSSIAN_CENTERED and self.rho != 0.0:
            raise ValueError(f"scenario '{self.kind.value}' has rho = 0, got {self.rho}")
        return self

    @property
    def known_mean(self) -> bool:
        return self.kind in (ScenarioKind.SPHERICAL_KNOWN_MEAN, ScenarioKind.GAUSSIAN_KNOWN_MEAN_RHO_ZERO)

    @property
    def label(self) -> str:
        if self.kind is ScenarioKind.GAUSSIAN_CENTERED:
            return f"{self.kind.value}(rho={self.rho:g})"
        return self.kind.value


SPHERICAL_CENTERED = Scenario(kind=ScenarioKind.SPHERICAL_CENTERED)
SPHERICAL_KNOWN_MEAN = Scenario(kind=ScenarioKind.SPHERICAL_KNOWN_MEAN)
GAUSSIAN_KNOWN_MEAN_RHO_ZERO = Scenario(kind=ScenarioKind.GAUSSIAN_KNOWN_MEAN_RHO_ZERO)


def gaussian_centered(rho: float) -> Scenario:
    return Scenario(kind=ScenarioKind.GAUSSIAN_CENTERED, rho=rho)
