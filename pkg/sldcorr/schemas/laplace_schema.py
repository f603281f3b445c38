from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field


class DerivativeJet(BaseModel):
    """
    Derivatives d[0..M] of a smooth real function at `point`; d[j] is the j-th derivative.
    """
    model_config = ConfigDict(frozen=True)

    point: float
    derivs: Tuple[float, ...] = Field(min_length=1)

    @property
    def order(self) -> int:
        return len(self.derivs) - 1

    def __getitem__(self, j: int) -> float:
        return self.derivs[j]


class LaplaceCoefficients(BaseModel):
    """Coefficients c[0..N] of the Laplace expansion at an interior maximum."""
    model_config = ConfigDict(frozen=True)

    c: Tuple[float, ...]
