from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from sldcorr.schemas.laplace_schema import DerivativeJet
from sldcorr.schemas.mc_schema import McEstimate
from sldcorr.schemas.oracle_schema import QuadratureResult


class Method(str, Enum):
    SLD = "sld"
    QUADRATURE = "quadrature"
    MONTE_CARLO = "mc"


class SaddlePoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    c: float
    lambda_c: float
    r0: float = Field(gt=-1.0, lt=1.0)
    sigma_sq: float = Field(gt=0.0)
    rate: float = Field(ge=0.0)


class TailEstimate(BaseModel):
    """
    log P(r_n >= c) with the method that produced it. For SLD estimates the
    leading exponent -n L*(c) and the log prefactor are kept separately.
    """
    model_config = ConfigDict(frozen=True)

    log_prob: float
    method: Method
    leading_exponent: Optional[float] = None
    log_prefactor: Optional[float] = None
    error: Optional[float] = None

    @classmethod
    def from_quadrature(cls, result: QuadratureResult) -> "TailEstimate":
        return cls(log_prob=result.log_value, method=Method.QUADRATURE, error=result.abs_error_estimate)

    @classmethod
    def from_monte_carlo(cls, estimate: McEstimate) -> "TailEstimate":
        # error is the standard error of p_hat, not of its log
        return cls(log_prob=estimate.log_p_hat, method=Method.MONTE_CARLO, error=estimate.std_err)


class GaussianSaddleContext(BaseModel):
    model_config = ConfigDict(frozen=True)

    rho: float
    hbar_jet: DerivativeJet
    gbar_value: float = Field(gt=0.0)


class NcgfExpansion(BaseModel):
    """
    L_n(lambda) = limit + correction / n + O(1/n^2). log_c0 is R_0(lambda), the
    log of the leading Laplace coefficient.
    """
    model_config = ConfigDict(frozen=True)

    lam: float
    limit: float
    correction: float
    log_c0: float

    def at(self, n: int) -> float:
        return self.limit + self.correction / n
