from pydantic import BaseModel, ConfigDict, Field


class QuadratureResult(BaseModel):
    """
    A 1-D integral computed in log space.

    abs_error_estimate bounds the absolute error of log_value, which is the
    relative error of the integral itself.
    """
    model_config = ConfigDict(frozen=True)

    log_value: float
    abs_error_estimate: float = Field(ge=0.0)
    subdivisions: int = Field(ge=1)
