from pydantic import BaseModel, ConfigDict, Field


class TestReport(BaseModel):
    """Outcome of the correlation test H0: rho = 0 for an observed coefficient."""
    model_config = ConfigDict(frozen=True)
    __test__ = False

    statistic: float
    n: int
    log_p_value: float = Field(le=0.0)
    log_p_value_exact: float = Field(le=0.0)
    slope_at_statistic: float = Field(ge=0.0)
