import math

from pydantic import BaseModel, ConfigDict, Field


class McEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    p_hat: float = Field(ge=0.0, le=1.0)
    std_err: float = Field(ge=0.0)
    samples: int = Field(ge=1)
    seed: int
    partitions: int = Field(ge=1)

    @property
    def log_p_hat(self) -> float:
        return math.log(self.p_hat) if self.p_hat > 0 else -math.inf
