from pydantic import BaseModel, ConfigDict, Field, model_validator


class BellIndex(BaseModel):
    """Index (n, k) of a partial exponential Bell polynomial B_{n,k}."""
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=0)
    k: int = Field(ge=0)

    @model_validator(mode="after")
    def _check_order(self):
        if self.k > self.n:
            raise ValueError(f"Bell index requires k <= n, got n={self.n}, k={self.k}")
        return self


class Hyp2F1Params(BaseModel):
    """Real parameters of 2F1(a, b; c; z) inside the unit disc."""
    model_config = ConfigDict(frozen=True)

    a: float
    b: float
    c: float
    z: float

    @model_validator(mode="after")
    def _check_domain(self):
        if self.c <= 0 and float(self.c).is_integer():
            raise ValueError(f"c must not be a non-positive integer, got {self.c}")
        if not -1.0 < self.z < 1.0:
            raise ValueError(f"the Gauss series needs |z| < 1, got z={self.z}")
        return self
