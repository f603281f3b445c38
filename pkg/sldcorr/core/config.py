from pydantic_settings import BaseSettings, SettingsConfigDict

class Settings(BaseSettings):
    """
    Manages numerical defaults and verbosity, loaded from SLD_CORREL_* variables or a .env file.
    """
    LOG: str = "WARNING"

    # Adaptive log-space quadrature
    QUAD_RTOL: float = 1e-12
    QUAD_MAX_PANELS: int = 4000
    QUAD_LOW_ORDER: int = 15
    QUAD_HIGH_ORDER: int = 31
    QUAD_INITIAL_PANELS: int = 8

    # Gauss series for 2F1
    HYP2F1_RTOL: float = 1e-16
    HYP2F1_MAX_TERMS: int = 1_000_000

    # Monte Carlo
    MC_PARTITIONS: int = 8
    MC_CHUNK: int = 16384
    MC_SEED: int = 7

    GRID_POINTS: int = 2001
    NORMALIZATION_TOL: float = 1e-3

    model_config = SettingsConfigDict(env_prefix="SLD_CORREL_", env_file=".env", extra="allow")

# Create a single, globally accessible instance of the settings.
settings = Settings()
