"""Sharp large-deviation approximations for empirical correlation coefficients."""

__version__ = "0.1.0"
