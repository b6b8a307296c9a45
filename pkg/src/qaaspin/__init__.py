"""Large-spin quantum adiabatic simulator for symmetric three-bit cost functions."""

__version__ = "0.1.0"
