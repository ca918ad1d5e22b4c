"""boostpet -- design-space exploration for boost-AC MMC power electronic transformers."""

__version__ = "0.3.0"
