"""Exact cluster algebra computations: seeds, compatible Poisson structures and quantizations."""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("artifact")
except PackageNotFoundError:
    __version__ = "0+unknown"
