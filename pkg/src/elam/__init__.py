"""elam: dependent singleton types with non-deterministic choice, checked by lowering."""

__version__ = "0.1.0"
