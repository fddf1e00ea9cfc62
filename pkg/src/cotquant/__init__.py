"""Geometric quantization of integrable systems through cotangent models."""

__version__ = "0.1.0"
