"""Thue-Morse parity, twisted exponential sums and class-restricted ternary Goldbach counts."""

__version__ = "0.1.0"
