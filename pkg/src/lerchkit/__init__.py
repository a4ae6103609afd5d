"""Extended-precision Hurwitz-Lerch zeta evaluation and identity verification."""

__version__ = "0.1.0"
