"""Exact intersection-theory computations for the divisor of pointed curves
whose net ``g^2_d`` maps the marked point to a double point."""

from .errors import InputError, RewriteError, VerificationError
from .pipeline import DivisorClass, full_class, run_pipeline

__all__ = [
    "DivisorClass",
    "InputError",
    "RewriteError",
    "VerificationError",
    "full_class",
    "run_pipeline",
]
