"""Exact polynomial / rational-function arithmetic over root variables."""

from .backend import BACKEND_NAME, COMPILED, available_backends, kernel
from .poly import MultiPoly, poly_str
from .rational import RootContext, RootRational, form_str

__all__ = [
    "BACKEND_NAME",
    "COMPILED",
    "MultiPoly",
    "RootContext",
    "RootRational",
    "available_backends",
    "form_str",
    "kernel",
    "poly_str",
]
