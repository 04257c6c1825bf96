"""Minimal linear codes from partial spreads of F_q^{2k}."""

from minspread.field import FieldSpec, make_field

__all__ = ["FieldSpec", "make_field"]
__version__ = "0.1.0"
