"""Text, JSON and command-line front ends."""

from .text import ParseError, format_poly, format_ratfunc, parse_poly

__all__ = ["ParseError", "format_poly", "format_ratfunc", "parse_poly"]
