from fractions import Fraction
from typing import Any

from utils.errors import InputFormatError
from utils.validators import validate_rational_literal


def parse_rational(text: str) -> Fraction:
    if not validate_rational_literal(text):
        raise InputFormatError(f"Rationnel invalide: {text!r}")
    return Fraction(text.strip())


def format_rational(value) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_token(value: Any) -> str:
    """Rendu déterministe d'une valeur dans une ligne de rapport."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (frozenset, set)):
        items = sorted(value, key=_sort_key)
        return "{" + ",".join(format_token(v) for v in items) + "}"
    if isinstance(value, (tuple, list)):
        return "(" + ",".join(format_token(v) for v in value) + ")"
    if value is None:
        return "none"
    # un jeton ne contient jamais d'espace
    return str(value).replace(", ", ",").replace(" ", "_")


def _sort_key(value: Any):
    key = getattr(value, "sort_key", None)
    if callable(key):
        return (1, key())
    return (0, value) if isinstance(value, (int, Fraction)) else (2, str(value))
