from fractions import Fraction
from numbers import Rational

from .errors import InvalidInputError


def to_fraction(value):
    """Convert ints, floats, Fractions, Decimals or strings to an exact Fraction.

    Floats are converted losslessly (binary expansion), strings such as
    ``"0.1"`` or ``"3/10"`` are parsed as exact decimal fractions.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"cannot parse {value!r} as a rational") from exc
    try:
        out = Fraction(value)
    except (TypeError, ValueError, OverflowError) as exc:
        raise InvalidInputError(f"cannot convert {value!r} to a rational") from exc
    return out


def format_fraction(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
