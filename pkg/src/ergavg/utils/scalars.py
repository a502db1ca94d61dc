"""
Scalar parsing
==============

Weights and observable entries arrive as numbers or strings: decimals
(``"0.25"``), rationals (``"1/4"``) or, in float mode, complex literals
(``"1+2j"``).

.. autosummary::

    ~parse_scalar
    ~format_scalar
"""

from fractions import Fraction


def parse_scalar(value, *, exact=False):
    """Parse one weight or observable entry."""
    if isinstance(value, bool):
        raise ValueError(f"not a number: {value!r}")
    if exact:
        if isinstance(value, complex):
            raise ValueError(f"complex value {value!r} in exact mode")
        if isinstance(value, float):
            return Fraction(repr(value))
        return Fraction(value)
    if isinstance(value, (int, float, complex, Fraction)):
        return value if isinstance(value, complex) else float(value)
    text = str(value).strip()
    if "/" in text:
        return float(Fraction(text))
    if "j" in text:
        return complex(text)
    return float(text)


def format_scalar(value):
    """Inverse of :func:`parse_scalar` for file emission."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, complex):
        return str(value)
    return repr(float(value))
