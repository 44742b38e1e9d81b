"""Parsing of unit-suffixed quantities given on the command line."""

import re

_NUMBER = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_QUANTITY = re.compile(rf"^\s*({_NUMBER})\s*([A-Za-zµΩ]*)\s*$")

_PREFIX = {
    "": 1.0,
    "p": 1e-12,
    "n": 1e-9,
    "u": 1e-6,
    "µ": 1e-6,
    "m": 1e-3,
    "k": 1e3,
    "M": 1e6,
    "G": 1e9,
}


def parse_quantity(text: str, unit: str) -> float:
    """Parse ``text`` such as ``"50MHz"``, ``"532nm"`` or ``"2e6"`` into SI.

    A bare number is taken to already be in SI units of ``unit``.
    """
    match = _QUANTITY.match(text)
    if not match:
        raise ValueError(f"cannot parse quantity {text!r}")
    value, suffix = float(match.group(1)), match.group(2)
    if suffix == "":
        return value
    if not suffix.endswith(unit):
        raise ValueError(f"expected a quantity in {unit}, got {text!r}")
    prefix = suffix[: -len(unit)]
    if prefix not in _PREFIX:
        raise ValueError(f"unknown SI prefix {prefix!r} in {text!r}")
    return value * _PREFIX[prefix]


def parse_frequency(text: str) -> float:
    return parse_quantity(text, "Hz")


def parse_length(text: str) -> float:
    return parse_quantity(text, "m")


def parse_drive(text: str) -> tuple[float, float]:
    """Split ``"300V@50MHz"`` into (volts, hertz)."""
    try:
        volts, freq = text.split("@")
    except ValueError:
        raise ValueError(f"drive must look like '300V@50MHz', got {text!r}") from None
    return parse_quantity(volts, "V"), parse_frequency(freq)
