"""Number and date rendering shared by labels and spoken descriptions."""

from __future__ import annotations

import math
import re
from datetime import date, timedelta
from decimal import Decimal

_EPOCH = date(1970, 1, 1)
_INT_TOKEN = re.compile(r"[+-]?\d+$")


def format_number(value: int | float, sig: int = 4) -> str:
    """Render a number with `sig` significant digits, trailing zeros trimmed.

    Integral values render without a decimal point; exponents are expanded
    (screen readers handle "123500" better than "1.235e+05").
    """
    if isinstance(value, bool):  # bool is an int subclass; never expected here
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    if math.isnan(value) or math.isinf(value):
        return str(value)
    if value == int(value) and abs(value) < 1e15:
        return str(int(value))
    text = f"{value:.{sig}g}"
    if "e" in text or "E" in text:
        text = format(Decimal(text), "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return text


def epoch_day_to_iso(day: int | float) -> str:
    """ISO date for an epoch-day offset; fractional days round to the nearest."""
    return (_EPOCH + timedelta(days=round(day))).isoformat()


def iso_to_epoch_day(text: str) -> int:
    """Epoch-day offset of an ISO-8601 date (time-of-day, if any, is dropped)."""
    return (date.fromisoformat(text[:10]) - _EPOCH).days


def parse_number_token(token: str) -> int | float | None:
    """Parse a token as a finite number, preserving int-ness; None if it is not one."""
    token = token.strip()
    if not token:
        return None
    if _INT_TOKEN.match(token):
        try:
            return int(token)
        except ValueError:
            return None
    try:
        value = float(token)
    except ValueError:
        return None
    # nan/inf parse as floats but would poison domains; treat as non-numeric
    if math.isnan(value) or math.isinf(value):
        return None
    return value


def parse_date_token(token: str) -> int | None:
    """Parse a token as an ISO-8601 date, returned as epoch days; None otherwise."""
    token = token.strip()
    if len(token) < 10:
        return None
    try:
        return iso_to_epoch_day(token)
    except ValueError:
        return None


def sanitize_id_part(text: str) -> str:
    """Make a value safe for use inside a slash-delimited node id."""
    return str(text).replace("/", "-")
