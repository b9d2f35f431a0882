"""Complex number literals shared by the text formats.

Literals look like ``a+bi``, ``a-bi``, ``a``, ``bi`` or ``i``; ``j`` is
accepted in place of ``i`` on input. Output always uses 17 significant
digits, which round-trips every double exactly.
"""

import math
import re

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(
    rf"^(?:(?P<re>[+-]?{_NUM})(?P<im>[+-](?:{_NUM})?)[ij]"
    rf"|(?P<re_only>[+-]?{_NUM})"
    rf"|(?P<im_only>[+-]?(?:{_NUM})?)[ij])$"
)


def format_real(x: float) -> str:
    s = format(float(x), ".17g")
    return "0" if s == "-0" else s


def format_complex(c: complex) -> str:
    """Format as ``a+bi`` with both parts always present."""
    c = complex(c)
    im = c.imag
    sign = "-" if math.copysign(1.0, im) < 0 else "+"
    im_s = format_real(abs(im))
    return f"{format_real(c.real)}{sign}{im_s}i"


def parse_complex(text: str) -> complex:
    s = text.strip()
    m = _COMPLEX_RE.match(s)
    if m is None:
        raise ValueError(f"malformed complex literal: {text!r}")
    if m.group("re_only") is not None:
        return complex(float(m.group("re_only")), 0.0)
    if m.group("re") is not None:
        return complex(float(m.group("re")), _imag(m.group("im")))
    return complex(0.0, _imag(m.group("im_only")))


def _imag(s: str) -> float:
    if s in ("", "+"):
        return 1.0
    if s == "-":
        return -1.0
    return float(s)
