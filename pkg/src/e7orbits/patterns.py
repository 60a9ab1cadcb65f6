"""The seven orbit types and the twelve representative patterns ``(r1, r2, r3; r)``."""
from __future__ import annotations

import enum
import re
from fractions import Fraction

#: values substituted for the symbols r, s, t in a pattern
DEFAULT_SYMBOLS = {"r": Fraction(2), "s": Fraction(3), "t": Fraction(5)}


class OrbitType(enum.Enum):
    E7 = ("E7", 133)
    E6 = ("E6", 78)
    F4 = ("F4", 52)
    SPIN11 = ("Spin(11)", 55)
    SPIN10 = ("Spin(10)", 45)
    SPIN9 = ("Spin(9)", 36)
    SPIN8 = ("Spin(8)", 28)

    def __init__(self, group, stabilizer_dim):
        self.group = group
        self.stabilizer_dim = stabilizer_dim

    @property
    def quotient(self) -> str:
        return f"E7/{self.group}"

    @classmethod
    def from_dimension(cls, dim: int) -> "OrbitType":
        for t in cls:
            if t.stabilizer_dim == dim:
                return t
        raise KeyError(f"no orbit type has a {dim}-dimensional stabilizer")

    @classmethod
    def parse(cls, text: str) -> "OrbitType":
        key = text.strip().upper().replace("E7/", "").replace("(", "").replace(")", "")
        for t in cls:
            if key in (t.name, t.group.upper().replace("(", "").replace(")", "")):
                return t
        raise ValueError(f"unknown orbit type {text!r}")

    def __str__(self):
        return self.name


# The twelve patterns, each with the type the classical table assigns it and the
# stabilizer dimension that type implies.
REPRESENTATIVES = (
    ("(0,0,0;0)", OrbitType.E7),
    ("(0,0,0;1)", OrbitType.E6),
    ("(0,0,1;1)", OrbitType.SPIN11),
    ("(0,0,1;r)", OrbitType.SPIN10),
    ("(0,1,1;1)", OrbitType.F4),
    ("(0,1,1;r)", OrbitType.SPIN9),
    ("(0,1,r;s)", OrbitType.SPIN8),
    ("(1,1,1;1)", OrbitType.E6),
    ("(1,1,1;r)", OrbitType.F4),
    ("(1,1,r;r)", OrbitType.SPIN11),
    ("(1,1,r;s)", OrbitType.SPIN9),
    ("(1,r,s;t)", OrbitType.SPIN8),
)

_TOKEN = re.compile(r"^\s*(-?)\s*([0-9./]+|[a-z])\s*$")


def parse_pattern(text: str, symbols: dict | None = None) -> tuple[Fraction, ...]:
    """Parse ``"(1,1,r;s)"`` (or ``"1 1 2 3"``) into four rationals.

    Letters are looked up in ``symbols`` (default r=2, s=3, t=5).
    """
    table = dict(DEFAULT_SYMBOLS)
    if symbols:
        table.update({k: Fraction(v) for k, v in symbols.items()})
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    parts = [p for p in re.split(r"[;,\s]+", body) if p]
    if len(parts) != 4:
        raise ValueError(f"pattern {text!r} needs four entries, got {len(parts)}")
    out = []
    for p in parts:
        m = _TOKEN.match(p)
        if not m:
            raise ValueError(f"bad pattern entry {p!r}")
        sign, tok = m.groups()
        if tok.isalpha():
            if tok not in table:
                raise ValueError(f"unknown symbol {tok!r} in pattern")
            v = table[tok]
        else:
            v = Fraction(tok)
        out.append(-v if sign else v)
    return tuple(out)


def format_pattern(values) -> str:
    v = [str(x) for x in values]
    return f"({v[0]}, {v[1]}, {v[2]}; {v[3]})"


def representatives(symbols: dict | None = None):
    """``(pattern text, values, classical type)`` for the twelve patterns."""
    return [(p, parse_pattern(p, symbols), t) for p, t in REPRESENTATIVES]
