"""Normalization constants of the cross products, with a test-only knob.

``CONSTANTS`` is read on every cross-product evaluation. ``inject`` scales
one constant temporarily; it exists so the identity suite can show that it
detects a wrong normalization.
"""
from __future__ import annotations

import contextlib
import dataclasses
from fractions import Fraction


@dataclasses.dataclass
class CrossConstants:
    jordan_cross: Fraction = Fraction(1, 2)   # X x Y = c (2 X.Y - ...)
    phi: Fraction = Fraction(-1, 2)           # phi = c (X v W + Z v Y)
    A: Fraction = Fraction(-1, 4)             # A = c (2 Y x W - xi Z - zeta X)
    B: Fraction = Fraction(1, 4)              # B = c (2 X x Z - eta W - omega Y)
    nu: Fraction = Fraction(1, 8)             # nu = c ((X,W) + (Z,Y) + k (...))
    nu_pair: Fraction = Fraction(-3)          # k above


DEFAULTS = CrossConstants()
CONSTANTS = CrossConstants()
KNOBS = tuple(f.name for f in dataclasses.fields(CrossConstants))


@contextlib.contextmanager
def inject(knob: str, factor=Fraction(101, 100)):
    """Multiply constant ``knob`` by ``factor`` inside the block."""
    if knob not in KNOBS:
        raise ValueError(f"unknown knob {knob!r}; choose from {', '.join(KNOBS)}")
    old = getattr(CONSTANTS, knob)
    setattr(CONSTANTS, knob, old * Fraction(factor))
    try:
        yield
    finally:
        setattr(CONSTANTS, knob, old)
