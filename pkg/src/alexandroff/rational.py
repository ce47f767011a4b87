"""Exact rational scalars.

``gmpy2.mpq`` keeps values in lowest terms with a positive denominator and is
an order of magnitude faster than ``fractions.Fraction``, so it serves
directly as the scalar type.  This module only adds conversion, the wire
format and a bounded, seeded sampler.
"""

from __future__ import annotations

import random
import re
from fractions import Fraction

from gmpy2 import mpq

Rat = mpq

_ZERO = Rat(0)
_RAT_RE = re.compile(r"^-?\d+(/\d+)?$")

# values that sit on the caps used throughout the test models
_SPECIAL = tuple(Rat(k, 4) for k in range(0, 9)) + (Rat(1, 8), Rat(3, 8))


def rat(value: int | str | Fraction | Rat) -> Rat:
    if isinstance(value, Rat):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Rat(value)
    if isinstance(value, str):
        return parse_rat(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def parse_rat(text: str) -> Rat:
    """Parse ``"p/q"`` or ``"p"``; only the numerator may carry a sign."""
    s = text.strip()
    if not _RAT_RE.match(s):
        raise ValueError(f"malformed rational {text!r}")
    num, _, den = s.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Rat(int(num), int(den) if den else 1)


def format_rat(q: Rat) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def sample_rat(rng: random.Random, magnitude: int = 32) -> Rat:
    """A rational with |numerator|, denominator <= magnitude.

    A quarter of the draws come from a small fixed set of "cap-like" values
    (0, 1/8, 1/4, ..., 2) with a random sign so that boundary cases of the
    truncation tests get hit regularly.
    """
    r = rng.random()
    if r < 0.125:
        return _ZERO
    if r < 0.375:
        q = rng.choice(_SPECIAL)
        return q if rng.random() < 0.5 else -q
    return Rat(rng.randint(-magnitude, magnitude), rng.randint(1, magnitude))


def sample_positive_rat(rng: random.Random, magnitude: int = 32) -> Rat:
    """Strictly positive sample."""
    while True:
        q = abs(sample_rat(rng, magnitude))
        if q:
            return q
