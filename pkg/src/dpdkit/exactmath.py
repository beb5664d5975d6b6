"""Exact rationals and Hirzebruch-Jung continued fractions.

Everything downstream is exact: rationals are arbitrary precision, never
floats. A *box label* e/m encodes the cyclic-quotient data attached to a
fractional divisor coefficient; its expansion

    m/e = k_1 - 1/(k_2 - 1/(... - 1/k_n)),   all k_i >= 2,

is the minus-sign (Hirzebruch-Jung) continued fraction, and the associated
chain of curve weights is [-k_1, ..., -k_n]. The label (0, 1) stands for the
empty box and expands to the empty chain.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction
Chain = tuple[int, ...]

_RATIONAL_RE = re.compile(r"-?\d+(/[1-9]\d*)?\Z")


class ChainNotAdmissible(ValueError):
    """A chain weight is >= -1 where only weights <= -2 are allowed."""


def parse_rational(text: str) -> Rational:
    """Parse "p/q" or "p" (ASCII, no whitespace) into a reduced rational."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text)


def format_rational(x: Rational) -> str:
    """Inverse of parse_rational; Fraction's repr is already "p/q" or "p"."""
    return str(x)


def floor_part(x: Rational) -> int:
    """Floor with the convention floor(-1/3) = -1."""
    return math.floor(x)


def frac_part(x: Rational) -> Rational:
    """Fractional part {x} = x - floor(x), always in [0, 1)."""
    return x - math.floor(x)


@dataclass(frozen=True)
class BoxLabel:
    """Reduced label e/m with 0 <= e < m; (0, 1) is the canonical empty box."""

    e: int
    m: int

    def __post_init__(self) -> None:
        if not 0 <= self.e < self.m:
            raise ValueError(f"bad box label ({self.e}, {self.m})")
        if self.e == 0:
            if self.m != 1:
                raise ValueError("empty box must be the canonical (0, 1)")
        elif math.gcd(self.e, self.m) != 1:
            raise ValueError(f"box label ({self.e}, {self.m}) is not reduced")

    @classmethod
    def from_fraction(cls, value: Rational) -> "BoxLabel":
        """Label of a fractional value in [0, 1); 0 gives the empty box."""
        if not 0 <= value < 1:
            raise ValueError(f"box labels come from [0, 1), got {value}")
        return cls(value.numerator, value.denominator)

    @property
    def value(self) -> Rational:
        return Fraction(self.e, self.m)

    @property
    def is_empty(self) -> bool:
        return self.e == 0


def hj_chain(label: BoxLabel) -> Chain:
    """Expand m/e into the weight chain [-k_1, ..., -k_n].

    Each step peels off k = ceil(m/e) and continues with the label of the
    remainder: m/e = k - 1/(e/(ke - m)) read upside down. All produced
    weights are <= -2 because 0 < e < m throughout.
    """
    e, m = label.e, label.m
    weights: list[int] = []
    while e > 0:
        k = -(-m // e)
        weights.append(-k)
        e, m = k * e - m, e
    return tuple(weights)


def chain_to_label(chain: Chain) -> BoxLabel:
    """Inverse of hj_chain; rejects any weight >= -1."""
    for w in chain:
        if w >= -1:
            raise ChainNotAdmissible(f"weight {w} in a box chain")
    value = Fraction(0)
    for w in reversed(chain):
        # value currently holds the tail m'/e'; fold one level of k - 1/tail
        value = -w - (Fraction(1) / value if value else Fraction(0))
    if value == 0:
        return BoxLabel(0, 1)
    return BoxLabel(value.denominator, value.numerator)


def dual_label(label: BoxLabel) -> BoxLabel:
    """The starred box (e/m)* = e'/m with e e' = 1 (mod m); fixes (0, 1).

    Duality reverses the expansion: hj_chain(dual(x)) == reversed(hj_chain(x)).
    """
    if label.is_empty:
        return label
    return BoxLabel(pow(label.e, -1, label.m) % label.m, label.m)


def eval_chain(chain: Chain) -> Rational:
    """Value of the minus-sign continued fraction [k_1, ..., k_n] of the
    negated weights. Used as the independent oracle for round-trip checks:
    eval_chain(hj_chain(e/m)) == m/e."""
    value = Fraction(0)
    for w in reversed(chain):
        value = -w - (Fraction(1) / value if value else Fraction(0))
    return value
