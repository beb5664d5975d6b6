"""Classification verdicts for C*-surfaces given by divisor pairs.

Everything here reduces to arithmetic on the fractional parts {D_+}, {D_-}
and on the sum D_+ + D_-.  Three support conditions drive the decisions,
with m+ (resp. -m-) the least positive integer clearing the denominator of
D_+(p) (resp. D_-(p)):

    (alpha+)  supp{D_+} u supp{D_-} is empty or one point p, with either
              (D_+ + D_-)(p) = 0 or <= -max(1/m+^2, 1/m-^2);
    (alpha*)  same support shape, with (D_+ + D_-)(p) <= -1 or both
              fractional parts nonzero at p;
    (beta)    supp{D_+} = {p_+} and supp{D_-} = {p_-} for distinct points,
              with the sum <= -1 at both.

Under (alpha*) or (beta) the torus action on a non-toric surface is unique
up to conjugation and inversion, and it is conjugate to its own inverse
exactly when some affine map psi of the base line carries the fractional
data of D_- onto that of D_+ while preserving the sum divisor.  Under
(alpha+) or (beta) the surface carries at most two conjugacy classes of
fibrations by affine lines, exactly one when such a psi exists.  On toric
surfaces uniqueness always fails and the fibration count is governed by
the congruence e^2 = 1 (mod d).  Outside these criteria the verdict is
"unknown": the conditions are sufficient, not exhaustive, and nothing
here extrapolates beyond them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .dpd import (
    DpdPair,
    Point,
    QDivisor,
    canonicalize,
    extended_divisor,
    is_toric,
    point_data,
)
from .dualgraph import ExtendedDivisor, NotStandard, Zigzag
from .exactmath import BoxLabel, Rational, frac_part, hj_chain


class BadToricType(ValueError):
    """Parameters or pair outside the family A^2/Z_d."""


class BadParameters(ValueError):
    pass


class EmptyPolynomial(ValueError):
    pass


UNIQUE = "unique_up_to_conjugation_and_inversion"
NON_UNIQUE_TORIC = "non_unique_toric"
UNKNOWN = "unknown"

ONE = "one"
TWO = "two"


@dataclass(frozen=True)
class AffineMap:
    """t |-> a*t + b on the affine line, a != 0."""

    a: Rational
    b: Rational

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.a == 0:
            raise ValueError("affine automorphisms need a != 0")

    def __call__(self, t: Rational) -> Fraction:
        return self.a * Fraction(t) + self.b

    def inverse(self) -> "AffineMap":
        return AffineMap(1 / self.a, -self.b / self.a)

    def __str__(self) -> str:
        head = "t" if self.a == 1 else "-t" if self.a == -1 else f"{self.a}*t"
        if self.b == 0:
            return head
        return f"{head} {'+' if self.b > 0 else '-'} {abs(self.b)}"


IDENTITY = AffineMap(Fraction(1), Fraction(0))


def _fractional_support(pair: DpdPair) -> list[Point]:
    pts = set(pair.d_plus.fractional().support())
    pts |= set(pair.d_minus.fractional().support())
    return sorted(pts)


def cond_alpha_plus(pair: DpdPair) -> bool:
    pts = _fractional_support(pair)
    if not pts:
        return True
    if len(pts) > 1:
        return False
    (p,) = pts
    s = pair.sum_at(p)
    if s == 0:
        return True
    m_plus = pair.d_plus.coeff(p).denominator
    m_minus = pair.d_minus.coeff(p).denominator
    return s <= -max(Fraction(1, m_plus**2), Fraction(1, m_minus**2))


def cond_alpha_star(pair: DpdPair) -> bool:
    pts = _fractional_support(pair)
    if not pts:
        return True
    if len(pts) > 1:
        return False
    (p,) = pts
    if pair.sum_at(p) <= -1:
        return True
    return (
        frac_part(pair.d_plus.coeff(p)) != 0
        and frac_part(pair.d_minus.coeff(p)) != 0
    )


def cond_beta(pair: DpdPair) -> bool:
    fp = pair.d_plus.fractional().support()
    fm = pair.d_minus.fractional().support()
    if len(fp) != 1 or len(fm) != 1 or fp[0] == fm[0]:
        return False
    return pair.sum_at(fp[0]) <= -1 and pair.sum_at(fm[0]) <= -1


def _qualifies(pair: DpdPair, psi: AffineMap) -> bool:
    """Exact check of {D_+(psi(q))} = {D_-(q)} and sum(psi(q)) = sum(q).

    Both sides vanish away from finitely many points, so it is enough to
    probe the supports together with their psi-preimages.
    """
    inv = psi.inverse()
    total = pair.sum_divisor()
    probes = set(pair.d_minus.support()) | set(total.support())
    probes |= {inv(q) for q in pair.d_plus.support()}
    probes |= {inv(q) for q in total.support()}
    return all(
        frac_part(pair.d_plus.coeff(psi(q))) == frac_part(pair.d_minus.coeff(q))
        and total.coeff(psi(q)) == total.coeff(q)
        for q in probes
    )


def find_psi(pair: DpdPair) -> Optional[AffineMap]:
    """An affine map conjugating the torus action to its inverse, if any.

    The map must carry every fractional coefficient of D_- onto the one of
    D_+ at the image point and permute the level sets of the sum divisor.
    Matching points pin psi down: with two or more pinned points psi is
    determined by the images of the first two, and the compatible images
    form a finite set; with a single pinned point the slope is free and a
    representative with slope +-1 exists whenever any map works.  All
    arithmetic stays in Q, so the enumeration is exhaustive.
    """
    fp = pair.d_plus.fractional().support()
    fm = pair.d_minus.fractional().support()
    if bool(fp) != bool(fm):
        return None
    if _qualifies(pair, IDENTITY):
        return IDENTITY

    constraints: dict[Point, set[Point]] = {}
    if fp and fm:
        if frac_part(pair.d_plus.coeff(fp[0])) != frac_part(
            pair.d_minus.coeff(fm[0])
        ):
            return None
        constraints[fm[0]] = {fp[0]}
    total = pair.sum_divisor()
    by_coeff: dict[Rational, set[Point]] = {}
    for q, c in total.entries:
        by_coeff.setdefault(c, set()).add(q)
    for q, c in total.entries:
        allowed = set(by_coeff[c])
        constraints[q] = constraints[q] & allowed if q in constraints else allowed

    sources = sorted(constraints)
    assert sources, "a nontrivial pair pins at least one point"
    candidates: list[AffineMap] = []
    if len(sources) == 1:
        s0 = sources[0]
        for t0 in sorted(constraints[s0]):
            for a in (Fraction(1), Fraction(-1)):
                candidates.append(AffineMap(a, t0 - a * s0))
    else:
        s0, s1 = sources[0], sources[1]
        for t0 in sorted(constraints[s0]):
            for t1 in sorted(constraints[s1]):
                if t0 != t1:
                    a = (t1 - t0) / (s1 - s0)
                    candidates.append(AffineMap(a, t0 - a * s0))
    for psi in candidates:
        if _qualifies(pair, psi):
            return psi
    return None


def toric_type(pair: DpdPair) -> tuple[int, int]:
    """The (d, e) with V = A^2/Z_d acting by (x, y) |-> (zeta x, zeta^e y).

    Read off the local singularity data at the single point carrying all
    fractional and sum information; (1, 0) means the affine plane.
    """
    if not is_toric(pair):
        raise BadToricType("the pair does not present a toric surface")
    canon = canonicalize(pair)
    anchors = set(_fractional_support(canon))
    anchors |= set(canon.sum_divisor().support())
    assert len(anchors) == 1  # pairs equivalent to (0, 0) are rejected upstream
    pd = point_data(canon, anchors.pop())
    if pd.kind != "cross":
        raise BadToricType(
            "the pair presents A^1 x C*, which is not of the form A^2/Z_d"
        )
    assert math.gcd(pd.e, pd.delta) == 1
    return pd.delta, pd.e


def _toric_params(d: int, e: int) -> None:
    if d < 1 or not 0 <= e < d or math.gcd(e, d) != 1:
        raise BadToricType(f"need 0 <= e < d with gcd(e, d) = 1, got ({d}, {e})")


def toric_zigzag(d: int, e: int) -> Zigzag:
    """Standard boundary of A^2/Z_d: [[0,0]] plus the box of (d-e)/d."""
    _toric_params(d, e)
    if d == 1:
        return Zigzag((0, 0))
    return Zigzag((0, 0) + hj_chain(BoxLabel(d - e, d)))


def toric_classes(d: int, e: int) -> int:
    """Number of conjugacy classes of fibrations by affine lines: 1 or 2."""
    _toric_params(d, e)
    return 1 if (e * e - 1) % d == 0 else 2


def toric_iso(d: int, e: int, d2: int, e2: int) -> bool:
    _toric_params(d, e)
    _toric_params(d2, e2)
    return d == d2 and (e == e2 or (e * e2 - 1) % d == 0)


def cstar_uniqueness(pair: DpdPair) -> tuple[str, Optional[AffineMap]]:
    """Uniqueness verdict for the torus action, with the inversion map.

    Toric surfaces carry pairwise non-conjugate actions, so they answer
    first; under (alpha*) or (beta) the action is unique up to conjugation
    and inversion, and the returned map (when present) conjugates it to
    its inverse.  Every other pair is honestly "unknown".
    """
    if is_toric(pair):
        return NON_UNIQUE_TORIC, None
    if cond_alpha_star(pair) or cond_beta(pair):
        return UNIQUE, find_psi(pair)
    return UNKNOWN, None


def fibration_classes(pair: DpdPair) -> tuple[str, Optional[AffineMap]]:
    """Count conjugacy classes of fibrations V -> A^1, when decidable."""
    if is_toric(pair):
        d, e = toric_type(pair)
        if toric_classes(d, e) == 1:
            return ONE, find_psi(pair)
        return TWO, None
    if cond_alpha_plus(pair) or cond_beta(pair):
        psi = find_psi(pair)
        return (ONE, psi) if psi is not None else (TWO, None)
    return UNKNOWN, None


@dataclass(frozen=True)
class ClassificationReport:
    alpha_plus: bool
    alpha_star: bool
    beta: bool
    cstar_verdict: str
    inverse_conjugate: Optional[AffineMap]
    fibration_classes: str

    def __post_init__(self) -> None:
        if self.fibration_classes == ONE and self.cstar_verdict != NON_UNIQUE_TORIC:
            assert self.inverse_conjugate is not None


def classify_pair(pair: DpdPair) -> ClassificationReport:
    verdict, _ = cstar_uniqueness(pair)
    count, _ = fibration_classes(pair)
    return ClassificationReport(
        alpha_plus=cond_alpha_plus(pair),
        alpha_star=cond_alpha_star(pair),
        beta=cond_beta(pair),
        cstar_verdict=verdict,
        inverse_conjugate=find_psi(pair),
        fibration_classes=count,
    )


def danilov_gizatullin(k: int, r: int) -> tuple[DpdPair, ExtendedDivisor]:
    """The pair (-1/r [0], -1/(k+1-r) [1]) and its extended divisor.

    These present the complement of an ample section with self-intersection
    k + 1 in a Hirzebruch surface; the boundary zigzag [[0,0,(-2)_k]] and
    the surface itself depend only on k, while r places the feathers.
    """
    if not 1 <= r <= k:
        raise BadParameters(f"need 1 <= r <= k, got (k, r) = ({k}, {r})")
    pair = DpdPair(
        QDivisor.of([(Fraction(0), Fraction(-1, r))]),
        QDivisor.of([(Fraction(1), Fraction(-1, k + 1 - r))]),
    )
    return pair, extended_divisor(pair)


def smooth_exceptional_zigzag(z: Zigzag) -> bool:
    """Whether z is [[0,0,(-2)_{s-2}, w_s, (-2)_{n-s}]] with n >= 4.

    This is the only boundary shape of a smooth non-toric surface whose
    torus action may fail to be unique up to conjugation and inversion.
    """
    if not z.is_standard():
        raise NotStandard(str(z))
    heavy = [w for w in z.weights[2:] if w != -2]
    return z.n >= 4 and len(heavy) <= 1


def surface_xy_p(roots: Iterable[tuple[Point, int]]) -> DpdPair:
    """The pair (0, -div P) of the surface xy = P(t) with the given roots."""
    entries = [(Fraction(p), int(m)) for p, m in roots]
    if not entries:
        raise EmptyPolynomial("P must have at least one root")
    if any(m < 1 for _, m in entries):
        raise ValueError("root multiplicities must be positive")
    return DpdPair(
        QDivisor(), QDivisor.of((p, Fraction(-m)) for p, m in entries)
    )
