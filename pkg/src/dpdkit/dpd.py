"""DPD presentations: pairs of Q-divisors on the affine line.

A presentation is a pair (D_+, D_-) with D_+ + D_- <= 0 everywhere and not
equivalent to (0, 0); equivalence shifts by an integral divisor, (D_+ + E,
D_- - E). The surface is Gizatullin exactly when each fractional part {D_+-}
is supported in at most one point, and from there the boundary zigzag and the
extended divisor are assembled out of Hirzebruch-Jung data read off pointwise.

Point conventions. At a point p write D_+(p) = -e+/m+ with m+ >= 1 and
D_-(p) = e-/m- with m- <= -1, both reduced; a vanishing coefficient gets
(e, m) = (0, 1) on the plus side and (0, -1) on the minus side. A point is a
*cross* point when the sum is negative there; then

    delta = e- m+ - e+ m- = m+ m- (D_+ + D_-)(p) > 0

and the residue e in [0, delta) comes from an extended-Euclid witness
(a, b) with a m+ - b e+ = 1 via e = a m- - b e- (mod delta). The residue is
witness independent and is the local singularity type (delta, e).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .exactmath import (
    BoxLabel,
    Rational,
    dual_label,
    floor_part,
    frac_part,
    hj_chain,
)
from .dualgraph import (
    ExtendedDivisor,
    Feather,
    FiberGraph,
    Zigzag,
    chain_tree,
    contracts_to_zero_fiber,
)

Point = Fraction


class InvalidPair(ValueError):
    """Not a DPD presentation (positive sum somewhere, or trivial pair)."""


class NotGizatullin(ValueError):
    """A fractional part is supported in two or more points."""


class ToricInput(ValueError):
    """The pair presents a toric surface; zigzag machinery does not apply."""


@dataclass(frozen=True)
class QDivisor:
    """Q-divisor on A^1 as a sorted tuple of (point, nonzero coefficient)."""

    entries: tuple[tuple[Point, Rational], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))
        points = [p for p, _ in self.entries]
        if len(set(points)) != len(points):
            raise ValueError("duplicate points in divisor")
        if any(c == 0 for _, c in self.entries):
            raise ValueError("zero coefficients must not be stored")
        if list(points) != sorted(points):
            raise ValueError("entries must be sorted by point")

    @classmethod
    def of(cls, items: Iterable[tuple[Point, Rational]] = ()) -> "QDivisor":
        """Build from unsorted items; zero coefficients are dropped."""
        acc: dict[Point, Rational] = {}
        for p, c in items:
            p, c = Fraction(p), Fraction(c)
            if p in acc:
                raise ValueError(f"duplicate point {p}")
            acc[p] = c
        return cls(tuple(sorted((p, c) for p, c in acc.items() if c != 0)))

    def coeff(self, p: Point) -> Rational:
        for q, c in self.entries:
            if q == p:
                return c
        return Fraction(0)

    def support(self) -> tuple[Point, ...]:
        return tuple(p for p, _ in self.entries)

    def fractional(self) -> "QDivisor":
        return QDivisor.of((p, frac_part(c)) for p, c in self.entries)

    def floor(self) -> "QDivisor":
        return QDivisor.of((p, Fraction(floor_part(c))) for p, c in self.entries)

    def degree(self) -> Rational:
        return sum((c for _, c in self.entries), Fraction(0))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for _, c in self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def __add__(self, other: "QDivisor") -> "QDivisor":
        acc: dict[Point, Rational] = dict(self.entries)
        for p, c in other.entries:
            acc[p] = acc.get(p, Fraction(0)) + c
        return QDivisor.of(acc.items())

    def __neg__(self) -> "QDivisor":
        return QDivisor(tuple((p, -c) for p, c in self.entries))

    def __sub__(self, other: "QDivisor") -> "QDivisor":
        return self + (-other)


@dataclass(frozen=True)
class DpdPair:
    d_plus: QDivisor
    d_minus: QDivisor

    def __post_init__(self) -> None:
        total = self.d_plus + self.d_minus
        for p, c in total.entries:
            if c > 0:
                raise InvalidPair(f"D_+ + D_- is positive at {p}")
        if self.d_plus.is_integral() and total.is_zero():
            raise InvalidPair("pair is equivalent to (0, 0)")

    def sum_divisor(self) -> QDivisor:
        return self.d_plus + self.d_minus

    def sum_at(self, p: Point) -> Rational:
        return self.d_plus.coeff(p) + self.d_minus.coeff(p)


def swap(pair: DpdPair) -> DpdPair:
    """The presentation of the same surface with inverted torus action."""
    return DpdPair(pair.d_minus, pair.d_plus)


def canonicalize(pair: DpdPair) -> DpdPair:
    """Equivalent pair with floor(D_+) = 0, shifting by E = -floor(D_+)."""
    shift = pair.d_plus.floor()
    return DpdPair(pair.d_plus - shift, pair.d_minus + shift)


def is_gizatullin(
    pair: DpdPair,
) -> tuple[bool, Optional[Point], Optional[Point]]:
    """Whether each {D_+-} has at most one support point; returns them."""
    fp = pair.d_plus.fractional().support()
    fm = pair.d_minus.fractional().support()
    if len(fp) > 1 or len(fm) > 1:
        return False, None, None
    return True, (fp[0] if fp else None), (fm[0] if fm else None)


def is_toric(pair: DpdPair) -> bool:
    """One point carries all fractional data and all of the negative sum."""
    fp = set(pair.d_plus.fractional().support())
    fm = set(pair.d_minus.fractional().support())
    frac_support = fp | fm
    if len(frac_support) > 1:
        return False
    nonzero_sum = [p for p, _ in pair.sum_divisor().entries]
    anchors = frac_support | set(nonzero_sum)
    return len(anchors) <= 1


@dataclass(frozen=True)
class PointData:
    """Local invariants of a pair at one point; see the module docstring."""

    p: Point
    m_plus: int
    e_plus: int
    m_minus: int
    e_minus: int
    delta: int
    e: int
    kind: str  # cross | multiple_fiber | plain


def _euclid_witness(m_plus: int, e_plus: int) -> tuple[int, int]:
    """Some (a, b) with a*m_plus - b*e_plus = 1."""
    old_r, r = m_plus, e_plus
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:  # floor-division gcd can land on -1 for e_plus < 0
        old_x, old_y = -old_x, -old_y
    a, b = old_x, -old_y
    assert a * m_plus - b * e_plus == 1
    return a, b


def point_data(pair: DpdPair, p: Point) -> PointData:
    p = Fraction(p)
    vp = pair.d_plus.coeff(p)
    vm = pair.d_minus.coeff(p)
    m_plus, e_plus = vp.denominator, -vp.numerator
    m_minus, e_minus = -vm.denominator, -vm.numerator
    total = vp + vm
    if total < 0:
        delta = e_minus * m_plus - e_plus * m_minus
        assert delta == m_plus * m_minus * total > 0
        a, b = _euclid_witness(m_plus, e_plus)
        e = (a * m_minus - b * e_minus) % delta
        # the residue must not depend on the witness; (a, b) may be shifted
        # by (e+, m+) without changing it
        assert ((a + e_plus) * m_minus - (b + m_plus) * e_minus) % delta == e
        return PointData(p, m_plus, e_plus, m_minus, e_minus, delta, e, "cross")
    if vp.denominator > 1:
        assert m_plus == -m_minus
        kind = "multiple_fiber"
    else:
        kind = "plain"
    return PointData(p, m_plus, e_plus, m_minus, e_minus, 0, 0, kind)


def singular_points(pair: DpdPair) -> list[tuple[Point, tuple[int, int]]]:
    """Cyclic quotient singularities (delta, e) with delta >= 2, by point."""
    out = []
    for p, c in pair.sum_divisor().entries:
        if c < 0:
            pd = point_data(pair, p)
            if pd.delta >= 2:
                out.append((p, (pd.delta, pd.e)))
    return out


def is_smooth(pair: DpdPair) -> bool:
    return not singular_points(pair)


@dataclass(frozen=True)
class FiberChain:
    """The fiber over one point as a weighted chain.

    Endpoints are the section curves C+ and C- (weights deg floor(D_+-),
    multiplicity 0); interior labels mark the origin of each curve: R+ for
    the box of {D_+(p)}, O+ / O- for the orbit closures, R0 for the
    resolution chain of the (delta, e) point, R- for the box of {D_-(p)}*,
    O for the single orbit curve over a sum-zero point.
    """

    weights: tuple[int, ...]
    labels: tuple[str, ...]
    multiplicities: tuple[int, ...]

    def interior(self) -> tuple[int, ...]:
        return self.weights[1:-1]


# The local model of the surface at p is the affine toric surface of the
# cone spanned by nu+ = (m+, -e+) and nu- = (-m-, e-); completing the
# fibration adds the section rays (0, -1) and (0, 1).  The resolved fiber
# over p is the minimal subdivision of the fan swept out between the two
# section rays, each inserted ray a curve whose multiplicity in the fiber
# is the first coordinate.  All weights below come from the smooth-fan
# relation prev + next = -w * ray, so the fiber identities F.E = 0 hold by
# construction.

Ray = tuple[int, int]


def _det2(u: Ray, v: Ray) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _rays_between(u: Ray, v: Ray) -> tuple[Ray, ...]:
    """Primitive rays strictly between u and v, minimal subdivision."""
    rays = []
    d = _det2(u, v)
    assert d >= 1
    while d > 1:
        c = next(
            c
            for c in range(1, d)
            if (v[0] + c * u[0]) % d == 0 and (v[1] + c * u[1]) % d == 0
        )
        u = ((v[0] + c * u[0]) // d, (v[1] + c * u[1]) // d)
        rays.append(u)
        d = _det2(u, v)
    return tuple(rays)


def _fan_weight(prev: Ray, ray: Ray, nxt: Ray) -> int:
    sx, sy = prev[0] + nxt[0], prev[1] + nxt[1]
    if ray[0]:
        w, r = divmod(sx, ray[0])
    else:
        w, r = divmod(sy, ray[1])
    assert r == 0 and (w * ray[0], w * ray[1]) == (sx, sy)
    return -w


@dataclass(frozen=True)
class _Fan:
    rays: tuple[Ray, ...]          # (0,-1), ..., (0,1)
    weights: tuple[int, ...]       # of rays[1:-1]
    o_plus: int                    # index into weights of the nu+ curve
    o_minus: int                   # likewise nu-; equal when the rays merge


def _fiber_fan(vp: Rational, vm: Rational) -> _Fan:
    nu_plus: Ray = (vp.denominator, vp.numerator)
    nu_minus: Ray = (vm.denominator, -vm.numerator)
    head = _rays_between((0, -1), nu_plus)
    tail = _rays_between(nu_minus, (0, 1))
    if nu_plus == nu_minus:  # sum zero at p: a single orbit closure
        spine: tuple[Ray, ...] = (nu_plus,)
        o_plus = o_minus = len(head)
    else:
        mid = _rays_between(nu_plus, nu_minus)
        spine = (nu_plus,) + mid + (nu_minus,)
        o_plus = len(head)
        o_minus = len(head) + len(mid) + 1
    rays = ((0, -1),) + head + spine + tail + ((0, 1),)
    weights = tuple(
        _fan_weight(rays[i - 1], rays[i], rays[i + 1])
        for i in range(1, len(rays) - 1)
    )
    return _Fan(rays, weights, o_plus, o_minus)


def fiber_graph(pair: DpdPair, p: Point) -> FiberChain:
    p = Fraction(p)
    vp = pair.d_plus.coeff(p)
    vm = pair.d_minus.coeff(p)
    if vp == 0 and vm == 0:
        raise ValueError(f"no divisor data at {p}; the fiber is generic")
    fan = _fiber_fan(vp, vm)
    c_plus = int(pair.d_plus.floor().degree())
    c_minus = int(pair.d_minus.floor().degree())
    if fan.o_plus == fan.o_minus:
        orbit_labels = ("O",)
    else:
        orbit_labels = (
            ("O+",)
            + ("R0",) * (fan.o_minus - fan.o_plus - 1)
            + ("O-",)
        )
    labels = (
        ("C+",)
        + ("R+",) * fan.o_plus
        + orbit_labels
        + ("R-",) * (len(fan.weights) - 1 - fan.o_minus)
        + ("C-",)
    )
    weights = (c_plus,) + fan.weights + (c_minus,)
    mults = (0,) + tuple(ray[0] for ray in fan.rays[1:-1]) + (0,)
    chain = FiberChain(weights, labels, mults)
    if vp + vm < 0:
        assert -1 in (weights[fan.o_plus + 1], weights[fan.o_minus + 1])
    ok, _ = contracts_to_zero_fiber(chain_tree(chain.interior()))
    assert ok, f"fiber interior over {p} does not contract to a 0-curve"
    return chain


def _feather_for(pair: DpdPair, q: Point) -> Feather:
    """The minus-side part of the fiber over q: the orbit curve O- as the
    bridge and the resolution chain of the (delta, e) point as its box,
    read from the bridge outward."""
    fan = _fiber_fan(pair.d_plus.coeff(q), pair.d_minus.coeff(q))
    bridge = fan.weights[fan.o_minus]
    box = tuple(reversed(fan.weights[fan.o_plus + 1 : fan.o_minus]))
    return Feather(bridge, box)


def _zigzag_parts(
    pair: DpdPair,
) -> tuple[tuple[int, ...], int, tuple[int, ...], Optional[Point], Optional[Point]]:
    ok, p_plus, p_minus = is_gizatullin(pair)
    if not ok:
        raise NotGizatullin(
            "fractional parts must live in at most one point each"
        )
    if is_toric(pair):
        raise ToricInput("toric surface; use the toric operations instead")
    plus_chain = ()
    if p_plus is not None:
        plus_label = BoxLabel.from_fraction(frac_part(pair.d_plus.coeff(p_plus)))
        plus_chain = hj_chain(dual_label(plus_label))
    minus_chain = ()
    if p_minus is not None:
        minus_label = BoxLabel.from_fraction(frac_part(pair.d_minus.coeff(p_minus)))
        minus_chain = hj_chain(minus_label)
    w_s = int(pair.d_plus.floor().degree() + pair.d_minus.floor().degree())
    assert w_s <= -2, "non-toric pairs always give w_s <= -2"
    return plus_chain, w_s, minus_chain, p_plus, p_minus


def boundary_zigzag(pair: DpdPair) -> Zigzag:
    """Standard zigzag [[0,0, chain({D_+(p_+)}*), w_s, chain({D_-(p_-)})]]."""
    plus_chain, w_s, minus_chain, _, _ = _zigzag_parts(pair)
    return Zigzag((0, 0) + plus_chain + (w_s,) + minus_chain)


def extended_divisor(pair: DpdPair) -> ExtendedDivisor:
    """Boundary zigzag plus the feather collection of the degenerate fiber.

    Feathers attach at C_s (one per negative-sum point away from p_-, sorted
    by point) and, when p_- itself has negative sum, the tail feather F_0
    attaches at the last component C_n.
    """
    plus_chain, w_s, minus_chain, p_plus, p_minus = _zigzag_parts(pair)
    s = 2 + len(plus_chain)
    spine = plus_chain + (w_s,) + minus_chain
    last = len(spine) - 1
    feathers: list[tuple[int, Feather]] = []
    for q, c in pair.sum_divisor().entries:
        if c < 0 and (p_minus is None or q != p_minus):
            feathers.append((s - 2, _feather_for(pair, q)))
    # the collection at C_s must be admissible; the tail feather F_0 is a
    # separate object and may be arbitrary
    non_ak = sum(1 for _, fe in feathers if not fe.is_ak_feather)
    assert non_ak <= 1, "feather collection at C_s must be admissible"
    if p_minus is not None and pair.sum_at(p_minus) < 0:
        feathers.append((last, _feather_for(pair, p_minus)))
    return ExtendedDivisor(FiberGraph(spine, tuple(feathers)), s)


def extended_divisor_vee(pair: DpdPair) -> ExtendedDivisor:
    """Extended divisor of the reversed completion, i.e. of the swap."""
    return extended_divisor(swap(pair))
