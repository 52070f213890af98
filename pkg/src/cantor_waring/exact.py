"""Exact rational scalars, closed intervals and normalized interval unions.

Every scalar in the package is a :class:`fractions.Fraction`; nothing here ever
touches a float.  Interval unions are kept in a canonical form (sorted,
disjoint, non-touching) so that two unions describing the same point set
compare equal.

The heavy operations (normalization and Minkowski sums) run on integer
numerators over a common denominator, which is several times faster than
pushing ``Fraction`` objects through a sort.
"""

from __future__ import annotations

import bisect
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Tuple, Union

from .errors import MalformedIntervalError, ResourceLimitError

Rational = Fraction
RationalLike = Union[Fraction, int, str]

#: Default cap on the number of parts a single union may hold.
DEFAULT_MAX_INTERVALS = 10**6
#: Environment override for :data:`DEFAULT_MAX_INTERVALS`.
MAX_INTERVALS_ENV = "CANTOR_WARING_MAX_INTERVALS"
# Raw pieces generated before merging may exceed the result cap by this factor.
_RAW_FACTOR = 16


def max_intervals() -> int:
    """Current union-size cap, honouring ``CANTOR_WARING_MAX_INTERVALS``."""
    raw = os.environ.get(MAX_INTERVALS_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_MAX_INTERVALS
    value = int(raw)
    if value < 1:
        raise ValueError(f"{MAX_INTERVALS_ENV} must be a positive integer, got {raw!r}")
    return value


def to_rational(value: RationalLike) -> Fraction:
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass a Fraction, int or 'p/q' string")
    return Fraction(value)


def parse_rational(text: str) -> Fraction:
    """Parse the wire format ``"p/q"`` (or a bare integer)."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_rational(value: Fraction | int) -> str:
    """Render ``value`` as ``"p/q"``, omitting ``/q`` when q = 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def pow_exact(base: RationalLike, e: int) -> Fraction:
    """Exact ``base**e`` for a nonnegative integer exponent, with 0**0 = 1."""
    if not isinstance(e, int) or isinstance(e, bool):
        raise TypeError("exponent must be an int")
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    if e == 0:
        return Fraction(1)
    return to_rational(base) ** e


@dataclass(frozen=True, order=True)
class Interval:
    """The closed interval ``[lo, hi]``."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            raise MalformedIntervalError(f"interval has lo > hi: [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x: object) -> bool:
        return self.lo <= x <= self.hi  # type: ignore[operator]

    def contains_interval(self, other: Interval) -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def to_wire(self) -> list[str]:
        return [format_rational(self.lo), format_rational(self.hi)]

    @classmethod
    def from_wire(cls, pair: Sequence[str]) -> Interval:
        lo, hi = pair
        return cls(parse_rational(lo), parse_rational(hi))

    def __repr__(self) -> str:
        return f"[{format_rational(self.lo)}, {format_rational(self.hi)}]"


IntervalLike = Union[Interval, Tuple[RationalLike, RationalLike]]


def _as_interval(item: IntervalLike) -> Interval:
    if isinstance(item, Interval):
        return item
    lo, hi = item
    return Interval(to_rational(lo), to_rational(hi))


def _merge_int_pairs(pairs: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Sort and coalesce overlapping or touching integer intervals."""
    if not pairs:
        return []
    pairs.sort()
    out = []
    cur_lo, cur_hi = pairs[0]
    for lo, hi in pairs:
        if lo > cur_hi:
            out.append((cur_lo, cur_hi))
            cur_lo, cur_hi = lo, hi
        elif hi > cur_hi:
            cur_hi = hi
    out.append((cur_lo, cur_hi))
    return out


class IntervalUnion:
    """A finite union of closed rational intervals in canonical form.

    ``parts`` is sorted by left endpoint, pairwise disjoint and
    non-touching; the empty tuple is the empty set.  Instances are
    immutable and hashable.
    """

    __slots__ = ("_parts",)

    def __init__(self, raw: Iterable[IntervalLike] = ()) -> None:
        self._parts = _normalize(_as_interval(x) for x in raw)

    @classmethod
    def _trusted(cls, parts: tuple[Interval, ...]) -> IntervalUnion:
        obj = cls.__new__(cls)
        obj._parts = parts
        return obj

    @classmethod
    def from_scaled(cls, denominator: int, pairs: list[tuple[int, int]]) -> IntervalUnion:
        """Build from integer numerators ``(lo, hi)`` over a shared denominator.

        ``pairs`` is sorted in place.
        """
        merged = _merge_int_pairs(pairs)
        _check_size(len(merged))
        return cls._trusted(
            tuple(Interval(Fraction(lo, denominator), Fraction(hi, denominator)) for lo, hi in merged)
        )

    @classmethod
    def single(cls, lo: RationalLike, hi: RationalLike) -> IntervalUnion:
        return cls._trusted((Interval(to_rational(lo), to_rational(hi)),))

    @property
    def parts(self) -> tuple[Interval, ...]:
        return self._parts

    def __iter__(self) -> Iterator[Interval]:
        return iter(self._parts)

    def __len__(self) -> int:
        return len(self._parts)

    def __bool__(self) -> bool:
        return bool(self._parts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntervalUnion):
            return NotImplemented
        return self._parts == other._parts

    def __hash__(self) -> int:
        return hash(self._parts)

    def __repr__(self) -> str:
        return "IntervalUnion{" + ", ".join(repr(p) for p in self._parts) + "}"

    def __contains__(self, x: object) -> bool:
        x = Fraction(x)  # type: ignore[arg-type]
        i = bisect.bisect_right([p.lo for p in self._parts], x) - 1
        return i >= 0 and x <= self._parts[i].hi

    @property
    def is_interval(self) -> bool:
        """True when the union is a single (possibly degenerate) interval."""
        return len(self._parts) == 1

    def hull(self) -> Interval:
        if not self._parts:
            raise ValueError("the empty union has no hull")
        return Interval(self._parts[0].lo, self._parts[-1].hi)

    def measure(self) -> Fraction:
        return union_measure(self)

    def gaps(self, hull: Interval) -> list[Interval]:
        return union_gaps(self, hull)

    def clip(self, window: Interval) -> IntervalUnion:
        """Intersection with the closed interval ``window``."""
        out = []
        for p in self._parts:
            lo, hi = max(p.lo, window.lo), min(p.hi, window.hi)
            if lo <= hi:
                out.append(Interval(lo, hi))
        return IntervalUnion._trusted(tuple(out))

    def covers(self, target: Interval) -> bool:
        return any(p.contains_interval(target) for p in self._parts)

    def issubset(self, other: IntervalUnion) -> bool:
        j = 0
        theirs = other.parts
        for p in self._parts:
            while j < len(theirs) and theirs[j].hi < p.lo:
                j += 1
            if j == len(theirs) or not theirs[j].contains_interval(p):
                return False
        return True

    def to_wire(self) -> list[list[str]]:
        return [p.to_wire() for p in self._parts]

    @classmethod
    def from_wire(cls, items: Sequence[Sequence[str]]) -> IntervalUnion:
        return cls(Interval.from_wire(x) for x in items)


def _check_size(n: int) -> None:
    cap = max_intervals()
    if n > cap:
        raise ResourceLimitError(f"interval union would hold {n} parts (cap {cap})")


def _normalize(items: Iterable[Interval]) -> tuple[Interval, ...]:
    ordered = sorted(items)
    if not ordered:
        return ()
    out = [ordered[0]]
    for iv in ordered[1:]:
        last = out[-1]
        if iv.lo > last.hi:
            out.append(iv)
        elif iv.hi > last.hi:
            out[-1] = Interval(last.lo, iv.hi)
    _check_size(len(out))
    return tuple(out)


def normalize_union(raw: Iterable[IntervalLike]) -> IntervalUnion:
    """Sort and merge ``raw`` into canonical form; touching parts coalesce."""
    return IntervalUnion(raw)


def _common_denominator(*unions: IntervalUnion) -> int:
    den = 1
    for u in unions:
        for p in u:
            den = math.lcm(den, p.lo.denominator, p.hi.denominator)
    return den


def _scaled(u: IntervalUnion, den: int) -> list[tuple[int, int]]:
    return [
        (p.lo.numerator * (den // p.lo.denominator), p.hi.numerator * (den // p.hi.denominator))
        for p in u
    ]


def minkowski_sum(u: IntervalUnion, v: IntervalUnion) -> IntervalUnion:
    """``{x + y : x in u, y in v}`` as a normalized union.

    For each part ``a`` of the smaller operand, ``a + v`` equals ``v``
    shifted by ``a.lo`` with every gap of ``v`` not wider than ``len(a)``
    filled in.  Gaps are pre-sorted by width so each part only visits the
    gaps that survive.
    """
    if not u or not v:
        return IntervalUnion()
    if len(u) > len(v):
        u, v = v, u
    den = _common_denominator(u, v)
    small = _scaled(u, den)
    big = _scaled(v, den)

    # (width, position) of each gap of `big`, widest first
    gap_widths = [big[i + 1][0] - big[i][1] for i in range(len(big) - 1)]
    order = sorted(range(len(gap_widths)), key=lambda i: -gap_widths[i])
    neg_sorted = [-gap_widths[i] for i in order]

    raw_cap = _RAW_FACTOR * max_intervals()
    pieces: list[tuple[int, int]] = []
    first_lo, last_hi = big[0][0], big[-1][1]
    for a_lo, a_hi in small:
        width = a_hi - a_lo
        # gaps strictly wider than `width` stay open
        n_open = bisect.bisect_left(neg_sorted, -width)
        cuts = sorted(order[:n_open])
        start = first_lo
        for g in cuts:
            pieces.append((start + a_lo, big[g][1] + a_hi))
            start = big[g + 1][0]
        pieces.append((start + a_lo, last_hi + a_hi))
        if len(pieces) > raw_cap:
            raise ResourceLimitError(
                f"Minkowski sum generated more than {raw_cap} raw pieces; raise {MAX_INTERVALS_ENV}"
            )
    return IntervalUnion.from_scaled(den, pieces)


def union_measure(u: IntervalUnion) -> Fraction:
    """Exact total length of ``u``."""
    return sum((p.hi - p.lo for p in u), Fraction(0))


def union_gaps(u: IntervalUnion, hull: Interval) -> list[Interval]:
    """Maximal open subintervals of ``hull`` missed by ``u``.

    Each gap ``(x, y)`` is returned as the ``Interval(x, y)`` of its closure.
    The list is empty exactly when ``u`` covers ``hull``.
    """
    if hull.lo == hull.hi:
        return [] if hull.lo in u else [hull]
    gaps = []
    cursor = hull.lo
    for p in u:
        if p.hi < cursor:
            continue
        if p.lo >= hull.hi:
            break
        if p.lo > cursor:
            gaps.append(Interval(cursor, p.lo))
        cursor = p.hi
        if cursor >= hull.hi:
            break
    if cursor < hull.hi:
        gaps.append(Interval(cursor, hull.hi))
    return gaps
