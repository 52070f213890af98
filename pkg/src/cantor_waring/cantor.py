"""The two-map iterated function system behind the middle-1/alpha Cantor set.

``f0(x) = r x`` and ``f1(x) = r x + 1 - r`` with ``r = (1 - 1/alpha) / 2``.
Binary words are plain strings over ``"01"``; ``f_w`` applies the maps
outermost-first, so ``f_w(x) = f_{w[0]}(f_{w[1]}(...f_{w[-1]}(x)))``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

from .errors import DomainError, InvalidParameterError, ResourceLimitError
from .exact import Interval, RationalLike, format_rational, parse_rational, to_rational

#: Default cap on enumeration depth (2**20 basic intervals).
DEFAULT_MAX_LEVEL = 20

WordLike = Union[str, Sequence[int]]


@dataclass(frozen=True)
class CantorParams:
    alpha: Fraction
    r: Fraction

    @property
    def one_minus_r(self) -> Fraction:
        return 1 - self.r

    def to_wire(self) -> dict:
        return {"alpha": format_rational(self.alpha), "r": format_rational(self.r)}


def make_params(alpha: RationalLike) -> CantorParams:
    """Parameters of ``C_alpha``; requires ``alpha > 1``."""
    alpha = to_rational(alpha)
    if alpha <= 1:
        raise InvalidParameterError(f"alpha must be > 1, got {format_rational(alpha)}")
    return CantorParams(alpha, (1 - 1 / alpha) / 2)


def as_word(w: WordLike) -> str:
    if isinstance(w, str):
        word = w
    else:
        word = "".join(str(int(d)) for d in w)
    if any(c not in "01" for c in word):
        raise InvalidParameterError(f"binary word may only contain 0 and 1: {w!r}")
    return word


def apply_word(p: CantorParams, w: WordLike, x: RationalLike) -> Fraction:
    """Evaluate ``f_w(x)`` by composing the two contractions."""
    word = as_word(w)
    x = to_rational(x)
    if not 0 <= x <= 1:
        raise DomainError(f"x must lie in [0, 1], got {format_rational(x)}")
    shift = 1 - p.r
    for digit in reversed(word):
        x = p.r * x + (shift if digit == "1" else 0)
    return x


def apply_word_closed_form(p: CantorParams, w: WordLike, x: RationalLike) -> Fraction:
    """``f_w(x)`` via the explicit digit sum ``(1-r)/r * sum(d_j r^j) + x r^n``."""
    word = as_word(w)
    x = to_rational(x)
    if not 0 <= x <= 1:
        raise DomainError(f"x must lie in [0, 1], got {format_rational(x)}")
    r = p.r
    total = sum((r**j for j, d in enumerate(word, start=1) if d == "1"), Fraction(0))
    return (1 - r) / r * total + x * r ** len(word)


@dataclass(frozen=True)
class BasicInterval:
    """The level-``level`` basic interval ``[left, left + width]``.

    ``width`` is always ``r**level``; it is kept so the interval can be
    used without the parameters at hand.
    """

    left: Fraction
    level: int
    width: Fraction

    @property
    def right(self) -> Fraction:
        return self.left + self.width

    def interval(self) -> Interval:
        return Interval(self.left, self.right)

    def to_wire(self) -> dict:
        return {"left": format_rational(self.left), "level": self.level}

    @classmethod
    def from_wire(cls, p: CantorParams, data: dict) -> BasicInterval:
        level = int(data["level"])
        return cls(parse_rational(data["left"]), level, p.r**level)


def basic_interval(p: CantorParams, w: WordLike) -> BasicInterval:
    word = as_word(w)
    return BasicInterval(apply_word(p, word, 0), len(word), p.r ** len(word))


def children(p: CantorParams, b: BasicInterval) -> tuple[BasicInterval, BasicInterval]:
    """The two level-(n+1) basic intervals inside ``b``.

    The right child starts at ``u + r^n - r^(n+1)``, i.e. ``f_{w1}(0)``.
    """
    width = b.width * p.r
    return (
        BasicInterval(b.left, b.level + 1, width),
        BasicInterval(b.left + b.width - width, b.level + 1, width),
    )


def _check_level(n: int, limit: Optional[int]) -> None:
    if n < 0:
        raise InvalidParameterError(f"level must be nonnegative, got {n}")
    cap = DEFAULT_MAX_LEVEL if limit is None else limit
    if n > cap:
        raise ResourceLimitError(f"level {n} exceeds enumeration limit {cap} (2^{n} intervals)")


def iter_words(n: int) -> Iterator[str]:
    """All words of length ``n`` in dictionary order."""
    for digits in itertools.product("01", repeat=n):
        yield "".join(digits)


def iter_level_intervals(p: CantorParams, n: int, limit: Optional[int] = None) -> Iterator[BasicInterval]:
    """Lazily yield the ``2**n`` level-``n`` basic intervals, left to right."""
    _check_level(n, limit)
    width = p.r**n
    steps = [(1 - p.r) * p.r**j for j in range(n)]
    for digits in itertools.product((0, 1), repeat=n):
        left = sum((s for s, d in zip(steps, digits) if d), Fraction(0))
        yield BasicInterval(left, n, width)


def level_intervals(p: CantorParams, n: int, limit: Optional[int] = None) -> list[BasicInterval]:
    """All level-``n`` basic intervals in increasing order; their union is ``C_n``."""
    _check_level(n, limit)
    lefts = level_lefts(p, n, limit)
    width = p.r**n
    return [BasicInterval(u, n, width) for u in lefts]


def level_lefts(p: CantorParams, n: int, limit: Optional[int] = None) -> list[Fraction]:
    """The sorted left endpoints ``L_n``."""
    _check_level(n, limit)
    lefts = [Fraction(0)]
    for j in range(n):
        step = (1 - p.r) * p.r**j
        lefts = [v for u in lefts for v in (u, u + step)]
    return lefts


def scaled_level_lefts(p: CantorParams, n: int, limit: Optional[int] = None) -> tuple[int, list[int], int]:
    """``L_n`` as integer numerators over the common denominator ``q**n``.

    With ``r = p/q`` in lowest terms every level-``n`` left endpoint is an
    integer multiple of ``q**-n``.  Returns ``(q**n, numerators, p**n)``;
    the last item is the scaled interval width ``r**n``.
    """
    _check_level(n, limit)
    rp, rq = p.r.numerator, p.r.denominator
    den = rq**n
    lefts = [0]
    for j in range(n):
        # (1 - r) r^j scaled by q^n
        step = (rq - rp) * rp**j * rq ** (n - j - 1)
        lefts = [v for u in lefts for v in (u, u + step)]
    return den, lefts, rp**n


def word_of_left(p: CantorParams, u: RationalLike, n: int) -> Optional[str]:
    """Greedy digit extraction: the word ``w`` with ``f_w(0) = u``, or None.

    At each level the child whose interval contains ``u`` is chosen; the
    left child wins when both could (they never overlap for r < 1/2).
    """
    u = to_rational(u)
    lo, width = Fraction(0), Fraction(1)
    digits = []
    for _ in range(n):
        child = width * p.r
        if lo <= u <= lo + child:
            digits.append("0")
        elif lo + width - child <= u <= lo + width:
            digits.append("1")
            lo += width - child
        else:
            return None
        width = child
    return "".join(digits) if u == lo else None


def is_left_endpoint(p: CantorParams, u: RationalLike, n: int) -> bool:
    """Membership ``u in L_n`` without materializing ``L_n``."""
    return word_of_left(p, u, n) is not None


def s2k_chain(k: int) -> list[str]:
    """The ``k/2 + 1`` words ``0^(k-2(i-1)) 1^(2(i-1))`` for ``i = 1..k/2+1``."""
    if k < 2 or k % 2:
        raise InvalidParameterError(f"k must be an even integer >= 2, got {k}")
    return ["0" * (k - 2 * i) + "1" * (2 * i) for i in range(k // 2 + 1)]
