"""Exact evaluation of the explicit lower bounds on k.

All bounds are reported as the smallest *even* integer at or above the
largest of three envelope terms::

    E1 = ceil(2 F(a, b) + 2) * ((1 - r) / r)**a
    E2 = 2 ((1 - r) / r)**(a + 1)
    E3 = 2 (1 / (1 - r))**(s - 1) + 2

with ``t = r**n*`` and::

    F(a, b) = (1 - r + t)**(a-1) [b (1 - r + t) + a]
              / ((1 - r)**(a-1) (1 - t)**(b-1) [b (1 - r) + a (1 - t)])

where ``n* = n_star(r, a)``.  Powers follow the 0**0 = 1 convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import InvalidParameterError, UnsupportedParityError, ZeroDenominatorError
from .exact import RationalLike, format_rational, pow_exact, to_rational

SCHEMA = "bounds/1"
MODES = ("fmt", "smt", "tmt", "ternary-mresult", "ternary-ab", "finalcor")
TERNARY_R = Fraction(1, 3)


@dataclass(frozen=True)
class ExponentSpec:
    """Exponent pairs ``(a_{2i-1}, a_{2i})`` sharing the pairwise sum ``s``."""

    pairs: tuple[tuple[int, int], ...]
    s: int = field(default=0)

    def __post_init__(self) -> None:
        pairs = tuple((int(a), int(b)) for a, b in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if not pairs:
            if self.s:
                _check_s(self.s)
            return
        sums = {a + b for a, b in pairs}
        if any(a < 1 or b < 1 for a, b in pairs):
            raise InvalidParameterError(f"exponents must be positive integers: {pairs}")
        if len(sums) != 1:
            raise InvalidParameterError(f"pairs do not share a common sum: {pairs}")
        s = sums.pop()
        if self.s and self.s != s:
            raise InvalidParameterError(f"pairs sum to {s}, not the declared s = {self.s}")
        object.__setattr__(self, "s", s)
        _check_s(s)

    @classmethod
    def uniform(cls, a: int, b: int, count: int) -> ExponentSpec:
        return cls(((a, b),) * count)

    @classmethod
    def from_flat(cls, exponents: Sequence[int]) -> ExponentSpec:
        """Build from the flat list ``a_1, ..., a_k``."""
        if len(exponents) % 2:
            raise InvalidParameterError(f"exponent list must have even length, got {len(exponents)}")
        return cls(tuple(zip(exponents[0::2], exponents[1::2])))

    @property
    def k(self) -> int:
        return 2 * len(self.pairs)

    @property
    def flat(self) -> list[int]:
        return [e for pair in self.pairs for e in pair]

    @property
    def is_uniform(self) -> bool:
        """True when every pair is the same up to swapping its two entries."""
        return len({tuple(sorted(p)) for p in self.pairs}) <= 1

    def tiled(self, npairs: int) -> ExponentSpec:
        """The pattern repeated cyclically (or truncated) to ``npairs`` pairs."""
        if not self.pairs:
            raise InvalidParameterError("cannot tile an empty exponent spec")
        return ExponentSpec(tuple(self.pairs[i % len(self.pairs)] for i in range(npairs)), self.s)

    def to_wire(self) -> list[list[int]]:
        return [list(p) for p in self.pairs]


def _check_s(s: int) -> None:
    if s < 2:
        raise InvalidParameterError(f"s must be >= 2, got {s}")


def _check_r(r: Fraction) -> None:
    if not 0 < r < Fraction(1, 2):
        raise InvalidParameterError(f"r must lie in (0, 1/2), got {format_rational(r)}")


def _check_positive(**values: int) -> None:
    for name, v in values.items():
        if not isinstance(v, int) or v < 1:
            raise InvalidParameterError(f"{name} must be a positive integer, got {v!r}")


def even_ceil(x: RationalLike) -> int:
    """Smallest even integer >= x."""
    n = math.ceil(to_rational(x))
    return n + (n % 2)


@dataclass(frozen=True)
class BoundReport:
    r: Fraction
    mode: str
    nStar: int
    k1: int
    kStarEven: int
    term1: Fraction
    term2: Fraction
    term3: Fraction
    kMin: int
    aBar: Optional[int] = None
    bBar: Optional[int] = None
    inputs: dict = field(default_factory=dict, compare=False)

    def to_wire(self) -> dict:
        return {
            "version": SCHEMA,
            "mode": self.mode,
            "inputs": dict(self.inputs),
            "r": format_rational(self.r),
            "nStar": self.nStar,
            "k1": self.k1,
            "kStarEven": self.kStarEven,
            "term1": format_rational(self.term1),
            "term2": format_rational(self.term2),
            "term3": format_rational(self.term3),
            "kMin": self.kMin,
            "aBar": self.aBar,
            "bBar": self.bBar,
        }


def n_star(r: RationalLike, a: int) -> int:
    """``floor(-log_r a) + 1``, i.e. one more than the largest m with a r^m >= 1.

    Computed by exact comparison; ``a r^m = 1`` counts as satisfying the bound.
    """
    r = to_rational(r)
    _check_r(r)
    _check_positive(a=a)
    m = 0
    power = r
    while a * power >= 1:
        m += 1
        power *= r
    return m + 1


def split_ratio(r: Fraction, a: int, b: int, n: int) -> Fraction:
    """``F(a, b)`` evaluated at level ``n``."""
    t = r**n
    up = 1 - r + t
    num = pow_exact(up, a - 1) * (b * up + a)
    den = pow_exact(1 - r, a - 1) * pow_exact(1 - t, b - 1) * (b * (1 - r) + a * (1 - t))
    return num / den


@dataclass(frozen=True)
class Envelope:
    """Every intermediate of the three-term envelope for one ``(r, a, b)``."""

    r: Fraction
    a: int
    b: int
    n_star: int
    ratio: Fraction
    k1: int
    k_star: Fraction
    k_star_even: int
    e1: Fraction
    e2: Fraction
    e3: Fraction

    @property
    def terms(self) -> tuple[Fraction, Fraction, Fraction]:
        return self.e1, self.e2, self.e3

    @property
    def k_min(self) -> int:
        return even_ceil(max(self.terms))


def _assemble(r: Fraction, a: int, b: int, n: int, ratio: Fraction) -> Envelope:
    q = (1 - r) / r
    k1 = math.ceil(2 * ratio + 2)
    k_star = max(Fraction(k1), 2 * q)
    return Envelope(
        r=r,
        a=a,
        b=b,
        n_star=n,
        ratio=ratio,
        k1=k1,
        k_star=k_star,
        k_star_even=even_ceil(k_star),
        e1=k1 * q**a,
        e2=2 * q ** (a + 1),
        e3=2 * (1 / (1 - r)) ** (a + b - 1) + 2,
    )


def envelope(r: RationalLike, a: int, b: int) -> Envelope:
    r = to_rational(r)
    _check_r(r)
    _check_positive(a=a, b=b)
    n = n_star(r, a)
    return _assemble(r, a, b, n, split_ratio(r, a, b, n))


def envelope_terms(r: RationalLike, a: int, b: int) -> tuple[Fraction, Fraction, Fraction]:
    """``(E1, E2, E3)`` for exponents ``(a, b)``, with ``n* = n_star(r, a)``."""
    return envelope(r, a, b).terms


def _report(env: Envelope, mode: str, terms: Iterable[Fraction] | None = None, **extra) -> BoundReport:
    t1, t2, t3 = env.terms if terms is None else terms
    inputs = extra.pop("inputs", {})
    return BoundReport(
        r=env.r,
        mode=mode,
        nStar=env.n_star,
        k1=env.k1,
        kStarEven=env.k_star_even,
        term1=t1,
        term2=t2,
        term3=t3,
        kMin=even_ceil(max(t1, t2, t3)),
        inputs=inputs,
        **extra,
    )


def fmt_bound(r: RationalLike, a: int, b: int) -> BoundReport:
    """Bound for the uniform form ``sum x^a y^b``; swaps so that a <= b."""
    _check_positive(a=a, b=b)
    if a > b:
        a, b = b, a
    env = envelope(r, a, b)
    return _report(env, "fmt", inputs={"a": a, "b": b, "s": a + b})


def smt_bound(r: RationalLike, s: int) -> BoundReport:
    """Bound valid for every split ``a + b = s`` of a uniform form.

    Evaluates the displayed three-term maximum directly: the first slot
    carries ``s - 1`` and the second slot the exponent 1.
    """
    r = to_rational(r)
    _check_r(r)
    _check_s(s)
    n = n_star(r, s - 1)
    t = r**n
    up = 1 - r + t
    ratio = pow_exact(up, s - 2) * (up + (s - 1)) / (pow_exact(1 - r, s - 2) * ((1 - r) + (s - 1) * (1 - t)))
    q = (1 - r) / r
    k1 = math.ceil(2 * ratio + 2)
    k_star = max(Fraction(k1), 2 * q)
    env = Envelope(
        r=r,
        a=s - 1,
        b=1,
        n_star=n,
        ratio=ratio,
        k1=k1,
        k_star=k_star,
        k_star_even=even_ceil(k_star),
        e1=k1 * q ** (s - 1),
        e2=2 * q**s,
        e3=2 * (1 / (1 - r)) ** (s - 1) + 2,
    )
    return _report(env, "smt", inputs={"s": s})


def balanced_split(s: int) -> tuple[int, int]:
    """``(floor(s/2), s - floor(s/2))``."""
    _check_s(s)
    return s // 2, s - s // 2


def tmt_bound(r: RationalLike, s: int) -> BoundReport:
    """Bound for mixed exponent vectors with pairwise sum ``s``."""
    a_bar, b_bar = balanced_split(s)
    env = envelope(r, a_bar, b_bar)
    return _report(env, "tmt", aBar=a_bar, bBar=b_bar, inputs={"s": s})


def ternary_mresult_formula(s: int) -> int:
    """``2^(s/2+1) * ceil(((s+3)/(s-2))^(s/2-1) (5s+6)/(5s-6) + 1)`` for even s >= 4."""
    if s % 2:
        raise UnsupportedParityError(
            f"the closed ternary formula needs even s (got {s}); use tmt_bound(1/3, {s})"
        )
    if s < 4:
        raise InvalidParameterError(f"the closed ternary formula needs s >= 4, got {s}")
    half = s // 2
    inner = Fraction(s + 3, s - 2) ** (half - 1) * Fraction(5 * s + 6, 5 * s - 6) + 1
    return 2 ** (half + 1) * math.ceil(inner)


def ternary_mresult_bound(s: int) -> BoundReport:
    """Closed-form ternary bound for even ``s``.

    ``term1`` is the closed formula; ``term2``/``term3`` are the balanced
    split's E2/E3 at r = 1/3, so ``kMin`` can only exceed the formula where
    the formula itself would undercut them.
    """
    formula = ternary_mresult_formula(s)
    half = s // 2
    env = envelope(TERNARY_R, half, half)
    return _report(
        env,
        "ternary-mresult",
        terms=(Fraction(formula), env.e2, env.e3),
        aBar=half,
        bBar=half,
        inputs={"s": s},
    )


def ternary_ab_formula(a: int, b: int) -> int:
    _check_positive(a=a, b=b)
    if a == 1 and b >= 2:
        raise ZeroDenominatorError(
            f"(1 - 1/a)^(b-1) vanishes for a = 1, b = {b}; use fmt_bound(1/3, {a}, {b})"
        )
    a_, b_ = Fraction(a), Fraction(b)
    head = pow_exact(1 + 3 / (2 * a_), a - 1) / pow_exact(1 - 1 / a_, b - 1)
    tail = 1 + (1 + b_ / a_) / (b_ * Fraction(2, 3) + a_ - 1)
    return math.ceil(head * tail + 1) * 2 ** (a + 1)


def ternary_ab_bound(a: int, b: int) -> BoundReport:
    """Simplified ternary bound for the uniform form ``sum x^a y^b``."""
    formula = ternary_ab_formula(a, b)
    env = envelope(TERNARY_R, a, b)
    return _report(
        env,
        "ternary-ab",
        terms=(Fraction(formula), env.e2, env.e3),
        inputs={"a": a, "b": b, "s": a + b},
    )


def finalcor_bound(r: RationalLike, spec: ExponentSpec) -> BoundReport:
    """Bound driven by the largest odd-slot exponent ``a_max``."""
    if not spec.pairs:
        raise InvalidParameterError("exponent spec must contain at least one pair")
    a_max = max(a for a, _ in spec.pairs)
    b_min = spec.s - a_max
    env = envelope(r, a_max, b_min)
    return _report(env, "finalcor", aBar=a_max, bBar=b_min, inputs={"s": spec.s, "pairs": spec.to_wire()})


def bound_for_spec(r: RationalLike, spec: ExponentSpec) -> BoundReport:
    """The bound the certifier pairs with ``spec``.

    Uniform specs (every pair equal up to order) use the uniform bound;
    anything else uses the balanced-split bound.
    """
    if not spec.pairs:
        raise InvalidParameterError("exponent spec must contain at least one pair")
    if spec.is_uniform:
        a, b = spec.pairs[0]
        return fmt_bound(r, a, b)
    return tmt_bound(r, spec.s)
