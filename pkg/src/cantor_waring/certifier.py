"""Split inequalities and the coverage certificate for ``f(C^k) = [0, k/2]``.

For a pair with exponents ``(a, b)`` and left endpoints ``(u, v)`` write::

    D(u, v) = u**(a-1) v**(b-1) (b u + a v)          (0**0 = 1)

The split check at level ``n`` compares the sum of ``D`` over all pairs but
one against ``D`` of the remaining pair shifted by ``delta``, where
``delta = r^n - r^(n+1)`` (equality variant) or ``delta = r^n``
(inclusion variant).

The certificate replays a fixed list of exact inequalities.  Each record is
recomputable from ``(alpha, pairs, k)`` alone, which is exactly what
:func:`verify_certificate` does.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .bounds import ExponentSpec, bound_for_spec
from .cantor import CantorParams, is_left_endpoint, make_params
from .errors import InvalidConfigurationError, InvalidParameterError, UnsupportedVersionError
from .exact import IntervalUnion, RationalLike, format_rational, parse_rational, pow_exact, to_rational

SCHEMA = "cert/1"
VARIANTS = ("equality", "inclusion")


def form_value(spec: ExponentSpec, xs: Sequence[RationalLike]) -> Fraction:
    """``sum_i x_{2i-1}^{a_{2i-1}} x_{2i}^{a_{2i}}``."""
    if len(xs) != spec.k:
        raise InvalidParameterError(f"expected {spec.k} values, got {len(xs)}")
    vals = [to_rational(x) for x in xs]
    return sum(
        (pow_exact(vals[2 * i], a) * pow_exact(vals[2 * i + 1], b) for i, (a, b) in enumerate(spec.pairs)),
        Fraction(0),
    )


def pair_derivative(a: int, b: int, u: Fraction, v: Fraction) -> Fraction:
    """``u^(a-1) v^(b-1) (b u + a v)``."""
    return pow_exact(u, a - 1) * pow_exact(v, b - 1) * (b * u + a * v)


def _check_lefts(spec: ExponentSpec, lefts: Sequence[RationalLike]) -> list[Fraction]:
    if len(lefts) != spec.k:
        raise InvalidParameterError(f"expected {spec.k} left endpoints, got {len(lefts)}")
    vals = [to_rational(u) for u in lefts]
    if any(u < 0 for u in vals):
        raise InvalidParameterError("left endpoints must be nonnegative")
    return vals


def max_pair_index(spec: ExponentSpec, lefts: Sequence[RationalLike]) -> int:
    """Smallest odd 1-based index ``M`` maximizing ``u_M^a_M u_{M+1}^a_{M+1}``."""
    vals = _check_lefts(spec, lefts)
    best, best_i = None, 0
    for i, (a, b) in enumerate(spec.pairs):
        value = pow_exact(vals[2 * i], a) * pow_exact(vals[2 * i + 1], b)
        if best is None or value > best:
            best, best_i = value, i
    return 2 * best_i + 1


def shift_factor(r: Fraction) -> Fraction:
    """``max(1, (1 - 2r) / r)``.

    A level-(n+1) child starts at most ``max(r^(n+1), r^n - 2 r^(n+1))``
    past the end of its left neighbour; the shifted term is scaled so that
    this worst-case jump is still bridged when ``r < 1/3``.
    """
    return max(Fraction(1), (1 - 2 * r) / r)


def _delta(r: Fraction, n: int, variant: str) -> Fraction:
    if variant == "equality":
        return r**n - r ** (n + 1)
    if variant == "inclusion":
        return r**n
    raise InvalidParameterError(f"variant must be one of {VARIANTS}, got {variant!r}")


def _split_terms(spec: ExponentSpec, vals: list[Fraction], delta: Fraction) -> tuple[list[Fraction], list[Fraction]]:
    ds, gs = [], []
    for i, (a, b) in enumerate(spec.pairs):
        u, v = vals[2 * i], vals[2 * i + 1]
        ds.append(pair_derivative(a, b, u, v))
        gs.append(pair_derivative(a, b, u + delta, v + delta))
    return ds, gs


def critical_pair_index(
    p: CantorParams, spec: ExponentSpec, lefts: Sequence[RationalLike], n: int, variant: str = "equality"
) -> int:
    """Smallest odd 1-based ``M`` maximizing ``D_M + c G_M``.

    This is the pair whose exclusion makes the split inequality hardest, so
    the inequality at ``M`` implies it at every other pair.
    """
    vals = _check_lefts(spec, lefts)
    ds, gs = _split_terms(spec, vals, _delta(p.r, n, variant))
    c = shift_factor(p.r)
    scores = [d + c * g for d, g in zip(ds, gs)]
    return 2 * scores.index(max(scores)) + 1


@dataclass(frozen=True)
class SplitCheck:
    lefts: tuple[Fraction, ...]
    level: int
    spec: ExponentSpec
    maxIndex: int
    lhs: Fraction
    rhs: Fraction
    variant: str
    holds: bool

    def to_wire(self) -> dict:
        return {
            "lefts": [format_rational(u) for u in self.lefts],
            "level": self.level,
            "pairs": self.spec.to_wire(),
            "maxIndex": self.maxIndex,
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
            "variant": self.variant,
            "holds": self.holds,
        }


def _validated_lefts(p: CantorParams, spec: ExponentSpec, lefts: Sequence[RationalLike], n: int) -> list[Fraction]:
    vals = _check_lefts(spec, lefts)
    for i, u in enumerate(vals):
        if not is_left_endpoint(p, u, n):
            raise InvalidConfigurationError(
                f"lefts[{i}] = {format_rational(u)} is not a level-{n} left endpoint"
            )
    return vals


def check_split(
    p: CantorParams, spec: ExponentSpec, lefts: Sequence[RationalLike], n: int, variant: str
) -> SplitCheck:
    """Evaluate the split inequality for one configuration of left endpoints.

    ``M`` is the product maximizer from :func:`max_pair_index`; ``lhs`` sums
    ``D`` over every other pair and ``rhs`` is ``D`` of pair ``M`` shifted
    by ``delta``.

    For the equality variant this is not a sufficient condition for the
    children's images to join up: with zero endpoints present the shifted
    term of some other pair can exceed the one at ``M``.  Use
    :func:`check_split_robust` when soundness matters.
    """
    delta = _delta(p.r, n, variant)
    vals = _validated_lefts(p, spec, lefts, n)
    ds, gs = _split_terms(spec, vals, delta)
    m = (max_pair_index(spec, vals) - 1) // 2
    lhs = sum(ds, Fraction(0)) - ds[m]
    rhs = gs[m]
    return SplitCheck(tuple(vals), n, spec, 2 * m + 1, lhs, rhs, variant, lhs >= rhs)


def check_split_robust(
    p: CantorParams, spec: ExponentSpec, lefts: Sequence[RationalLike], n: int, variant: str = "equality"
) -> SplitCheck:
    """The split inequality required at every pair, with the gap factor ``c``.

    Holds iff ``sum_{i != j} D_i >= c G_j`` for all ``j``, which is the same
    as the single comparison at :func:`critical_pair_index`.  Never holds
    for k <= 4.
    """
    delta = _delta(p.r, n, variant)
    vals = _validated_lefts(p, spec, lefts, n)
    ds, gs = _split_terms(spec, vals, delta)
    c = shift_factor(p.r)
    scores = [d + c * g for d, g in zip(ds, gs)]
    m = scores.index(max(scores))
    lhs = sum(ds, Fraction(0)) - ds[m]
    rhs = c * gs[m]
    return SplitCheck(tuple(vals), n, spec, 2 * m + 1, lhs, rhs, variant, lhs >= rhs)


# ---------------------------------------------------------------- certificate


@dataclass(frozen=True)
class CheckRecord:
    id: str
    kind: str
    lhs: Fraction
    rhs: Fraction
    cmp: str = ">="

    @property
    def holds(self) -> bool:
        if self.cmp != ">=":
            raise InvalidParameterError(f"unknown comparison {self.cmp!r}")
        return self.lhs >= self.rhs

    def to_wire(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
            "cmp": self.cmp,
            "holds": self.holds,
        }


@dataclass(frozen=True)
class Certificate:
    params: CantorParams
    spec: ExponentSpec
    k: int
    kStarEven: int
    nStar: int
    scalingExponent: int
    checks: tuple[CheckRecord, ...]
    version: str = SCHEMA
    conclusion: Optional[IntervalUnion] = field(default=None)

    @property
    def certified(self) -> bool:
        return self.conclusion is not None

    @property
    def first_failure(self) -> Optional[str]:
        for c in self.checks:
            if not c.holds:
                return c.id
        return None

    def to_wire(self) -> dict:
        if self.conclusion is not None:
            conclusion = {"status": "certified", "union": self.conclusion.to_wire()}
        else:
            conclusion = {"status": "not-certified", "firstFailure": self.first_failure}
        return {
            "version": self.version,
            "alpha": format_rational(self.params.alpha),
            "r": format_rational(self.params.r),
            "s": self.spec.s,
            "pairs": self.spec.to_wire(),
            "k": self.k,
            "kStarEven": self.kStarEven,
            "nStar": self.nStar,
            "scalingExponent": self.scalingExponent,
            "checks": [c.to_wire() for c in self.checks],
            "conclusion": conclusion,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_wire(), indent=2)


def _oriented(pair: tuple[int, int]) -> tuple[int, int]:
    return (min(pair), max(pair))


def _alternating_lefts(spec: ExponentSpec, low: Fraction, high: Fraction) -> list[Fraction]:
    """Put ``low`` on the smaller exponent of each pair and ``high`` on the larger."""
    out = []
    for a, b in spec.pairs:
        out.extend((low, high) if a <= b else (high, low))
    return out


def _representable(c: int, lo: int, hi: int) -> bool:
    """Whether ``c = l1 lo + l2 hi`` for some nonnegative integers l1, l2."""
    return any((c - l2 * hi) % lo == 0 for l2 in range(c // hi + 1))


def certify_coverage(p: CantorParams, spec: ExponentSpec, k: int) -> Certificate:
    """Run the fixed check pipeline for ``f`` on ``C^k``.

    ``spec`` is a pattern of pairs tiled cyclically to ``k/2`` pairs.  Every
    check is evaluated and recorded; the conclusion ``[0, k/2]`` is issued
    only when all of them hold.
    """
    if not isinstance(k, int) or k < 2 or k % 2:
        raise InvalidParameterError(f"k must be an even integer >= 2, got {k!r}")
    if not spec.pairs:
        raise InvalidParameterError("exponent spec must contain at least one pair")
    if k < spec.k:
        raise InvalidParameterError(f"k = {k} is smaller than the {spec.k} variables in the pattern")
    r = p.r
    s = spec.s
    report = bound_for_spec(r, spec)
    k_star = report.kStarEven
    n = report.nStar
    scale = report.inputs["a"] if report.aBar is None else report.aBar
    oriented = [_oriented(pair) for pair in spec.pairs]
    full = spec.tiled(k // 2)
    core = spec.tiled(k_star // 2)
    core_lo = [_oriented(pair)[0] for pair in core.pairs]
    core_hi = [_oriented(pair)[1] for pair in core.pairs]
    t = r**n
    checks = []

    # all variables at 1 - r, one subdivision step
    c1 = check_split(p, full, [1 - r] * k, 1, "inclusion")
    checks.append(CheckRecord("C1", "split-inclusion", c1.lhs, c1.rhs))

    checks.append(CheckRecord("kstar", "threshold", Fraction(k), Fraction(k_star)))

    c2 = check_split(p, core, _alternating_lefts(core, 1 - r, 1 - t), n, "inclusion")
    checks.append(CheckRecord("C2", "split-inclusion", c2.lhs, c2.rhs))

    # upper end of the core image minus its lower end must exceed one pair's reach
    high = [(1 - r + t) ** lo for lo in core_lo]
    low_end = sum(((1 - r) ** lo * (1 - t) ** hi for lo, hi in zip(core_lo, core_hi)), Fraction(0))
    checks.append(
        CheckRecord("overlap", "overlap", sum(high, Fraction(0)) - low_end, max((1 - r) ** lo for lo, _ in oriented))
    )

    # remaining pairs sit at (1 - r, 1)
    extra = spec.tiled(k // 2).pairs[k_star // 2 :] if k > k_star else ()
    join_lhs = sum(high, Fraction(0)) + sum(((1 - r) ** min(pair) for pair in extra), Fraction(0))
    checks.append(CheckRecord("join", "join", join_lhs, Fraction(k, 2) * (1 - r) ** s))

    checks.append(CheckRecord("glue", "glue", Fraction(k, 2) * r**scale, low_end))

    ok = sum(1 for lo, hi in oriented if _representable(scale, lo, hi))
    checks.append(CheckRecord("scaling", "scaling", Fraction(ok), Fraction(len(oriented))))

    conclusion = IntervalUnion.single(0, Fraction(k, 2)) if all(c.holds for c in checks) else None
    return Certificate(
        params=p,
        spec=spec,
        k=k,
        kStarEven=k_star,
        nStar=n,
        scalingExponent=scale,
        checks=tuple(checks),
        conclusion=conclusion,
    )


def certificate_from_wire(data: dict) -> Certificate:
    """Rebuild a certificate from its JSON form, trusting nothing but the shape."""
    version = data.get("version")
    if version != SCHEMA:
        raise UnsupportedVersionError(f"unsupported certificate version {version!r}")
    p = make_params(parse_rational(data["alpha"]))
    spec = ExponentSpec(tuple(tuple(pair) for pair in data["pairs"]))
    checks = tuple(
        CheckRecord(c["id"], c["kind"], parse_rational(c["lhs"]), parse_rational(c["rhs"]), c["cmp"])
        for c in data["checks"]
    )
    concl = data["conclusion"]
    union = IntervalUnion.from_wire(concl["union"]) if concl.get("status") == "certified" else None
    return Certificate(
        params=p,
        spec=spec,
        k=int(data["k"]),
        kStarEven=int(data["kStarEven"]),
        nStar=int(data["nStar"]),
        scalingExponent=int(data["scalingExponent"]),
        checks=checks,
        conclusion=union,
    )


def verify_certificate(cert: Certificate | dict) -> bool:
    """Recompute every record from ``(alpha, pairs, k)`` and compare exactly.

    Accepts a :class:`Certificate` or its wire dict.  An unknown version
    raises; any other mismatch, including a malformed payload, is ``False``.
    """
    if isinstance(cert, Certificate):
        if cert.version != SCHEMA:
            raise UnsupportedVersionError(f"unsupported certificate version {cert.version!r}")
        wire = cert.to_wire()
    else:
        if cert.get("version") != SCHEMA:
            raise UnsupportedVersionError(f"unsupported certificate version {cert.get('version')!r}")
        wire = cert
    try:
        p = make_params(parse_rational(wire["alpha"]))
        spec = ExponentSpec(tuple(tuple(pair) for pair in wire["pairs"]))
        fresh = certify_coverage(p, spec, int(wire["k"]))
    except (KeyError, TypeError, ValueError):
        return False
    return fresh.to_wire() == wire
