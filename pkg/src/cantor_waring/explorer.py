"""Brute-force images of the form on the level-n approximants ``C_n``.

A monomial ``x^a y^b`` is increasing in each coordinate on the nonnegative
quadrant, so its image of a box is the interval between its values at the
lower and upper corners.  Each term is imaged over all ``4^n`` pairs of
basic intervals; the form's image is then the Minkowski sum of the term
images, folded left over the pairs.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .bounds import ExponentSpec
from .cantor import CantorParams, is_left_endpoint, scaled_level_lefts
from .certifier import form_value
from .errors import InvalidConfigurationError, InvalidParameterError, ResourceLimitError
from .exact import Interval, IntervalUnion, RationalLike, format_rational, minkowski_sum, to_rational

SCHEMA = "coverage/1"
#: Default cap on the level used for per-term images (4^10 boxes).
DEFAULT_MAX_LEVEL = 10
#: Default cap on k for the child-box oracle (2^8 boxes).
DEFAULT_ORACLE_MAX_K = 8


def _check_level(n: int, max_level: Optional[int]) -> None:
    if n < 0:
        raise InvalidParameterError(f"level must be nonnegative, got {n}")
    cap = DEFAULT_MAX_LEVEL if max_level is None else max_level
    if n > cap:
        raise ResourceLimitError(f"level {n} needs 4^{n} boxes per term (cap 4^{cap})")


def term_image(p: CantorParams, a: int, b: int, n: int, max_level: Optional[int] = None) -> IntervalUnion:
    """Image of ``x^a y^b`` on ``C_n x C_n``."""
    if a < 1 or b < 1:
        raise InvalidParameterError(f"exponents must be positive, got ({a}, {b})")
    _check_level(n, max_level)
    den, lefts, width = scaled_level_lefts(p, n, limit=n)
    lo_a = [u**a for u in lefts]
    hi_a = [(u + width) ** a for u in lefts]
    lo_b = [v**b for v in lefts]
    hi_b = [(v + width) ** b for v in lefts]
    pieces = [(la * lb, ha * hb) for la, ha in zip(lo_a, hi_a) for lb, hb in zip(lo_b, hi_b)]
    return IntervalUnion.from_scaled(den ** (a + b), pieces)


def form_image(p: CantorParams, spec: ExponentSpec, n: int, max_level: Optional[int] = None) -> IntervalUnion:
    """Image of the whole form on ``C_n^k``."""
    if not spec.pairs:
        raise InvalidParameterError("exponent spec must contain at least one pair")
    cache: dict[tuple[int, int], IntervalUnion] = {}
    image = None
    for pair in spec.pairs:
        if pair not in cache:
            cache[pair] = term_image(p, pair[0], pair[1], n, max_level)
        image = cache[pair] if image is None else minkowski_sum(image, cache[pair])
    return image


@dataclass(frozen=True)
class CoverageReport:
    params: CantorParams
    spec: ExponentSpec
    level: int
    image: IntervalUnion
    target: Interval
    gaps: tuple[Interval, ...]
    measure: Fraction

    @property
    def gapFree(self) -> bool:
        return not self.gaps

    def to_wire(self) -> dict:
        return {
            "version": SCHEMA,
            "alpha": format_rational(self.params.alpha),
            "r": format_rational(self.params.r),
            "s": self.spec.s,
            "pairs": self.spec.to_wire(),
            "level": self.level,
            "target": self.target.to_wire(),
            "image": self.image.to_wire(),
            "gaps": [g.to_wire() for g in self.gaps],
            "measure": format_rational(self.measure),
            "gapFree": self.gapFree,
        }

    def to_csv(self) -> str:
        """Image parts as ``lo,hi`` rows."""
        return union_to_csv(self.image)


def union_to_csv(u: IntervalUnion) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["lo", "hi"])
    writer.writerows(part.to_wire() for part in u)
    return buf.getvalue()


def coverage_report(
    p: CantorParams,
    spec: ExponentSpec,
    n: int,
    target: Optional[Interval] = None,
    max_level: Optional[int] = None,
) -> CoverageReport:
    """Image, its exact measure, and the gaps it leaves in ``target`` (default ``[0, k/2]``)."""
    image = form_image(p, spec, n, max_level)
    if target is None:
        target = Interval(Fraction(0), Fraction(spec.k, 2))
    return CoverageReport(
        params=p,
        spec=spec,
        level=n,
        image=image,
        target=target,
        gaps=tuple(image.gaps(target)),
        measure=image.measure(),
    )


def product_measure_series(p: CantorParams, n_max: int, max_level: Optional[int] = None) -> list[Fraction]:
    """Measures of the images of ``xy`` on ``C_n x C_n`` for ``n = 1..n_max``."""
    _check_level(n_max, max_level)
    return [term_image(p, 1, 1, n, max_level).measure() for n in range(1, n_max + 1)]


def child_box_images(
    p: CantorParams, spec: ExponentSpec, lefts: Sequence[RationalLike], n: int
) -> list[Interval]:
    """Images of the ``2^k`` boxes formed by the children of each coordinate interval."""
    width = p.r ** (n + 1)
    choices = []
    for u in lefts:
        u = to_rational(u)
        right = u + p.r**n - width
        choices.append(((u, u + width), (right, right + width)))
    out = []
    for box in itertools.product(*choices):
        lo = form_value(spec, [c[0] for c in box])
        hi = form_value(spec, [c[1] for c in box])
        out.append(Interval(lo, hi))
    return out


def children_connectivity_oracle(
    p: CantorParams,
    spec: ExponentSpec,
    lefts: Sequence[RationalLike],
    n: int,
    max_k: int = DEFAULT_ORACLE_MAX_K,
) -> bool:
    """Whether the child-box images of one configuration form a single interval."""
    if spec.k > max_k:
        raise ResourceLimitError(f"oracle enumerates 2^{spec.k} boxes (cap k <= {max_k})")
    if len(lefts) != spec.k:
        raise InvalidParameterError(f"expected {spec.k} left endpoints, got {len(lefts)}")
    for i, u in enumerate(lefts):
        if not is_left_endpoint(p, u, n):
            raise InvalidConfigurationError(f"lefts[{i}] = {u} is not a level-{n} left endpoint")
    return IntervalUnion(child_box_images(p, spec, lefts, n)).is_interval
