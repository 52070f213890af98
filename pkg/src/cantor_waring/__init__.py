"""Exact tools for non-diagonal forms on generalized Cantor sets.

Submodules: :mod:`.exact` (rationals, interval unions), :mod:`.cantor`
(the IFS and its basic intervals), :mod:`.bounds` (explicit k-bounds),
:mod:`.certifier` (split checks and coverage certificates),
:mod:`.explorer` (finite-level images) and :mod:`.cli`.
"""

from __future__ import annotations

from .bounds import (
    BoundReport,
    ExponentSpec,
    envelope_terms,
    finalcor_bound,
    fmt_bound,
    n_star,
    smt_bound,
    ternary_ab_bound,
    ternary_mresult_bound,
    tmt_bound,
)
from .cantor import CantorParams, apply_word, basic_interval, children, level_intervals, make_params
from .certifier import (
    Certificate,
    SplitCheck,
    certify_coverage,
    check_split,
    check_split_robust,
    form_value,
    max_pair_index,
    verify_certificate,
)
from .errors import *  # noqa: F401,F403
from .exact import Interval, IntervalUnion, minkowski_sum, normalize_union, union_gaps, union_measure
from .explorer import (
    CoverageReport,
    children_connectivity_oracle,
    coverage_report,
    form_image,
    product_measure_series,
    term_image,
)

__version__ = "0.1.0"
