from __future__ import annotations

import itertools
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cantor_waring.bounds import ExponentSpec
from cantor_waring.cantor import apply_word, level_lefts, make_params
from cantor_waring.certifier import (
    certificate_from_wire,
    certify_coverage,
    check_split,
    check_split_robust,
    critical_pair_index,
    form_value,
    max_pair_index,
    shift_factor,
    verify_certificate,
)
from cantor_waring.errors import InvalidConfigurationError, InvalidParameterError, UnsupportedVersionError
from cantor_waring.explorer import children_connectivity_oracle

F = Fraction
P3 = make_params(3)
TWO_THIRDS = F(2, 3)


def test_form_value():
    assert form_value(ExponentSpec.uniform(1, 1, 2), [1, 1, 1, 1]) == 2
    assert form_value(ExponentSpec(((2, 1),)), [F(1, 3), F(2, 3)]) == F(2, 27)
    with pytest.raises(InvalidParameterError):
        form_value(ExponentSpec(((1, 1),)), [1, 1, 1])


def test_max_pair_index():
    one_one = ExponentSpec.uniform(1, 1, 2)
    assert max_pair_index(one_one, [TWO_THIRDS, TWO_THIRDS, 0, 0]) == 1
    assert max_pair_index(one_one, [TWO_THIRDS] * 4) == 1
    assert max_pair_index(ExponentSpec.uniform(1, 2, 2), [0, TWO_THIRDS, TWO_THIRDS, TWO_THIRDS]) == 3


def test_check_split_examples():
    c = check_split(P3, ExponentSpec.uniform(1, 1, 5), [TWO_THIRDS] * 10, 1, "inclusion")
    assert (c.lhs, c.rhs, c.holds, c.maxIndex) == (F(16, 3), 2, True, 1)
    c = check_split(P3, ExponentSpec.uniform(1, 1, 2), [TWO_THIRDS] * 4, 1, "equality")
    assert (c.lhs, c.rhs, c.holds) == (F(4, 3), F(16, 9), False)
    c = check_split(P3, ExponentSpec.uniform(1, 1, 1), [TWO_THIRDS] * 2, 1, "inclusion")
    assert c.lhs == 0 and not c.holds


def test_check_split_rejects_bad_input():
    with pytest.raises(InvalidConfigurationError):
        check_split(P3, ExponentSpec.uniform(1, 1, 1), [F(1, 2), 0], 1, "equality")
    with pytest.raises(InvalidParameterError):
        check_split(P3, ExponentSpec.uniform(1, 1, 1), [0, 0], 1, "sideways")
    with pytest.raises(InvalidParameterError):
        check_split(P3, ExponentSpec.uniform(1, 1, 1), [0], 1, "equality")


def test_literal_split_check_has_false_positives():
    # (0, 0, 0, 2/3) at level 2: the product maximizer is the zero pair,
    # yet the children of the other pair leave a gap
    spec = ExponentSpec.uniform(1, 1, 2)
    lefts = [0, 0, 0, TWO_THIRDS]
    assert check_split(P3, spec, lefts, 2, "equality").holds
    assert not children_connectivity_oracle(P3, spec, lefts, 2)
    assert not check_split_robust(P3, spec, lefts, 2).holds


def test_robust_index_and_factor():
    assert shift_factor(F(1, 3)) == 1
    assert shift_factor(F(3, 10)) == F(4, 3)
    spec = ExponentSpec.uniform(1, 1, 2)
    lefts = [0, 0, 0, TWO_THIRDS]
    assert critical_pair_index(P3, spec, lefts, 2) == 3
    assert check_split_robust(P3, spec, lefts, 2).maxIndex == 3


def _configs(alpha, k, n, s_values):
    p = make_params(alpha)
    lefts = level_lefts(p, n)
    for s in s_values:
        for pattern in itertools.product(range(1, s), repeat=k // 2):
            spec = ExponentSpec(tuple((a, s - a) for a in pattern))
            for config in itertools.product(lefts, repeat=k):
                yield p, spec, config


@pytest.mark.parametrize("alpha", [F(3), F(4), F(5, 2)])
def test_robust_check_never_holds_below_six_variables(alpha):
    for p, spec, config in _configs(alpha, 4, 1, (2, 3)):
        assert not check_split_robust(p, spec, config, 1).holds


@pytest.mark.parametrize("alpha", [F(3), F(4), F(5), F(5, 2)])
def test_robust_check_is_sound_for_six_variables(alpha):
    rng = random.Random(20)
    p = make_params(alpha)
    held = 0
    for _ in range(250):
        n = rng.choice([1, 2])
        s = rng.randint(2, 4)
        spec = ExponentSpec(tuple((a, s - a) for a in (rng.randint(1, s - 1) for _ in range(3))))
        lefts = level_lefts(p, n)
        config = [rng.choice(lefts) for _ in range(6)]
        if check_split_robust(p, spec, config, n).holds:
            held += 1
            assert children_connectivity_oracle(p, spec, config, n)
    assert held > 0


@given(
    st.sampled_from([F(3), F(4), F(5, 2)]),
    st.integers(min_value=1, max_value=3),
    st.integers(min_value=1, max_value=3),
    st.integers(min_value=1, max_value=3),
)
def test_split_monotone_in_appended_pairs(alpha, a, b, extra):
    p = make_params(alpha)
    base = ExponentSpec.uniform(a, b, 2)
    lefts = [1 - p.r, 1 - p.r, 0, 1 - p.r]
    before = check_split(p, base, lefts, 1, "inclusion")
    grown = ExponentSpec.uniform(a, b, 2 + extra)
    after = check_split(p, grown, lefts + [1 - p.r] * (2 * extra), 1, "inclusion")
    assert after.lhs >= before.lhs
    if before.holds:
        assert after.holds


def test_certify_headline():
    cert = certify_coverage(P3, ExponentSpec.uniform(1, 2, 7), 14)
    assert cert.certified
    assert cert.conclusion.to_wire() == [["0", "7"]]
    assert [c.id for c in cert.checks] == ["C1", "kstar", "C2", "overlap", "join", "glue", "scaling"]
    c1 = cert.checks[0]
    assert (c1.lhs, c1.rhs) == (8, 3)
    assert verify_certificate(cert)


def test_certify_failure_names_c1():
    cert = certify_coverage(P3, ExponentSpec.uniform(1, 1, 2), 4)
    assert not cert.certified
    assert cert.first_failure == "C1"
    assert cert.to_wire()["conclusion"] == {"status": "not-certified", "firstFailure": "C1"}
    assert verify_certificate(cert)


def test_certify_preconditions():
    with pytest.raises(InvalidParameterError):
        certify_coverage(make_params(1), ExponentSpec.uniform(1, 1, 1), 4)
    with pytest.raises(InvalidParameterError):
        certify_coverage(P3, ExponentSpec.uniform(1, 1, 1), 5)
    with pytest.raises(InvalidParameterError):
        certify_coverage(P3, ExponentSpec.uniform(1, 1, 3), 4)


def test_scaling_check_catches_unreachable_exponent():
    # s = 7 with a pair (2, 5): 3 is not 2 l1 + 5 l2
    cert = certify_coverage(P3, ExponentSpec(((2, 5), (3, 4))), 400)
    scaling = cert.checks[-1]
    assert scaling.id == "scaling" and not scaling.holds


def test_tamper_detection():
    wire = certify_coverage(P3, ExponentSpec.uniform(1, 2, 7), 14).to_wire()
    assert verify_certificate(wire)
    for i in range(len(wire["checks"])):
        bad = json.loads(json.dumps(wire))
        bad["checks"][i]["lhs"] = bad["checks"][i]["lhs"] + "1"
        assert not verify_certificate(bad)
    bad = json.loads(json.dumps(wire))
    bad["conclusion"]["union"] = [["0", "8"]]
    assert not verify_certificate(bad)
    bad = json.loads(json.dumps(wire))
    del bad["k"]
    assert not verify_certificate(bad)
    with pytest.raises(UnsupportedVersionError):
        verify_certificate({**wire, "version": "bogus/9"})


def test_wire_round_trip():
    cert = certify_coverage(make_params(4), ExponentSpec(((1, 3), (2, 2))), 40)
    again = certificate_from_wire(json.loads(cert.to_json()))
    assert again.to_json() == cert.to_json()
    assert verify_certificate(again)


@pytest.mark.parametrize("alpha", [F(3), F(4)])
@pytest.mark.parametrize("pattern", [((1, 1),), ((1, 2),), ((1, 3),), ((2, 2),), ((1, 3), (2, 2))])
def test_certification_monotone_in_k(alpha, pattern):
    p = make_params(alpha)
    spec = ExponentSpec(pattern)
    status = [certify_coverage(p, spec, k).certified for k in range(spec.k, 80, 2)]
    assert any(status)
    first = status.index(True)
    assert all(status[first:])


@given(
    st.sampled_from([F(3), F(4), F(5, 2)]),
    st.integers(min_value=2, max_value=4),
    st.lists(st.text(alphabet="01", max_size=6), min_size=4, max_size=4),
    st.integers(min_value=1, max_value=3),
)
def test_scaling_identity(alpha, s, words, a):
    p = make_params(alpha)
    a = min(a, s - 1)
    spec = ExponentSpec(((a, s - a), (s - a, a)))
    xs = [apply_word(p, w, 0) for w in words]
    assert form_value(spec, [p.r * x for x in xs]) == p.r**s * form_value(spec, xs)
