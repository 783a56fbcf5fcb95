import cmath
import math

import pytest
from hypothesis import given, settings, strategies as st

from mahler_sep.bounds import (
    BOUND_IDS,
    GENERAL,
    NONREAL_MIN,
    NotSeparableError,
    applicable_exponent_case,
    central_binomial_check,
    central_binomial_even_check,
    check_all,
    discriminant_upper,
    improved_upper,
    lehmer_window,
    mahler_lower_bound,
    main_upper,
    packing_check,
    robbins_check,
    totally_real_constant_check,
    trivial_upper,
    wendel_check,
)
from mahler_sep.measures import Signature
from mahler_sep.poly import RootSet, from_coefficients
from mahler_sep.rootfind import find_roots

W = cmath.exp(2j * math.pi / 3)
CUBE = RootSet.exact([1, W, W.conjugate()])
QUARTIC = RootSet.exact([1 + 1j, 1 - 1j, -1 + 1j, -1 - 1j])
AP5 = RootSet.exact([0, 1, -1, 2, -2])


def test_mahler_lower_examples():
    # n^{(n+2)/2} is 4 at n = 2
    assert mahler_lower_bound(2, 1, 4) == pytest.approx(math.sqrt(12) / 4, rel=1e-14)
    assert mahler_lower_bound(2, 1, 4) < 2
    assert mahler_lower_bound(3, 1, 27) == pytest.approx(9 / 3 ** 2.5, rel=1e-14)
    assert mahler_lower_bound(2, 1, integer_case=True) == pytest.approx(math.sqrt(3) / 4, rel=1e-14)
    assert mahler_lower_bound(3, 1, 0) is None


def test_trivial_and_discriminant_upper():
    assert trivial_upper(3.0) == 6.0
    assert discriminant_upper(2, 1) == pytest.approx(2)
    assert discriminant_upper(4, 4) == pytest.approx(4 ** (1 / 3) * 2, rel=1e-14)
    assert discriminant_upper(3, 1) == pytest.approx(math.sqrt(3), rel=1e-14)


def test_main_upper_examples():
    assert main_upper(4, 4, NONREAL_MIN) == pytest.approx(2 * math.sqrt(2), rel=1e-14)
    assert main_upper(289, 1) == pytest.approx(2.0)
    assert main_upper(400, 1) == pytest.approx(1.7)
    assert main_upper(10, 2.0) == pytest.approx(2 * 2 ** (1 / 9))


def test_exponent_case_examples():
    assert applicable_exponent_case(QUARTIC) == NONREAL_MIN
    assert applicable_exponent_case(CUBE) == NONREAL_MIN
    assert applicable_exponent_case(RootSet.exact([1, 2, 3])) == GENERAL


def test_improved_upper_examples():
    assert improved_upper(Signature(1, 1), 3, 1) == pytest.approx(math.sqrt(3))
    assert improved_upper(Signature(0, 2), 4, 4) == pytest.approx(2.0)
    assert improved_upper(Signature(5, 0), 5, 4) == pytest.approx(6.33 / 5 * 4 ** 0.25)
    assert improved_upper(Signature(5, 0), 5, 4) == pytest.approx(1.790, abs=1e-3)
    assert improved_upper(Signature(2, 2), 6, 1) is None
    with pytest.raises(ValueError):
        improved_upper(Signature(1, 1), 4, 1)


def test_totally_real_below_four_defers_to_main_bound():
    assert improved_upper(Signature(3, 0), 3, 2.0) == pytest.approx(main_upper(3, 2.0))


def test_lehmer_window_examples():
    w = lehmer_window(2, 1.2)
    assert w.lo == pytest.approx(math.sqrt(3) / (4 * 1.2), rel=1e-12)
    assert w.hi == pytest.approx(2.4, rel=1e-12)
    w = lehmer_window(10, 1.17628)
    assert w.lo == pytest.approx(math.sqrt(3) / (10 ** 6 * 1.17628 ** 9), rel=1e-12)
    assert w.hi == pytest.approx(2 * 1.17628 ** (1 / 9), rel=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 500), st.floats(1.0001, 100.0))
def test_lehmer_window_nonempty(n, mu):
    w = lehmer_window(n, mu)
    assert w.lo < w.hi


def test_packing_examples():
    pk = packing_check(CUBE, 1.1)
    assert pk.count == 3
    assert pk.bound == pytest.approx((1.1 / (math.sqrt(3) / 2) + 1) ** 2)
    assert pk.ok
    assert packing_check(CUBE, 0).count == 0 and packing_check(CUBE, 0).ok
    pk = packing_check(AP5, 2.5)
    assert pk.count == 5 and pk.bound == pytest.approx(36) and pk.ok


def test_check_all_cubic_equality():
    p = from_coefficients([-1, 0, 0, 1])
    rep = check_all(find_roots(p), p)
    assert rep.all_satisfied
    assert abs(rep.entry("improved_upper").margin) <= 1e-12
    assert [e.bound_id for e in rep.entries] == list(BOUND_IDS)


def test_check_all_quartic_equality():
    rep = check_all(QUARTIC)
    assert rep.all_satisfied
    assert abs(rep.entry("improved_upper").margin) <= 1e-12
    # roots alone give no integer structure
    assert not rep.entry("mahler_lower_integer").applicable


def test_check_all_random_quintic():
    p = from_coefficients([3, -7, 2, 5, -1, 1])
    rep = check_all(find_roots(p), p)
    assert rep.all_satisfied
    assert rep.entry("mahler_lower_integer").applicable


def test_check_all_rejects_double_root():
    p = from_coefficients([1, 2, 1])
    with pytest.raises(NotSeparableError):
        check_all(find_roots(p), p)


def test_inapplicable_entries_are_marked():
    rep = check_all(RootSet.exact([1, 2, 3.5]))
    e = rep.entry("main_upper_nonreal_min")
    assert not e.applicable and e.value is None and e.satisfied is None


def test_report_json_shape():
    doc = check_all(CUBE).to_json()
    assert set(doc) == {"n", "sep", "abs_sep", "mahler", "entries"}
    assert doc["abs_sep"] is None


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-10, 10), min_size=2, max_size=10))
def test_random_integer_polynomials_satisfy_every_bound(lower):
    p = from_coefficients(lower + [1])
    try:
        rep = check_all(find_roots(p), p)
    except NotSeparableError:
        return
    assert rep.violations == []


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(-3, 3), min_size=4, max_size=10, unique=True))
def test_real_rooted_sets_satisfy_improved_bound(xs):
    rs = RootSet.exact(xs)
    try:
        rep = check_all(rs, real=True)
    except NotSeparableError:
        return
    assert rep.entry("improved_upper").applicable
    assert rep.all_satisfied


# analytic inequalities

def test_central_binomial_examples():
    c = central_binomial_check(3)
    assert c.lhs == pytest.approx(3) and c.rhs == pytest.approx(16 / math.sqrt(7 * math.pi)) and c.ok
    c = central_binomial_check(4)
    assert c.lhs == pytest.approx(6) and c.rhs == pytest.approx(32 / math.sqrt(9 * math.pi)) and c.ok


def test_central_binomial_even_form():
    assert all(central_binomial_even_check(ell).ok for ell in range(1, 201))


def test_wendel_examples():
    c = wendel_check(1)
    assert c.lhs == pytest.approx(math.sqrt(math.pi) / 2) and c.rhs == pytest.approx(1 / math.sqrt(1.5))
    c = wendel_check(2)
    assert c.lhs == pytest.approx(3 * math.sqrt(math.pi) / 4) and c.rhs == pytest.approx(2 / math.sqrt(2.5))


@pytest.mark.parametrize("m", [1, 10, 50, 100, 170])
def test_wendel_against_lgamma(m):
    c = wendel_check(m)
    assert math.log(c.lhs) == pytest.approx(math.lgamma(m + 0.5), rel=1e-12)
    assert c.ok


def test_robbins_small_n():
    c = robbins_check(1)
    # sqrt(2 pi) e^{-1} e^{1/13}
    assert c.rhs == pytest.approx(math.sqrt(2 * math.pi) / math.e * math.exp(1 / 13), rel=1e-14)
    assert c.rhs == pytest.approx(0.99587, abs=1e-5)
    assert c.ok


def test_totally_real_constant():
    assert all(totally_real_constant_check(n).ok for n in range(4, 401))


@settings(max_examples=40, deadline=None)
@given(st.floats(1 / math.sqrt(2), 50.0))
def test_quartic_upper_bound_ordering(t):
    rs = RootSet.exact([complex(t * a, t * b) for a, b in ((1, 1), (-1, 1), (-1, -1), (1, -1))])
    rep = check_all(rs, real=True)
    imp = rep.entry("improved_upper").value
    nr = rep.entry("main_upper_nonreal_min").value
    triv = rep.entry("trivial_upper").value
    assert imp <= nr * (1 + 1e-12) and nr <= triv * (1 + 1e-12)
    assert rep.all_satisfied
