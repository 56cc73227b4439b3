from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from fibtrib.errors import (
    DivisorStraddlesZero, DomainError, MultipleRootsSuspected, NoSignChange, PrecisionExhausted, TooWide,
)
from fibtrib.mpreal import (
    CALPHA_POLY, FIB_POLY, SQRT5_CALPHA_POLY, TRIB_POLY, CReal, PrecisionPolicy, alpha_T_from_radicals,
    arith, calpha_from_alpha_T, constants, creal_from_integer, creal_from_rational, elementary,
    isolate_real_root, nearest_integer_distance, poly_eval, pow_int, refine,
)

rationals = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**6)
nonzero = rationals.filter(lambda x: x != 0)
precs = st.sampled_from([64, 100, 256, 1000])


def encloses_decimal(x: CReal, ref, digits: int = 250) -> bool:
    t = oracle.tol(digits)
    return oracle.D(x.lo) - t <= ref <= oracle.D(x.hi) + t


# -- containment against exact rationals -------------------------------------------

@settings(max_examples=2500, deadline=None)
@given(rationals, rationals, precs)
def test_add_sub_contain_exact(a, b, p):
    x, y = CReal.from_fraction(a, p), CReal.from_fraction(b, p)
    assert (x + y).contains(a + b)
    assert (x - y).contains(a - b)


@settings(max_examples=2500, deadline=None)
@given(rationals, rationals, precs)
def test_mul_contains_exact(a, b, p):
    assert (CReal.from_fraction(a, p) * CReal.from_fraction(b, p)).contains(a * b)


@settings(max_examples=2500, deadline=None)
@given(rationals, nonzero, precs)
def test_div_contains_exact(a, b, p):
    assert (CReal.from_fraction(a, p) / CReal.from_fraction(b, p)).contains(a / b)


@settings(max_examples=2500, deadline=None)
@given(rationals.filter(lambda x: abs(x) < 1000), st.integers(-6, 12), precs)
def test_pow_int_contains_exact(a, n, p):
    if a == 0 and n < 0:
        return
    assert pow_int(CReal.from_fraction(a, p), n).contains(a ** n)


@settings(max_examples=300, deadline=None)
@given(st.fractions(min_value=Fraction(1, 10**4), max_value=10**6, max_denominator=10**4), precs)
def test_log_sqrt_against_decimal(a, p):
    x = CReal.from_fraction(a, p)
    d = oracle.D(a)
    digits = min(250, int(p * 0.30))
    assert encloses_decimal(x.log(), d.ln(), digits)
    assert encloses_decimal(x.sqrt(), d.sqrt(), digits)
    assert encloses_decimal(x.nth_root(3), d ** (oracle.D(1) / 3), digits)


@settings(max_examples=300, deadline=None)
@given(st.fractions(min_value=-50, max_value=50, max_denominator=10**4), precs)
def test_exp_against_decimal(a, p):
    assert encloses_decimal(CReal.from_fraction(a, p).exp(), oracle.D(a).exp(), min(250, int(p * 0.30)))


@settings(max_examples=200, deadline=None)
@given(st.fractions(min_value=Fraction(1, 100), max_value=100, max_denominator=1000),
       st.sampled_from(["log", "exp", "sqrt"]), st.sampled_from([64, 128, 512]))
def test_monotone_refinement(a, fn, p):
    lo = getattr(CReal.from_fraction(a, p), fn)()
    hi = getattr(CReal.from_fraction(a, 2 * p), fn)()
    assert hi.width() <= lo.width()
    assert lo.lo <= hi.hi and hi.lo <= lo.hi


# -- representation and comparisons --------------------------------------------------

def test_integers_are_exact_at_any_precision():
    big = 3**500
    x = creal_from_integer(big, 64)
    assert x.is_exact() and x.lo == big


def test_rational_enclosure_is_tight():
    x = creal_from_rational(Fraction(1, 3), 128)
    assert x.contains(Fraction(1, 3)) and not x.is_exact()
    assert x.width() <= Fraction(1, 2**127)


def test_comparisons_are_certified():
    third = CReal.from_fraction(Fraction(1, 3), 64)
    assert third.certainly_lt(Fraction(334, 1000))
    assert not third.certainly_lt(Fraction(1, 3))
    assert not third.certainly_gt(Fraction(1, 3))
    wide = CReal.from_bounds(-1, 1)
    assert wide.contains_zero() and not wide.is_positive() and not wide.is_negative()


def test_division_by_straddling_interval():
    with pytest.raises(DivisorStraddlesZero):
        CReal.from_int(1) / CReal.from_bounds(-1, 1)


def test_domain_errors():
    with pytest.raises(DomainError):
        CReal.from_int(-2).log()
    with pytest.raises(DomainError):
        CReal.from_bounds(0, 1).log()
    with pytest.raises(DomainError):
        CReal.from_int(-2).sqrt()


def test_arith_dispatch():
    a, b = CReal.from_int(7), CReal.from_int(2)
    assert arith(a, b, "div").contains(Fraction(7, 2))
    with pytest.raises(ValueError):
        arith(a, b, "pow")


def test_elementary_dispatch():
    assert elementary(CReal.from_int(8), "nth_root", 3).contains(2)
    assert elementary(CReal.from_int(3), "pow_int", 4).contains(81)


def test_decimal_output_is_outward():
    x = CReal.from_fraction(Fraction(2, 3), 200)
    assert x.lower_decimal(5) == "0.66666"
    assert x.upper_decimal(5) == "0.66667"
    j = x.to_json()
    assert set(j) == {"lo", "hi", "bits"} and j["bits"] == 200


def test_pickle_round_trip():
    import pickle
    x = constants(256).alpha_T
    assert pickle.loads(pickle.dumps(x)) == x


# -- nearest integer distance ------------------------------------------------------------

@pytest.mark.parametrize("value,expected", [
    (Fraction(7, 2), Fraction(1, 2)),
    (Fraction(-13, 4), Fraction(1, 4)),
    (Fraction(5), Fraction(0)),
    (Fraction(99, 10), Fraction(1, 10)),
])
def test_nearest_integer_distance_exact(value, expected):
    assert nearest_integer_distance(CReal.from_fraction(value, 256)).contains(expected)


@settings(max_examples=500, deadline=None)
@given(rationals)
def test_nearest_integer_distance_contains(a):
    exact = abs(a - round(a))
    assert nearest_integer_distance(CReal.from_fraction(a, 128)).contains(exact)


def test_nearest_integer_distance_too_wide():
    with pytest.raises(TooWide):
        nearest_integer_distance(CReal.from_bounds(0, Fraction(1, 3)))


# -- refinement -----------------------------------------------------------------------------

def test_refine_reaches_target():
    enc = refine(lambda p: CReal.from_int(2, p).sqrt(), Fraction(1, 2**200))
    assert enc.width() <= Fraction(1, 2**200)


def test_refine_integer_returns_input():
    enc = refine(lambda p: CReal.from_int(17, p), 0)
    assert enc.is_exact() and enc.lo == 17


def test_refine_irrational_to_zero_width_exhausts():
    with pytest.raises(PrecisionExhausted) as info:
        refine(lambda p: CReal.from_int(2, p).sqrt(), 0, PrecisionPolicy(64, 256))
    assert info.value.enclosure is not None and info.value.bits == 256


def test_policy_ladder():
    assert list(PrecisionPolicy(64, 300, 2).ladder()) == [64, 128, 256, 300]
    with pytest.raises(ValueError):
        PrecisionPolicy(64, 32)
    with pytest.raises(ValueError):
        PrecisionPolicy(64, 128, 1)


# -- roots and constants ------------------------------------------------------------------

def test_isolate_errors():
    with pytest.raises(NoSignChange):
        isolate_real_root((1, 0, -2), (2, 3))
    with pytest.raises(MultipleRootsSuspected):
        isolate_real_root((1, 0, -1, 0), (-2, 2))   # three roots inside


def test_isolate_exact_rational_root():
    assert isolate_real_root((2, -1), (0, 1)).contains(Fraction(1, 2))


@pytest.mark.parametrize("poly,name", [(FIB_POLY, "alpha"), (TRIB_POLY, "alpha_T"), (CALPHA_POLY, "c_alpha")])
def test_root_residuals(c, poly, name):
    assert poly_eval(poly, getattr(c, name)).contains_zero()


def test_sqrt5_calpha_residual(c):
    assert poly_eval(SQRT5_CALPHA_POLY, c.sqrt5 * c.c_alpha).contains_zero()
    assert not poly_eval(SQRT5_CALPHA_POLY, c.sqrt5 * Fraction(1, 2)).contains_zero()


def test_constants_against_decimal_oracle(c):
    # [DERIVED] independent Newton iteration and correctly rounded ln in decimal
    assert encloses_decimal(c.alpha, oracle.alpha())
    assert encloses_decimal(c.alpha_T, oracle.alpha_T())
    assert encloses_decimal(c.c_alpha, oracle.c_alpha())
    assert encloses_decimal(c.tau, oracle.tau())
    assert encloses_decimal(c.log_sqrt5_c_alpha, oracle.log_sqrt5_c_alpha())
    assert encloses_decimal(c.beta_T_abs, 1 / oracle.alpha_T().sqrt())


def test_constants_inside_published_brackets(c):
    # [PAPER] decimal brackets for the Tribonacci constants
    assert c.alpha_T.certainly_gt(Fraction("1.839")) and c.alpha_T.certainly_lt(Fraction("1.840"))
    assert c.c_alpha.certainly_gt(Fraction("0.336")) and c.c_alpha.certainly_lt(Fraction("0.337"))
    assert c.beta_T_abs.certainly_gt(Fraction("0.737")) and c.beta_T_abs.certainly_lt(Fraction("0.738"))
    assert c.c_beta_abs.certainly_gt(Fraction("0.259")) and c.c_beta_abs.certainly_lt(Fraction("0.260"))
    # log(alpha_T)/log(alpha) ~ 1.2663
    assert c.tau_inv.certainly_gt(Fraction("1.2663")) and c.tau_inv.certainly_lt(Fraction("1.2664"))


def test_cross_checks(c):
    r = alpha_T_from_radicals()
    assert r.lo <= c.alpha_T.hi and c.alpha_T.lo <= r.hi
    alt = calpha_from_alpha_T(c)
    assert alt.lo <= c.c_alpha.hi and c.c_alpha.lo <= alt.hi


def test_constant_widths(c):
    for name in ("alpha", "alpha_T", "c_alpha", "tau", "log_alpha"):
        assert getattr(c, name).width() < Fraction(1, 2**1000)
