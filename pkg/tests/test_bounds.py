from decimal import Decimal
from fractions import Fraction

import pytest

import oracle
from fibtrib.bounds import (
    PROP1_BOUND, baker_wustholz_constant, baker_wustholz_integer_part, derive_lemma4, derive_lemma5,
    derive_proposition1, eta1_height_bound, height_sqrt5_calpha, linear_forms, modified_height_checks, run_bounds,
    small_case_absorption_check,
)
from fibtrib.errors import CoefficientTooLarge
from fibtrib.mpreal import CReal


def _encloses(x, ref, digits=250):
    t = oracle.tol(digits) * max(1, abs(ref))
    return oracle.D(x.lo) - t <= ref <= oracle.D(x.hi) + t


@pytest.fixture(scope="module")
def chain(c):
    return run_bounds(c)


def test_bw_constant_against_oracle(c):
    # [DERIVED] factorials and decimal ln
    assert _encloses(baker_wustholz_constant(3, 6, 1024), oracle.bw_constant(3, 6))
    assert baker_wustholz_integer_part(3, 6) == 18 * 24 * 81 * 192**5


def test_bw_constant_published_value():
    # [PAPER] C(3,6) ~ 3.2718e16
    C = baker_wustholz_constant(3, 6)
    assert C.certainly_gt(Fraction("3.2717e16")) and C.certainly_lt(Fraction("3.2719e16"))


def test_bw_small_case():
    # 18 * 2! * 1 * 32^3 * log 2
    assert _encloses(baker_wustholz_constant(1, 1, 512), Decimal(18 * 2 * 32**3) * Decimal(2).ln(), 140)
    with pytest.raises(ValueError):
        baker_wustholz_integer_part(0, 1)


def test_height_and_residual(c):
    h, residual = height_sqrt5_calpha(c)
    assert residual.contains_zero()
    assert _encloses(h, Decimal(1936).ln() / 6)
    assert all(modified_height_checks(c).values())


def test_linear_forms(c):
    forms = linear_forms(c)
    assert [f.label for f in forms] == ["Lambda", "Lambda1", "Lambda2", "Lambda3"]
    assert all(f.k == 3 and f.d == 6 for f in forms)


@pytest.mark.parametrize("k", [1, 2, 3, 50, 271])
def test_eta1_chain(c, k):
    e = eta1_height_bound(k, c)
    assert e.ok, e.chain
    with pytest.raises(ValueError):
        eta1_height_bound(0, c)


def test_lemma4_coefficient(c):
    d = derive_lemma4(c)
    ref = oracle.bw_constant(3, 6) * Decimal(1936).ln() / 6 * oracle.log_alpha() / 2 * oracle.log_alpha_T() / 3
    assert _encloses(d.coefficient, ref)
    # [PAPER] 2.02e15 inner, 2.03e15 after absorbing the shift
    assert d.ok and [ch.target for ch in d.checks[:2]] == [Fraction("2.02e15"), Fraction("2.03e15")]


def test_lemma5_chain(c):
    d = derive_lemma5(c)
    assert d.ok
    assert d.coefficient.certainly_lt(Fraction("1.65e30")) and d.coefficient.certainly_gt(Fraction("1.6e30"))


def test_defect_huge_constant_is_caught(c):
    with pytest.raises(CoefficientTooLarge) as info:
        derive_lemma4(c, bw_constant=CReal.from_int(10**17))
    assert not info.value.derivation.ok


def test_defect_doubled_height_is_caught(c):
    with pytest.raises(CoefficientTooLarge):
        derive_lemma5(c, h1_coefficient=2 * Fraction("1.03e15"))


def test_proposition1(chain):
    p = chain.proposition1
    assert p.ok and p.bound == PROP1_BOUND
    assert p.f_at_min.is_negative() and p.f_at_top.is_positive()
    assert p.f_at_bound.is_positive() and p.derivative_at_bound.is_positive()
    assert p.crossover - p.crossover_lo == 1 and p.crossover < PROP1_BOUND
    assert p.coefficient.coefficient.certainly_lt(Fraction("2.23e45"))


def test_crossover_against_oracle(chain):
    # [DERIVED] sign change of f at the reported crossover, in decimal
    K = Decimal("2.23e45")
    la = oracle.log_alpha()

    def f(n):
        return (n - 4) * la - K * Decimal(n).ln() ** 3

    x = chain.proposition1.crossover
    assert f(Decimal(x)) > 0 > f(Decimal(x - 1))


def test_absorption(chain):
    cases = {a.label: a for a in chain.absorption}
    assert all(a.covered for a in cases.values())
    # the published maxima are what the Lambda > 1/2 threshold gives
    assert [a.positive_side_max for a in chain.absorption] == [a.claimed_max for a in chain.absorption]
    # the threshold valid for both signs allows one more gap in each case
    assert [a.certified_max for a in chain.absorption] == [6, 3, 2, 7, 6]
    assert not any(a.claim_exact for a in chain.absorption)


def test_absorption_standalone(c):
    assert len(small_case_absorption_check(c)) == 5


def test_chain_ok(chain):
    assert chain.ok and chain.bound == PROP1_BOUND and chain.error is None
    j = chain.to_json()
    assert j["C(3,6)_integer_part"] == str(baker_wustholz_integer_part(3, 6))
