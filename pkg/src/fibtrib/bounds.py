"""Certified arithmetic behind the Baker-Wustholz bound n < 8e51.

The theorem itself is taken as given: for a nonzero linear form in k
logarithms of algebraic numbers in a field of degree d,

    log|Lambda| >= -C(k, d) h'(a_1) ... h'(a_k) log B,
    C(k, d) = 18 (k+1)! k^(k+1) (32 d)^(k+2) log(2 k d).

What is checked here is that every numeric constant in the chain leading
to n < 8e51 follows from that formula.  Bounds of the form c log n or
c (log n)^2 are certified as coefficient comparisons valid for n >= 300,
with additive constants divided by the matching power of log 300.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Optional

from .errors import BisectionFailed, CoefficientTooLarge
from .mpreal import (
    SQRT5_CALPHA_POLY, AlgebraicConstants, CReal, PrecisionPolicy, constants, poly_eval, pow_int,
)
from .sequences import fibonacci, lucas

K_LOGS = 3
FIELD_DEGREE = 6
N_MIN = 300

# published constants, checked below
LEMMA4_INNER = "2.02e15"
LEMMA4 = "2.03e15"
ETA1_H0 = "1.02e15"
H1_LAMBDA1 = "1.03e15"
H1_LAMBDA2 = "6.77e14"
LEMMA5_INNER = "1.65e30"
LEMMA5 = "1.66e30"
LEMMA5_USED = "1.67e30"
PROP1_COEFF = "2.23e45"
PROP1_BOUND = 8 * 10**51


def _q(s) -> Fraction:
    return Fraction(s)


@dataclass
class CoefficientCheck:
    name: str
    value: CReal
    target: Fraction
    holds: bool

    def to_json(self) -> dict:
        return {"name": self.name, "value": self.value.to_json(), "value_hi": self.value.upper_decimal(12),
                "target": str(float(self.target)), "holds": self.holds}


def _check(name: str, value: CReal, target) -> CoefficientCheck:
    target = Fraction(target)
    return CoefficientCheck(name, value, target, value.certainly_le(target))


@dataclass
class Derivation:
    name: str
    coefficient: CReal
    checks: list[CoefficientCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks)

    def require(self) -> "Derivation":
        if not self.ok:
            bad = ", ".join(c.name for c in self.checks if not c.holds)
            exc = CoefficientTooLarge(f"{self.name}: not certified: {bad}")
            exc.derivation = self
            raise exc
        return self

    def to_json(self) -> dict:
        return {"name": self.name, "coefficient": self.coefficient.to_json(),
                "coefficient_hi": self.coefficient.upper_decimal(12), "ok": self.ok,
                "checks": [c.to_json() for c in self.checks]}


@dataclass(frozen=True)
class LinearFormSpec:
    label: str
    k: int
    d: int
    h1_bound: str       # coefficient form, e.g. "(1/6) log 1936" or "1.03e15 log n"
    h2: CReal
    h3: CReal
    B_is: str = "n"

    def __post_init__(self):
        if self.k != K_LOGS or self.d != FIELD_DEGREE:
            raise ValueError("all four forms use k = 3 logarithms in a degree-6 field")
        if not (self.h2.is_positive() and self.h3.is_positive()):
            raise ValueError("heights must be positive")


def linear_forms(c: AlgebraicConstants) -> list[LinearFormSpec]:
    h2, h3 = c.log_alpha / 2, c.log_alpha_T / 3
    return [
        LinearFormSpec("Lambda", 3, 6, "(1/6) log 1936", h2, h3),
        LinearFormSpec("Lambda1", 3, 6, f"{H1_LAMBDA1} log n", h2, h3),
        LinearFormSpec("Lambda2", 3, 6, f"{H1_LAMBDA2} log n", h2, h3),
        LinearFormSpec("Lambda3", 3, 6, f"(5/6) {LEMMA5_USED} (log n)^2", h2, h3),
    ]


def baker_wustholz_integer_part(k: int, d: int) -> int:
    if k < 1 or d < 1:
        raise ValueError("k and d must be positive")
    return 18 * factorial(k + 1) * k ** (k + 1) * (32 * d) ** (k + 2)


def baker_wustholz_constant(k: int, d: int, prec: int = 256) -> CReal:
    """C(k, d); the integer prefactor is exact, only log(2kd) is an interval."""
    return CReal.from_int(2 * k * d, prec).log() * baker_wustholz_integer_part(k, d)


# -- heights -------------------------------------------------------------------------

def height_sqrt5_calpha(c: AlgebraicConstants) -> tuple[CReal, CReal]:
    """(h', residual): h' = log(1936)/6 and the minimal polynomial evaluated at sqrt5*c_alpha.

    The residual must enclose 0.  h' equals the absolute height here because
    every conjugate +-sqrt5*c has modulus below 1 (see modified_height_checks).
    """
    h = CReal.from_int(1936, c.prec).log() / 6
    return h, poly_eval(SQRT5_CALPHA_POLY, c.sqrt5 * c.c_alpha)


def modified_height_checks(c: AlgebraicConstants) -> dict[str, bool]:
    """Facts that make h'(a) equal the absolute heights used in every form."""
    one = 1
    h1, _ = height_sqrt5_calpha(c)
    return {
        "sqrt5*c_alpha < 1": (c.sqrt5 * c.c_alpha).certainly_lt(one),
        "sqrt5*|c_beta| < 1": (c.sqrt5 * c.c_beta_abs).certainly_lt(one),
        "|c_beta| < 1 (h0(c_alpha) = log(44)/3)": c.c_beta_abs.certainly_lt(one),
        "|beta| < 1 (h0(alpha) = log(alpha)/2)": abs(c.beta).certainly_lt(one),
        "|beta_T| < 1 (h0(alpha_T) = log(alpha_T)/3)": c.beta_T_abs.certainly_lt(one),
        "log(1936)/6 >= max(|log(sqrt5 c_alpha)|, 1)/6": h1.certainly_ge(
            CReal.from_int(1, c.prec) / 6) and (h1 * 6).certainly_ge(abs(c.log_sqrt5_c_alpha)),
        "3 log alpha >= 1": (c.log_alpha * 3).certainly_ge(one),
        "2 log alpha_T >= 1": (c.log_alpha_T * 2).certainly_ge(one),
    }


@dataclass
class EtaBound:
    k: int
    value: CReal
    residual: CReal
    chain: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.chain.values()) and self.residual.contains_zero()


def eta1_height_bound(k: int, c: AlgebraicConstants) -> EtaBound:
    """Bound (k+4) log(alpha) / 2 for h0((alpha^k - 1)/sqrt5), with its chain certified.

    The chain is h0 <= (log 5 + log((alpha^k+1)/sqrt5))/2 <= log(2 sqrt5 alpha^k)/2
    <= (k+4) log(alpha)/2; the residual evaluates
    5X^2 - 5F_k X - ((-1)^k + 1 - L_k) at X = (alpha^k - 1)/sqrt5.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    ak = pow_int(c.alpha, k)
    first = (CReal.from_int(5, c.prec).log() + ((ak + 1) / c.sqrt5).log()) / 2
    middle = (2 * c.sqrt5 * ak).log() / 2
    value = c.log_alpha * (k + 4) / 2
    x = (ak - 1) / c.sqrt5
    const = (-1) ** k + 1 - lucas(k)
    residual = 5 * x * x - 5 * fibonacci(k) * x - const
    return EtaBound(k, value, residual, {
        "first <= middle": first.certainly_le(middle),
        "middle <= (k+4) log(alpha)/2": middle.certainly_le(value),
    })


# -- the chain -----------------------------------------------------------------------

def _log_nmin(c: AlgebraicConstants) -> CReal:
    return CReal.from_int(N_MIN, c.prec).log()


def derive_lemma4(c: AlgebraicConstants, bw_constant: Optional[CReal] = None) -> Derivation:
    """min{(n-n1) log alpha, (m-m1) log alpha_T} < 2.03e15 log n.

    From log|Phi| >= -C h1 h2 h3 log n - log 2 and the first Phi-inequality.
    """
    C = bw_constant if bw_constant is not None else baker_wustholz_constant(3, 6, c.prec)
    h1, _ = height_sqrt5_calpha(c)
    coeff = C * h1 * (c.log_alpha / 2) * (c.log_alpha_T / 3)
    L = _log_nmin(c)
    log2 = CReal.from_int(2, c.prec).log()
    inner = coeff + log2 / L
    shift = CReal.from_bounds(0, max((c.log_alpha * 5).hi, (c.log_alpha_T * 2).hi), c.prec)
    outer = _q(LEMMA4_INNER) + shift / L
    d = Derivation("lemma4", coeff, [
        _check("C h1 h2 h3 + log2/log n", inner, _q(LEMMA4_INNER)),
        _check("2.02e15 + max(5 log alpha, 2 log alpha_T)/log n", outer, _q(LEMMA4)),
    ])
    d.checks.append(CoefficientCheck("coefficient positive", coeff, Fraction(0), coeff.is_positive()))
    return d.require()


def derive_lemma5(c: AlgebraicConstants, lemma4: Optional[Derivation] = None,
                  h1_coefficient: Optional[Fraction] = None) -> Derivation:
    """max{(n-n1) log alpha, (m-m1) log alpha_T} < 1.66e30 (log n)^2."""
    if lemma4 is None:
        lemma4 = derive_lemma4(c)
    lemma4.require()
    p = c.prec
    L = _log_nmin(c)
    L2 = L * L
    log2 = CReal.from_int(2, p).log()
    log44 = CReal.from_int(44, p).log()
    l4 = _q(LEMMA4)
    # Lambda1: h0(eta1) < (k+4) log(alpha)/2 with k log alpha < 2.03e15 log n
    eta1 = (c.log_alpha * 4 / L + l4) / 2
    h1_l1 = _q(ETA1_H0) + log44 / 3 / L
    # Lambda2: h'(a1) = h0(alpha_T^g - 1) + h0(c_alpha) + h0(sqrt5)
    h1_l2 = l4 / 3 + (log2 + log44 / 3 + CReal.from_int(5, p).log() / 2) / L
    h1c = _q(H1_LAMBDA1) if h1_coefficient is None else Fraction(h1_coefficient)
    C = baker_wustholz_constant(3, 6, p)
    coeff = C * h1c * (c.log_alpha / 2) * (c.log_alpha_T / 3)
    inner = coeff + log2 / L2
    tail = (CReal.from_fraction("2.22", p).log() + c.log_alpha * 4) / L2
    tail = CReal.from_bounds(0, max(tail.hi, (CReal.from_fraction("1.42", p).log() / L2).hi), p)
    outer = _q(LEMMA5_INNER) + tail
    d = Derivation("lemma5", coeff, [
        _check("h0(eta1) <= (2.03e15 + 4 log alpha/log n)/2", eta1, _q(ETA1_H0)),
        _check("h'(a1), Lambda1: 1.02e15 + log(44)/3/log n", h1_l1, _q(H1_LAMBDA1)),
        _check("h'(a1), Lambda2: 2.03e15/3 + (log 2 + log(44)/3 + log(5)/2)/log n", h1_l2, _q(H1_LAMBDA2)),
        _check("6.77e14 < 1.03e15", CReal.from_fraction(_q(H1_LAMBDA2), p), _q(H1_LAMBDA1)),
        _check("C 1.03e15 h2 h3 + log2/(log n)^2", inner, _q(LEMMA5_INNER)),
        _check("1.65e30 + max(log 2.22 + 4 log alpha, log 1.42)/(log n)^2", outer, _q(LEMMA5)),
        _check("1.66e30 <= 1.67e30 (constant carried forward)", CReal.from_fraction(_q(LEMMA5), p),
               _q(LEMMA5_USED)),
    ])
    return d.require()


@dataclass
class Proposition1:
    coefficient: Derivation
    crossover: int                 # f certified positive here, negative at crossover_lo
    crossover_lo: int
    bound: int                     # n < bound for every solution
    f_at_bound: CReal
    f_at_min: CReal
    f_at_top: CReal
    derivative_at_bound: CReal
    steps: int

    @property
    def ok(self) -> bool:
        return (self.coefficient.ok and self.f_at_bound.is_positive() and self.derivative_at_bound.is_positive()
                and self.crossover <= self.bound)

    def to_json(self) -> dict:
        return {
            "coefficient": self.coefficient.to_json(),
            "crossover": str(self.crossover),
            "crossover_lo": str(self.crossover_lo),
            "crossover_exact": self.crossover - self.crossover_lo == 1,
            "bound": str(self.bound),
            "f_at_bound": self.f_at_bound.to_json(),
            "f_at_300": self.f_at_min.to_json(),
            "f_at_1e60": self.f_at_top.to_json(),
            "derivative_at_bound": self.derivative_at_bound.to_json(),
            "bisection_steps": self.steps,
            "ok": self.ok,
        }


def _f(n: int, K: Fraction, c: AlgebraicConstants) -> CReal:
    L = CReal.from_int(n, c.prec).log()
    return c.log_alpha * (n - 4) - L * L * L * K


def _sign_f(n: int, K: Fraction, policy: PrecisionPolicy) -> int:
    """1 or -1 when certified, 0 when the sign stays unknown at maximum precision."""
    for prec in policy.ladder():
        v = _f(n, K, constants(prec))
        if v.is_positive():
            return 1
        if v.is_negative():
            return -1
    return 0


def derive_proposition1(c: AlgebraicConstants, lemma5: Optional[Derivation] = None,
                        bound: int = PROP1_BOUND, top: int = 10**60,
                        policy: Optional[PrecisionPolicy] = None) -> Proposition1:
    """n < 8e51 from (n-4) log alpha < 2.23e45 (log n)^3.

    f(n) = (n-4) log alpha - K (log n)^3 is convex for n > e^2, so one
    certified sign change in [300, top], plus f > 0 and f' > 0 at the
    bound, settles every larger n.
    """
    if lemma5 is None:
        lemma5 = derive_lemma5(c)
    lemma5.require()
    p = c.prec
    L = _log_nmin(c)
    C = baker_wustholz_constant(3, 6, p)
    h1 = _q(LEMMA5_USED) * 5 / 6
    coeff = C * h1 * (c.log_alpha / 2) * (c.log_alpha_T / 3)
    slack = (CReal.from_int(2, p).log() + CReal.from_fraction("1.64", p).log()) / (L * L * L)
    log44 = CReal.from_int(44, p).log()
    u = _q(LEMMA5_USED)
    # heights of the two factors of a1, against 3 and 2 times 1.67e30 (log n)^2
    eta_a = _q(LEMMA5) * 3 + (c.log_alpha * 12 + log44 * 2) / (L * L)
    eta_t = _q(LEMMA5) * 2 + CReal.from_int(2, p).log() * 6 / (L * L)
    derivation = Derivation("proposition1", coeff, [
        _check("h((alpha^k-1)/(sqrt5 c_alpha)) / (log n)^2", eta_a, 3 * u),
        _check("h(alpha_T^l - 1) / (log n)^2", eta_t, 2 * u),
        _check("C (5/6 1.67e30) h2 h3 + (log 2 + log 1.64)/(log n)^3", coeff + slack, _q(PROP1_COEFF)),
    ]).require()
    K = _q(PROP1_COEFF)
    policy = policy or PrecisionPolicy(max(p, 256), max(p, 65536))
    f_min, f_top = _f(N_MIN, K, c), _f(top, K, c)
    if not (f_min.is_negative() and f_top.is_positive()):
        raise BisectionFailed("no certified sign change of f on [300, top]")
    # invariant: f(lo) < 0 < f(hi), both certified
    lo, hi, steps = N_MIN, top, 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        sign = _sign_f(mid, K, policy)
        if sign == 0:
            break
        if sign > 0:
            hi = mid
        else:
            lo = mid
        steps += 1
    f_b = _f(bound, K, c)
    Lb = CReal.from_int(bound, p).log()
    deriv = c.log_alpha - Lb * Lb * K * 3 / bound
    result = Proposition1(derivation, hi, lo, bound, f_b, f_min, f_top, deriv, steps)
    if not result.ok:
        raise BisectionFailed(f"f({bound}) > 0 not certified; crossover at {hi}")
    return result


# -- the |Lambda| > 1/2 cases ------------------------------------------------------

@dataclass
class AbsorptionCase:
    label: str
    statement: str
    claimed_max: int
    certified_max: int          # from |Phi| > 1 - exp(-1/2), valid for both signs of Lambda
    positive_side_max: int      # from Phi > exp(1/2) - 1 alone
    covered_by: str
    covered: bool

    @property
    def claim_exact(self) -> bool:
        return self.certified_max <= self.claimed_max

    def to_json(self) -> dict:
        return {"label": self.label, "statement": self.statement, "claimed_max": self.claimed_max,
                "certified_max": self.certified_max, "positive_side_max": self.positive_side_max,
                "claim_exact": self.claim_exact, "covered_by": self.covered_by, "covered": self.covered}


def _max_gap(coef: CReal, base: CReal, offset: int, threshold: CReal) -> int:
    """Largest g for which coef * base^(offset - g) > threshold is not excluded."""
    g = 0
    while True:
        if (coef * pow_int(base, offset - g)).certainly_le(threshold):
            return g - 1
        g += 1


def small_case_absorption_check(c: AlgebraicConstants) -> list[AbsorptionCase]:
    """|Lambda| > 1/2 leaves only small gaps in each Phi-inequality.

    Lambda > 1/2 means Phi > e^(1/2) - 1; Lambda < -1/2 means
    |Phi| > 1 - e^(-1/2), the smaller of the two, so that threshold is the
    one valid for both signs.
    """
    p = c.prec
    half = CReal.from_fraction(Fraction(1, 2), p)
    t_both = 1 - (-half).exp()
    t_pos = half.exp() - 1
    one = CReal.from_int(1, p)
    cases = [
        ("Lambda n-n1", "|Phi| < alpha^(5-(n-n1))", one, c.alpha, 5, 5, "lemma4"),
        ("Lambda m-m1", "|Phi| < alpha_T^(2-(m-m1))", one, c.alpha_T, 2, 2, "lemma4"),
        ("Lambda1 m-m1", "|Phi1| < 1.42 alpha_T^(-(m-m1))", CReal.from_fraction("1.42", p), c.alpha_T, 0, 1, "lemma5"),
        ("Lambda2 n-n1", "|Phi2| < 2.22 alpha^(4-(n-n1))", CReal.from_fraction("2.22", p), c.alpha, 4, 6, "lemma5"),
        ("Lambda3 n", "|Phi3| < 1.64 alpha^(4-n)", CReal.from_fraction("1.64", p), c.alpha, 4, 5, "search n < 300"),
    ]
    out = []
    for label, statement, coef, base, offset, claimed, covered_by in cases:
        sound = _max_gap(coef, base, offset, t_both)
        pos = _max_gap(coef, base, offset, t_pos)
        # gaps this small are far inside the later bounds (10^15 and up) and n <= 6 < 300
        covered = sound < N_MIN
        out.append(AbsorptionCase(label, statement, claimed, sound, pos, covered_by, covered))
    return out


@dataclass
class BoundsResult:
    bw_constant: CReal
    height_sqrt5_calpha: CReal
    residual: CReal
    height_checks: dict
    eta_checks: list
    lemma4: Optional[Derivation] = None
    lemma5: Optional[Derivation] = None
    proposition1: Optional[Proposition1] = None
    absorption: list = field(default_factory=list)
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return (self.error is None and self.residual.contains_zero() and all(self.height_checks.values())
                and all(e.ok for e in self.eta_checks) and self.proposition1 is not None and self.proposition1.ok
                and all(a.covered for a in self.absorption))

    @property
    def bound(self) -> Optional[int]:
        return self.proposition1.bound if self.proposition1 else None

    def to_json(self) -> dict:
        return {
            "C(3,6)": self.bw_constant.to_json(),
            "C(3,6)_integer_part": str(baker_wustholz_integer_part(3, 6)),
            "h_sqrt5_calpha": self.height_sqrt5_calpha.to_json(),
            "minimal_polynomial_residual": self.residual.to_json(),
            "height_checks": self.height_checks,
            "eta1_checks": [{"k": e.k, "value": e.value.to_json(), "chain": e.chain,
                             "residual_contains_zero": e.residual.contains_zero()}
                            for e in self.eta_checks],
            "lemma4": self.lemma4.to_json() if self.lemma4 else None,
            "lemma5": self.lemma5.to_json() if self.lemma5 else None,
            "proposition1": self.proposition1.to_json() if self.proposition1 else None,
            "absorption": [a.to_json() for a in self.absorption],
            "ok": self.ok,
            "error": self.error,
        }


def run_bounds(c: AlgebraicConstants, policy: Optional[PrecisionPolicy] = None) -> BoundsResult:
    """Whole chain; failures are recorded rather than raised."""
    h, residual = height_sqrt5_calpha(c)
    res = BoundsResult(baker_wustholz_constant(3, 6, c.prec), h, residual, modified_height_checks(c),
                       [eta1_height_bound(k, c) for k in (1, 3, 271)], absorption=small_case_absorption_check(c))
    try:
        res.lemma4 = derive_lemma4(c)
        res.lemma5 = derive_lemma5(c, res.lemma4)
        res.proposition1 = derive_proposition1(c, res.lemma5, policy=policy)
    except (CoefficientTooLarge, BisectionFailed) as exc:
        res.error = str(exc)
        d = getattr(exc, "derivation", None)
        if d is not None:
            setattr(res, d.name, d)
    return res
