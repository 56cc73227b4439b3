"""Certified real arithmetic on dyadic-endpoint intervals.

A :class:`CReal` is a closed interval ``[lo, hi]`` whose endpoints are exact
binary floating point numbers (mpmath raw ``mpf`` tuples).  Every operation
rounds the lower endpoint toward -inf and the upper endpoint toward +inf, so
the exact result of the operation on any points of the operands lies inside
the returned interval.

Basic operations (add, sub, mul, div, integer powers) use mpmath's correctly
rounded primitives with directed rounding.  Transcendental functions (log,
exp, sqrt, n-th roots) are evaluated with 32 guard bits and then pushed
outward by a few units in the last guard place, so a last-bit error in the
underlying library cannot break containment.
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_CEILING, ROUND_FLOOR, Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence, Union

from mpmath import libmp
from mpmath.libmp import (
    fone,
    from_int,
    from_man_exp,
    from_rational,
    fzero,
    mpf_add,
    mpf_cmp,
    mpf_div,
    mpf_exp,
    mpf_floor,
    mpf_log,
    mpf_mul,
    mpf_neg,
    mpf_nthroot,
    mpf_pos,
    mpf_shift,
    mpf_sqrt,
    mpf_sub,
    to_int,
    to_rational,
)

from .errors import (
    DivisorStraddlesZero,
    DomainError,
    MultipleRootsSuspected,
    NoSignChange,
    PrecisionExhausted,
    TooWide,
)

RF = libmp.round_floor
RC = libmp.round_ceiling

MIN_PREC = 64
HARD_MAX_PREC = 1 << 20
DEFAULT_PREC = 1024
DEFAULT_MAX_PREC = 65536
GUARD_BITS = 32

_HALF = from_man_exp(1, -1)
_QUARTER = from_man_exp(1, -2)

Number = Union[int, Fraction, "CReal"]


@dataclass(frozen=True)
class PrecisionPolicy:
    """Precision escalation ladder: start, double, stop at ``maximum``."""

    initial: int = DEFAULT_PREC
    maximum: int = DEFAULT_MAX_PREC
    factor: int = 2

    def __post_init__(self):
        if not MIN_PREC <= self.maximum <= HARD_MAX_PREC:
            raise ValueError(f"maximum precision must lie in [{MIN_PREC}, {HARD_MAX_PREC}]")
        if self.initial < MIN_PREC:
            raise ValueError(f"initial precision must be >= {MIN_PREC}")
        if self.factor < 2:
            raise ValueError("escalation factor must be >= 2")

    @property
    def start(self) -> int:
        return min(self.initial, self.maximum)

    def ladder(self):
        p = self.start
        while p < self.maximum:
            yield p
            p *= self.factor
        yield self.maximum


DEFAULT_POLICY = PrecisionPolicy()


# -- raw mpf helpers ---------------------------------------------------------

def _is_nonneg(x) -> bool:
    return x[0] == 0


def _is_zero(x) -> bool:
    return x == fzero


def _to_fraction(x) -> Fraction:
    p, q = to_rational(x)
    return Fraction(int(p), int(q))


def _from_fraction(x: Fraction, prec: int, rnd):
    return from_rational(x.numerator, x.denominator, prec, rnd)


def _min(a, b):
    return a if mpf_cmp(a, b) <= 0 else b


def _max(a, b):
    return a if mpf_cmp(a, b) >= 0 else b


def _nudge(y, wp: int, down: bool):
    # |y| * 2^(4-wp) + 2^(-2wp): covers a few ulp of error, also at y == 0
    mag = mpf_shift(libmp.mpf_abs(y), 4 - wp)
    slack = mpf_add(mag, from_man_exp(1, -2 * wp), wp, RC)
    return mpf_sub(y, slack, wp, RF) if down else mpf_add(y, slack, wp, RC)


def _pow_nonneg(x, n: int, prec: int, rnd):
    """x**n for x >= 0 and n >= 0, rounding every product in direction rnd."""
    result = fone
    base = x
    while n:
        if n & 1:
            result = mpf_mul(result, base, prec, rnd)
        n >>= 1
        if n:
            base = mpf_mul(base, base, prec, rnd)
    return result


# -- the interval type -------------------------------------------------------

class CReal:
    """Closed interval with exact dyadic endpoints and a working precision.

    Integers handed to the constructors are stored exactly, whatever their
    size; ``prec`` only governs how results of operations are rounded.
    Instances are immutable.
    """

    __slots__ = ("_lo", "_hi", "prec")

    def __init__(self, lo, hi, prec: int):
        if mpf_cmp(lo, hi) > 0:
            raise ValueError("lower endpoint exceeds upper endpoint")
        if not MIN_PREC <= prec <= HARD_MAX_PREC:
            raise ValueError(f"precision {prec} outside [{MIN_PREC}, {HARD_MAX_PREC}]")
        object.__setattr__(self, "_lo", lo)
        object.__setattr__(self, "_hi", hi)
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("CReal is immutable")

    # constructors
    @classmethod
    def from_int(cls, z: int, prec: int = DEFAULT_PREC) -> "CReal":
        v = from_int(int(z))
        return cls(v, v, prec)

    @classmethod
    def from_fraction(cls, x, prec: int = DEFAULT_PREC) -> "CReal":
        x = Fraction(x)
        if x.denominator == 1:
            return cls.from_int(x.numerator, prec)
        return cls(_from_fraction(x, prec, RF), _from_fraction(x, prec, RC), prec)

    @classmethod
    def from_bounds(cls, lo, hi, prec: int = DEFAULT_PREC) -> "CReal":
        """Interval containing the rational interval [lo, hi], rounded outward."""
        lo, hi = Fraction(lo), Fraction(hi)
        return cls(_from_fraction(lo, prec, RF), _from_fraction(hi, prec, RC), prec)

    # endpoint access
    @property
    def lo(self) -> Fraction:
        return _to_fraction(self._lo)

    @property
    def hi(self) -> Fraction:
        return _to_fraction(self._hi)

    @property
    def raw(self):
        return self._lo, self._hi

    def width(self) -> Fraction:
        return self.hi - self.lo

    def width_mpf(self):
        return mpf_sub(self._hi, self._lo, self.prec + 8, RC)

    def is_exact(self) -> bool:
        return self._lo == self._hi

    def contains(self, x) -> bool:
        if isinstance(x, CReal):
            return mpf_cmp(self._lo, x._lo) <= 0 and mpf_cmp(x._hi, self._hi) <= 0
        x = Fraction(x)
        return self.lo <= x <= self.hi

    def contains_zero(self) -> bool:
        return mpf_cmp(self._lo, fzero) <= 0 <= mpf_cmp(self._hi, fzero)

    def is_positive(self) -> bool:
        return mpf_cmp(self._lo, fzero) > 0

    def is_negative(self) -> bool:
        return mpf_cmp(self._hi, fzero) < 0

    # certified comparisons: True only when the relation holds for every point
    def certainly_lt(self, other) -> bool:
        o = _coerce(other, self.prec)
        return mpf_cmp(self._hi, o._lo) < 0

    def certainly_le(self, other) -> bool:
        o = _coerce(other, self.prec)
        return mpf_cmp(self._hi, o._lo) <= 0

    def certainly_gt(self, other) -> bool:
        o = _coerce(other, self.prec)
        return mpf_cmp(self._lo, o._hi) > 0

    def certainly_ge(self, other) -> bool:
        o = _coerce(other, self.prec)
        return mpf_cmp(self._lo, o._hi) >= 0

    def intersect(self, other: "CReal") -> "CReal":
        lo = _max(self._lo, other._lo)
        hi = _min(self._hi, other._hi)
        if mpf_cmp(lo, hi) > 0:
            raise ValueError("disjoint enclosures: one of them is unsound")
        return CReal(lo, hi, max(self.prec, other.prec))

    def symmetric_hull(self) -> "CReal":
        """[-m, m] where m bounds |x| on the enclosure."""
        m = _max(mpf_neg(self._lo), self._hi)
        return CReal(mpf_neg(m), m, self.prec)

    def floor_bounds(self) -> tuple[int, int]:
        return int(to_int(mpf_floor(self._lo))), int(to_int(mpf_floor(self._hi)))

    def ceil_hi(self) -> int:
        return int(to_int(libmp.mpf_ceil(self._hi)))

    # arithmetic
    def __neg__(self):
        return CReal(mpf_neg(self._hi), mpf_neg(self._lo), self.prec)

    def __abs__(self):
        if _is_nonneg(self._lo):
            return self
        if not _is_nonneg(self._hi) and not _is_zero(self._hi):
            return -self
        return CReal(fzero, _max(mpf_neg(self._lo), self._hi), self.prec)

    def __add__(self, other):
        o = _coerce(other, self.prec)
        p = max(self.prec, o.prec)
        return CReal(mpf_add(self._lo, o._lo, p, RF), mpf_add(self._hi, o._hi, p, RC), p)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other, self.prec)
        p = max(self.prec, o.prec)
        return CReal(mpf_sub(self._lo, o._hi, p, RF), mpf_sub(self._hi, o._lo, p, RC), p)

    def __rsub__(self, other):
        return _coerce(other, self.prec) - self

    def __mul__(self, other):
        o = _coerce(other, self.prec)
        p = max(self.prec, o.prec)
        a, b, c, d = self._lo, self._hi, o._lo, o._hi
        if _is_nonneg(a) and _is_nonneg(c):
            return CReal(mpf_mul(a, c, p, RF), mpf_mul(b, d, p, RC), p)
        lo = _min(_min(mpf_mul(a, c, p, RF), mpf_mul(a, d, p, RF)),
                  _min(mpf_mul(b, c, p, RF), mpf_mul(b, d, p, RF)))
        hi = _max(_max(mpf_mul(a, c, p, RC), mpf_mul(a, d, p, RC)),
                  _max(mpf_mul(b, c, p, RC), mpf_mul(b, d, p, RC)))
        return CReal(lo, hi, p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other, self.prec)
        if o.contains_zero():
            raise DivisorStraddlesZero("divisor enclosure contains 0")
        p = max(self.prec, o.prec)
        a, b, c, d = self._lo, self._hi, o._lo, o._hi
        if _is_nonneg(a) and _is_nonneg(c):
            return CReal(mpf_div(a, d, p, RF), mpf_div(b, c, p, RC), p)
        lo = _min(_min(mpf_div(a, c, p, RF), mpf_div(a, d, p, RF)),
                  _min(mpf_div(b, c, p, RF), mpf_div(b, d, p, RF)))
        hi = _max(_max(mpf_div(a, c, p, RC), mpf_div(a, d, p, RC)),
                  _max(mpf_div(b, c, p, RC), mpf_div(b, d, p, RC)))
        return CReal(lo, hi, p)

    def __rtruediv__(self, other):
        return _coerce(other, self.prec) / self

    def __pow__(self, n: int):
        return pow_int(self, n)

    # elementary functions
    def log(self):
        return elementary(self, "log")

    def exp(self):
        return elementary(self, "exp")

    def sqrt(self):
        return elementary(self, "sqrt")

    def nth_root(self, n: int):
        return elementary(self, "nth_root", n)

    def with_prec(self, prec: int) -> "CReal":
        """Same interval, re-rounded outward to ``prec`` bits if needed."""
        return CReal(mpf_pos(self._lo, prec, RF), mpf_pos(self._hi, prec, RC), prec)

    # presentation
    def __float__(self):
        return float(libmp.to_float(mpf_add(self._lo, self._hi, 60, "n"))) / 2

    def lower_decimal(self, digits: int = 30) -> str:
        return _decimal(self._lo, digits, ROUND_FLOOR)

    def upper_decimal(self, digits: int = 30) -> str:
        return _decimal(self._hi, digits, ROUND_CEILING)

    def to_json(self, digits: int = 40) -> dict:
        return {"lo": self.lower_decimal(digits), "hi": self.upper_decimal(digits), "bits": self.prec}

    def __repr__(self):
        return f"CReal([{self.lower_decimal(12)}, {self.upper_decimal(12)}], prec={self.prec})"

    def __eq__(self, other):
        if not isinstance(other, CReal):
            return NotImplemented
        return self._lo == other._lo and self._hi == other._hi and self.prec == other.prec

    def __hash__(self):
        return hash((self._lo, self._hi, self.prec))

    def __reduce__(self):
        return (CReal, (self._lo, self._hi, self.prec))


def _decimal(x, digits: int, rounding) -> str:
    p, q = to_rational(x)
    p, q = int(p), int(q)
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = rounding
        d = Decimal(p) / Decimal(q)
    return str(d)


def _coerce(x, prec: int) -> CReal:
    if isinstance(x, CReal):
        return x
    if isinstance(x, int):
        return CReal.from_int(x, prec)
    if isinstance(x, Fraction):
        return CReal.from_fraction(x, prec)
    raise TypeError(f"cannot use {type(x).__name__} in certified arithmetic; pass int or Fraction")


# -- public operations -------------------------------------------------------

def creal_from_integer(z: int, prec: int = DEFAULT_PREC) -> CReal:
    return CReal.from_int(z, prec)


def creal_from_rational(x, prec: int = DEFAULT_PREC) -> CReal:
    return CReal.from_fraction(x, prec)


def arith(a: CReal, b: CReal, op: str) -> CReal:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def pow_int(a: CReal, n: int) -> CReal:
    if n < 0:
        return 1 / pow_int(a, -n)
    if n == 0:
        return CReal(fone, fone, a.prec)
    p = a.prec
    lo, hi = a.raw
    if _is_nonneg(lo):
        return CReal(_pow_nonneg(lo, n, p, RF), _pow_nonneg(hi, n, p, RC), p)
    nlo, nhi = mpf_neg(hi), mpf_neg(lo)  # |a| range when a <= 0
    if not _is_nonneg(hi) and not _is_zero(hi):
        if n % 2 == 0:
            return CReal(_pow_nonneg(nlo, n, p, RF), _pow_nonneg(nhi, n, p, RC), p)
        return CReal(mpf_neg(_pow_nonneg(nhi, n, p, RC)), mpf_neg(_pow_nonneg(nlo, n, p, RF)), p)
    # straddles zero
    if n % 2 == 0:
        m = _max(nhi, hi)
        return CReal(fzero, _pow_nonneg(m, n, p, RC), p)
    return CReal(mpf_neg(_pow_nonneg(nhi, n, p, RC)), _pow_nonneg(hi, n, p, RC), p)


def elementary(a: CReal, fn: str, n: int | None = None) -> CReal:
    """Monotone elementary function of an enclosure: log, exp, sqrt, nth_root, pow_int."""
    if fn == "pow_int":
        return pow_int(a, n)
    p = a.prec
    wp = p + GUARD_BITS
    lo, hi = a.raw
    if fn == "log":
        if not a.is_positive():
            raise DomainError("log needs a strictly positive enclosure")
        f = mpf_log
    elif fn == "exp":
        f = mpf_exp
    elif fn == "sqrt":
        if mpf_cmp(lo, fzero) < 0:
            raise DomainError("sqrt needs a non-negative enclosure")
        f = mpf_sqrt
    elif fn == "nth_root":
        if n is None or n < 1:
            raise ValueError("nth_root needs n >= 1")
        if mpf_cmp(lo, fzero) < 0:
            raise DomainError("nth_root is only defined here for non-negative enclosures")

        def f(x, prec, rnd):
            return mpf_nthroot(x, n, prec, rnd)
    else:
        raise ValueError(f"unknown function {fn!r}")

    ylo = fzero if (fn in ("sqrt", "nth_root") and _is_zero(lo)) else _nudge(f(lo, wp, RF), wp, True)
    yhi = fzero if (fn in ("sqrt", "nth_root") and _is_zero(hi)) else _nudge(f(hi, wp, RC), wp, False)
    if fn in ("sqrt", "nth_root", "exp") and mpf_cmp(ylo, fzero) < 0:
        ylo = fzero
    return CReal(mpf_pos(ylo, p, RF), mpf_pos(yhi, p, RC), p)


def nearest_integer_distance(x: CReal) -> CReal:
    """Enclosure of ||x||, the distance from x to the nearest integer."""
    lo, hi = x.raw
    p = x.prec
    if mpf_cmp(mpf_sub(hi, lo), _QUARTER) >= 0:
        raise TooWide("enclosure width >= 1/4; nearest integer undetermined")
    fl_lo, fl_hi = mpf_floor(lo), mpf_floor(hi)
    if fl_lo == fl_hi:
        a, b = mpf_sub(lo, fl_lo), mpf_sub(hi, fl_lo)
        if mpf_cmp(b, _HALF) <= 0:
            rlo, rhi = a, b
        elif mpf_cmp(a, _HALF) >= 0:
            rlo, rhi = mpf_sub(fone, b), mpf_sub(fone, a)
        else:
            rlo, rhi = _min(a, mpf_sub(fone, b)), _HALF
    else:
        rlo, rhi = fzero, _max(mpf_sub(fl_hi, lo), mpf_sub(hi, fl_hi))
    return CReal(mpf_pos(rlo, p, RF), mpf_pos(rhi, p, RC), p)


def refine(computation: Callable[[int], CReal], target_width,
           policy: PrecisionPolicy = DEFAULT_POLICY) -> CReal:
    """Re-evaluate ``computation`` at growing precision until narrow enough.

    ``target_width`` is a rational or a CReal (its lower endpoint is used).
    Raises PrecisionExhausted carrying the last enclosure when the policy's
    maximum precision is reached first.
    """
    if isinstance(target_width, CReal):
        target_width = target_width.lo
    target_width = Fraction(target_width)
    best = None
    for prec in policy.ladder():
        enc = computation(prec)
        if best is None or enc.width() < best.width():
            best = enc
        if enc.width() <= target_width:
            return enc
    raise PrecisionExhausted(
        f"width {float(best.width()):.3g} > target {float(target_width):.3g} "
        f"at {policy.maximum} bits", enclosure=best, bits=policy.maximum)


# -- polynomial root isolation -----------------------------------------------

def _poly_eval_fraction(poly: Sequence[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in poly:
        acc = acc * x + c
    return acc


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _derivative(poly: Sequence[int]) -> list[int]:
    deg = len(poly) - 1
    return [c * (deg - i) for i, c in enumerate(poly[:-1])]


def _poly_range(poly: Sequence[int], lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Interval Horner enclosure of poly over [lo, hi] (exact rationals)."""
    alo = ahi = Fraction(0)
    for c in poly:
        prods = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(prods) + c, max(prods) + c
    return alo, ahi


def _fixed_eval(poly: Sequence[int], X: int, P: int) -> int:
    acc = 0
    for c in poly:
        acc = ((acc * X) >> P) + (c << P)
    return acc


def isolate_real_root(poly: Sequence[int], bracket, prec: int = DEFAULT_PREC) -> CReal:
    """Enclose the unique simple real root of ``poly`` inside ``bracket``.

    ``poly`` lists integer coefficients from the highest degree down.  The
    result is certified by an exact sign change of the polynomial at two
    dyadic points together with a derivative that is bounded away from zero
    on the whole bracket.
    """
    a, b = (Fraction(v) for v in bracket)
    if a > b:
        a, b = b, a
    sa, sb = _sign(_poly_eval_fraction(poly, a)), _sign(_poly_eval_fraction(poly, b))
    if sa == 0:
        return CReal.from_bounds(a, a, prec)
    if sb == 0:
        return CReal.from_bounds(b, b, prec)
    if sa == sb:
        raise NoSignChange(f"no sign change on [{a}, {b}]")
    dlo, dhi = _poly_range(_derivative(poly), a, b)
    if dlo <= 0 <= dhi:
        raise MultipleRootsSuspected("derivative enclosure contains 0 on the bracket")

    # bisect to 2^-40, then Newton in fixed point, then re-certify the sign change
    while b - a > Fraction(1, 1 << 40):
        mid = (a + b) / 2
        sm = _sign(_poly_eval_fraction(poly, mid))
        if sm == 0:
            return CReal.from_bounds(mid, mid, prec)
        if sm == sa:
            a = mid
        else:
            b = mid
    target = prec + 8
    P = 64
    X = round((a + b) / 2 * (1 << P))
    dpoly = _derivative(poly)
    while True:
        for _ in range(2):
            d = _fixed_eval(dpoly, X, P)
            X -= (_fixed_eval(poly, X, P) << P) // d
        if P >= target:
            break
        newP = min(2 * P, target)
        X <<= newP - P
        P = newP
    delta = 4
    while True:
        lo = Fraction(X - delta, 1 << P)
        hi = Fraction(X + delta, 1 << P)
        if lo < a or hi > b:
            lo, hi = max(lo, a), min(hi, b)
        slo, shi = _sign(_poly_eval_fraction(poly, lo)), _sign(_poly_eval_fraction(poly, hi))
        if slo == 0:
            return CReal.from_bounds(lo, lo, prec)
        if shi == 0:
            return CReal.from_bounds(hi, hi, prec)
        if slo != shi:
            return CReal.from_bounds(lo, hi, prec)
        delta *= 16


# -- algebraic constants -----------------------------------------------------

FIB_POLY = (1, -1, -1)          # x^2 - x - 1
TRIB_POLY = (1, -1, -1, -1)     # x^3 - x^2 - x - 1
CALPHA_POLY = (44, 0, -2, -1)   # 44x^3 - 2x - 1
SQRT5_CALPHA_POLY = (1936, 0, -880, 0, 100, 0, -125)


@dataclass(frozen=True)
class AlgebraicConstants:
    """Enclosures of every real constant attached to the two recurrences.

    The complex conjugate pairs of the Tribonacci recurrence are stored by
    modulus only: beta_T_abs = |beta_T| = |gamma_T| and c_beta_abs =
    |c_beta| = |c_gamma|.
    """

    prec: int
    alpha: CReal
    beta: CReal
    alpha_T: CReal
    beta_T_abs: CReal
    gamma_T_abs: CReal
    c_alpha: CReal
    c_beta_abs: CReal
    sqrt5: CReal
    log_alpha: CReal
    log_alpha_T: CReal
    tau: CReal
    tau_inv: CReal
    log_sqrt5_c_alpha: CReal

    @classmethod
    def build(cls, prec: int = DEFAULT_PREC) -> "AlgebraicConstants":
        wp = prec + 16
        alpha = isolate_real_root(FIB_POLY, (1, 2), wp)
        alpha_T = isolate_real_root(TRIB_POLY, (Fraction(18, 10), Fraction(19, 10)), wp)
        c_alpha = isolate_real_root(CALPHA_POLY, (Fraction(3, 10), Fraction(4, 10)), wp)
        # roots of x^3-x^2-x-1 multiply to 1, those of 44x^3-2x-1 to 1/44
        mod_bT = (1 / alpha_T).sqrt()
        mod_cb = (1 / (44 * c_alpha)).sqrt()
        sqrt5 = CReal.from_int(5, wp).sqrt()
        log_alpha = alpha.log()
        log_alpha_T = alpha_T.log()
        tau = log_alpha / log_alpha_T
        fields = dict(
            alpha=alpha, beta=1 - alpha, alpha_T=alpha_T, beta_T_abs=mod_bT,
            gamma_T_abs=mod_bT, c_alpha=c_alpha, c_beta_abs=mod_cb, sqrt5=sqrt5,
            log_alpha=log_alpha, log_alpha_T=log_alpha_T, tau=tau,
            tau_inv=log_alpha_T / log_alpha, log_sqrt5_c_alpha=(sqrt5 * c_alpha).log(),
        )
        return cls(prec=prec, **{k: v.with_prec(prec) for k, v in fields.items()})


@lru_cache(maxsize=None)
def constants(prec: int = DEFAULT_PREC) -> AlgebraicConstants:
    """Shared, cached constants at ``prec`` bits (read-only)."""
    return AlgebraicConstants.build(prec)


def alpha_T_from_radicals(prec: int = MIN_PREC) -> CReal:
    """Cardano form (1 + cbrt(19+3*sqrt33) + cbrt(19-3*sqrt33)) / 3, for cross-checks."""
    s33 = CReal.from_int(33, prec).sqrt()
    u = (19 + 3 * s33).nth_root(3)
    v = (19 - 3 * s33).nth_root(3)
    return (1 + u + v) / 3


def calpha_from_alpha_T(c: AlgebraicConstants) -> CReal:
    """c_alpha = 1 / (-alpha_T^2 + 4 alpha_T - 1), independent of the 44x^3-2x-1 route."""
    a = c.alpha_T
    return 1 / (-(a ** 2) + 4 * a - 1)


def poly_eval(poly: Sequence[int], x: CReal) -> CReal:
    acc = CReal.from_int(0, x.prec)
    for coeff in poly:
        acc = acc * x + coeff
    return acc
