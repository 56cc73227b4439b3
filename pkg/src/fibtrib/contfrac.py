"""Certified continued fractions of enclosed reals and their convergents."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Union

from .errors import PrecisionExhausted
from .mpreal import DEFAULT_POLICY, CReal, PrecisionPolicy, constants

Refiner = Callable[[int], CReal]
Target = Union[Refiner, CReal]

DEFAULT_TERMS = 120


@dataclass(frozen=True)
class Convergent:
    k: int
    a: int
    p: int
    q: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)

    def to_json(self) -> dict:
        return {"k": self.k, "a": self.a, "p": str(self.p), "q": str(self.q)}


def _tau(prec: int) -> CReal:
    return constants(prec).tau


def _tau_inv(prec: int) -> CReal:
    return constants(prec).tau_inv


def _sqrt2(prec: int) -> CReal:
    return CReal.from_int(2, prec).sqrt()


TARGETS: dict[str, Refiner] = {"tau": _tau, "tau-inv": _tau_inv, "sqrt2": _sqrt2}


def _as_refiner(x: Target) -> Refiner:
    if isinstance(x, CReal):
        return lambda prec: x
    if isinstance(x, str):
        return TARGETS[x]
    return x


def certified_quotients(enc: CReal, count: int) -> tuple[list[int], bool]:
    """Partial quotients shared by every point of ``enc``.

    Returns (quotients, terminated).  ``terminated`` is True only for an
    exact rational enclosure whose expansion has ended.  A quotient is
    emitted only when both ends of the current tail have the same floor.
    """
    lo, hi = enc.lo, enc.hi
    out: list[int] = []
    while len(out) < count:
        a_lo, a_hi = lo.numerator // lo.denominator, hi.numerator // hi.denominator
        if a_lo != a_hi:
            break
        out.append(a_lo)
        if lo == hi == a_lo:
            return out, True
        if lo == a_lo:
            # tail 1/(x - a) unbounded above; cannot go on
            break
        lo, hi = 1 / (hi - a_lo), 1 / (lo - a_lo)
    return out, False


def cf_expand(x: Target, count: int, policy: PrecisionPolicy = DEFAULT_POLICY) -> list[int]:
    """First ``count`` partial quotients of x, each certified.

    Precision is raised along ``policy`` until the enclosure determines
    ``count`` quotients.  For an exact rational enclosure the finite
    expansion is returned, possibly shorter than ``count``.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    return list(_cf_expand_cached(_as_refiner(x), count, policy))


@lru_cache(maxsize=64)
def _cf_expand_cached(refiner: Refiner, count: int, policy: PrecisionPolicy) -> tuple[int, ...]:
    best: list[int] = []
    enc = None
    for prec in policy.ladder():
        enc = refiner(prec)
        quotients, terminated = certified_quotients(enc, count)
        if len(quotients) == count or terminated:
            return tuple(quotients)
        if len(quotients) > len(best):
            best = quotients
    raise PrecisionExhausted(
        f"only {len(best)} of {count} partial quotients certified at {policy.maximum} bits",
        enclosure=enc, bits=policy.maximum)


def convergents(quotients: list[int], upto: int | None = None) -> list[Convergent]:
    """Convergents p_k/q_k, k = 0..upto, from the standard recurrence."""
    if upto is None:
        upto = len(quotients) - 1
    if not 0 <= upto < len(quotients):
        raise ValueError(f"upto={upto} needs at least {upto + 1} quotients")
    p_prev, q_prev, p, q = 1, 0, quotients[0], 1
    out = [Convergent(0, quotients[0], p, q)]
    for k in range(1, upto + 1):
        a = quotients[k]
        p_prev, q_prev, p, q = p, q, a * p + p_prev, a * q + q_prev
        out.append(Convergent(k, a, p, q))
    return out


def convergent_at(x: Target, k: int, policy: PrecisionPolicy = DEFAULT_POLICY) -> Convergent:
    quotients = cf_expand(x, k + 1, policy)
    if len(quotients) <= k:
        raise ValueError(f"rational target has only {len(quotients)} partial quotients")
    return convergents(quotients, k)[k]


def first_denominator_exceeding(x: Target, bound: int, policy: PrecisionPolicy = DEFAULT_POLICY) -> Convergent:
    """The convergent of least index with q_k > bound."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    count = 16
    while True:
        quotients = cf_expand(x, count, policy)
        for conv in convergents(quotients):
            if conv.q > bound:
                return conv
        if len(quotients) < count:
            raise ValueError("rational target: no convergent denominator exceeds the bound")
        count *= 2


def next_convergent_after(x: Target, k: int, policy: PrecisionPolicy = DEFAULT_POLICY) -> Convergent:
    return convergent_at(x, k + 1, policy)
