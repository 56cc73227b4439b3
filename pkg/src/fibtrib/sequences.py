"""Fibonacci, Lucas and Tribonacci numbers, exact and in Binet form."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import IndexOutOfRange
from .mpreal import AlgebraicConstants, CReal, pow_int

DEFAULT_MAX_INDEX = 1000

_SEEDS = {
    "fibonacci": (0, 1),
    "lucas": (2, 1),
    "tribonacci": (0, 1, 1),
}


@dataclass(frozen=True)
class SequenceTable:
    kind: str
    values: tuple[int, ...]

    @property
    def max_index(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, k: int) -> int:
        if not 0 <= k <= self.max_index:
            raise IndexOutOfRange(f"{self.kind} index {k} outside [0, {self.max_index}]")
        return self.values[k]


@lru_cache(maxsize=None)
def table(kind: str, max_index: int = DEFAULT_MAX_INDEX) -> SequenceTable:
    try:
        seeds = _SEEDS[kind]
    except KeyError:
        raise ValueError(f"unknown sequence {kind!r}") from None
    order = len(seeds)
    vals = list(seeds)
    while len(vals) <= max_index:
        vals.append(sum(vals[-order:]))
    return SequenceTable(kind, tuple(vals[: max_index + 1]))


def fibonacci(k: int) -> int:
    return table("fibonacci")[k]


def lucas(k: int) -> int:
    return table("lucas")[k]


def tribonacci(k: int) -> int:
    return table("tribonacci")[k]


def value(kind: str, k: int) -> int:
    return table(kind)[k]


def binet_check(kind: str, k: int, c: AlgebraicConstants) -> CReal:
    """Enclosure of the closed form of the k-th term.

    For Tribonacci the complex pair is bounded by its modulus, giving
    c_alpha*alpha_T^k +- 2*|c_beta|*|beta_T|^k.
    """
    if k < 0:
        raise IndexOutOfRange("negative indices are not supported")
    if kind == "fibonacci":
        return (pow_int(c.alpha, k) - pow_int(c.beta, k)) / c.sqrt5
    if kind == "lucas":
        return pow_int(c.alpha, k) + pow_int(c.beta, k)
    if kind == "tribonacci":
        main = c.c_alpha * pow_int(c.alpha_T, k)
        tail = 2 * c.c_beta_abs * pow_int(c.beta_T_abs, k)
        return main + tail.symmetric_hull()
    raise ValueError(f"unknown sequence {kind!r}")


def growth_bounds_check(kind: str, k_max: int, c: AlgebraicConstants) -> list[int]:
    """Indices 1..k_max where root^(k-2) <= v_k <= root^(k-1) is NOT certified."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    if kind == "fibonacci":
        root = c.alpha
    elif kind == "tribonacci":
        root = c.alpha_T
    else:
        raise ValueError("growth bounds are stated for fibonacci and tribonacci only")
    tab = table(kind, max(k_max, DEFAULT_MAX_INDEX))
    failures = []
    for k in range(1, k_max + 1):
        v = tab[k]
        if not (pow_int(root, k - 2).certainly_le(v) and pow_int(root, k - 1).certainly_ge(v)):
            failures.append(k)
    return failures
