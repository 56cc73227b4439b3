"""Exhaustive search for integers with several representations F_n - T_m."""
from __future__ import annotations

import json
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .mpreal import AlgebraicConstants, CReal
from .sequences import table


@dataclass(frozen=True, order=True)
class Representation:
    n: int
    m: int
    f_value: int
    t_value: int

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "F": self.f_value, "T": self.t_value}


@dataclass(frozen=True)
class SolutionRecord:
    c: int
    reps: tuple[Representation, ...]

    def to_json(self) -> dict:
        return {"c": self.c, "reps": [r.to_json() for r in self.reps]}


def _differences(n_lo: int, n_hi: int, m_max: int, fib, trib):
    out = defaultdict(list)
    for n in range(n_lo, n_hi):
        f = fib[n]
        for m in range(2, m_max):
            out[f - trib[m]].append((n, m))
    return out


def _shard(args):
    n_lo, n_hi, m_max = args
    fib = table("fibonacci", max(n_hi, 2)).values
    trib = table("tribonacci", max(m_max, 3)).values
    return dict(_differences(n_lo, n_hi, m_max, fib, trib))


def search(n_max: int = 300, m_max: int = 240, workers: int = 1) -> list[SolutionRecord]:
    """All c with >= 2 pairs (n, m), 2 <= n < n_max, 2 <= m < m_max, c = F_n - T_m.

    Indices start at 2 because F_1 = F_2 and T_1 = T_2: representations using
    index 1 coincide with those using index 2 and are counted once.  Records
    come sorted by |c|, positive c first, and representations by (n, m).
    """
    if n_max < 3 or m_max < 3:
        raise ValueError("need n_max >= 3 and m_max >= 3")
    fib = table("fibonacci", max(n_max, 2)).values
    trib = table("tribonacci", max(m_max, 3)).values
    if workers <= 1:
        shards = [_differences(2, n_max, m_max, fib, trib)]
    else:
        step = -(-(n_max - 2) // workers)
        jobs = [(lo, min(lo + step, n_max), m_max) for lo in range(2, n_max, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            shards = list(pool.map(_shard, jobs))
    merged = defaultdict(list)
    for shard in shards:
        for c, pairs in shard.items():
            merged[c].extend(pairs)
    records = []
    for c, pairs in merged.items():
        if len(pairs) < 2:
            continue
        reps = tuple(Representation(n, m, fib[n], trib[m]) for n, m in sorted(pairs))
        records.append(SolutionRecord(c, reps))
    records.sort(key=lambda r: (abs(r.c), r.c < 0))
    return records


# -- golden table --------------------------------------------------------------

def load_golden(path: str | Path | None = None) -> list[SolutionRecord]:
    if path is None:
        text = resources.files("fibtrib.data").joinpath("golden_solutions.json").read_text()
    else:
        text = Path(path).read_text()
    data = json.loads(text)
    return [
        SolutionRecord(s["c"], tuple(Representation(r["n"], r["m"], r["F"], r["T"]) for r in s["reps"]))
        for s in data["solutions"]
    ]


@dataclass
class GoldenVerdict:
    passed: bool
    missing: list[tuple[int, int, int]] = field(default_factory=list)   # (c, n, m) absent from records
    extra: list[tuple[int, int, int]] = field(default_factory=list)     # (c, n, m) absent from golden
    value_mismatches: list[str] = field(default_factory=list)
    record_count: int = 0
    representation_count: int = 0

    def describe(self) -> str:
        if self.passed:
            return f"PASS: {self.record_count} values of c, {self.representation_count} representations"
        parts = [f"missing (c={c}, n={n}, m={m})" for c, n, m in self.missing]
        parts += [f"extra (c={c}, n={n}, m={m})" for c, n, m in self.extra]
        parts += self.value_mismatches
        return "FAIL: " + "; ".join(parts)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "missing": [list(t) for t in self.missing],
            "extra": [list(t) for t in self.extra],
            "value_mismatches": self.value_mismatches,
            "record_count": self.record_count,
            "representation_count": self.representation_count,
        }


def _triples(records) -> set[tuple[int, int, int]]:
    return {(r.c, rep.n, rep.m) for r in records for rep in r.reps}


def verify_golden_table(records: list[SolutionRecord], golden: list[SolutionRecord] | None = None) -> GoldenVerdict:
    """Compare search output with the golden table, representation by representation."""
    if golden is None:
        golden = load_golden()
    got, want = _triples(records), _triples(golden)
    missing = sorted(want - got, key=lambda t: (abs(t[0]), t[0], t[1], t[2]))
    extra = sorted(got - want, key=lambda t: (abs(t[0]), t[0], t[1], t[2]))
    mismatches = []
    fib, trib = table("fibonacci"), table("tribonacci")
    for rec in list(records) + list(golden):
        for rep in rec.reps:
            if rep.f_value != fib[rep.n] or rep.t_value != trib[rep.m]:
                mismatches.append(f"c={rec.c}: F_{rep.n}={rep.f_value}, T_{rep.m}={rep.t_value} disagree with the recurrences")
            elif rep.f_value - rep.t_value != rec.c:
                mismatches.append(f"c={rec.c}: {rep.f_value} - {rep.t_value} != c")
    return GoldenVerdict(
        passed=not (missing or extra or mismatches),
        missing=missing, extra=extra, value_mismatches=mismatches,
        record_count=len(records),
        representation_count=sum(len(r.reps) for r in records),
    )


# -- why n < 300 forces m < 240 ----------------------------------------------------

@dataclass
class RangeVerdict:
    n: int
    m_limit: int
    m_upper: int          # largest m compatible with n - 3 > r (m - 5)
    m_lower: int          # smallest m compatible with n - 4 < r (m - 1)
    implication_holds: bool
    vacuous_lower: bool
    constant_checks: dict[str, bool]

    def to_json(self) -> dict:
        return dict(self.__dict__)


def range_justification(c: AlgebraicConstants, n: int = 299, m_limit: int = 240) -> RangeVerdict:
    """Certify the m-range implied by the growth inequalities for a given n.

    With r = log(alpha_T)/log(alpha), the two inequalities
    n - 4 < r (m - 1) and n - 3 > r (m - 5) bracket m.  The upper one is
    increasing in n, so n = 299 settles every n < 300.
    """
    r = c.tau_inv
    upper = CReal.from_int(n - 3, c.prec) / r + 5
    lower = CReal.from_int(n - 4, c.prec) / r + 1
    m_upper = upper.ceil_hi() - 1
    m_lower = lower.floor_bounds()[0] + 1
    checks = {
        # T_{m-2} + T_{m-3} >= alpha_T^(m-5) (alpha_T + 1) and alpha_T + 1 > 2.83
        "alpha_T_plus_1_gt_2.83": (c.alpha_T + 1).certainly_gt(CReal.from_fraction("2.83", c.prec)),
        # (n-1) log alpha > log 2.83 + (m-5) log alpha_T  =>  n - 3 > r (m - 5)
        "log2.83_over_log_alpha_ge_2": (CReal.from_fraction("2.83", c.prec).log() / c.log_alpha).certainly_ge(2),
    }
    return RangeVerdict(
        n=n, m_limit=m_limit, m_upper=m_upper, m_lower=m_lower,
        implication_holds=m_upper < m_limit and all(checks.values()),
        vacuous_lower=m_lower <= 2, constant_checks=checks,
    )
