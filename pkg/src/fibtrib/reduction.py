"""Reduction of huge bounds by the Baker-Davenport method, with certified epsilons.

One reduction step takes a convergent p/q of tau with q > 6M and evaluates

    eps = ||mu q|| - M ||tau q||.

If eps > 0, the inequality 0 < m tau - n + mu < A B^(-k) has no solution with
m <= M and k >= log(A q / eps) / log B.  The campaign chains four such sweeps,
one per linear form, each using the bounds produced by the ones before it.
"""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Optional

from .contfrac import Convergent, convergent_at, first_denominator_exceeding
from .errors import (
    CertificationFailed, ConfigError, DomainError, HypothesisViolated, InsufficientPrecision,
    PrecisionExhausted,
)
from .mpreal import (
    DEFAULT_POLICY, AlgebraicConstants, CReal, PrecisionPolicy, constants, nearest_integer_distance,
    pow_int,
)

POSITIVE, NEGATIVE, UNDECIDED = "positive", "negative", "undecided"
MU_FORMS = ("const", "alpha_gap", "tribo_gap", "both_gaps")
SIDES = ("pos", "neg")
PROPOSITION_BOUND = 8 * 10**51
N_CEILING = 300


def _creal(x, prec: int) -> CReal:
    if isinstance(x, CReal):
        return x
    if isinstance(x, int):
        return CReal.from_int(x, prec)
    return CReal.from_fraction(Fraction(x), prec)


# -- the lemma -------------------------------------------------------------------

@dataclass(frozen=True)
class ReductionInstance:
    tau: CReal
    mu: CReal
    A: CReal
    B: CReal
    M: int
    q: int

    def __post_init__(self):
        prec = self.tau.prec
        object.__setattr__(self, "A", _creal(self.A, prec))
        object.__setattr__(self, "B", _creal(self.B, prec))
        if not self.A.is_positive():
            raise HypothesisViolated(f"A must be certified > 0, got [{self.A.lo}, {self.A.hi}]")
        if not self.B.certainly_gt(1):
            raise HypothesisViolated(f"B must be certified > 1, got [{self.B.lo}, {self.B.hi}]")
        if not isinstance(self.M, int) or not isinstance(self.q, int):
            raise HypothesisViolated("M and q must be exact integers")
        if self.M < 1:
            raise HypothesisViolated("M must be >= 1")
        if self.q <= 6 * self.M:
            raise HypothesisViolated(f"q = {self.q} does not exceed 6M = {6 * self.M}")


@dataclass(frozen=True)
class ReductionOutcome:
    epsilon: CReal
    status: str
    k_bound: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "epsilon": self.epsilon.to_json(),
            "epsilon_lo": self.epsilon.lower_decimal(12),
            "status": self.status,
            "k_bound": self.k_bound,
        }


def _status(eps: CReal) -> str:
    if eps.is_positive():
        return POSITIVE
    if eps.is_negative():
        return NEGATIVE
    return UNDECIDED


def _nid_or_hull(x: CReal) -> CReal:
    try:
        return nearest_integer_distance(x)
    except InsufficientPrecision:
        return CReal.from_bounds(0, Fraction(1, 2), x.prec)


def dujella_epsilon(inst: ReductionInstance) -> ReductionOutcome:
    """Certified eps for one instance at the precision of its inputs.

    An enclosure too wide to locate the nearest integer falls back to the
    trivial range [0, 1/2], which usually leaves the status undecided.
    """
    mu_part = _nid_or_hull(inst.mu * inst.q)
    tau_part = _nid_or_hull(inst.tau * inst.q) * inst.M
    eps = mu_part - tau_part
    status = _status(eps)
    outcome = ReductionOutcome(eps, status)
    if status == POSITIVE:
        outcome = ReductionOutcome(eps, status, dujella_bound(inst, outcome))
    return outcome


def lemma_bound(A: CReal, B: CReal, q: int, eps_lo: Fraction, prec: int | None = None) -> int:
    """Largest k not excluded: ceil(log(A q / eps_lo) / log B) - 1, rounded to the safe side."""
    if eps_lo <= 0:
        raise ValueError("eps_lo must be positive")
    prec = prec or A.prec
    ratio = A * q / CReal.from_fraction(eps_lo, prec)
    return (ratio.log() / B.log()).ceil_hi() - 1


def dujella_bound(inst: ReductionInstance, outcome: ReductionOutcome) -> int:
    if outcome.status != POSITIVE:
        raise ValueError("a bound needs a positive epsilon")
    return lemma_bound(inst.A, inst.B, inst.q, outcome.epsilon.lo, inst.tau.prec)


def certify(build: Callable[[int], ReductionInstance], policy: PrecisionPolicy = DEFAULT_POLICY) -> ReductionOutcome:
    """Evaluate build(prec) along the precision ladder until the sign of eps is known."""
    outcome = None
    for prec in policy.ladder():
        outcome = dujella_epsilon(build(prec))
        if outcome.status != UNDECIDED:
            return outcome
    return outcome


# -- the families of linear forms ----------------------------------------------------

def side_spec(side: str) -> tuple[str, str]:
    """(tau target, log divisor) for a sign case."""
    if side == "pos":
        return "tau", "alpha_T"
    if side == "neg":
        return "tau-inv", "alpha"
    raise ValueError(f"unknown side {side!r}")


def mu_arity(form: str) -> int:
    return {"const": 0, "alpha_gap": 1, "tribo_gap": 1, "both_gaps": 2}[form]


class _Logs:
    """log(alpha^k - 1), log(alpha_T^l - 1) and log(sqrt5 c_alpha) at one precision."""

    def __init__(self, c: AlgebraicConstants):
        self.c = c
        self._la: dict[int, CReal] = {}
        self._lt: dict[int, CReal] = {}

    @staticmethod
    def _gap_log(root: CReal, k: int) -> CReal:
        if k < 1:
            raise DomainError("gaps start at 1")
        x = pow_int(root, k) - 1
        if not x.is_positive():
            raise DomainError(f"root^{k} - 1 not certified positive")
        return x.log()

    def la(self, k: int) -> CReal:
        if k not in self._la:
            self._la[k] = self._gap_log(self.c.alpha, k)
        return self._la[k]

    def lt(self, l: int) -> CReal:
        if l not in self._lt:
            self._lt[l] = self._gap_log(self.c.alpha_T, l)
        return self._lt[l]

    def numerator(self, form: str, key: tuple[int, ...]) -> CReal:
        n = -self.c.log_sqrt5_c_alpha
        if form == "alpha_gap":
            n = self.la(key[0]) + n
        elif form == "tribo_gap":
            n = n - self.lt(key[0])
        elif form == "both_gaps":
            n = self.la(key[0]) + n - self.lt(key[1])
        elif form != "const":
            raise ValueError(f"unknown mu form {form!r}")
        return n


def mu_value(c: AlgebraicConstants, side: str, form: str, key: tuple[int, ...] = ()) -> CReal:
    """mu for one member of a family.

    pos: (log(alpha^k-1) - log(sqrt5 c_alpha) - log(alpha_T^l-1)) / log alpha_T,
    neg: the negated numerator over log alpha, with absent gaps dropped.
    """
    if len(key) != mu_arity(form):
        raise ValueError(f"mu form {form!r} takes {mu_arity(form)} indices")
    num = _Logs(c).numerator(form, key)
    return num / c.log_alpha_T if side == "pos" else -num / c.log_alpha


def tau_value(c: AlgebraicConstants, side: str) -> CReal:
    return c.tau if side == "pos" else c.tau_inv


def base_value(c: AlgebraicConstants, name: str) -> CReal:
    if name not in ("alpha", "alpha_T"):
        raise ConfigError(f"B must be 'alpha' or 'alpha_T', got {name!r}")
    return getattr(c, name)


def single_instance(side: str, form: str, key: tuple[int, ...], A, B: str, M: int,
                    convergent_index: int, prec: int, policy: PrecisionPolicy = DEFAULT_POLICY) -> ReductionInstance:
    c = constants(prec)
    tau_name, _ = side_spec(side)
    conv = convergent_at(tau_name, convergent_index, policy)
    return ReductionInstance(tau_value(c, side), mu_value(c, side, form, key), _creal(A, prec),
                             base_value(c, B), M, conv.q)


# -- sweeps ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ItemResult:
    key: tuple[int, ...]
    convergent_index: int
    epsilon: CReal
    status: str
    bits: int
    path: tuple[tuple[int, str, str], ...]   # (convergent index, status, eps lower bound) per attempt

    @property
    def escalated(self) -> bool:
        return len(self.path) > 1


class _SideEvaluator:
    def __init__(self, side: str, form: str, M: int, policy: PrecisionPolicy):
        self.side, self.form, self.M, self.policy = side, form, M, policy
        self.tau_name, _ = side_spec(side)
        self._logs: dict[int, _Logs] = {}
        self._mtq: dict[tuple[int, int], Optional[CReal]] = {}
        self._conv: dict[int, Convergent] = {}

    def convergent(self, index: int) -> Convergent:
        if index not in self._conv:
            self._conv[index] = convergent_at(self.tau_name, index, self.policy)
        return self._conv[index]

    def logs(self, prec: int) -> _Logs:
        if prec not in self._logs:
            self._logs[prec] = _Logs(constants(prec))
        return self._logs[prec]

    def m_tau_part(self, index: int, prec: int) -> Optional[CReal]:
        if (index, prec) not in self._mtq:
            q = self.convergent(index).q
            if q <= 6 * self.M:
                raise HypothesisViolated(f"q_{index} = {q} does not exceed 6M")
            try:
                part = nearest_integer_distance(tau_value(self.logs(prec).c, self.side) * q) * self.M
            except InsufficientPrecision:
                part = None
            self._mtq[(index, prec)] = part
        return self._mtq[(index, prec)]

    def epsilon(self, key: tuple[int, ...], index: int, prec: int) -> Optional[CReal]:
        logs = self.logs(prec)
        tpart = self.m_tau_part(index, prec)
        if tpart is None:
            return None
        num = logs.numerator(self.form, key)
        mu = num / logs.c.log_alpha_T if self.side == "pos" else -num / logs.c.log_alpha
        try:
            return nearest_integer_distance(mu * self.convergent(index).q) - tpart
        except InsufficientPrecision:
            return None

    def _at(self, key, index) -> tuple[CReal, str, int]:
        eps, prec = None, self.policy.start
        for prec in self.policy.ladder():
            eps = self.epsilon(key, index, prec)
            if eps is not None and _status(eps) != UNDECIDED:
                return eps, _status(eps), prec
        if eps is None:
            eps = CReal.from_bounds(-self.M, Fraction(1, 2), prec)
        return eps, UNDECIDED, prec

    def resolve(self, key: tuple[int, ...], base_index: int, max_escalations: int) -> ItemResult:
        index, path = base_index, []
        while True:
            eps, status, bits = self._at(key, index)
            path.append((index, status, eps.lower_decimal(12)))
            if status != NEGATIVE or index - base_index >= max_escalations:
                return ItemResult(key, index, eps, status, bits, tuple(path))
            index += 1


def _resolve_chunk(args) -> list[ItemResult]:
    side, form, M, policy, keys, base_index, max_escalations = args
    ev = _SideEvaluator(side, form, M, policy)
    return [ev.resolve(k, base_index, max_escalations) for k in keys]


def sweep(side: str, form: str, M: int, keys: list[tuple[int, ...]], base_index: int,
          max_escalations: int = 3, policy: PrecisionPolicy = DEFAULT_POLICY,
          workers: int = 1) -> list[ItemResult]:
    """Resolve every key, escalating convergents on negative eps; result sorted by key."""
    if workers <= 1 or len(keys) < 2 * workers:
        results = _resolve_chunk((side, form, M, policy, keys, base_index, max_escalations))
    else:
        n_chunks = workers * 4
        chunks = [keys[i::n_chunks] for i in range(n_chunks)]
        jobs = [(side, form, M, policy, ch, base_index, max_escalations) for ch in chunks if ch]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = [r for part in pool.map(_resolve_chunk, jobs) for r in part]
    results.sort(key=lambda r: r.key)
    return results


# -- campaign configuration ----------------------------------------------------------------

@dataclass(frozen=True)
class Target:
    gap: str
    A: int
    B: str
    dominates: dict

    def to_json(self) -> dict:
        return {"gap": self.gap, "A": self.A, "B": self.B, "dominates": self.dominates}


@dataclass(frozen=True)
class StageSpec:
    name: str
    form: str
    mu: str
    sweep: tuple[dict, ...]
    targets: dict          # side -> tuple[Target, ...]
    claimed: dict


@dataclass(frozen=True)
class CampaignConfig:
    stages: tuple[StageSpec, ...]
    max_escalations: int = 3
    technical_gap_min: int = 20

    def stage(self, name: str) -> StageSpec:
        for s in self.stages:
            if s.name == name:
                return s
        raise ConfigError(f"no stage named {name!r}")


def load_campaign_config(path: str | Path | None = None) -> CampaignConfig:
    if path is None:
        text = resources.files("fibtrib.data").joinpath("campaign.json").read_text()
    else:
        text = Path(path).read_text()
    try:
        data = json.loads(text)
        stages = []
        for s in data["stages"]:
            if s["mu"] not in MU_FORMS:
                raise ConfigError(f"unknown mu form {s['mu']!r}")
            targets = {side: tuple(Target(t["gap"], int(t["A"]), t["B"], t["dominates"]) for t in s["targets"][side])
                       for side in SIDES}
            stages.append(StageSpec(s["name"], s["form"], s["mu"], tuple(s["sweep"]), targets, s.get("claimed", {})))
        return CampaignConfig(tuple(stages), int(data.get("max_escalations", 3)),
                              int(data.get("technical_gap_min", 20)))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"malformed campaign configuration: {exc!r}") from exc


# -- stage results ---------------------------------------------------------------------------

@dataclass
class Check:
    name: str
    holds: Optional[bool]       # None marks an assumption carried by the argument, not a computation
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "holds": self.holds, "detail": self.detail}


@dataclass
class GroupSummary:
    convergent_index: int
    q: int
    count: int
    min_epsilon: CReal
    argmin: tuple[int, ...]
    bounds: dict

    def to_json(self) -> dict:
        return {
            "convergent_index": self.convergent_index,
            "q": str(self.q),
            "count": self.count,
            "min_epsilon_lo": self.min_epsilon.lower_decimal(12),
            "min_epsilon": self.min_epsilon.to_json(),
            "argmin": list(self.argmin),
            "bounds": self.bounds,
        }


@dataclass
class SideResult:
    side: str
    tau: str
    base_index: int
    base_q: int
    groups: list[GroupSummary]
    escalations: list[ItemResult]
    failures: list[ItemResult]
    bounds: dict            # gap -> int or None
    count: int

    def group(self, index: int) -> Optional[GroupSummary]:
        return next((g for g in self.groups if g.convergent_index == index), None)

    @property
    def negative_at_base(self) -> list[tuple[int, ...]]:
        return [r.key for r in self.escalations]

    def to_json(self) -> dict:
        def item(r: ItemResult) -> dict:
            return {"key": list(r.key), "final_index": r.convergent_index, "status": r.status,
                    "epsilon_lo": r.epsilon.lower_decimal(12), "bits": r.bits,
                    "path": [{"index": i, "status": s, "epsilon_lo": e} for i, s, e in r.path]}
        return {
            "side": self.side,
            "tau": self.tau,
            "base_index": self.base_index,
            "base_q": str(self.base_q),
            "count": self.count,
            "groups": [g.to_json() for g in self.groups],
            "escalations": [item(r) for r in self.escalations],
            "failures": [item(r) for r in self.failures],
            "bounds": self.bounds,
        }


@dataclass
class StageResult:
    name: str
    form: str
    mu: str
    M: int
    ranges: dict
    sides: dict
    bounds: dict
    checks: list[Check] = field(default_factory=list)
    claims: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (all(v is not None for v in self.bounds.values())
                and all(c.holds is not False for c in self.checks))

    @property
    def undecided(self) -> list[ItemResult]:
        return [r for s in self.sides.values() for r in s.failures if r.status == UNDECIDED]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "form": self.form,
            "mu": self.mu,
            "M": str(self.M),
            "ranges": self.ranges,
            "sides": {k: v.to_json() for k, v in self.sides.items()},
            "bounds": self.bounds,
            "ok": self.ok,
            "checks": [c.to_json() for c in self.checks],
            "claims": [c.to_json() for c in self.claims],
        }


def _dominates_check(c: AlgebraicConstants, t: Target) -> Check:
    d = t.dominates
    value = (CReal.from_fraction(Fraction(d["prefactor"]), c.prec) * pow_int(base_value(c, d["base"]), int(d["exp"]))
             / base_value(c, d["log_of"]).log())
    ok = value.certainly_le(t.A)
    return Check(f"A={t.A} >= {d['prefactor']}*{d['base']}^{d['exp']}/log {d['log_of']}", ok,
                 f"value <= {value.upper_decimal(8)}")


def _keys(spec: StageSpec, ranges: dict) -> list[tuple[int, ...]]:
    if not spec.sweep:
        return [()]
    axes = [range(1, ranges[s["var"]] + 1) for s in spec.sweep]
    if len(axes) == 1:
        return [(k,) for k in axes[0]]
    return [(k, l) for k in axes[0] for l in axes[1]]


def _summarize_side(side: str, targets: Iterable[Target], results: list[ItemResult], base: Convergent,
                    ev: _SideEvaluator, c: AlgebraicConstants) -> SideResult:
    targets = list(targets)
    failures = [r for r in results if r.status != POSITIVE]
    groups = []
    for index in sorted({r.convergent_index for r in results if r.status == POSITIVE}):
        members = [r for r in results if r.status == POSITIVE and r.convergent_index == index]
        best = min(members, key=lambda r: (r.epsilon.lo, r.key))
        q = ev.convergent(index).q
        bounds = {t.gap: lemma_bound(CReal.from_int(t.A, c.prec), base_value(c, t.B), q, best.epsilon.lo, c.prec)
                  for t in targets}
        groups.append(GroupSummary(index, q, len(members), best.epsilon, best.key, bounds))
    bounds = {}
    for t in targets:
        bounds[t.gap] = None if failures or not groups else max(g.bounds[t.gap] for g in groups)
    return SideResult(side, ev.tau_name, base.k, base.q, groups,
                      [r for r in results if r.escalated], failures, bounds, len(results))


def _stage_conditions(spec: StageSpec, c: AlgebraicConstants, gap_min: int) -> list[Check]:
    """Side conditions turning each Phi-inequality into a Lambda-inequality."""
    p = c.prec
    quarter = Fraction(1, 4)
    half_ratio = 2 * (1 - CReal.from_fraction(Fraction(-1, 2), p).exp())
    out = [Check("|x| < 2|exp(x)-1| on (-1/2, 1/2)", half_ratio.certainly_gt(Fraction(1, 2)),
                 "|exp(x)-1|/|x| increases with x; checked at x = -1/2")]
    two = CReal.from_int(2, p)
    if spec.mu == "const":
        phi = max(pow_int(c.alpha, 5 - gap_min).hi, pow_int(c.alpha_T, 2 - gap_min).hi)
        out += [
            Check(f"gaps >= {gap_min} give |Phi| < 1/4", phi < quarter, f"|Phi| < {float(phi):.3e}"),
            Check("2 alpha^(5-g) <= alpha^(7-g)", two.certainly_le(pow_int(c.alpha, 2))),
            Check("2 alpha_T^(2-g) <= alpha_T^(4-g)", two.certainly_le(pow_int(c.alpha_T, 2))),
            Check(f"n-n1 < {gap_min} or m-m1 < {gap_min} is dispatched to the later forms", None),
        ]
    elif spec.mu == "alpha_gap":
        k = CReal.from_fraction("1.42", p)
        out += [
            Check(f"1.42 alpha_T^-{gap_min} < 1/4", (k * pow_int(c.alpha_T, -gap_min)).certainly_lt(quarter)),
            Check("2 * 1.42 <= alpha_T^2", (2 * k).certainly_le(pow_int(c.alpha_T, 2))),
            Check("form used when n-n1 < m-m1 scaled gaps; k sweeps the n-n1 range left by the first stage", None),
        ]
    elif spec.mu == "tribo_gap":
        k = CReal.from_fraction("2.22", p)
        out += [
            Check(f"2.22 alpha^(4-{gap_min}) < 1/4", (k * pow_int(c.alpha, 4 - gap_min)).certainly_lt(quarter)),
            Check("2 * 2.22 <= 4.44", True),
            Check("form used when the m-m1 gap is the smaller one; k sweeps the m-m1 range", None),
        ]
    elif spec.mu == "both_gaps":
        k = CReal.from_fraction("1.64", p)
        out += [
            Check(f"1.64 alpha^(4-{N_CEILING}) < 1/4", (k * pow_int(c.alpha, 4 - N_CEILING)).certainly_lt(quarter)),
            Check("2 * 1.64 <= 3.28", True),
            Check(f"n >= {N_CEILING} assumed (smaller n is settled by the search)", None),
        ]
    out.append(Check("coefficient of tau is below M (m < n < M)", None))
    return out


def _claims(spec: StageSpec, sides: dict, bounds: dict) -> list[Check]:
    """Compare certified results with the published figures in the configuration."""
    out = []
    for side, kinds in spec.claimed.get("eps", {}).items():
        sr: SideResult = sides[side]
        for kind, value in kinds.items():
            threshold = Fraction(value)
            if kind == "base":
                g = sr.group(sr.base_index)
            else:
                g = sr.group(sr.base_index + 1)
            ok = g is not None and g.min_epsilon.lo > threshold
            got = g.min_epsilon.lower_decimal(8) if g else "none"
            out.append(Check(f"{spec.name} {side} {kind} eps > {value}", ok, f"certified min eps_lo = {got}"))
    for side, keys in spec.claimed.get("negative_at_base", {}).items():
        found = sorted(sides[side].negative_at_base)
        want = sorted(tuple(k) for k in keys)
        out.append(Check(f"{spec.name} {side} negative at base convergent: {want}", found == want,
                         f"found {[list(k) for k in found]}"))
    for gap, value in spec.claimed.get("bounds", {}).items():
        out.append(Check(f"{spec.name} bound {gap} = {value}", bounds.get(gap) == value, f"got {bounds.get(gap)}"))
    for side, value in spec.claimed.get("escalated_bounds", {}).items():
        g = sides[side].group(sides[side].base_index + 1)
        got = next(iter(g.bounds.values())) if g else None
        out.append(Check(f"{spec.name} {side} escalated-group bound = {value}", got == value, f"got {got}"))
    for side, value in spec.claimed.get("side_bounds", {}).items():
        got = next(iter(sides[side].bounds.values()))
        out.append(Check(f"{spec.name} {side} bound = {value}", got == value, f"got {got}"))
    return out


def run_stage(spec: StageSpec, c: AlgebraicConstants, M: int, ranges: dict | None = None, *,
              policy: PrecisionPolicy | None = None, workers: int = 1, max_escalations: int = 3,
              gap_min: int = 20) -> StageResult:
    """Run one stage on both sign cases and fold the results."""
    ranges = dict(ranges or {})
    for s in spec.sweep:
        if s["var"] not in ranges:
            raise ValueError(f"{spec.name} needs a range for {s['var']}")
    if policy is None:
        policy = PrecisionPolicy(c.prec, max(c.prec, DEFAULT_POLICY.maximum))
    keys = _keys(spec, ranges)
    checks = _stage_conditions(spec, c, gap_min)
    sides = {}
    for side in SIDES:
        checks += [_dominates_check(c, t) for t in spec.targets[side]]
        ev = _SideEvaluator(side, spec.mu, M, policy)
        base = first_denominator_exceeding(ev.tau_name, 6 * M, policy)
        results = sweep(side, spec.mu, M, keys, base.k, max_escalations, policy, workers)
        sides[side] = _summarize_side(side, spec.targets[side], results, base, ev, c)
    gaps = [t.gap for t in spec.targets["pos"]]
    bounds = {}
    for gap in gaps:
        vals = [sides[s].bounds.get(gap) for s in SIDES]
        bounds[gap] = None if any(v is None for v in vals) else max(vals)
    result = StageResult(spec.name, spec.form, spec.mu, M, ranges, sides, bounds, checks)
    result.claims = _claims(spec, sides, bounds)
    return result


def _stage(name, c, M, ranges, policy, workers, config) -> StageResult:
    config = config or load_campaign_config()
    return run_stage(config.stage(name), c, M, ranges, policy=policy, workers=workers,
                     max_escalations=config.max_escalations, gap_min=config.technical_gap_min)


def run_stage0(c: AlgebraicConstants, M: int, *, policy=None, workers=1, config=None) -> StageResult:
    return _stage("stage0", c, M, {}, policy, workers, config)


def run_stage1(c: AlgebraicConstants, M: int, k_max: int = 271, *, policy=None, workers=1, config=None) -> StageResult:
    return _stage("stage1", c, M, {"k": k_max}, policy, workers, config)


def run_stage2(c: AlgebraicConstants, M: int, k_max: int = 212, *, policy=None, workers=1, config=None) -> StageResult:
    return _stage("stage2", c, M, {"k": k_max}, policy, workers, config)


def run_stage3(c: AlgebraicConstants, M: int, k_max: int = 279, l_max: int = 219, *, policy=None, workers=1,
               config=None) -> StageResult:
    return _stage("stage3", c, M, {"k": k_max, "l": l_max}, policy, workers, config)


# -- campaign ---------------------------------------------------------------------------------

@dataclass
class CampaignReport:
    M: int
    hypothesis_bound: int
    stages: list[StageResult]
    final_n_bound: Optional[int]
    n_ceiling: int
    proof_complete: bool
    notes: list[str]
    error: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.error is None and self.final_n_bound is not None and all(s.ok for s in self.stages)

    @property
    def precision_exhausted(self) -> bool:
        if self.error and self.error.get("type") == "PrecisionExhausted":
            return True
        return any(s.undecided for s in self.stages)

    def stage(self, name: str) -> Optional[StageResult]:
        return next((s for s in self.stages if s.name == name), None)

    def to_json(self) -> dict:
        return {
            "M": str(self.M),
            "hypothesis_bound": str(self.hypothesis_bound),
            "stages": [s.to_json() for s in self.stages],
            "final_bounds": {
                "n-n1": self.stage("stage2").bounds.get("n-n1") if self.stage("stage2") else None,
                "m-m1": self.stage("stage1").bounds.get("m-m1") if self.stage("stage1") else None,
                "n": self.final_n_bound,
            },
            "n_ceiling": self.n_ceiling,
            "ok": self.ok,
            "proof_complete": self.proof_complete,
            "notes": self.notes,
            "error": self.error,
        }


def run_campaign(c: AlgebraicConstants, M: int = PROPOSITION_BOUND, *, hypothesis_bound: int = PROPOSITION_BOUND,
                 policy: PrecisionPolicy | None = None, workers: int = 1,
                 config: CampaignConfig | None = None, n_ceiling: int = N_CEILING) -> CampaignReport:
    """Run the four stages, each sweeping the ranges left by the earlier ones.

    ``hypothesis_bound`` is the proven upper bound for n; the report counts
    as proof-complete only if M covers it and the final bound is below
    ``n_ceiling``.
    """
    config = config or load_campaign_config()
    stages: list[StageResult] = []
    notes = []
    if M < hypothesis_bound:
        notes.append(f"M = {M} is below the proven bound {hypothesis_bound}; the campaign does not cover every solution")
    report = CampaignReport(M, hypothesis_bound, stages, None, n_ceiling, False, notes)
    found: dict[str, int] = {}
    current = None
    try:
        for spec in config.stages:
            current = spec.name
            ranges = {}
            for s in spec.sweep:
                src, gap = s["upto"].split(":")
                if f"{src}:{gap}" not in found:
                    raise ConfigError(f"{spec.name} depends on {s['upto']} which is not available")
                ranges[s["var"]] = found[f"{src}:{gap}"]
            result = run_stage(spec, c, M, ranges, policy=policy, workers=workers,
                               max_escalations=config.max_escalations, gap_min=config.technical_gap_min)
            stages.append(result)
            if not result.ok:
                bad = [list(r.key) for s in result.sides.values() for r in s.failures]
                raise CertificationFailed(f"{spec.name} failed; unresolved keys {bad[:20]}")
            for gap, value in result.bounds.items():
                found[f"{spec.name}:{gap}"] = value
    except (PrecisionExhausted, CertificationFailed, HypothesisViolated, ConfigError) as exc:
        report.error = {"type": type(exc).__name__, "stage": current, "message": str(exc)}
        return report
    last = stages[-1]
    report.final_n_bound = last.bounds.get("n")
    contradiction = report.final_n_bound is not None and report.final_n_bound < n_ceiling
    if contradiction:
        notes.append(f"n <= {report.final_n_bound} < {n_ceiling}: no solution with n >= {n_ceiling}")
    report.proof_complete = contradiction and M >= hypothesis_bound and report.ok
    return report
