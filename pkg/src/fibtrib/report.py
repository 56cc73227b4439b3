"""End-to-end replay: constants, sequences, search, bounds chain, campaign."""
from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from datetime import datetime, timezone
from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import Any, Optional

from . import __version__
from .bounds import BoundsResult, run_bounds
from .bruteforce import load_golden, range_justification, search, verify_golden_table
from .errors import ConfigError, PrecisionExhausted
from .mpreal import (
    CALPHA_POLY, FIB_POLY, SQRT5_CALPHA_POLY, TRIB_POLY, PrecisionPolicy, alpha_T_from_radicals,
    calpha_from_alpha_T, constants, poly_eval,
)
from .reduction import CampaignReport, load_campaign_config, run_campaign
from .sequences import binet_check, growth_bounds_check, table

PROOF_REPLAYED = "PROOF-REPLAYED"
EXIT_CODES = {"ok": 0, "search": 1, "bounds": 2, "campaign": 3, "precision": 4, "config": 5}


def parse_integer(value: Any) -> int:
    """Exact integer from an int or a decimal literal such as '8e51'."""
    if isinstance(value, bool):
        raise ConfigError(f"not an integer: {value!r}")
    if isinstance(value, int):
        return value
    try:
        d = Decimal(str(value))
    except InvalidOperation:
        raise ConfigError(f"not an integer: {value!r}") from None
    if not d.is_finite() or d != d.to_integral_value():
        raise ConfigError(f"not an integer: {value!r}")
    return int(d)


@dataclass
class VerifyConfig:
    """Knobs for the replay; every default reproduces the published run."""
    precision_initial: int = 1024
    precision_max: int = 65536
    precision_factor: int = 2
    search_n_max: int = 300
    search_m_max: int = 240
    campaign_M: Optional[int] = None        # None: the certified bound from the bounds chain
    max_escalations: int = 3
    workers: int = 1
    golden_table: Optional[str] = None
    campaign_config: Optional[str] = None

    @property
    def policy(self) -> PrecisionPolicy:
        return PrecisionPolicy(self.precision_initial, self.precision_max, self.precision_factor)

    def to_json(self) -> dict:
        d = dataclasses.asdict(self)
        if d["campaign_M"] is not None:
            d["campaign_M"] = str(d["campaign_M"])
        return d


_INT_KEYS = {"precision_initial", "precision_max", "precision_factor", "search_n_max", "search_m_max",
             "max_escalations", "workers"}


def config_from_mapping(data: dict, base: VerifyConfig | None = None) -> VerifyConfig:
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a JSON object")
    known = {f.name for f in dataclasses.fields(VerifyConfig)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown configuration keys: {', '.join(unknown)}")
    values = dataclasses.asdict(base or VerifyConfig())
    for key, value in data.items():
        if key in _INT_KEYS:
            values[key] = parse_integer(value)
        elif key == "campaign_M":
            values[key] = None if value is None else parse_integer(value)
        elif value is not None and not isinstance(value, str):
            raise ConfigError(f"{key} must be a path string")
        else:
            values[key] = value
    cfg = VerifyConfig(**values)
    try:
        cfg.policy
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if cfg.workers < 1 or cfg.max_escalations < 0 or cfg.search_n_max < 3 or cfg.search_m_max < 3:
        raise ConfigError("workers >= 1, max_escalations >= 0, search ranges >= 3 required")
    if cfg.campaign_M is not None and cfg.campaign_M < 1:
        raise ConfigError("campaign_M must be positive")
    return cfg


def load_config(path: str | Path) -> VerifyConfig:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read configuration {path}: {exc}") from exc
    return config_from_mapping(data)


# -- steps -----------------------------------------------------------------------------

def constants_step(c) -> dict:
    checks = {
        "alpha root of x^2-x-1": poly_eval(FIB_POLY, c.alpha).contains_zero(),
        "alpha_T root of x^3-x^2-x-1": poly_eval(TRIB_POLY, c.alpha_T).contains_zero(),
        "c_alpha root of 44x^3-2x-1": poly_eval(CALPHA_POLY, c.c_alpha).contains_zero(),
        "sqrt5 c_alpha root of 1936x^6-880x^4+100x^2-125":
            poly_eval(SQRT5_CALPHA_POLY, c.sqrt5 * c.c_alpha).contains_zero(),
        "alpha_T agrees with the radical formula": _intersects(alpha_T_from_radicals(), c.alpha_T),
        "c_alpha agrees with 1/(-alpha_T^2+4alpha_T-1)": _intersects(calpha_from_alpha_T(c), c.c_alpha),
    }
    return {"bits": c.prec, "checks": checks, "ok": all(checks.values()),
            "values": {name: getattr(c, name).to_json() for name in
                       ("alpha", "alpha_T", "c_alpha", "beta_T_abs", "c_beta_abs", "tau", "log_sqrt5_c_alpha")}}


def _intersects(a, b) -> bool:
    return not (a.hi < b.lo or b.hi < a.lo)


def sequences_step(c, n_max: int, m_max: int) -> dict:
    fib_fail = growth_bounds_check("fibonacci", n_max, c)
    trib_fail = growth_bounds_check("tribonacci", m_max, c)
    binet_fail = [(kind, k) for kind, top in (("fibonacci", n_max), ("lucas", n_max), ("tribonacci", m_max))
                  for k in range(0, top + 1) if not binet_check(kind, k, c).contains(table(kind)[k])]
    return {"growth_failures": {"fibonacci": fib_fail, "tribonacci": trib_fail},
            "binet_failures": [list(t) for t in binet_fail],
            "ok": not (fib_fail or trib_fail or binet_fail)}


def search_step(cfg: VerifyConfig, c) -> dict:
    records = search(cfg.search_n_max, cfg.search_m_max, cfg.workers)
    golden = load_golden(cfg.golden_table) if cfg.golden_table else load_golden()
    verdict = verify_golden_table(records, golden)
    rng = range_justification(c, cfg.search_n_max - 1, cfg.search_m_max)
    return {"n_max": cfg.search_n_max, "m_max": cfg.search_m_max,
            "values": [r.c for r in records],
            "records": [r.to_json() for r in records],
            "golden": verdict.to_json(),
            "range": rng.to_json(),
            "ok": verdict.passed and rng.implication_holds}


@dataclass
class VerifyReport:
    version: str
    timestamp: str
    config: dict
    precision_policy: dict
    constants_result: Optional[dict] = None
    sequences_result: Optional[dict] = None
    search_result: Optional[dict] = None
    bounds_result: Optional[BoundsResult] = None
    campaign_result: Optional[CampaignReport] = None
    overall: str = "FAILED(unstarted)"
    exit_code: int = 1

    @property
    def passed(self) -> bool:
        return self.overall == PROOF_REPLAYED

    def to_json(self) -> dict:
        return {
            "version": self.version,
            "timestamp": self.timestamp,
            "config": self.config,
            "precision_policy": self.precision_policy,
            "constants_result": self.constants_result,
            "sequences_result": self.sequences_result,
            "search_result": self.search_result,
            "bounds_result": self.bounds_result.to_json() if self.bounds_result else None,
            "campaign_result": self.campaign_result.to_json() if self.campaign_result else None,
            "overall": self.overall,
            "exit_code": self.exit_code,
        }


def _fail(report: VerifyReport, step: str, code: str) -> VerifyReport:
    report.overall = f"FAILED({step})"
    report.exit_code = EXIT_CODES[code]
    return report


def verify(cfg: VerifyConfig | None = None) -> VerifyReport:
    """Run every step in order; the first failing step sets overall and the exit code."""
    cfg = cfg or VerifyConfig()
    policy = cfg.policy
    report = VerifyReport(__version__, datetime.now(timezone.utc).isoformat(timespec="seconds"), cfg.to_json(),
                          {"initial": policy.initial, "maximum": policy.maximum, "factor": policy.factor})
    try:
        campaign_config = load_campaign_config(cfg.campaign_config)
    except ConfigError:
        return _fail(report, "config", "config")
    campaign_config = dataclasses.replace(campaign_config, max_escalations=cfg.max_escalations)
    c = constants(policy.start)

    report.constants_result = constants_step(c)
    report.sequences_result = sequences_step(c, cfg.search_n_max, cfg.search_m_max)
    if not (report.constants_result["ok"] and report.sequences_result["ok"]):
        return _fail(report, "constants" if not report.constants_result["ok"] else "sequences", "bounds")

    report.search_result = search_step(cfg, c)
    if not report.search_result["ok"]:
        return _fail(report, "search", "search")

    report.bounds_result = run_bounds(c, policy)
    if not report.bounds_result.ok:
        return _fail(report, "bounds", "bounds")
    proven = report.bounds_result.bound

    M = cfg.campaign_M if cfg.campaign_M is not None else proven
    try:
        camp = run_campaign(c, M, hypothesis_bound=proven, policy=policy, workers=cfg.workers,
                            config=campaign_config, n_ceiling=cfg.search_n_max)
    except PrecisionExhausted:
        return _fail(report, "campaign", "precision")
    report.campaign_result = camp
    if camp.precision_exhausted:
        return _fail(report, "campaign", "precision")
    if not camp.proof_complete:
        return _fail(report, "campaign", "campaign")
    report.overall = PROOF_REPLAYED
    report.exit_code = 0
    return report


# -- output ---------------------------------------------------------------------------------

def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, fixed indentation."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _rep_line(rec: dict) -> str:
    reps = rec["reps"]
    values = " = ".join(f"{r['F']} - {r['T']}" for r in reps)
    indices = " = ".join(f"F_{r['n']} - T_{r['m']}" for r in reps)
    return f"{rec['c']:>6} = {values}  (= {indices})"


def solution_table(records: list[dict]) -> str:
    return "\n".join(_rep_line(r) for r in records)


def render_text(report: VerifyReport) -> str:
    lines = [f"fibtrib {report.version}  {report.timestamp}"]
    pp = report.precision_policy
    lines.append(f"precision: {pp['initial']}..{pp['maximum']} bits (x{pp['factor']})")
    if report.search_result:
        s = report.search_result
        g = s["golden"]
        lines += ["", f"integers with at least two representations F_n - T_m, 2 <= n < {s['n_max']}, "
                      f"2 <= m < {s['m_max']}:", solution_table(s["records"]),
                  f"{g['record_count']} values, {g['representation_count']} representations; "
                  f"golden table {'matches' if g['passed'] else 'DIFFERS'}"]
    if report.bounds_result and report.bounds_result.proposition1:
        p = report.bounds_result.proposition1
        lines += ["", f"linear forms in logarithms: n < {p.bound} (f changes sign near {p.crossover})"]
    if report.campaign_result:
        camp = report.campaign_result
        lines.append("")
        for st in camp.stages:
            lines.append(f"{st.name}: {st.bounds}")
        lines.append(f"final bound n <= {camp.final_n_bound}; proof complete: {camp.proof_complete}")
    lines += ["", f"overall: {report.overall}"]
    return "\n".join(lines) + "\n"


def emit_report(report: VerifyReport, fmt: str = "json") -> bytes:
    if fmt == "json":
        return dumps(report.to_json()).encode()
    if fmt == "text":
        return render_text(report).encode()
    raise ValueError(f"unknown format {fmt!r}")
