import random
from fractions import Fraction

import pytest

import oracle
from fibtrib.contfrac import convergents
from fibtrib.errors import ConfigError, HypothesisViolated
from fibtrib.mpreal import CReal, PrecisionPolicy, constants
from fibtrib.reduction import (
    NEGATIVE, POSITIVE, ReductionInstance, dujella_epsilon, lemma_bound, load_campaign_config, mu_value,
    run_campaign, run_stage0, single_instance, sweep, tau_value,
)

M_PROP = 8 * 10**51


# -- the lemma itself, against brute force on rational data --------------------------------

def _nid(x: Fraction) -> Fraction:
    return abs(x - round(x))


def _brute_force_max_w(tau: Fraction, mu: Fraction, A: Fraction, B: int, M: int) -> int:
    """Largest w with 0 < |u tau - v + mu| < A B^-w over 0 <= u <= M and all v (-1 if none)."""
    best = -1
    for u in range(M + 1):
        base = u * tau + mu
        for v in (base.numerator // base.denominator, base.numerator // base.denominator + 1):
            lam = abs(base - v)
            if lam == 0:
                continue
            w = 0
            if lam >= A:
                continue
            while lam * B ** (w + 1) < A:
                w += 1
            best = max(best, w)
    return best


def _random_instances(count: int, seed: int = 20240611):
    rng = random.Random(seed)
    made = 0
    while made < count:
        M = rng.randint(1, 50)
        den = rng.randint(10**8, 10**12)
        tau = Fraction(rng.randint(1, den - 1), den)
        conv = [cv for cv in convergents(oracle.cf_quotients(oracle.D(tau), 60)) if cv.q > 6 * M]
        if not conv:
            continue
        q = conv[0].q
        mu = Fraction(rng.randint(1, 10**9), rng.randint(10**9, 10**10 - 1))
        A = Fraction(rng.randint(1, 200), rng.randint(1, 4))
        B = rng.randint(2, 5)
        made += 1
        yield tau, mu, A, B, M, q


def test_lemma_against_brute_force():
    checked = positive = 0
    for tau, mu, A, B, M, q in _random_instances(150):
        inst = ReductionInstance(CReal.from_fraction(tau, 256), CReal.from_fraction(mu, 256), A, B, M, q)
        out = dujella_epsilon(inst)
        exact = _nid(mu * q) - M * _nid(tau * q)
        assert out.epsilon.contains(exact)
        checked += 1
        if out.status == POSITIVE:
            positive += 1
            assert _brute_force_max_w(tau, mu, A, B, M) <= out.k_bound
        else:
            assert out.k_bound is None
    assert checked == 150 and positive >= 100


def test_lemma_bound_monotone():
    A, B = CReal.from_int(48), CReal.from_int(2)
    q = 10**20
    bounds = [lemma_bound(A, B, q, Fraction(1, 10**e)) for e in range(1, 12)]
    assert bounds == sorted(bounds)
    assert lemma_bound(A, B, 10 * q, Fraction(1, 100)) >= lemma_bound(A, B, q, Fraction(1, 100))
    with pytest.raises(ValueError):
        lemma_bound(A, B, q, Fraction(0))


def test_lemma_bound_is_ceil_minus_one():
    # log2(8 * 4 / 1) = 5 exactly: the enclosure straddles 5 and the bound stays on the safe side
    assert lemma_bound(CReal.from_int(8), CReal.from_int(2), 4, Fraction(1)) in (4, 5)
    # log2(9 * 4) = 5.17..: w <= 5
    assert lemma_bound(CReal.from_int(9), CReal.from_int(2), 4, Fraction(1)) == 5


@pytest.mark.parametrize("A,B,M,q", [(0, 2, 10, 100), (-1, 2, 10, 100), (1, 1, 10, 100), (1, 2, 0, 100),
                                     (1, 2, 10, 60), (1, 2, 10, 61.0)])
def test_hypothesis_violations(A, B, M, q):
    x = CReal.from_fraction(Fraction(1, 3), 128)
    with pytest.raises(HypothesisViolated):
        ReductionInstance(x, x, A, B, M, q)


# -- the concrete instances ----------------------------------------------------------------------

def _encloses(x, ref, digits=300):
    t = oracle.tol(digits)
    return oracle.D(x.lo) - t <= ref <= oracle.D(x.hi) + t


@pytest.mark.parametrize("side,form,key", [
    ("pos", "const", ()), ("neg", "const", ()),
    ("pos", "alpha_gap", (47,)), ("neg", "alpha_gap", (1,)),
    ("pos", "tribo_gap", (90,)), ("neg", "tribo_gap", (212,)),
    ("pos", "both_gaps", (141, 103)), ("neg", "both_gaps", (119, 51)),
])
def test_mu_against_decimal_oracle(c, side, form, key):
    # [DERIVED] decimal ln of the same closed forms
    assert _encloses(mu_value(c, side, form, key), oracle.mu(side, form, key))
    t = oracle.tau() if side == "pos" else 1 / oracle.tau()
    assert _encloses(tau_value(c, side), t)


@pytest.mark.parametrize("side,form,key,index", [
    ("pos", "const", (), 104), ("neg", "const", (), 103),
    ("pos", "tribo_gap", (90,), 104), ("pos", "tribo_gap", (90,), 105),
    ("pos", "both_gaps", (141, 103), 104), ("neg", "both_gaps", (217, 163), 104),
])
def test_epsilon_against_decimal_oracle(side, form, key, index):
    inst = single_instance(side, form, key, 50, "alpha", M_PROP, index, 1024)
    out = dujella_epsilon(inst)
    assert _encloses(out.epsilon, oracle.epsilon(side, form, key, inst.q, M_PROP), 250)


def test_k90_needs_the_next_convergent():
    # [PAPER] k = 90 gives a negative eps at q104; q105 gives eps > 0.46 and n-n1 < 275
    base = dujella_epsilon(single_instance("pos", "tribo_gap", (90,), 50, "alpha", M_PROP, 104, 1024))
    assert base.status == NEGATIVE
    nxt = dujella_epsilon(single_instance("pos", "tribo_gap", (90,), 50, "alpha", M_PROP, 105, 1024))
    assert nxt.status == POSITIVE and nxt.epsilon.certainly_gt(Fraction("0.46")) and nxt.k_bound == 274


def test_sweep_escalates_only_failures():
    res = sweep("pos", "tribo_gap", M_PROP, [(89,), (90,), (91,)], 104, policy=PrecisionPolicy(1024, 65536))
    assert [r.convergent_index for r in res] == [104, 105, 104]
    assert [r.escalated for r in res] == [False, True, False]
    assert res[1].path[0][1] == NEGATIVE


def test_sweep_respects_max_escalations():
    res = sweep("pos", "tribo_gap", M_PROP, [(90,)], 104, max_escalations=0)
    assert res[0].status == NEGATIVE and res[0].convergent_index == 104


def test_sweep_workers_agree():
    keys = [(k,) for k in range(1, 41)]
    assert [r.epsilon for r in sweep("neg", "alpha_gap", M_PROP, keys, 103, workers=2)] == \
        [r.epsilon for r in sweep("neg", "alpha_gap", M_PROP, keys, 103)]


# -- the campaign as replayed by verify ------------------------------------------------------------

def test_stage_bounds(campaign):
    # [PAPER] 271/212, then 219, then 279, then 291
    assert campaign.stage("stage0").bounds == {"n-n1": 271, "m-m1": 212}
    assert campaign.stage("stage1").bounds == {"m-m1": 219}
    assert campaign.stage("stage2").bounds == {"n-n1": 279}
    assert campaign.stage("stage3").bounds == {"n": 291}
    assert campaign.final_n_bound == 291 and campaign.proof_complete


def test_published_eps_thresholds(campaign):
    # [PAPER] eps > 0.068, 0.067, 0.00038, 0.0012, 0.46, 0.0000028, 0.0018
    s0, s1, s2, s3 = (campaign.stage(f"stage{i}") for i in range(4))
    assert s0.sides["pos"].group(104).min_epsilon.certainly_gt(Fraction("0.068"))
    assert s0.sides["neg"].group(103).min_epsilon.certainly_gt(Fraction("0.067"))
    assert s1.sides["pos"].group(104).min_epsilon.certainly_gt(Fraction("0.00038"))
    assert s2.sides["pos"].group(104).min_epsilon.certainly_gt(Fraction("0.0012"))
    assert s2.sides["pos"].group(105).min_epsilon.certainly_gt(Fraction("0.46"))
    assert s3.sides["pos"].group(104).min_epsilon.certainly_gt(Fraction("0.0000028"))
    assert s3.sides["pos"].group(105).min_epsilon.certainly_gt(Fraction("0.0018"))
    assert all(cl.holds for st in campaign.stages for cl in st.claims)


def test_escalation_sets(campaign):
    s2, s3 = campaign.stage("stage2"), campaign.stage("stage3")
    assert s2.sides["pos"].negative_at_base == [(90,)]
    assert s2.sides["neg"].negative_at_base == [(90,)]
    assert len(s3.sides["pos"].negative_at_base) == 66
    assert len(s3.sides["neg"].negative_at_base) == 79
    for st in campaign.stages:
        for side in st.sides.values():
            assert side.failures == []
            assert all(r.convergent_index <= side.base_index + 1 for r in side.escalations)


def test_stage_sizes(campaign):
    s3 = campaign.stage("stage3")
    assert s3.sides["pos"].count == 279 * 219
    assert campaign.stage("stage1").sides["neg"].count == 271


def test_side_conditions_hold(campaign):
    for st in campaign.stages:
        assert all(ch.holds is not False for ch in st.checks), st.name


def test_small_M_is_not_proof_complete():
    c = constants(1024)
    rep = run_campaign(c, 10**10, hypothesis_bound=M_PROP)
    assert not rep.proof_complete and rep.notes


def test_toy_stage0():
    assert run_stage0(constants(1024), 1000).bounds == {"n-n1": 32, "m-m1": 23}


def test_low_precision_cap_is_reported():
    rep = run_campaign(constants(64), M_PROP, policy=PrecisionPolicy(64, 64))
    assert rep.precision_exhausted and rep.error["type"] == "PrecisionExhausted"
    assert not rep.proof_complete


def test_config_loading(tmp_path):
    cfg = load_campaign_config()
    assert [s.name for s in cfg.stages] == ["stage0", "stage1", "stage2", "stage3"]
    bad = tmp_path / "c.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError):
        load_campaign_config(bad)
