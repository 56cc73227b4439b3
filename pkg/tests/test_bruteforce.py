from collections import Counter
import json

import pytest

import oracle
from fibtrib.bruteforce import (
    Representation, SolutionRecord, load_golden, range_justification, search, verify_golden_table,
)

EXPECTED_VALUES = [0, 1, -1, -2, -3, 4, -5, 6, 8, -10, 11, -11, -22, -23, -41, -60, -271]


def naive(n_max, m_max):
    # [DERIVED] independent double loop over closed-form values
    fib, trib = oracle.fib_list(n_max), oracle.trib_list(m_max)
    count = Counter(fib[n] - trib[m] for n in range(2, n_max) for m in range(2, m_max))
    return {c for c, k in count.items() if k >= 2}


@pytest.fixture(scope="module")
def full():
    return search(300, 240)


def test_search_against_naive_small_ranges():
    for N in range(3, 41):
        for M in range(3, 33):
            got = {r.c for r in search(N, M)}
            assert got == naive(N, M), (N, M)


def test_full_search_values(full):
    # [PAPER] the seventeen values, in the published order
    assert [r.c for r in full] == EXPECTED_VALUES


def test_full_search_representations(full):
    assert sum(len(r.reps) for r in full) == 38
    by_c = {r.c: [(p.n, p.m) for p in r.reps] for r in full}
    assert by_c[0] == [(2, 2), (3, 3), (7, 6)]
    assert by_c[-271] == [(4, 11), (13, 12)]   # [PAPER] 3 - 274 = 233 - 504
    for rec in full:
        for rep in rec.reps:
            assert rep.f_value - rep.t_value == rec.c


def test_parallel_search_matches(full):
    assert search(300, 240, workers=3) == full


def test_search_rejects_tiny_ranges():
    with pytest.raises(ValueError):
        search(2, 10)


def test_golden_table_matches(full):
    verdict = verify_golden_table(full)
    assert verdict.passed, verdict.describe()
    assert verdict.record_count == 17 and verdict.representation_count == 38


def test_golden_file_order():
    assert [r.c for r in load_golden()] == EXPECTED_VALUES


def test_perturbed_golden_fails(full, tmp_path):
    data = json.loads(json.dumps({"solutions": [r.to_json() for r in load_golden()]}))
    data["solutions"][5]["reps"].pop()
    path = tmp_path / "golden.json"
    path.write_text(json.dumps(data))
    verdict = verify_golden_table(full, load_golden(path))
    assert not verdict.passed and verdict.extra


def test_wrong_value_in_golden_is_reported(full):
    golden = load_golden()
    bad = golden[0]
    golden[0] = SolutionRecord(bad.c, (Representation(2, 2, 1, 2),) + bad.reps[1:])
    verdict = verify_golden_table(full, golden)
    assert not verdict.passed and verdict.value_mismatches
    assert "FAIL" in verdict.describe()


def test_range_justification(c):
    v = range_justification(c, 299, 240)
    assert v.implication_holds and v.m_upper == 238 and all(v.constant_checks.values())
    # past the search range the implication genuinely stops holding
    assert not range_justification(c, 301, 240).implication_holds
