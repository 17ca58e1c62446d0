import json
import random

import httpx
import pytest

from campana.census import (
    PROXY_CAVEAT,
    CensusNetworkError,
    CurveRecord,
    RemoteConfig,
    census_report,
    fetch_remote,
    ingest,
    is_semistable,
    max_torsion_level,
    parse_torsion,
    read_curve_csv,
    report_json,
    write_curve_csv,
)

from conftest import FIXTURE_CSV


def write(tmp_path, body):
    p = tmp_path / "curves.csv"
    p.write_text("label,conductor,torsion\n" + body)
    return p


def test_ingest_single_row(tmp_path):
    recs = ingest(write(tmp_path, "11a1,11,[5]\n"))
    assert recs == [CurveRecord("11a1", 11, (5,), "local-file")]


def test_limit_zero(tmp_path):
    assert ingest(write(tmp_path, "11a1,11,[5]\n"), limit=0) == []
    assert ingest("remote", limit=0) == []


def test_malformed_row_skipped(tmp_path):
    recs = ingest(write(tmp_path, '11a1,11,[5\n14a1,14,[6]\n15a1,15,"[2, 4]"\n37a1,37,[7, 3]\n'))
    assert [r.label for r in recs] == ["14a1", "15a1"]
    assert recs.skipped == 2


def test_parse_torsion():
    assert parse_torsion("[]") == (1,)
    assert parse_torsion("[2, 8]") == (2, 8)
    for bad in ("[5", "[2, 3]", "[1, 2, 3]", "[x]", "[0]"):
        with pytest.raises(ValueError):
            parse_torsion(bad)
    with pytest.raises(ValueError):
        CurveRecord("bad", 11, (11,))


@pytest.mark.parametrize("n,expected", [(11, True), (27, False), (15, True), (1, True), (50, False)])
def test_is_semistable(n, expected):
    assert is_semistable(n) is expected


def test_is_semistable_outside_s():
    assert is_semistable(27, s_primes=[3])
    assert not is_semistable(4 * 9, s_primes=[3])


def trial_squarefree(n):
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def test_is_semistable_vs_trial_division():
    rng = random.Random(7)
    for n in list(range(1, 3000)) + [rng.randrange(1, 10**6) for _ in range(3000)]:
        assert is_semistable(n) == trial_squarefree(n), n


def test_max_level_examples():
    assert max_torsion_level([CurveRecord("11a1", 11, (5,))])["max_level"] == 5
    empty = max_torsion_level([])
    assert empty["curves"] == 0 and empty["max_level"] is None and empty["levels"] == {}


def test_levels_use_divisibility_proxy():
    recs = [CurveRecord("a", 15, (2, 4)), CurveRecord("b", 14, (6,)), CurveRecord("c", 27, (3,))]
    rep = max_torsion_level(recs)
    assert rep["levels"] == {"2": 2, "3": 2, "4": 1, "6": 1}
    assert rep["full_two_torsion"] == 1
    assert max_torsion_level(recs, semistable_only=True)["curves"] == 2


def test_report_permutation_invariant():
    recs = read_curve_csv(FIXTURE_CSV, limit=400)
    shuffled = list(recs)
    random.Random(3).shuffle(shuffled)
    assert report_json(census_report(recs)) == report_json(census_report(shuffled))
    assert census_report(recs)["caveat"] == PROXY_CAVEAT


def test_csv_round_trip(tmp_path):
    recs = read_curve_csv(FIXTURE_CSV, limit=50)
    out = tmp_path / "copy.csv"
    write_curve_csv(recs, out)
    assert read_curve_csv(out) == recs


# -- remote, against an in-process mock server ---------------------------------------

ROWS = [
    {"lmfdb_label": "11.a2", "conductor": 11, "torsion_structure": [5]},
    {"lmfdb_label": "14.a1", "conductor": 14, "torsion_structure": [6]},
    {"lmfdb_label": "15.a1", "conductor": 15, "torsion_structure": [2, 4]},
    {"lmfdb_label": "17.a1", "conductor": 17, "torsion_structure": [4]},
    {"lmfdb_label": "19.a1", "conductor": 19, "torsion_structure": [3]},
]
CFG = dict(endpoint="https://curves.test/api?offset={offset}&limit={limit}",
           page_size=2, rate_limit=0, backoff=0.0, max_retries=2)


def server(calls, fail_first=0):
    def handler(request):
        calls.append(str(request.url))
        if len(calls) <= fail_first:
            return httpx.Response(503)
        q = request.url.params
        off, lim = int(q["offset"]), int(q["limit"])
        return httpx.Response(200, json={"data": ROWS[off:off + lim]})
    return httpx.Client(transport=httpx.MockTransport(handler))


def test_remote_paging_and_cache(tmp_path):
    calls = []
    recs = fetch_remote(5, RemoteConfig(**CFG), server(calls), tmp_path)
    assert [r.label for r in recs] == [r["lmfdb_label"] for r in ROWS]
    assert {r.source for r in recs} == {"remote-api"}
    assert len(calls) == 3
    snapshot = {p.name: p.read_bytes() for p in tmp_path.iterdir()}

    offline = []
    again = fetch_remote(5, RemoteConfig(**CFG), server(offline), tmp_path)
    assert offline == [] and again == recs
    assert {p.name: p.read_bytes() for p in tmp_path.iterdir()} == snapshot


def test_remote_retries_then_succeeds(tmp_path):
    calls = []
    recs = fetch_remote(2, RemoteConfig(**CFG), server(calls, fail_first=2), tmp_path)
    assert len(recs) == 2 and len(calls) == 3


def test_remote_failure_has_cache_hint(tmp_path):
    calls = []
    with pytest.raises(CensusNetworkError, match="cache"):
        fetch_remote(2, RemoteConfig(**CFG), server(calls, fail_first=99), tmp_path)
    assert len(calls) == CFG["max_retries"] + 1


def test_fixture_is_large_and_clean():
    recs = read_curve_csv(FIXTURE_CSV)
    assert len(recs) >= 1000 and recs.skipped == 0
    assert census_report(recs)["all"]["max_level"] <= 12
