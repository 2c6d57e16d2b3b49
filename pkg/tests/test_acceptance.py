"""Acceptance criteria, one test each.

Run with ``pytest tests/test_acceptance.py -s`` to see a PASS/FAIL line per
criterion; the same summary is printed at the end of the module in any case.
"""
import contextlib
import random
import string
import time
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from refrank.emails import extract_emails, is_valid_email
from refrank.evaluate import GroundTruth, evaluate, frequency_accuracy
from refrank.fetch import CacheOnlyFetcher, DiskCache
from refrank.freq import count_frequencies, name_key
from refrank.ingest import SourceDocument
from refrank.pipeline import run_pipeline
from refrank.rank import ScoreWeights, rank_candidates
from refrank.refparse import normalize_citation
from refrank.report import emit
from refrank.scholar import (
    ScholarProfile, build_profile_url, build_search_url, extract_profile_id, is_valid_scholar_id, parse_profile,
)

from conftest import CACHE_DIR, DATASETS, FIXTURES, CountingFetcher

RESULTS: dict[str, tuple[bool, str]] = {}


@contextlib.contextmanager
def criterion(name):
    detail = {}
    try:
        yield detail
    except Exception:
        RESULTS[name] = (False, detail.get("info", ""))
        print(f"\nFAIL  {name}")
        raise
    RESULTS[name] = (True, detail.get("info", ""))
    print(f"\nPASS  {name}  {detail.get('info', '')}")


@pytest.fixture(scope="module", autouse=True)
def summary(request):
    yield
    tr = request.config.pluginmanager.getplugin("terminalreporter")
    if tr is None:
        return
    tr.write_line("")
    tr.write_line("acceptance summary")
    for name, (ok, info) in RESULTS.items():
        tr.write_line(f"  {'PASS' if ok else 'FAIL'}  {name}  {info}".rstrip())


def run(ds, fetcher=None, submitters=()):
    fetcher = fetcher or CacheOnlyFetcher(DiskCache(CACHE_DIR))
    doc = SourceDocument.from_path(FIXTURES / f"{ds}.txt")
    return run_pipeline(doc, submitters, fetcher=fetcher, label=ds)


def cached_body(cache, url):
    return cache.get(url).text()


def test_profile_ids(cache):
    with criterion("profile ids from recorded search pages") as d:
        expected = {"R. Heat": "W_ZpqUwAAAAJ", "S. Sum": "rrfl7UsAAAAJ", "C. Fischione": "RWGj7esAAAAJ"}
        pages = {n: cached_body(cache, build_search_url(n)) for n in expected}
        t0 = time.perf_counter()
        got = {n: extract_profile_id(p) for n, p in pages.items()}
        elapsed = time.perf_counter() - t0
        assert got == expected
        assert elapsed < 1.0
        d["info"] = f"({elapsed * 1000:.2f} ms)"


def test_profile_metrics(cache):
    with criterion("profile metrics from recorded profile pages"):
        expected = {
            ("R. Heat", "W_ZpqUwAAAAJ"): (99, 220, 54428),
            ("S. Sum", "rrfl7UsAAAAJ"): (63, 128, 13624),
            ("C. Fischione", "RWGj7esAAAAJ"): (23, 48, 1923),
        }
        for (name, sid), metrics in expected.items():
            p = parse_profile(cached_body(cache, build_profile_url(sid)), name, sid)
            assert (p.h_index, p.i10_index, p.citations) == metrics
            assert type(p.h_index) is int and type(p.citations) is int


def test_top_candidate_identities():
    with criterion("top candidate identities on the three data sets") as d:
        r1, r2, r3 = (run(ds) for ds in DATASETS)
        top1 = {c.name: c for c in r1.rows}
        assert r1.rows[0].name == "G. B. Huang"
        assert "A. Lendasse" in top1 and top1["A. Lendasse"].email == "lendasse@uiowa.edu"
        assert r2.rows[0].name == "K. Goldberg" and r2.rows[0].email == "goldberg@berkeley.edu"
        assert r2.rows[0].profile.verified_email_domain == "berkeley.edu"
        assert r3.rows[0].name == "H. Wang"
        d["info"] = "; ".join(f"{r.dataset}: {', '.join(c.name for c in r.rows)}" for r in (r1, r2, r3))


def test_frequency_accuracy():
    with criterion("frequency accuracy is 100%") as d:
        truth = GroundTruth.load(FIXTURES / "truth.json")
        reports = [run(ds) for ds in DATASETS]
        table = evaluate(reports, truth)
        assert table.percent("Frequency") == 100.0
        full = [frequency_accuracy(r, truth) for r in reports]
        assert all(c == t and t > 0 for c, t in full)
        d["info"] = f"(top rows {table.counts['Frequency']}, all names {full})"


def naive_count(tokens):
    keys, counts = [], []
    for t in tokens:
        k = " ".join(t.split()).casefold()
        for i, existing in enumerate(keys):
            if existing == k:
                counts[i] += 1
                break
        else:
            keys.append(k)
            counts.append(1)
    return dict(zip(keys, counts))


def test_oracle_equivalence():
    with criterion("counting matches a nested-loop oracle on 1,000 random lists"):
        rnd = random.Random(20261015)
        pool = ["G. B. Huang", "g. b. huang", "A. Lendasse", "K. Liu", "k. LIU", "Z. Liu", "M. Beetz", "Ö. Ünal"]
        for _ in range(1000):
            pool_here = pool + ["".join(rnd.choices(string.ascii_letters + ". ", k=rnd.randint(1, 6))).strip() or "x"
                                for _ in range(rnd.randint(0, 5))]
            tokens = [rnd.choice(pool_here) for _ in range(rnd.randint(0, 200))]
            table = count_frequencies(tokens)
            assert {name_key(k): v for k, v in table.entries.items()} == naive_count(tokens)
            assert table.total_mentions == len(tokens)


ID_CHARS = string.ascii_letters + string.digits + "_-"
NOISE = ID_CHARS + "=&?/. é +*"


def test_scholar_id_validator():
    with criterion("scholar id validator, >= 10,000 random cases") as d:
        rnd = random.Random(7)
        n = 0
        for _ in range(12000):
            length = rnd.choice([rnd.randint(0, 20), 11, 12, 12, 12, 13])
            alphabet = ID_CHARS if rnd.random() < 0.6 else NOISE
            s = "".join(rnd.choices(alphabet, k=length))
            expected = len(s) == 12 and all(c in ID_CHARS for c in s)
            assert is_valid_scholar_id(s) == expected, s
            n += 1
        d["info"] = f"({n} cases)"


@settings(max_examples=1000, deadline=None)
@given(st.text(max_size=300))
def test_emails_revalidate(text):
    with criterion_once("extracted emails always re-validate"):
        for e in extract_emails(text):
            assert is_valid_email(e)


@settings(max_examples=1000, deadline=None)
@given(st.text(max_size=300))
def test_normalize_idempotent(text):
    with criterion_once("citation normalization is idempotent"):
        once = normalize_citation(text)
        assert normalize_citation(once) == once


metrics = st.tuples(st.integers(0, 200), st.integers(0, 500), st.integers(0, 10**6))


@settings(max_examples=500, deadline=None)
@given(
    st.dictionaries(st.sampled_from("ABCDEFGHIJ"), st.tuples(st.integers(1, 9), st.none() | metrics), min_size=1),
    st.builds(ScoreWeights, st.floats(0, 10), st.floats(0, 10), st.floats(0.01, 10)),
    st.sampled_from([0.125, 0.5, 2.0, 8.0, 1024.0]),
)
def test_rank_scale_invariance(cands, w, k):
    with criterion_once("rank order invariant under uniform weight scaling"):
        table = count_frequencies([n for n, (f, _) in cands.items() for _ in range(f)])
        profiles = {n: ScholarProfile("abcdefghijkl", n, n, "", *m) if m else None for n, (_, m) in cands.items()}
        scaled = ScoreWeights(w.alpha * k, w.beta * k, w.gamma * k)
        assert [c.name for c in rank_candidates(table, profiles, w)] == [
            c.name for c in rank_candidates(table, profiles, scaled)
        ]


@settings(max_examples=500, deadline=None)
@given(st.lists(st.sampled_from(["A. B", "a. b", "C. D", "E. F", "É. G"]), max_size=200), st.randoms())
def test_count_permutation_invariance(tokens, rnd):
    with criterion_once("counting is permutation invariant"):
        shuffled = list(tokens)
        rnd.shuffle(shuffled)
        a, b = count_frequencies(tokens), count_frequencies(shuffled)
        assert {name_key(k): v for k, v in a.entries.items()} == {name_key(k): v for k, v in b.entries.items()}


@contextlib.contextmanager
def criterion_once(name):
    """Record a property criterion: passed unless any example fails."""
    try:
        yield
    except Exception:
        if RESULTS.get(name, (True,))[0]:
            print(f"\nFAIL  {name}")
        RESULTS[name] = (False, "")
        raise
    if name not in RESULTS:
        RESULTS[name] = (True, "")
        print(f"\nPASS  {name}")


def test_hermetic(no_network):
    with criterion("cache_only runs make no network calls, under 30 s") as d:
        t0 = time.perf_counter()
        fetchers = []
        for ds in DATASETS:
            f = CountingFetcher(CacheOnlyFetcher(DiskCache(CACHE_DIR)))
            run(ds, f)
            run(ds, f, ["G. B. Huang", "K. Goldberg"])
            fetchers.append(f)
        elapsed = time.perf_counter() - t0
        assert all(f.calls for f in fetchers)
        assert sum(f.live_calls for f in fetchers) == 0
        assert not no_network
        assert elapsed < 30
        d["info"] = f"({sum(len(f.calls) for f in fetchers)} cached fetches, {elapsed:.2f} s)"


def test_deterministic_json():
    with criterion("two cache_only json reports are byte-identical") as d:
        a = emit(run("dataset1"), "json")
        b = emit(run("dataset1"), "json")
        assert a == b
        d["info"] = f"({len(a)} bytes)"
