import json
from pathlib import Path

import pytest

from zeq.corpus import CorpusEntry, format_table, load_corpus, run_corpus, run_entry
from zeq.errors import PolyError

CORPUS_PATH = Path(__file__).resolve().parents[1] / "src" / "zeq" / "data" / "corpus.json"


def test_builtin_corpus_schema():
    entries = load_corpus(str(CORPUS_PATH))
    assert len(entries) >= 12
    names = [e.name for e in entries]
    assert len(set(names)) == len(names)
    for e in entries:
        has_expectation = (e.expected_mu_seq is not None or e.expected_milnor is not None
                           or e.literature is not None
                           or e.expected_family_decision is not None or e.semicont_samples)
        assert has_expectation, e.name


def test_provenance_is_mandatory():
    with pytest.raises(PolyError):
        CorpusEntry.from_dict({
            "name": "n", "expression": "z", "params": [],
            "expected_mu_seq": {"value": [1, 0, 1, 0]},
        })


def test_run_entry_reports_failures_without_raising():
    entry = CorpusEntry.from_dict({
        "name": "wrong", "expression": "z^2 - x*y", "params": [],
        "expected_mu_seq": {"value": [3, 3, 3, 3], "provenance": "trivial"},
    })
    results = run_entry(entry, seed=1)
    assert any(r.check == "mu_seq" and not r.passed for r in results)
    table = format_table(results)
    assert "FAIL" in table


def test_parallel_runner_matches_serial():
    entries = load_corpus(str(CORPUS_PATH))
    fast = [e for e in entries if e.name in ("a1-cone", "smooth-curve", "node-curve")]
    serial, ok_serial = run_corpus(fast, seed=1, parallel=1)
    parallel, ok_parallel = run_corpus(fast, seed=1, parallel=2)
    assert ok_serial and ok_parallel
    assert [(r.entry, r.check, r.passed) for r in serial] == \
           [(r.entry, r.check, r.passed) for r in parallel]


def test_builtin_corpus_passes_end_to_end():
    entries = load_corpus(str(CORPUS_PATH))
    results, ok = run_corpus(entries, seed=1)
    failures = [r for r in results if not r.passed]
    assert ok, failures
