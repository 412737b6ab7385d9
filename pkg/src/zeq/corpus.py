"""Corpus file format and the batch runner.

A corpus is a JSON array of entries.  Every expected value carries a
``provenance`` field saying where it came from ("derived:<oracle>",
"trivial", or "literature:<citation>"); entries without at least one
expectation are rejected.

    {
      "name": "a1-cone",
      "expression": "z^2 - x*y",
      "params": [],
      "tags": ["isolated"],
      "expected_mu_seq": {"value": [2,2,1,2], "provenance": "derived:..."},
      "expected_milnor": {"value": 2, "provenance": "derived:..."},      # curve entries
      "literature": {"mu3": 1, "k": 0, "phi": 0, "source": "..."},
      "expected_family_decision": {"value": "yes", "provenance": "..."},
      "semicont_samples": ["1/2", "1/3", "-1/5"]
    }

Checks run per entry according to what is present: the multiplicity
sequence and its coordinate invariance over three seeds, the
discriminant-multiplicity formula on isolated entries, the literature
identity when supplied, the three-way family harness, semicontinuity at
the sample points, and the curve Milnor checks for plane-curve entries.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .equising import (
    SurfaceGerm,
    coordinate_invariance_test,
    multiplicity_sequence,
    semicontinuity_sample,
    theorem1_harness,
)
from .errors import PolyError, ZeqError
from .isolated import (
    LiteratureData,
    PlaneCurveGerm,
    check_formula_43,
    check_formula_a,
    milnor_plane_curve,
    prop44_check,
)
from .parser import parse_poly

GEOM_SURFACE = ("x", "y", "z")
GEOM_CURVE = ("x", "y")


@dataclass
class CorpusEntry:
    name: str
    expression: str
    params: tuple[str, ...] = ()
    tags: tuple[str, ...] = ()
    expected_mu_seq: Optional[list[int]] = None
    expected_milnor: Optional[int] = None
    literature: Optional[LiteratureData] = None
    expected_family_decision: Optional[str] = None
    semicont_samples: tuple[Fraction, ...] = ()

    @classmethod
    def from_dict(cls, data: dict) -> "CorpusEntry":
        def expected(field_name):
            block = data.get(field_name)
            if block is None:
                return None
            if not isinstance(block, dict) or "value" not in block or "provenance" not in block:
                raise PolyError(f"{field_name} needs value and provenance in entry {data.get('name')}")
            return block["value"]

        lit = None
        if "literature" in data:
            block = data["literature"]
            lit = LiteratureData(block["mu3"], block["k"], block["phi"], block.get("source", ""))
        entry = cls(
            name=data["name"],
            expression=data["expression"],
            params=tuple(data.get("params", [])),
            tags=tuple(data.get("tags", [])),
            expected_mu_seq=expected("expected_mu_seq"),
            expected_milnor=expected("expected_milnor"),
            literature=lit,
            expected_family_decision=expected("expected_family_decision"),
            semicont_samples=tuple(Fraction(s) for s in data.get("semicont_samples", [])),
        )
        if (entry.expected_mu_seq is None and entry.expected_milnor is None
                and entry.literature is None and entry.expected_family_decision is None
                and not entry.semicont_samples):
            raise PolyError(f"corpus entry {entry.name!r} carries no expectation")
        return entry

    def is_curve(self) -> bool:
        return "curve" in self.tags


@dataclass
class CheckResult:
    entry: str
    check: str
    passed: bool
    detail: str = ""


def load_corpus(path: str) -> list[CorpusEntry]:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, list):
        raise PolyError("corpus file must contain a JSON array")
    return [CorpusEntry.from_dict(d) for d in data]


def run_entry(entry: CorpusEntry, seed: int = 1) -> list[CheckResult]:
    results: list[CheckResult] = []

    def record(check: str, passed: bool, detail: str = ""):
        results.append(CheckResult(entry.name, check, bool(passed), detail))

    try:
        if entry.is_curve():
            g = parse_poly(entry.expression, GEOM_CURVE)
            curve = PlaneCurveGerm.make(g)
            if entry.expected_milnor is not None:
                mu = milnor_plane_curve(curve, seed=seed)
                record("curve_milnor", mu == entry.expected_milnor,
                       f"computed {mu}, expected {entry.expected_milnor}")
            record("curve_disc_identity", check_formula_43(curve, seed=seed))
            return results

        f = parse_poly(entry.expression, GEOM_SURFACE, entry.params)
        germ = SurfaceGerm.make(f, params=entry.params)

        if entry.expected_mu_seq is not None:
            base = SurfaceGerm.make(germ.fiber() if entry.params else f)
            seq, _ = multiplicity_sequence(base, seed=seed)
            record("mu_seq", list(seq.as_tuple()) == list(entry.expected_mu_seq),
                   f"computed {list(seq.as_tuple())}, expected {entry.expected_mu_seq}")
            record("invariance",
                   coordinate_invariance_test(base, [seed, seed + 3, seed + 10]),
                   "3 seeds")

        if "isolated" in entry.tags and not entry.params:
            base = SurfaceGerm.make(f)
            record("formula_discriminant_mult", check_formula_a(base, seed=seed))
            if entry.literature is not None:
                ok, computed, expected = prop44_check(base, entry.literature, seed=seed)
                record("literature_identity", ok,
                       f"computed {computed}, expected {expected}")

        if entry.params and entry.expected_family_decision is not None:
            harness = theorem1_harness(germ, seeds=[seed, seed + 1])
            record("family_consistent", harness["consistent"],
                   str([r["decisions"] for r in harness["runs"]]))
            record("family_decision", harness["decision"] == entry.expected_family_decision,
                   f"computed {harness['decision']}, expected {entry.expected_family_decision}")

        if entry.params and entry.semicont_samples:
            ok = semicontinuity_sample(germ, list(entry.semicont_samples), seed=seed)
            record("semicontinuity", ok, f"samples {[str(s) for s in entry.semicont_samples]}")
    except ZeqError as exc:
        record("error", False, f"{type(exc).__name__}: {exc}")
    return results


def run_corpus(entries: list[CorpusEntry], seed: int = 1,
               parallel: int = 1) -> tuple[list[CheckResult], bool]:
    if parallel > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            futures = [pool.submit(run_entry, e, seed) for e in entries]
            chunks = [f.result() for f in futures]
    else:
        chunks = [run_entry(e, seed) for e in entries]
    results = [r for chunk in chunks for r in chunk]
    return results, all(r.passed for r in results)


def format_table(results: list[CheckResult]) -> str:
    width_e = max((len(r.entry) for r in results), default=5)
    width_c = max((len(r.check) for r in results), default=5)
    lines = []
    for r in results:
        mark = "pass" if r.passed else "FAIL"
        line = f"{r.entry:<{width_e}}  {r.check:<{width_c}}  {mark}"
        if r.detail and not r.passed:
            line += f"  ({r.detail})"
        lines.append(line)
    total = len(results)
    bad = sum(1 for r in results if not r.passed)
    lines.append(f"{total} checks, {total - bad} passed, {bad} failed")
    return "\n".join(lines)
