from __future__ import annotations

import json

import pytest

from kummer_forms import harness
from kummer_forms.harness import FAMILIES, FamilySpec, SuiteConfig, Tally, missing_families, run_family, run_suite
from kummer_forms.scalars import DomainError

SMALL = dict(rational_trials=3, numeric_taus=2, points_per_tau=2, isogeny_taus=2)


def test_config_validation():
    with pytest.raises(DomainError):
        SuiteConfig(rational_trials=0)
    with pytest.raises(DomainError):
        SuiteConfig(tolerance=0.0)
    with pytest.raises(DomainError):
        SuiteConfig(selected_families=frozenset({"no-such-family"}))


def test_every_declared_family_is_registered():
    assert missing_families() == []
    assert set(harness.DECLARED_FAMILIES) <= set(FAMILIES)


def test_single_family_selection():
    m = run_suite(SuiteConfig(selected_families=frozenset({"frobenius"}), **SMALL))
    assert [f.id for f in m.families] == ["frobenius"]
    assert m.family("frobenius").relations == 6 and m.all_pass


def test_runs_are_deterministic():
    fams = frozenset({"doubling", "trope-linear", "isogeny-moduli", "thomae"})
    a = run_suite(SuiteConfig(seed=4, selected_families=fams, **SMALL))
    b = run_suite(SuiteConfig(seed=4, selected_families=fams, workers=3, **SMALL))
    assert a.dumps(timing=False) == b.dumps(timing=False)
    assert "seconds" not in a.dumps(timing=False)


def test_tally_semantics():
    t = Tally(1e-8)
    assert t.exact("r", [0, 0]) and not t.exact("s", 3)
    assert t.numeric("n", [1.0, -1.0 + 1e-12])
    assert not t.check("c", False)
    assert t.relations["c"].worst == 1.0 and t.relations["s"].failures == 1


def test_exception_is_error_not_fail():
    def boom(ctx, tally):
        tally.check("first", True)
        raise FloatingPointError("theta series diverged")

    spec = FamilySpec("boom", "theta-engine", "numeric", "always raises", boom)
    result = run_family(spec, harness.SuiteContext(SuiteConfig(**SMALL)))
    assert result.status == "error" and "theta series diverged" in result.error


def test_failing_relation_marks_family_failed():
    spec = FamilySpec("half", "test", "exact", "one bad relation", lambda ctx, t: (t.exact("a", 0), t.exact("b", 1)))
    result = run_family(spec, harness.SuiteContext(SuiteConfig(**SMALL)))
    assert result.status == "fail" and result.failing == ("b",) and result.passed == 1


def test_manifest_json_shape():
    m = run_suite(SuiteConfig(selected_families=frozenset({"trope-linear", "node-membership"}), **SMALL))
    doc = json.loads(m.dumps())
    assert set(doc) == {"config", "summary", "families", "typo_ledger", "claims", "timing"}
    assert doc["summary"]["all_pass"] and doc["summary"]["ledger_complete"]
    for key in harness.REQUIRED_LEDGER_ENTRIES:
        entry = doc["typo_ledger"][key]
        assert entry["resolved_passes"] is True and entry["literal_passes"] is False
