"""Acceptance criteria 1-5, each run through the verification suite with its time budget.

Every test prints one PASS/FAIL line (visible in ``pytest -v`` output).
"""

from __future__ import annotations

import time

import pytest

from kummer_forms.harness import REQUIRED_LEDGER_ENTRIES, SuiteConfig, run_suite

TOLERANCE = 1e-8

COUNT_FAMILIES = ("configuration-counts",)
EXACT_FAMILIES = (
    "trope-linear",
    "trope-four-term",
    "trope-bimonomial",
    "eight-trope-quadratic",
    "discriminant-factorization",
    "node-membership",
    "parameter-constraints",
    "squares-pushforward",
    "barth-gh-parameters",
    "octic-squares",
)
NUMERIC_FAMILIES = (
    "frobenius",
    "doubling",
    "mumford-square",
    "mumford-bimonomial",
    "trope-theta-dictionary",
    "quadric-model-theta",
    "goepel-theta",
    "gh-theta",
    "rosenhain-theta",
    "octic-theta",
    "barth-theta",
)
ISOGENY_FAMILIES = ("isogeny-moduli", "richelot", "isogeny-roundtrip")


def _report(capsys, number: int, title: str, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'}: {title} ({detail})")


def _run(families, **kw):
    config = SuiteConfig(seed=0, tolerance=TOLERANCE, selected_families=frozenset(families), **kw)
    start = time.perf_counter()
    manifest = run_suite(config)
    return manifest, time.perf_counter() - start


def _failures(manifest) -> list[str]:
    return [f"{f.id}:{f.status}:{','.join(f.failing[:3]) or f.error}" for f in manifest.families if f.status != "pass"]


def test_criterion_1_counts(capsys):
    manifest, seconds = _run(COUNT_FAMILIES, rational_trials=1, numeric_taus=1, points_per_tau=1)
    fam = manifest.family("configuration-counts")
    d = fam.details
    expected = {
        "goepel_groups": [15, 60],
        "rosenhain_groups": [20, 80],
        "goepel_tetrahedra": 60,
        "rosenhain_tetrahedra": 80,
        "rosenhain_classes": {"R1": 10, "R2": 10, "R3": 10, "R4": 30, "R5": 20},
        "eight_trope_relations": 30,
        "even_eights": 30,
        "theta_models": 15,
    }
    ok = fam.status == "pass" and all(d.get(k) == v for k, v in expected.items()) and seconds < 5
    _report(capsys, 1, "counting claims", ok, f"{seconds:.2f}s, failing={list(fam.failing)}")
    assert fam.status == "pass", fam.failing
    assert {k: d.get(k) for k in expected} == expected
    assert seconds < 5


def test_criterion_2_exact_identities(capsys):
    manifest, seconds = _run(EXACT_FAMILIES, rational_trials=50, numeric_taus=1, points_per_tau=1, height=10**4)
    bad = _failures(manifest)
    exact_zero = all(f.worst_residual == 0 for f in manifest.families)
    ok = not bad and exact_zero and seconds < 30
    _report(capsys, 2, "exact polynomial identities, 50 rational points", ok, f"{seconds:.2f}s, failures={bad}")
    assert not bad
    assert exact_zero
    assert len(manifest.families) == len(EXACT_FAMILIES)
    assert seconds < 30


def test_criterion_3_numeric_theta_identities(capsys):
    manifest, seconds = _run(NUMERIC_FAMILIES, rational_trials=1, numeric_taus=20, points_per_tau=5)
    bad = _failures(manifest)
    worst = max(f.worst_residual for f in manifest.families)
    ok = not bad and worst <= TOLERANCE and seconds < 60
    _report(capsys, 3, "numeric theta identities, 20 tau x 5 z", ok, f"{seconds:.2f}s, worst={worst:.1e}, failures={bad}")
    assert not bad
    counts = {f.id: f.relations for f in manifest.families}
    assert counts["mumford-square"] + counts["mumford-bimonomial"] == 72
    assert counts["barth-theta"] == 8  # six quadrics and two parameter constraints
    assert seconds < 60


def test_criterion_4_isogeny_consistency(capsys):
    manifest, seconds = _run(ISOGENY_FAMILIES, rational_trials=50, numeric_taus=10, isogeny_taus=10, points_per_tau=1)
    bad = _failures(manifest)
    l_entry = next(e for e in manifest.ledger if e.id == "l-denominator")
    ok = not bad and l_entry.resolved_passes and l_entry.literal_passes is False
    _report(capsys, 4, "isogeny consistency at 10 tau, round trip at 50 points", ok, f"{seconds:.2f}s, failures={bad}")
    assert not bad
    assert manifest.family("isogeny-roundtrip").worst_residual == 0
    assert l_entry.resolved_passes and l_entry.literal_passes is False


def test_criterion_5_typo_ledger(capsys):
    manifest, _ = _run(("frobenius",), rational_trials=5, numeric_taus=3, points_per_tau=1, isogeny_taus=3)
    ledger = {e.id: e for e in manifest.ledger}
    missing = [k for k in REQUIRED_LEDGER_ENTRIES if k not in ledger]
    unjustified = [
        k for k in REQUIRED_LEDGER_ENTRIES
        if k in ledger and not (ledger[k].resolved_passes is True and ledger[k].literal_passes is False)
    ]
    ok = not missing and not unjustified and manifest.ledger_complete()
    _report(capsys, 5, "typo ledger completeness", ok, f"missing={missing}, unjustified={unjustified}")
    assert not missing and not unjustified
    assert manifest.ledger_complete()
    # every value-affecting deviation carries a two-sided check
    assert all(e.justified for e in manifest.ledger)


@pytest.mark.slow
def test_default_suite_all_pass():
    manifest = run_suite(SuiteConfig())
    assert manifest.all_pass, _failures(manifest)
    assert manifest.claims["fifteen-class-projections-isomorphic"]["status"] == "refuted"
