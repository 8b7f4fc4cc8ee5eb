from __future__ import annotations

import json
from importlib import resources

from kummer_forms import kummer as km
from kummer_forms.expressions import ConicRelation
from kummer_forms.relations import (
    CHECKSUMS,
    LINEAR_MISPRINTS,
    MUMFORD_MISPRINTS,
    all_families,
    catalog_json,
    data_checksum,
    derive_section_signs,
    mumford_bimonomial_relations,
    section_bindings,
    theta_bindings,
    trope_linear_relations,
)
from kummer_forms.scalars import relative_residual


def _trope_env(lam, z):
    env = {f"T{d}": sum(a * b for a, b in zip(p, z)) for d, p in km.trope_coefficients(lam).items()}
    env.update({"l1": lam[0], "l2": lam[1], "l3": lam[2]})
    return env


def test_family_sizes():
    sizes = {k: len(v) for k, v in all_families().items()}
    assert sizes == {
        "mumford-square": 12,
        "mumford-bimonomial": 60,
        "trope-linear": 12,
        "trope-four-term": 15,
        "trope-bimonomial": 60,
    }
    ids = [r.id for v in all_families().values() for r in v]
    assert len(ids) == len(set(ids))


def test_data_files_match_locked_checksums():
    for family, digest in CHECKSUMS.items():
        assert data_checksum(family) == digest


def test_golden_catalog_is_current():
    text = resources.files("kummer_forms").joinpath("data", "catalog.json").read_text()
    assert json.loads(text) == json.loads(json.dumps(catalog_json()))


def test_linear_and_four_term_relations_vanish_exactly(lambdas, seeds):
    fams = all_families()
    for lam, z in zip(lambdas, seeds):
        env = _trope_env(lam, z)
        for r in fams["trope-linear"] + fams["trope-four-term"]:
            assert r.value(env) == 0, r.id


def test_linear_misprints_fail(lambdas, seeds):
    env = _trope_env(lambdas[0], seeds[0])
    for texts in LINEAR_MISPRINTS.values():
        for text in texts:
            assert ConicRelation("printed", text, "lambda").value(env) != 0
    assert {r.id for r in trope_linear_relations()} >= {"trope-linear-T3", "trope-linear-T156"}


def test_mumford_relations_on_theta(samples):
    fams = all_families()
    for s in samples:
        b = theta_bindings(s.t, s.tz)
        for r in fams["mumford-square"] + fams["mumford-bimonomial"]:
            assert relative_residual(r.term_values(b)) < 1e-10, r.id


def test_mumford_printed_signs_fail(samples):
    b = theta_bindings(samples[0].t, samples[0].tz)
    rows = {r.id: r for r in mumford_bimonomial_relations()}
    for rid, text in MUMFORD_MISPRINTS.items():
        assert relative_residual(ConicRelation(rid, text, "theta").term_values(b)) > 1e-6
        assert relative_residual(rows[rid].term_values(b)) < 1e-10


def test_trope_relations_on_theta_sections(samples, numeric_lambdas):
    fams = all_families()
    rels = fams["trope-linear"] + fams["trope-four-term"] + fams["trope-bimonomial"]
    for s, lam in zip(samples, numeric_lambdas):
        b = section_bindings(s.t, s.tz, tuple(lam))
        for r in rels:
            assert relative_residual(r.term_values(b)) < 1e-10, r.id


def test_section_signs_are_forced(samples, numeric_lambdas):
    rep = derive_section_signs(samples[0].t, samples[0].tz, tuple(numeric_lambdas[0]))
    assert rep["consistent"] and rep["matches_rule"] and rep["conflicts"] == 0
    assert rep["signs"]["t6_126"] == -1 and rep["signs"]["t1_2"] == 1
