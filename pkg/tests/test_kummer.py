from __future__ import annotations

from fractions import Fraction

import pytest

from kummer_forms import kummer as km
from kummer_forms.polynomials import Poly
from kummer_forms.relations import single_sections
from kummer_forms.scalars import DomainError, relative_residual

LAM = (Fraction(2), Fraction(3), Fraction(5))


@pytest.fixture(scope="module")
def tetrahedra():
    return km.enumerate_tetrahedra(LAM)


def test_cassels_flynn_json_round_trip():
    q = km.cassels_flynn(LAM).quartic
    back = km.ProjectiveSurface.from_json(q.to_json())
    assert back.poly == q.poly and back.to_json() == q.to_json()
    assert q.poly.is_homogeneous(4)


def test_nodes_are_singular(lambdas):
    for lam in lambdas:
        quartic = km.cassels_flynn(lam).quartic
        nodes = km.node_coordinates(lam)
        assert len(nodes) == 16
        assert all(quartic.is_singular_at(p) for p in nodes.values())
        assert not quartic.is_singular_at(km.node_coordinates(lam, literal=True)["p23"])


def test_incidence(lambdas):
    rep = km.incidence_check(lambdas[0])
    assert rep["incidence_matches_table"] and rep["nodes_singular"]
    assert set(rep["row_sums"]) == {6} and set(rep["column_sums"]) == {6}


def test_discriminant_readings(lambdas):
    for lam in lambdas:
        assert km.discriminant_factorization_holds(lam)
        assert not km.discriminant_factorization_holds(lam, "literal")


def test_sextic_lines_and_quadric_model(lambdas):
    lam = lambdas[2]
    assert km.sextic_lines_are_odd_tropes(lam)
    assert all(q.is_zero() for q in km.quadric_model_on_tropes(lam))
    assert km.odd_trope_relation_rank(lam) == 3


def test_eight_trope_relations_are_polynomial_identities(lambdas):
    lam = lambdas[3]
    forms = {d: Poly.linear(km.Z_NAMES, p) for d, p in km.trope_coefficients(lam).items()}
    rels = km.eight_trope_relations(lam)
    assert len(rels) == 30 and len({r.tropes for r in rels}) == 30
    for r in rels:
        assert r.polynomial(forms).is_zero()
        assert all(v == 0 for v in r.side_conditions())
    assert sorted({r.case for r in rels}) == [1, 2, 3, 4]


def test_tetrahedra_counts(tetrahedra):
    kinds = [t.kind for t in tetrahedra]
    assert kinds.count("goepel") == 60 and kinds.count("rosenhain") == 80
    classes = {}
    for t in tetrahedra:
        classes[t.kind_class] = classes.get(t.kind_class, 0) + 1
    assert classes == {"G1": 30, "G2": 15, "G3": 15, "R1": 10, "R2": 10, "R3": 10, "R4": 30, "R5": 20}
    assert km.tetrahedra_correspondence(tetrahedra) == {"goepel": True, "rosenhain": True}


def test_even_eight_dictionary(tetrahedra):
    entries = km.even_eight_dictionary(LAM, tetrahedra)
    assert len(entries) == 30
    assert len({e["even_eight"] for e in entries}) == 30
    assert all(e["printed_label"] == e["even_eight"] for e in entries)
    assert all(e["rosenhain_splittings"] >= 1 and len(e["nodes"]) == 8 for e in entries)


def test_goepel_parameters(seeds):
    for seed in seeds:
        p = km.goepel_params_from_seed(seed)
        assert p.constraint() == 0
        surface = km.goepel_quartic(p)
        assert all(surface.is_singular_at(n) for n in km.goepel_nodes(seed))
        assert not all(surface.is_singular_at(n) for n in km.goepel_nodes(seed, "literal"))
        assert km.goepel_params_from_theta(seed).constraint() == 0
        assert km.goepel_params_from_theta(seed, "literal").constraint() != 0
    with pytest.raises(DomainError):
        km.goepel_params_from_theta(seeds[0], "other")


def test_gh_parameters(seeds, lambdas):
    for seed, lam in zip(seeds, lambdas):
        p = km.gh_params_from_seed(seed)
        assert p.constraint() == 0
        assert km.gh_params_from_moduli(lam).constraint() == 0
        surface = km.gh_quartic(p)
        assert all(surface.is_singular_at(n) for n in km.gh_nodes(seed))


def test_squares_map(seeds):
    seed = seeds[0]
    p = km.gh_params_from_seed(seed)
    product = km.gh_quartic(p).poly * km.gh_quartic(p.with_sign(-1)).poly
    assert (km.squares_pullback(p) - product).is_zero()
    pts = km.gh_rational_points(seed, 2)
    assert all(km.gh_quartic(p)(q) == 0 for q in pts)
    assert km.squares_pushforward_holds(seed, pts)


def test_rosenhain_quartic_from_seed(seeds):
    seed = seeds[1]
    params, k = km.rosenhain_params_from_seed(seed)
    rows = km.rosenhain_to_gh_transform(seed)
    pulled = km.pull_back(km.rosenhain_quartic(params), rows, km.GH_NAMES)
    assert (pulled - k * km.gh_quartic(km.gh_params_from_seed(seed)).poly).is_zero()
    assert km.cremona_report(params) == {"invariant": False, "ab_term_negated": True}


def test_theta_models(samples, numeric_lambdas):
    for s, lam in zip(samples, numeric_lambdas):
        g = km.goepel_quartic(km.goepel_params_from_theta(s.t))
        assert relative_residual(g.poly.term_values(km.goepel_theta_point(s.tz))) < 1e-10
        h = km.gh_quartic(km.gh_params_from_theta(s.T))
        assert relative_residual(h.poly.term_values(km.gh_theta_point(s.T2z))) < 1e-10
        r = km.rosenhain_quartic(km.rosenhain_quartic_params_from_theta(s.T))
        assert relative_residual(r.poly.term_values(km.rosenhain_theta_point(s.tz))) < 1e-10
        secs = single_sections(s.t, s.tz)
        pt = [secs[d] for d in ("1", "2", "3", "4", "5", "6")]
        for q in km.quadric_intersection_model(tuple(lam)):
            assert relative_residual(q.term_values(pt)) < 1e-10
