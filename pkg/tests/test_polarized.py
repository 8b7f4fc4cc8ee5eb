from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from kummer_forms import kummer as km
from kummer_forms import polarized as pz
from kummer_forms.scalars import DomainError, relative_residual


def test_octic_is_quartic_of_squares(seeds):
    for a, b in zip(seeds, seeds[1:]):
        assert pz.octic_matches_squared_quartic(km.RosenhainQuarticParams(*a))
        assert pz.octic_matches_squared_quartic(km.RosenhainQuarticParams(*b))


def test_octic_on_theta(samples):
    for s in samples:
        p = km.rosenhain_quartic_params_from_theta(s.T)
        octic = pz.birkenhake_lange_octic(p.a, p.b, p.c, p.d2)
        assert octic.poly.is_homogeneous(8)
        assert relative_residual(octic.poly.term_values(pz.octic_theta_point(s.tz))) < 1e-10


def test_barth_squares_from_seed(seeds):
    for seed in seeds:
        sq = pz.BarthSquares.from_seed(seed)
        assert all(c == 0 for c in sq.constraints())
        gh, ref = sq.gh_params(), km.gh_params_from_seed(seed)
        assert (gh.A, gh.B, gh.C, gh.D) == (ref.A, ref.B, ref.C, ref.D)
    assert sq.projected_quartic().proportionality(km.gh_quartic(ref).poly) is not None


def test_barth_quadrics_on_theta(samples):
    for s in samples:
        bp = pz.BarthParams.from_theta(s.t)
        assert max(bp.constraint_residuals()) < 1e-12
        quads = pz.barth_quadrics(bp)
        assert len(quads) == 6
        pt = pz.barth_theta_point(s.T2z)
        assert max(q.residual(pt) for q in quads) < 1e-10
        literal = pz.barth_theta_point(s.T2z, literal=True)
        assert max(q.residual(literal) for q in quads) > 1e-6


def test_barth_validation():
    with pytest.raises(DomainError):
        pz.BarthParams(*(Fraction(k) for k in (1, 2, 3, 4, 5, 6))).validate()


def test_quadric_json_round_trip(samples):
    q = pz.barth_quadrics(pz.BarthParams.from_theta(samples[0].t))[0]
    back = pz.QuadricForm.from_json(q.to_json())
    assert back.to_json() == q.to_json()


def test_rank3_members(samples):
    bp = pz.BarthParams.from_theta(samples[1].t)
    members = pz.rank3_quadrics(bp)
    assert len(members) == 4 and len({m.label for m in members}) == 4
    assert all(m.rank == 3 and m.plane_residual < 1e-9 for m in members)
    assert pz.net_rank(bp, np.array([0.3 + 0.1j, -1.2, 0.7j])) == 6


def test_even_eight_of_projection(seeds):
    for seed in seeds:
        assert all(pz.even_eight_report(seed).values())


def test_fifteen_theta_models(taus):
    models = pz.fifteen_classes(taus[0])
    assert len(models) == 15
    assert all(m.max_residual < 1e-8 for m in models)
    assert all(len(m.even_quadrics) == 3 and len(m.odd_quadrics) == 3 for m in models)


def test_fifteen_projections_are_not_all_principal(taus):
    """Only some theta models project onto a quartic isomorphic to the principal one."""
    models = pz.fifteen_classes(taus[0])
    covering = [m.label for m in models if m.covers_principal]
    assert 0 < len(covering) < 15
