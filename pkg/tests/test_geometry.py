from __future__ import annotations

import pytest

from kummer_forms.geometry import (
    DIVISORS,
    GOEPEL_LIST,
    check_configuration,
    enumerate_subgroups,
    incidence_matrix,
    torsion_add,
    weil_pairing,
)
from kummer_forms.scalars import DomainError


def test_goepel_groups_match_list():
    groups = enumerate_subgroups("goepel")
    assert len(groups) == 15
    assert {frozenset(g.elements) for g in groups} == set(GOEPEL_LIST)
    assert sum(len(g.translates) for g in groups) == 60


def test_rosenhain_groups():
    groups = enumerate_subgroups("rosenhain")
    assert len(groups) == 20
    assert sum(len(g.translates) for g in groups) == 80
    # Rosenhain groups are not isotropic
    assert all(any(weil_pairing(a, b) for a in g.elements for b in g.elements) for g in groups)


def test_unknown_kind():
    with pytest.raises(DomainError):
        enumerate_subgroups("kummer")


def test_torsion_group_law():
    assert torsion_add("p12", "p12") == "p0"
    assert torsion_add("p12", "p23") == "p13"


def test_configuration_self_checks():
    report = check_configuration()
    assert all(report.values()), [k for k, v in report.items() if not v]
    inc = incidence_matrix()
    assert len(DIVISORS) == 16
    assert all(sum(r) == 6 for r in inc)
