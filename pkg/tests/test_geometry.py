"""Surface catalog, chart gluing and the contraction identity."""

from fractions import Fraction

import pytest

from kleinfib.geometry import (GeometryError, PointSpec, build_catalog,
                               build_surface, chart_transition_check,
                               charts_compatible, check_homogeneous,
                               normalize_point, on_surface, points_equal,
                               surface_names, verify_contraction_S6)


def test_catalog_builds_and_is_homogeneous():
    catalog = build_catalog()
    assert set(surface_names()) == set(catalog)
    for s in catalog.values():
        check_homogeneous(s)


def test_unknown_surface():
    with pytest.raises((GeometryError, KeyError, ValueError)):
        build_surface("s9")


def test_transitions_and_compatibility():
    catalog = build_catalog()
    for name, s in catalog.items():
        if s.ambient.kind != "atlas":
            continue
        assert chart_transition_check(s.ambient)
        assert charts_compatible(s)


def test_corrupt_transition_detected():
    s = build_surface("an:3")
    assert not chart_transition_check(s.ambient, corrupt=True)


def test_mutation_changes_equation():
    clean = build_catalog()["s7"].equations[0]
    mutated = build_catalog(mutation=("s7", 0, 0, Fraction(1)))
    assert mutated["s7"].equations[0] != clean


def test_mutation_rejects_zero_delta():
    with pytest.raises(GeometryError):
        build_catalog(mutation=("s7", 0, 0, Fraction(0)))


def test_points_equal_weighted_scaling():
    s = build_surface("s6prime")
    T = s.const_tower
    one = T.from_fraction(1)
    two = T.from_fraction(2)
    # weights (1,1,1,2): scaling by 2 multiplies Z by 4
    p = PointSpec(s.ambient, (one, two, one, two))
    q = PointSpec(s.ambient, (two, two * 2, two, two ** 2 * 2))
    assert points_equal(p, q)
    r = PointSpec(s.ambient, (one, two, one, two * 3))
    assert not points_equal(p, r)
    assert normalize_point(p) is not None


def test_on_surface_rejects_off_point():
    catalog = build_catalog()
    s = catalog["s8"]
    T = s.const_tower.extend_ratfunc("t")
    p = PointSpec(s.ambient, tuple(T.from_fraction(k) for k in (1, 1, 1, 1)))
    assert not on_surface(s, p)


def test_contraction_identity_both_charts():
    report = verify_contraction_S6()
    assert report["ok"]
    assert all(c["residue_zero"] for c in report["charts"])
    assert report["blowdown_image"]["target"] == "(0:0:0:1)"
