"""Picard-lattice cross-checks: root systems, Coxeter numbers and
(-1)-class counts."""

import pytest

from kleinfib.lattice import (build_root_system, coxeter_number,
                              dn_boundary_selfintersection,
                              minus_one_classes, standard_root_system)


@pytest.mark.parametrize("r,label,roots,h", [
    (3, "A2+A1", 8, 6),
    (4, "A4", 20, 5),
    (5, "D5", 40, 8),
    (6, "E6", 72, 12),
    (7, "E7", 126, 18),
    (8, "E8", 240, 30),
])
def test_root_systems(r, label, roots, h):
    rs = build_root_system(r)
    assert rs.label == label
    assert len(rs.roots) == roots
    assert rs.coxeter_number == h


@pytest.mark.parametrize("r,count", [(6, 27), (7, 56), (8, 240)])
def test_minus_one_classes(r, count):
    classes = minus_one_classes(r)
    assert len(classes) == count
    # every class: v^2 = -1, -K.v = 1 (checked again here)
    for v in classes:
        d, ms = v[0], v[1:]
        assert d * d - sum(m * m for m in ms) == -1
        assert 3 * d - sum(ms) == 1


@pytest.mark.parametrize("label,h", [
    ("A2", 3), ("A5", 6), ("D4", 6), ("D9", 16),
    ("E6", 12), ("E7", 18), ("E8", 30),
])
def test_coxeter_two_ways(label, h):
    # coxeter_number computes the reflection-product order and cross-checks
    # the closed form; standard_root_system rebuilds the roots directly
    assert coxeter_number(label) == h
    rs = standard_root_system(label)
    assert len(rs.roots) == h * rs.rank
    assert rs.coxeter_number == h


@pytest.mark.parametrize("n", range(4, 10))
def test_dn_boundary_selfintersection(n):
    assert dn_boundary_selfintersection(n) == 3 - n


def test_rank_out_of_range():
    with pytest.raises(Exception):
        build_root_system(9)
