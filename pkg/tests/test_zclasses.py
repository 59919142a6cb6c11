from __future__ import annotations

import random

import pytest

import oracles
from centra.centralizers import is_F_group, profile
from centra.errors import HypothesisNotMet
from centra.group import conjugacy_classes
from centra.zclasses import (
    check_max_zclass_characterization,
    centralizers_all_normal,
    upper_bound_check,
    z_equivalent,
    z_partition,
    zclass_count_equals_cent_count,
)


def test_z_equivalent_examples(spec):
    S3 = spec("symmetric:k=3")
    assert z_equivalent(S3, 1, 1)
    assert z_equivalent(S3, 1, 2)  # two transpositions
    assert not z_equivalent(S3, 1, 3)  # transposition vs 3-cycle


@pytest.mark.parametrize(
    "name,count",
    [("cyclic:n=6", 1), ("dihedral:n=8", 4), ("symmetric:k=3", 3), ("alternating4", 3)],
)
def test_partition_counts(spec, name, count):
    assert z_partition(spec(name)).zclass_count == count


def test_count_equality_examples(spec):
    assert zclass_count_equals_cent_count(spec("dihedral:n=8"))
    assert not zclass_count_equals_cent_count(spec("symmetric:k=3"))
    E = spec("extraspecial:p=3,a=1,variant=+")
    assert zclass_count_equals_cent_count(E) and z_partition(E).zclass_count == 5


def test_max_characterization_examples(spec):
    for s in (
        "extraspecial:p=2,a=1,variant=+",
        "extraspecial:p=3,a=1,variant=+",
        "extraspecial:p=3,a=1,variant=-",
        "extraspecial:p=2,a=2,variant=+",
        "product:cyclic:n=2*heisenberg:p=3",
    ):
        res = check_max_zclass_characterization(spec(s))
        assert res.lhs and res.rhs and res.holds, s
    assert check_max_zclass_characterization(spec("extraspecial:p=2,a=2,variant=-")).zclass_count == 16
    with pytest.raises(HypothesisNotMet):
        check_max_zclass_characterization(spec("symmetric:k=3"))
    with pytest.raises(HypothesisNotMet):
        check_max_zclass_characterization(spec("symmetric:k=4"))
    with pytest.raises(HypothesisNotMet):
        check_max_zclass_characterization(spec("cyclic:n=4"))


def test_upper_bound_examples(spec):
    assert upper_bound_check(spec("dihedral:n=8"))
    assert upper_bound_check(spec("symmetric:k=3"))
    E = spec("extraspecial:p=3,a=1,variant=+")
    assert upper_bound_check(E)
    assert z_partition(E).zclass_count < profile(E).center_index


def test_partition_matches_naive_oracle(groups):
    for name, G in groups.items():
        t = oracles.table_of(G)
        mine = {frozenset(c.members) for c in z_partition(G).classes}
        assert mine == oracles.z_classes(t), name


def test_partition_shape(groups):
    for name, G in groups.items():
        part = z_partition(G)
        seen = sorted(x for c in part.classes for x in c.members)
        assert seen == list(range(G.order)), name
        central = set(profile(G).center.members.tolist())
        assert set(part.classes[0].members) == central
        firsts = [c.members[0] for c in part.classes]
        assert firsts == sorted(firsts)
        for c in part.classes:
            assert c.size == c.normalizer_index * c.fprime_size, (name, c.representative)


def test_conjugacy_refines_zclasses(groups):
    for name, G in groups.items():
        part = z_partition(G)
        for cls in conjugacy_classes(G):
            assert len({part.class_of(x) for x in cls}) == 1, name


def test_count_chain(groups):
    for name, G in groups.items():
        prof = profile(G)
        zc = z_partition(G).zclass_count
        assert zc <= prof.cent_count <= prof.center_index, name
        assert zclass_count_equals_cent_count(G) == centralizers_all_normal(G), name


def test_z_equivalence_relation(groups):
    rnd = random.Random(5)
    for name, G in groups.items():
        part = z_partition(G)
        for _ in range(20):
            x, y, w = (rnd.randrange(G.order) for _ in range(3))
            assert z_equivalent(G, x, x)
            assert z_equivalent(G, x, y) == z_equivalent(G, y, x)
            if z_equivalent(G, x, y) and z_equivalent(G, y, w):
                assert z_equivalent(G, x, w)
            assert z_equivalent(G, x, y) == (part.class_of(x) == part.class_of(y)), name


def test_full_count_implies_f_group_except_known_family(groups):
    # every corpus group with z-count = [G:Z] is an F-group, except D8 x D8 (see harness tests)
    for name, G in groups.items():
        if z_partition(G).zclass_count == profile(G).center_index:
            assert is_F_group(G) or name == "product:dihedral:n=8*dihedral:n=8", name
