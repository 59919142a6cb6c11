from __future__ import annotations

import pytest

import oracles
from centra.centralizers import (
    CENTRAL,
    centralizer,
    conjugate_type,
    count_by_formula_f1,
    count_by_formula_pp1,
    f_group_witness,
    is_CA_group,
    is_F_group,
    is_I_group,
    is_strict_center_partition,
    poset_rank,
    profile,
    strict_partition_witness,
)
from centra.errors import AbelianInput, NotApplicable
from centra.group import nilpotency_class
from centra.numbers import prime_power
from centra.zclasses import z_partition

# Reference values computed in GAP 4 (SmallGroups library):
# [|G|, |Z(G)|, |G'|, |Cent(G)|, z-classes, non-abelian members of Cent(G) including G]
GAP_REFERENCE = {
    "sg_64_73": [64, 8, 8, 8, 8, 1],
    "sg_64_241": [64, 4, 4, 6, 6, 1],
    "sg_64_245": [64, 4, 4, 6, 6, 1],
    "sg_243_3": [243, 9, 27, 14, 6, 1],
    "symmetric:k=4": [24, 1, 12, 14, 5, 4],
    "alternating4": [12, 1, 4, 6, 3, 1],
    "extraspecial:p=2,a=2,variant=+": [32, 2, 2, 16, 16, 16],
    "extraspecial:p=2,a=2,variant=-": [32, 2, 2, 16, 16, 16],
    "extraspecial:p=3,a=2,variant=+": [243, 3, 3, 41, 41, 41],
    "extraspecial:p=3,a=2,variant=-": [243, 3, 3, 41, 41, 41],
    "product:dihedral:n=8*dihedral:n=8": [64, 4, 4, 16, 16, 7],
}


@pytest.mark.parametrize("name", sorted(GAP_REFERENCE))
def test_gap_reference_values(groups, name):
    from centra.group import commutator_subgroup

    G = groups[name]
    prof = profile(G)
    measured = [
        G.order,
        prof.center.size,
        commutator_subgroup(G).size,
        prof.cent_count,
        z_partition(G).zclass_count,
        prof.nacent_count,
    ]
    assert measured == GAP_REFERENCE[name]


def test_centralizer_examples(spec):
    D8, S3 = spec("dihedral:n=8"), spec("symmetric:k=3")
    assert centralizer(D8, 0).is_full()
    assert set(centralizer(D8, 4).members.tolist()) == {0, 2, 4, 6}
    assert set(centralizer(S3, 3).members.tolist()) == {0, 3, 4}


def test_profile_examples(spec):
    assert profile(spec("cyclic:n=6")).cent_count == 1
    assert profile(spec("cyclic:n=6")).proper_centralizers == ()
    assert profile(spec("dihedral:n=8")).cent_count == 4
    A4 = profile(spec("alternating4"))
    assert A4.cent_count == 6
    assert sorted(c.size for c in A4.proper_centralizers) == [3, 3, 3, 3, 4]


def test_f_group_examples(spec, groups):
    assert is_F_group(spec("cyclic:n=4"))
    assert is_F_group(spec("symmetric:k=3"))
    for name, G in groups.items():
        if name.startswith(("extraspecial", "heisenberg")):
            assert is_F_group(G), name
    S4 = spec("symmetric:k=4")
    x, y = f_group_witness(S4)
    prof = profile(S4)
    assert prof.centralizer_of(x) < prof.centralizer_of(y)


def test_strict_partition(spec):
    assert is_strict_center_partition(spec("dihedral:n=8"))
    assert is_strict_center_partition(spec("symmetric:k=3"))
    S4 = spec("symmetric:k=4")
    assert not is_strict_center_partition(S4)
    assert strict_partition_witness(S4) is not None
    with pytest.raises(AbelianInput):
        is_strict_center_partition(spec("cyclic:n=4"))


def test_rank(spec):
    assert poset_rank(profile(spec("dihedral:n=8"))) == 1
    assert poset_rank(profile(spec("symmetric:k=3"))) == 1
    S4 = profile(spec("symmetric:k=4"))
    assert poset_rank(S4) >= 2 and not is_F_group(spec("symmetric:k=4"))
    with pytest.raises(AbelianInput):
        poset_rank(profile(spec("cyclic:n=4")))


def test_conjugate_type(spec):
    assert str(conjugate_type(spec("dihedral:n=8"))) == "UniformIndex(2)"
    assert conjugate_type(spec("heisenberg:p=3")).uniform == 3
    ct = conjugate_type(spec("symmetric:k=3"))
    assert ct.uniform is None and ct.indices == (2, 3)
    assert str(ct) == "Mixed(2,3)"
    with pytest.raises(AbelianInput):
        conjugate_type(spec("cyclic:n=3"))


def test_ca_and_i(spec):
    S3, D8 = spec("symmetric:k=3"), spec("dihedral:n=8")
    assert is_CA_group(S3) and not is_I_group(S3)
    assert is_CA_group(D8) and is_I_group(D8)
    E = spec("extraspecial:p=2,a=2,variant=+")
    assert is_I_group(E) and not is_CA_group(E)
    with pytest.raises(AbelianInput):
        is_CA_group(spec("cyclic:n=2"))


def test_count_formula_uniform(spec):
    assert count_by_formula_f1(spec("dihedral:n=8")) == 4
    assert count_by_formula_f1(spec("extraspecial:p=3,a=1,variant=+")) == 5
    with pytest.raises(NotApplicable, match="prime power"):
        count_by_formula_f1(spec("symmetric:k=3"))


def test_count_formula_with_v(spec, fixture_group):
    assert count_by_formula_pp1(spec("extraspecial:p=2,a=2,variant=-")) == (16, 0)
    assert count_by_formula_pp1(spec("dihedral:n=8")) == (4, 0)
    G = fixture_group("sg_64_73")
    count, v = count_by_formula_pp1(G)
    assert count == 4 + 2 + 2 - 2 * v == profile(G).cent_count
    with pytest.raises(NotApplicable):
        count_by_formula_pp1(spec("symmetric:k=3"))


def test_profile_matches_naive_oracle(groups):
    for name, G in groups.items():
        t = oracles.table_of(G)
        fam = oracles.centralizer_family(t)
        prof = profile(G)
        Z = oracles.center(t)
        assert set(prof.center.members.tolist()) == Z, name
        proper = {C for C in fam.values() if len(C) < G.order}
        mine = {frozenset(c.members.tolist()) for c in prof.proper_centralizers}
        assert mine == proper, name
        assert prof.cent_count == len(set(fam.values())), name
        for x in range(G.order):
            assert set(prof.centralizer_of(x).members.tolist()) == fam[x]
            if x in Z:
                assert prof.owner_map[x] == CENTRAL
            else:
                C = fam[x]
                assert set(prof.center_of(x).members.tolist()) == oracles.subgroup_center(t, C)


def test_profile_invariants(groups):
    for name, G in groups.items():
        prof = profile(G)
        Z = prof.center
        for C, ZC in zip(prof.proper_centralizers, prof.centers):
            assert Z < C and not C.is_full()
            assert Z <= ZC <= C
        assert (prof.cent_count == 1) == G.is_abelian
        # C(xz) = C(x) for central z
        for x in range(G.order):
            for z in Z.members.tolist():
                assert prof.owner_map[int(G.mul[x, z])] == prof.owner_map[x]


def test_remark_equivalences(groups):
    for name, G in groups.items():
        if G.is_abelian:
            continue
        f = is_F_group(G)
        assert f == is_strict_center_partition(G) == (poset_rank(profile(G)) == 1), name


def test_lower_and_upper_bounds(groups):
    from centra.numbers import smallest_prime_divisor

    for name, G in groups.items():
        if G.is_abelian:
            continue
        prof = profile(G)
        p = smallest_prime_divisor(G.order)
        assert p + 2 <= prof.cent_count <= prof.center_index, name


def test_ito_and_ishikawa_instances(groups):
    for name, G in groups.items():
        if G.is_abelian:
            continue
        ct = conjugate_type(G)
        if ct.uniform is not None:
            assert nilpotency_class(G) is not None, name
            assert prime_power(ct.uniform) is not None, name
        if is_I_group(G):
            assert nilpotency_class(G) <= 3, name
