from __future__ import annotations

import pytest

from centra.centralizers import conjugate_type, is_CA_group, profile
from centra.classify import (
    all_centralizers_maximal,
    classify,
    implication_failures,
    is_camina_group,
    is_camina_pair,
    is_extraspecial,
    is_minimal_nonabelian,
    is_semi_extraspecial,
    is_special_p,
    is_ultraspecial,
)
from centra.errors import AbelianInput, NotNormal, NotPGroup
from centra.group import (
    commutator_subgroup,
    exponent,
    generated_subgroup,
    is_elementary_abelian,
    nilpotency_class,
    quotient,
)
from centra.numbers import geometric_count, prime_power
from centra.zclasses import z_partition


def test_special_examples(spec):
    assert is_special_p(spec("dihedral:n=8"))
    assert is_special_p(spec("extraspecial:p=3,a=1,variant=-"))
    assert not is_special_p(spec("cyclic:n=4"))
    with pytest.raises(NotPGroup):
        is_special_p(spec("symmetric:k=3"))


def test_extraspecial_examples(spec):
    assert is_extraspecial(spec("extraspecial:p=2,a=1,variant=+"))
    assert is_extraspecial(spec("extraspecial:p=2,a=2,variant=+"))
    assert is_extraspecial(spec("extraspecial:p=2,a=2,variant=-"))
    assert not is_extraspecial(spec("product:cyclic:n=2*dihedral:n=8"))
    with pytest.raises(NotPGroup):
        is_extraspecial(spec("alternating4"))


def test_semi_extraspecial_examples(spec, fixture_group):
    assert is_semi_extraspecial(spec("extraspecial:p=3,a=1,variant=+"))
    assert not is_semi_extraspecial(spec("product:cyclic:n=2*dihedral:n=8"))
    assert not is_semi_extraspecial(fixture_group("sg_64_73"))
    with pytest.raises(AbelianInput):
        is_semi_extraspecial(spec("cyclic:n=8"))
    with pytest.raises(NotPGroup):
        is_semi_extraspecial(spec("symmetric:k=3"))


def test_ultraspecial_examples(spec, fixture_group):
    # ultraspecial here means |G'|^2 = [G:G'], which extraspecial p^3 satisfies
    assert is_ultraspecial(spec("extraspecial:p=3,a=1,variant=+"))
    assert is_ultraspecial(spec("dihedral:n=8"))
    assert not is_ultraspecial(spec("extraspecial:p=2,a=2,variant=+"))
    assert not is_ultraspecial(spec("cyclic:n=4"))
    for name in ("sg_64_241", "sg_64_245"):
        G = fixture_group(name)
        assert is_ultraspecial(G)
        assert commutator_subgroup(G).size == 4


def test_camina_examples(spec):
    S3 = spec("symmetric:k=3")
    A3 = commutator_subgroup(S3)
    assert A3.size == 3
    assert is_camina_pair(S3, A3) and is_camina_group(S3)
    assert is_camina_pair(S3, S3.trivial())
    E = spec("extraspecial:p=3,a=1,variant=+")
    assert is_camina_group(E)
    assert not is_camina_group(spec("symmetric:k=4"))
    assert not is_camina_group(spec("cyclic:n=5"))
    transposition = generated_subgroup(S3, [1])
    with pytest.raises(NotNormal):
        is_camina_pair(S3, transposition)


def test_minimal_nonabelian_examples(spec):
    assert is_minimal_nonabelian(spec("symmetric:k=3"))
    assert is_minimal_nonabelian(spec("dihedral:n=8"))
    assert is_minimal_nonabelian(spec("quaternion8"))
    assert not is_minimal_nonabelian(spec("symmetric:k=4"))
    assert not is_minimal_nonabelian(spec("product:cyclic:n=2*dihedral:n=8"))
    assert not is_minimal_nonabelian(spec("cyclic:n=6"))


def test_minimal_nonabelian_matches_subgroup_scan(groups):
    from itertools import combinations

    for name, G in groups.items():
        if G.order > 64:
            continue
        nonabelian_proper = False
        for x, y in combinations(range(G.order), 2):
            H = generated_subgroup(G, [x, y])
            if not H.is_full() and not G.commute_matrix[x, y]:
                nonabelian_proper = True
                break
        assert is_minimal_nonabelian(G) == (not G.is_abelian and not nonabelian_proper), name


def test_all_centralizers_maximal_examples(spec):
    assert all_centralizers_maximal(spec("symmetric:k=3"))
    assert all_centralizers_maximal(spec("dihedral:n=8"))
    assert not all_centralizers_maximal(spec("symmetric:k=4"))
    with pytest.raises(AbelianInput):
        all_centralizers_maximal(spec("cyclic:n=4"))


def test_classify_examples(spec):
    d8 = classify(spec("dihedral:n=8"))
    assert d8.extraspecial and d8.F_group and d8.CA_group and d8.I_group
    assert d8.conjugate_type == "UniformIndex(2)"
    assert (d8.cent_count, d8.zclass_count) == (4, 4)
    assert (d8.p, d8.k, d8.m, d8.v) == (2, 2, 1, 0)
    s3 = classify(spec("symmetric:k=3"))
    assert s3.F_group and s3.CA_group and s3.all_centralizers_maximal and s3.minimal_nonabelian
    assert (s3.cent_count, s3.zclass_count) == (5, 3)
    assert s3.p is None and not s3.nilpotent
    triv = classify(spec("cyclic:n=1"))
    assert triv.abelian and triv.cent_count == 1 and triv.order == 1
    assert triv.F_group is None and triv.conjugate_type is None
    assert not any([triv.special_p, triv.extraspecial, triv.camina_group, triv.minimal_nonabelian])
    assert set(d8.as_dict()) >= {"cent_count", "zclass_count", "nacent_count", "v"}


def test_implication_chain_on_corpus(groups):
    for name, G in groups.items():
        rep = classify(G)
        assert implication_failures(G, rep) == [], name
        if rep.ultraspecial:
            assert rep.semi_extraspecial and rep.special_p
        if rep.extraspecial:
            assert rep.special_p
        if prime_power(G.order) is not None:
            assert (rep.camina_group and rep.nilpotency_class == 2) == rep.semi_extraspecial, name


def test_uniform_index_p_counts(groups):
    for name, G in groups.items():
        if G.is_abelian:
            continue
        ct = conjugate_type(G)
        prof = profile(G)
        if ct.uniform is None or prime_power(ct.uniform) is None or prime_power(ct.uniform)[1] != 1:
            continue
        p = ct.uniform
        Q = quotient(G, prof.center)
        assert is_elementary_abelian(Q) and prime_power(Q.order)[0] == p, name
        k = prime_power(Q.order)[1]
        want = geometric_count(p, k, 1)
        assert prof.cent_count == z_partition(G).zclass_count == want, name
        assert (prof.nacent_count == 1) == (Q.order == p * p), name
        assert (prof.nacent_count == prof.cent_count) == (Q.order > p * p), name


def test_uniform_index_p_squared_shapes(groups):
    for name, G in groups.items():
        if G.is_abelian:
            continue
        ct = conjugate_type(G)
        pk = prime_power(ct.uniform) if ct.uniform else None
        if pk is None or pk[1] != 2:
            continue
        p = pk[0]
        Q = quotient(G, profile(G).center)
        if is_elementary_abelian(Q):
            continue
        assert p % 2 == 1 and Q.order == p**3 and not Q.is_abelian and exponent(Q) == p, name
        assert profile(G).cent_count == p * p + p + 2, name


def test_maximal_centralizer_groups_are_ca_or_uniform(groups):
    for name, G in groups.items():
        if G.is_abelian or not all_centralizers_maximal(G):
            continue
        if nilpotency_class(G) is not None:
            ct = conjugate_type(G)
            assert ct.uniform is not None and prime_power(ct.uniform)[1] == 1, name
        else:
            assert is_CA_group(G), name
