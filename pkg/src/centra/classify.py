"""Predicates for the special families of p-groups and an aggregate report."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .centralizers import (
    conjugate_type,
    is_CA_group,
    is_F_group,
    is_I_group,
    profile,
)
from .errors import AbelianInput, NotNormal, NotPGroup
from .group import (
    Group,
    SubgroupSet,
    center,
    commutator_subgroup,
    conjugacy_classes,
    generated_subgroup,
    index_p_subgroups,
    is_elementary_abelian_subgroup,
    is_maximal_subgroup,
    is_normal,
    nilpotency_class,
    quotient,
)
from .numbers import prime_power
from .zclasses import z_partition


def _p_group_prime(G: Group) -> int:
    pk = prime_power(G.order)
    if pk is None:
        raise NotPGroup(f"order {G.order} is not a prime power")
    return pk[0]


def is_special_p(G: Group) -> bool:
    """``Z(G) = G'`` and both are elementary abelian."""
    p = _p_group_prime(G)
    Z = center(G)
    return Z == commutator_subgroup(G) and is_elementary_abelian_subgroup(G, Z, p)


def is_extraspecial(G: Group) -> bool:
    p = _p_group_prime(G)
    return is_special_p(G) and center(G).size == p


def is_semi_extraspecial(G: Group) -> bool:
    """``G/N`` is extraspecial for every maximal subgroup ``N`` of ``Z(G)``."""
    p = _p_group_prime(G)
    if G.is_abelian:
        raise AbelianInput("semi-extraspecial is defined for non-abelian p-groups")
    Z = center(G)
    if Z.size == p:
        return is_extraspecial(G)
    return all(is_extraspecial(quotient(G, N)) for N in index_p_subgroups(G, Z, p))


def is_ultraspecial(G: Group) -> bool:
    """Semi-extraspecial with ``|G'|^2 = [G : G']`` (abelian p-groups are not)."""
    _p_group_prime(G)
    if G.is_abelian:
        return False
    d = commutator_subgroup(G).size
    return is_semi_extraspecial(G) and d * d == G.order // d


def is_camina_pair(G: Group, H: SubgroupSet) -> bool:
    """Every ``x`` outside ``H`` is conjugate to each element of ``xH``."""
    if not is_normal(G, H):
        raise NotNormal("a Camina pair needs a normal subgroup")
    cls = np.empty(G.order, dtype=np.int64)
    for i, members in enumerate(conjugacy_classes(G)):
        cls[list(members)] = i
    outside = np.flatnonzero(~H.mask)
    coset_classes = cls[G.mul[np.ix_(outside, H.members)]]
    return bool((coset_classes == cls[outside][:, None]).all())


def is_camina_group(G: Group) -> bool:
    """``(G, G')`` is a Camina pair; abelian groups are excluded by convention."""
    if G.is_abelian:
        return False
    return is_camina_pair(G, commutator_subgroup(G))


def is_minimal_nonabelian(G: Group) -> bool:
    """Non-abelian with every proper subgroup abelian.

    Equivalent to: every non-commuting pair generates ``G``. A proper
    non-abelian subgroup would contain such a pair generating a proper
    subgroup, and conversely. Pairs are taken up to conjugacy of the first
    element, and ``y`` only up to the coset ``y<x>``.
    """
    if G.is_abelian:
        return False
    commute = G.commute_matrix
    for cls in conjugacy_classes(G):
        x = cls[0]
        seen = generated_subgroup(G, [x]).mask.copy()
        cyc = np.flatnonzero(seen)
        for y in np.flatnonzero(~commute[x]):
            if seen[y]:
                continue
            seen[G.mul[y, cyc]] = True
            if not generated_subgroup(G, [x, int(y)]).is_full():
                return False
    return True


def all_centralizers_maximal(G: Group) -> bool:
    prof = profile(G)
    if prof.is_abelian:
        raise AbelianInput("needs a non-abelian group")
    return all(is_maximal_subgroup(G, c) for c in prof.proper_centralizers)


@dataclass(frozen=True)
class ClassificationReport:
    """Flags are None where the property is undefined (for example CA for abelian groups)."""

    order: int
    center_order: int
    derived_order: int
    abelian: bool
    nilpotent: bool
    nilpotency_class: int | None
    F_group: bool | None
    CA_group: bool | None
    I_group: bool | None
    special_p: bool
    extraspecial: bool
    semi_extraspecial: bool
    ultraspecial: bool
    camina_group: bool
    minimal_nonabelian: bool
    all_centralizers_maximal: bool | None
    conjugate_type: str | None
    p: int | None
    k: int | None
    m: int | None
    v: int | None
    nacent_count: int
    cent_count: int
    zclass_count: int

    def as_dict(self) -> dict:
        return asdict(self)


def _p_flag(pred, G: Group) -> bool:
    try:
        return pred(G)
    except (NotPGroup, AbelianInput):
        return False


def implication_failures(G: Group, rep: ClassificationReport) -> list[str]:
    """Broken links of the implication chain among the p-group predicates."""
    out = []
    if rep.ultraspecial and not rep.semi_extraspecial:
        out.append("ultraspecial but not semi-extraspecial")
    if rep.semi_extraspecial and not rep.special_p:
        out.append("semi-extraspecial but not special")
    if rep.extraspecial and not rep.special_p:
        out.append("extraspecial but not special")
    if prime_power(rep.order) is not None:
        camina2 = rep.camina_group and rep.nilpotency_class == 2
        if camina2 != rep.semi_extraspecial:
            out.append(f"Camina of class 2 is {camina2} but semi-extraspecial is {rep.semi_extraspecial}")
    if rep.semi_extraspecial:
        prof = profile(G)
        derived = commutator_subgroup(G)
        want = G.order // derived.size
        bad = [x for x in range(G.order) if x not in derived and prof.centralizer_of(x).size != want]
        if bad:
            out.append(f"semi-extraspecial but |C({bad[0]})| != [G:G'] = {want}")
    return out


def classify(G: Group) -> ClassificationReport:
    prof = profile(G)
    abelian = prof.is_abelian
    cls = nilpotency_class(G)
    pk = None if abelian else prime_power(prof.center_index)
    p = k = m = v = None
    if pk is not None:
        p, k = pk
        sizes = set(prof.zx_quotient_orders)
        if len(sizes) == 1:
            pm = prime_power(sizes.pop())
            if pm is not None and pm[0] == p:
                m = pm[1]
        v = sum(1 for s in prof.zx_quotient_orders if s == p * p)
    rep = ClassificationReport(
        order=G.order,
        center_order=prof.center.size,
        derived_order=commutator_subgroup(G).size,
        abelian=abelian,
        nilpotent=cls is not None,
        nilpotency_class=cls,
        F_group=None if abelian else is_F_group(G),
        CA_group=None if abelian else is_CA_group(G),
        I_group=None if abelian else is_I_group(G),
        special_p=_p_flag(is_special_p, G),
        extraspecial=_p_flag(is_extraspecial, G),
        semi_extraspecial=_p_flag(is_semi_extraspecial, G),
        ultraspecial=_p_flag(is_ultraspecial, G),
        camina_group=is_camina_group(G),
        minimal_nonabelian=is_minimal_nonabelian(G),
        all_centralizers_maximal=None if abelian else all_centralizers_maximal(G),
        conjugate_type=None if abelian else str(conjugate_type(G)),
        p=p,
        k=k,
        m=m,
        v=v,
        nacent_count=prof.nacent_count,
        cent_count=prof.cent_count,
        zclass_count=z_partition(G).zclass_count,
    )
    broken = implication_failures(G, rep)
    if broken:
        raise AssertionError(f"classification invariants broken for {G.name}: {'; '.join(broken)}")
    return rep
