"""The family of element centralizers of a finite group and what it determines."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import AbelianInput, NotApplicable
from .group import Group, SubgroupSet, center, centralizer, is_abelian_subgroup, subgroup_center
from .numbers import prime_power

CENTRAL = -1  # owner_map value for central elements, whose centralizer is G


@dataclass(frozen=True, eq=False)
class CentralizerProfile:
    """``Cent(G)`` with the per-element map and the centers of the centralizers.

    Proper centralizers are ordered by their smallest non-central owner.
    """

    group: Group
    center: SubgroupSet
    proper_centralizers: tuple[SubgroupSet, ...]
    owner_map: tuple[int, ...]
    owners: tuple[int, ...]
    centers: tuple[SubgroupSet, ...]

    @property
    def cent_count(self) -> int:
        return len(self.proper_centralizers) + 1

    @property
    def is_abelian(self) -> bool:
        return not self.proper_centralizers

    @cached_property
    def center_index(self) -> int:
        return self.group.order // self.center.size

    @cached_property
    def zx_quotient_orders(self) -> tuple[int, ...]:
        """``|Z(x)/Z(G)|`` for each proper centralizer."""
        return tuple(z.size // self.center.size for z in self.centers)

    @cached_property
    def indices(self) -> tuple[int, ...]:
        """``|G : C(x)|`` for each proper centralizer."""
        return tuple(self.group.order // c.size for c in self.proper_centralizers)

    @cached_property
    def abelian_flags(self) -> tuple[bool, ...]:
        return tuple(is_abelian_subgroup(self.group, c) for c in self.proper_centralizers)

    @cached_property
    def nacent_count(self) -> int:
        """Non-abelian members of ``Cent(G)``, counting ``G`` itself when non-abelian."""
        if self.is_abelian:
            return 0
        return 1 + sum(1 for flag in self.abelian_flags if not flag)

    @cached_property
    def rank(self) -> int:
        """Number of members in the longest inclusion chain of proper centralizers (0 if abelian)."""
        cents = self.proper_centralizers
        order = sorted(range(len(cents)), key=lambda i: cents[i].size)
        depth: dict[int, int] = {}
        for i in order:
            below = [depth[j] for j in depth if cents[j] < cents[i]]
            depth[i] = 1 + max(below, default=0)
        return max(depth.values(), default=0)

    def centralizer_of(self, x: int) -> SubgroupSet:
        cid = self.owner_map[x]
        return self.group.full() if cid == CENTRAL else self.proper_centralizers[cid]

    def center_of(self, x: int) -> SubgroupSet:
        cid = self.owner_map[x]
        return self.center if cid == CENTRAL else self.centers[cid]


def profile(G: Group) -> CentralizerProfile:
    memo = G._memo
    if "profile" not in memo:
        memo["profile"] = _build_profile(G)
    return memo["profile"]


def _build_profile(G: Group) -> CentralizerProfile:
    Z = center(G)
    packed = np.packbits(G.commute_matrix, axis=1, bitorder="little")
    ids: dict[int, int] = {}
    cents: list[SubgroupSet] = []
    owners: list[int] = []
    owner_map: list[int] = []
    for x in range(G.order):
        if x in Z:
            owner_map.append(CENTRAL)
            continue
        key = int.from_bytes(packed[x].tobytes(), "little")
        if key not in ids:
            ids[key] = len(cents)
            cents.append(SubgroupSet(key, G.order))
            owners.append(x)
        owner_map.append(ids[key])
    centers = tuple(subgroup_center(G, c) for c in cents)
    return CentralizerProfile(G, Z, tuple(cents), tuple(owner_map), tuple(owners), centers)


def _require_nonabelian(prof: CentralizerProfile, what: str) -> None:
    if prof.is_abelian:
        raise AbelianInput(f"{what} is only defined for non-abelian groups")


# ---------------------------------------------------------------------------
# partition and poset predicates


def f_group_witness(G: Group) -> tuple[int, int] | None:
    """Owners ``(x, y)`` with ``C(x) < C(y)``, or None if ``G`` is an F-group."""
    prof = profile(G)
    cents = prof.proper_centralizers
    for i, ci in enumerate(cents):
        for j, cj in enumerate(cents):
            if i != j and ci < cj:
                return prof.owners[i], prof.owners[j]
    return None


def is_F_group(G: Group) -> bool:
    """No proper centralizer strictly contains another (vacuously true for abelian groups)."""
    return f_group_witness(G) is None


def strict_partition_witness(G: Group) -> int | None:
    """A non-central element lying in two distinct ``Z(x)``, or None."""
    prof = profile(G)
    _require_nonabelian(prof, "a strict Z(G)-partition")
    distinct = list(dict.fromkeys(prof.centers))
    cover = np.zeros(G.order, dtype=np.int64)
    for z in distinct:
        cover += z.mask
    noncentral = ~prof.center.mask
    assert (cover[noncentral] >= 1).all(), "every x lies in Z(x)"
    doubled = np.flatnonzero(noncentral & (cover > 1))
    return int(doubled[0]) if doubled.size else None


def is_strict_center_partition(G: Group) -> bool:
    """The distinct ``Z(x)`` cover every non-central element exactly once."""
    return strict_partition_witness(G) is None


def poset_rank(prof: CentralizerProfile) -> int:
    _require_nonabelian(prof, "rank")
    return prof.rank


@dataclass(frozen=True)
class ConjugateType:
    """Sorted distinct indices ``|G : C(x)|`` over the proper centralizers."""

    indices: tuple[int, ...]

    @property
    def uniform(self) -> int | None:
        return self.indices[0] if len(self.indices) == 1 else None

    def __str__(self) -> str:
        if self.uniform is not None:
            return f"UniformIndex({self.uniform})"
        return "Mixed(" + ",".join(map(str, self.indices)) + ")"


def conjugate_type(G: Group) -> ConjugateType:
    prof = profile(G)
    _require_nonabelian(prof, "conjugate type")
    return ConjugateType(tuple(sorted(set(prof.indices))))


def is_CA_group(G: Group) -> bool:
    prof = profile(G)
    _require_nonabelian(prof, "the CA property")
    return all(prof.abelian_flags)


def is_I_group(G: Group) -> bool:
    prof = profile(G)
    _require_nonabelian(prof, "the I property")
    return len({c.size for c in prof.proper_centralizers}) == 1


# ---------------------------------------------------------------------------
# counting formulas


def _prime_power_center_quotient(prof: CentralizerProfile) -> tuple[int, int]:
    if prof.is_abelian:
        raise NotApplicable("G is abelian")
    pk = prime_power(prof.center_index)
    if pk is None:
        raise NotApplicable(f"|G/Z(G)| = {prof.center_index} is not a prime power")
    return pk


def count_by_formula_f1(G: Group) -> int:
    """``(p^k - 1)/(p^m - 1) + 1`` for an F-group with uniform ``|Z(x)/Z(G)| = p^m``."""
    prof = profile(G)
    p, k = _prime_power_center_quotient(prof)
    if not is_F_group(G):
        raise NotApplicable("G is not an F-group")
    sizes = set(prof.zx_quotient_orders)
    if len(sizes) != 1:
        raise NotApplicable(f"|Z(x)/Z(G)| is not uniform: {sorted(sizes)}")
    (size,) = sizes
    pm = prime_power(size)
    if pm is None or pm[0] != p:
        raise NotApplicable(f"|Z(x)/Z(G)| = {size} is not a power of {p}")
    m = pm[1]
    return (p**k - 1) // (p**m - 1) + 1


def count_by_formula_pp1(G: Group) -> tuple[int, int]:
    """``p^(k-1) + ... + p + 2 - v p`` and ``v`` for an F-group with all ``|Z(x)/Z(G)| <= p^2``."""
    prof = profile(G)
    p, k = _prime_power_center_quotient(prof)
    if not is_F_group(G):
        raise NotApplicable("G is not an F-group")
    sizes = prof.zx_quotient_orders
    if max(sizes) > p * p:
        raise NotApplicable(f"some |Z(x)/Z(G)| = {max(sizes)} exceeds p^2 = {p * p}")
    v = sum(1 for s in sizes if s == p * p)
    return sum(p**i for i in range(1, k)) + 2 - v * p, v


__all__ = [
    "CENTRAL",
    "CentralizerProfile",
    "ConjugateType",
    "centralizer",
    "conjugate_type",
    "count_by_formula_f1",
    "count_by_formula_pp1",
    "f_group_witness",
    "is_CA_group",
    "is_F_group",
    "is_I_group",
    "is_strict_center_partition",
    "poset_rank",
    "profile",
    "strict_partition_witness",
]
