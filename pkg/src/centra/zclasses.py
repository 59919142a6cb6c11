"""z-classes: elements grouped by conjugacy of their centralizers."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .centralizers import CENTRAL, CentralizerProfile, is_F_group, profile
from .errors import HypothesisNotMet
from .group import Group, generated_subgroup, is_elementary_abelian, is_normal, quotient
from .numbers import geometric_count, prime_power


@dataclass(frozen=True)
class ZClass:
    members: tuple[int, ...]
    representative: int
    centralizer_id: int  # CENTRAL for the class of central elements
    normalizer_index: int  # |G : N_G(C(x))|
    fprime_size: int  # |{y : C(y) = C(x)}|

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class ZClassPartition:
    classes: tuple[ZClass, ...]

    @property
    def zclass_count(self) -> int:
        return len(self.classes)

    def class_of(self, x: int) -> int:
        for i, cls in enumerate(self.classes):
            if x in cls.members:
                return i
        raise IndexError(x)


def _conjugate_keys(G: Group, members: np.ndarray) -> list[int]:
    """Bitmask of ``g H g^-1`` for every ``g``, where ``H`` has the given members."""
    n = G.order
    conj = G.conj_table[:, members]
    rows = np.zeros((n, n), dtype=bool)
    rows[np.arange(n)[:, None], conj] = True
    packed = np.packbits(rows, axis=1, bitorder="little")
    return [int.from_bytes(r.tobytes(), "little") for r in packed]


def z_partition(G: Group) -> ZClassPartition:
    memo = G._memo
    if "zpartition" not in memo:
        memo["zpartition"] = _build_partition(G, profile(G))
    return memo["zpartition"]


def _build_partition(G: Group, prof: CentralizerProfile) -> ZClassPartition:
    n = G.order
    owner = np.array(prof.owner_map)
    cents = prof.proper_centralizers
    key_to_id = {c.bits: i for i, c in enumerate(cents)}
    # conjugating once per centralizer id; elements sharing a centralizer are z-equivalent outright
    orbit_of: list[set[int]] = []
    norm_index: list[int] = []
    for c in cents:
        keys = _conjugate_keys(G, c.members)
        stabilizer = sum(1 for k in keys if k == c.bits)
        norm_index.append(n // stabilizer)
        orbit_of.append({key_to_id[k] for k in keys})

    classes = [ZClass(tuple(prof.center.members.tolist()), 0, CENTRAL, 1, prof.center.size)]
    assigned = [False] * len(cents)
    for i in range(len(cents)):
        if assigned[i]:
            continue
        ids = sorted(orbit_of[i])
        for j in ids:
            assigned[j] = True
        members = np.flatnonzero(np.isin(owner, ids))
        fprime = int(np.sum(owner == i))
        classes.append(ZClass(tuple(members.tolist()), prof.owners[i], i, norm_index[i], fprime))
    classes.sort(key=lambda c: c.members[0])
    return ZClassPartition(tuple(classes))


def z_equivalent(G: Group, x: int, y: int) -> bool:
    """True iff ``C(x) = g C(y) g^-1`` for some ``g`` (exhaustive search)."""
    prof = profile(G)
    cx, cy = prof.centralizer_of(x), prof.centralizer_of(y)
    if cx.size != cy.size:
        return False
    conj = G.conj_table[:, cy.members]
    return bool(cx.mask[conj].all(axis=1).any())


def centralizers_all_normal(G: Group) -> bool:
    return all(is_normal(G, c) for c in profile(G).proper_centralizers)


def zclass_count_equals_cent_count(G: Group) -> bool:
    return z_partition(G).zclass_count == profile(G).cent_count


def upper_bound_check(G: Group) -> bool:
    """``zclass_count <= [G:Z(G)]``, with equality exactly when every ``|Z(x)/Z(G)| = 2``."""
    prof = profile(G)
    count = z_partition(G).zclass_count
    if count > prof.center_index:
        return False
    all_two = all(s == 2 for s in prof.zx_quotient_orders)
    return (count == prof.center_index) == all_two


@dataclass(frozen=True)
class MaxZClassResult:
    p: int
    k: int
    zclass_count: int
    bound: int
    elementary_quotient: bool
    zx_generated: bool  # Z(x) = <x, Z(G)> for every non-central x
    failing_element: int | None

    @property
    def lhs(self) -> bool:
        return self.zclass_count == self.bound

    @property
    def rhs(self) -> bool:
        return self.elementary_quotient and self.zx_generated

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def check_max_zclass_characterization(G: Group) -> MaxZClassResult:
    """Evaluate both sides of the maximal z-class count characterisation for an F-group.

    Raises :class:`HypothesisNotMet` unless ``G`` is a non-abelian F-group
    with ``|G/Z(G)|`` a prime power.
    """
    prof = profile(G)
    if prof.is_abelian:
        raise HypothesisNotMet("G is abelian")
    if not is_F_group(G):
        raise HypothesisNotMet("G is not an F-group")
    pk = prime_power(prof.center_index)
    if pk is None:
        raise HypothesisNotMet(f"|G/Z(G)| = {prof.center_index} is not a prime power")
    p, k = pk
    elementary = is_elementary_abelian(quotient(G, prof.center), p)
    failing = None
    zgens = list(prof.center.members)
    for x in range(G.order):
        if prof.owner_map[x] == CENTRAL:
            continue
        if generated_subgroup(G, zgens + [x]) != prof.center_of(x):
            failing = x
            break
    return MaxZClassResult(
        p, k, z_partition(G).zclass_count, geometric_count(p, k), elementary, failing is None, failing
    )
