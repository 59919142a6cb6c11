"""Isoclinism between small groups by backtracking over generator images.

Two groups are isoclinic when there are isomorphisms ``phi: G/Z(G) -> H/Z(H)``
and ``theta: G' -> H'`` that carry the commutator map of ``G`` onto that of
``H``. Commutators are constant on central cosets, so the map is a function of
pairs of cosets.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .constructors import MINUS, PLUS, construct_extraspecial
from .errors import SearchBudgetExceeded
from .group import Group, center, commutator_subgroup, quotient_map, subgroup_generators
from .numbers import is_prime, prime_power

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class IsoclinismWitness:
    phi: tuple[int, ...]  # central-quotient index of G -> central-quotient index of H
    theta: tuple[tuple[int, int], ...]  # (element of G', element of H'), sorted

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class NotIsoclinic:
    reason: str

    def __bool__(self) -> bool:
        return False


class _Side:
    """Central quotient, commutator table on cosets, and derived subgroup of one group."""

    def __init__(self, G: Group):
        self.G = G
        Z = center(G)
        self.Q, labels = quotient_map(G, Z)
        reps = np.array([int(np.flatnonzero(labels == q)[0]) for q in range(self.Q.order)])
        self.ccomm = G.comm_table[np.ix_(reps, reps)]
        self.derived = commutator_subgroup(G)
        self.qorders = self.Q.element_orders
        gorders = G.element_orders
        self.corders = gorders[self.ccomm]
        # per coset: multiset of (order of b, order of [a, b]) over all cosets b
        self.profiles = [
            tuple(sorted(Counter(zip(self.qorders.tolist(), self.corders[a].tolist())).items()))
            for a in range(self.Q.order)
        ]
        self.signature = None


def _side(G: Group) -> _Side:
    memo = G._memo
    if "isoclinism_side" not in memo:
        memo["isoclinism_side"] = _Side(G)
    return memo["isoclinism_side"]


def commutator_map_signature(G: Group) -> tuple[tuple[tuple[int, int, int], int], ...]:
    """Multiset of ``(|aZ|, |bZ|, |[a, b]|)`` over all pairs of central cosets."""
    s = _side(G)
    if s.signature is None:
        a_ord = np.repeat(s.qorders, s.Q.order)
        b_ord = np.tile(s.qorders, s.Q.order)
        triples = Counter(zip(a_ord.tolist(), b_ord.tolist(), s.corders.ravel().tolist()))
        s.signature = tuple(sorted(triples.items()))
    return s.signature


def _extend_hom(
    mul_a: np.ndarray, mul_b: np.ndarray, gens: list[int], images: list[int]
) -> dict[int, int] | None:
    """Extend ``gens -> images`` to a homomorphism on the generated subgroup.

    Returns the map or None when the assignment is inconsistent or not injective.
    """
    phi = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for e in frontier:
            fe = phi[e]
            for g, h in zip(gens, images):
                target = int(mul_a[e, g])
                image = int(mul_b[fe, h])
                seen = phi.get(target)
                if seen is None:
                    phi[target] = image
                    nxt.append(target)
                elif seen != image:
                    return None
        frontier = nxt
    if len(set(phi.values())) != len(phi):
        return None
    return phi


def _theta_from_pairs(cg: np.ndarray, ch: np.ndarray) -> dict[int, int] | None:
    """Induced map on commutator values, or None if it is not a well-defined injection."""
    pairs = np.unique(np.stack([cg.ravel(), ch.ravel()], axis=1), axis=0)
    if np.unique(pairs[:, 0]).size != len(pairs) or np.unique(pairs[:, 1]).size != len(pairs):
        return None
    return {int(a): int(b) for a, b in pairs}


def _check_witness(a: _Side, b: _Side, phi: np.ndarray, theta: dict[int, int]) -> bool:
    """Re-verify a candidate witness from scratch on every pair of cosets."""
    if sorted(phi.tolist()) != list(range(b.Q.order)):
        return False
    if not np.array_equal(phi[a.Q.mul], b.Q.mul[np.ix_(phi, phi)]):
        return False
    dg = a.derived.members
    if sorted(theta) != dg.tolist() or sorted(theta.values()) != b.derived.members.tolist():
        return False
    tmap = np.full(a.G.order, -1, dtype=np.int64)
    for x, y in theta.items():
        tmap[x] = y
    if not np.array_equal(tmap[a.G.mul[np.ix_(dg, dg)]], b.G.mul[np.ix_(tmap[dg], tmap[dg])]):
        return False
    return bool(np.array_equal(tmap[a.ccomm], b.ccomm[np.ix_(phi, phi)]))


def are_isoclinic(G: Group, H: Group, *, budget: int = DEFAULT_BUDGET) -> IsoclinismWitness | NotIsoclinic:
    """Search for an isoclinism ``G -> H``.

    Raises :class:`SearchBudgetExceeded` when more than ``budget`` partial
    assignments are tried without a decision.
    """
    a, b = _side(G), _side(H)
    if a.Q.order != b.Q.order:
        return NotIsoclinic(f"|G/Z(G)| = {a.Q.order} but |H/Z(H)| = {b.Q.order}")
    if a.derived.size != b.derived.size:
        return NotIsoclinic(f"|G'| = {a.derived.size} but |H'| = {b.derived.size}")
    if commutator_map_signature(G) != commutator_map_signature(H):
        return NotIsoclinic("commutator map signatures differ")

    gens = subgroup_generators(a.Q, a.Q.full())
    same = a.Q.same_table(b.Q)
    candidates = []
    for g in gens:
        cands = [h for h in range(b.Q.order) if b.profiles[h] == a.profiles[g]]
        if same and g in cands:
            cands.remove(g)
            cands.insert(0, g)
        candidates.append(cands)
    if any(not c for c in candidates):
        return NotIsoclinic("some generator has no image with a matching commutator profile")

    nodes = 0
    images: list[int] = []

    def search(level: int) -> IsoclinismWitness | None:
        nonlocal nodes
        if level == len(gens):
            return _finish(a, b, gens, images)
        for h in candidates[level]:
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(budget)
            images.append(h)
            phi = _extend_hom(a.Q.mul, b.Q.mul, gens[: level + 1], images)
            if phi is not None:
                dom = np.fromiter(phi.keys(), dtype=np.int64)
                img = np.fromiter(phi.values(), dtype=np.int64)
                if _theta_from_pairs(a.ccomm[np.ix_(dom, dom)], b.ccomm[np.ix_(img, img)]) is not None:
                    found = search(level + 1)
                    if found is not None:
                        return found
            images.pop()
        return None

    found = search(0)
    if found is None:
        return NotIsoclinic(f"exhaustive search found no isoclinism ({nodes} nodes)")
    return found


def _finish(a: _Side, b: _Side, gens: list[int], images: list[int]) -> IsoclinismWitness | None:
    phi_map = _extend_hom(a.Q.mul, b.Q.mul, gens, images)
    if phi_map is None or len(phi_map) != a.Q.order:
        return None
    phi = np.array([phi_map[q] for q in range(a.Q.order)], dtype=np.int64)
    partial = _theta_from_pairs(a.ccomm, b.ccomm[np.ix_(phi, phi)])
    if partial is None:
        return None
    # theta is forced on commutator values; extend to G' and check it is an isomorphism
    keys = sorted(partial)
    theta = _extend_hom(a.G.mul, b.G.mul, keys, [partial[k] for k in keys])
    if theta is None or len(theta) != a.derived.size or set(theta.values()) != set(b.derived.members.tolist()):
        return None
    if not _check_witness(a, b, phi, theta):
        return None
    return IsoclinismWitness(tuple(phi.tolist()), tuple(sorted(theta.items())))


@lru_cache(maxsize=None)
def _extraspecial(p: int, a: int, variant: str) -> Group:
    return construct_extraspecial(p, a, variant)


@dataclass(frozen=True)
class ExtraspecialMatch:
    p: int
    a: int
    variant: str  # the variant that produced the witness; both are isoclinic to each other


def isoclinic_to_extraspecial(G: Group, *, budget: int = DEFAULT_BUDGET) -> ExtraspecialMatch | None:
    """The ``(p, a)`` with ``G`` isoclinic to an extraspecial group of order ``p^(2a+1)``, if any."""
    s = _side(G)
    pk = prime_power(s.Q.order)
    if pk is None or pk[1] % 2 or not is_prime(s.derived.size) or s.derived.size != pk[0]:
        return None
    p, a = pk[0], pk[1] // 2
    for variant in (PLUS, MINUS):
        if are_isoclinic(G, _extraspecial(p, a, variant), budget=budget):
            return ExtraspecialMatch(p, a, variant)
    return None
