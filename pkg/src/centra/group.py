"""Finite groups as dense multiplication tables.

Elements are the integers ``0..n-1`` and index 0 is always the identity.
Subgroups are :class:`SubgroupSet` bit-vectors over the parent's indices.

A :class:`Group` never changes after construction. Derived data that several
modules need (the commuting matrix, commutator table, element orders, ...) is
memoised on the instance the first time it is asked for.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import NotAGroup, NotNormal, NotProper, OrderCapExceeded
from .numbers import factorize

DEFAULT_ORDER_CAP = 2048


def order_cap() -> int:
    """The configured order cap (``CENTRA_ORDER_CAP`` overrides the default)."""
    raw = os.environ.get("CENTRA_ORDER_CAP")
    if raw is None:
        return DEFAULT_ORDER_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"CENTRA_ORDER_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError("CENTRA_ORDER_CAP must be positive")
    return cap


# ---------------------------------------------------------------------------
# subgroup bit-vectors


@dataclass(frozen=True)
class SubgroupSet:
    """A set of element indices of a parent group, stored as an integer bitmask.

    Bit ``i`` is set iff element ``i`` belongs to the set. The bitmask doubles
    as a canonical hashable key, so equal subgroups compare and hash equal.
    """

    bits: int
    n: int

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> SubgroupSet:
        bits = 0
        for i in indices:
            bits |= 1 << int(i)
        return cls(bits, n)

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> SubgroupSet:
        packed = np.packbits(np.asarray(mask, dtype=bool), bitorder="little")
        return cls(int.from_bytes(packed.tobytes(), "little"), int(mask.shape[0]))

    @classmethod
    def full(cls, n: int) -> SubgroupSet:
        return cls((1 << n) - 1, n)

    @classmethod
    def trivial(cls, n: int) -> SubgroupSet:
        return cls(1, n)

    @property
    def size(self) -> int:
        return self.bits.bit_count()

    def __len__(self) -> int:
        return self.size

    @cached_property
    def mask(self) -> np.ndarray:
        raw = np.frombuffer(self.bits.to_bytes((self.n + 7) // 8, "little"), dtype=np.uint8)
        out = np.unpackbits(raw, bitorder="little")[: self.n].astype(bool)
        out.flags.writeable = False
        return out

    @cached_property
    def members(self) -> np.ndarray:
        out = np.flatnonzero(self.mask)
        out.flags.writeable = False
        return out

    def __iter__(self) -> Iterator[int]:
        return iter(self.members.tolist())

    def __contains__(self, i: object) -> bool:
        return isinstance(i, (int, np.integer)) and 0 <= i < self.n and bool(self.bits >> int(i) & 1)

    def __le__(self, other: SubgroupSet) -> bool:
        return self.bits & ~other.bits == 0

    def __lt__(self, other: SubgroupSet) -> bool:
        return self.bits != other.bits and self <= other

    def __ge__(self, other: SubgroupSet) -> bool:
        return other <= self

    def __gt__(self, other: SubgroupSet) -> bool:
        return other < self

    def __and__(self, other: SubgroupSet) -> SubgroupSet:
        return SubgroupSet(self.bits & other.bits, self.n)

    def __or__(self, other: SubgroupSet) -> SubgroupSet:
        # Union of subsets; not generally a subgroup.
        return SubgroupSet(self.bits | other.bits, self.n)

    def is_full(self) -> bool:
        return self.bits == (1 << self.n) - 1

    def __repr__(self) -> str:
        shown = self.members.tolist()
        body = ", ".join(map(str, shown[:12])) + (", ..." if len(shown) > 12 else "")
        return f"SubgroupSet({{{body}}}, size={self.size}, n={self.n})"


# ---------------------------------------------------------------------------
# the group value


class Group:
    """An immutable finite group given by its Cayley table.

    Use :func:`from_table` to build one from untrusted input; the constructor
    itself trusts its table and only derives inverses.
    """

    def __init__(self, mul: np.ndarray, name: str | None = None):
        mul = np.array(mul, dtype=np.int32, copy=True)
        mul.flags.writeable = False
        self.mul = mul
        self.name = name
        inv = np.argmax(mul == 0, axis=1).astype(np.int32)
        inv.flags.writeable = False
        self.inv = inv
        self._memo: dict = {}

    @property
    def order(self) -> int:
        return int(self.mul.shape[0])

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        label = self.name or "group"
        return f"<Group {label} of order {self.order}>"

    def same_table(self, other: Group) -> bool:
        return self.mul.shape == other.mul.shape and bool(np.array_equal(self.mul, other.mul))

    def full(self) -> SubgroupSet:
        return SubgroupSet.full(self.order)

    def trivial(self) -> SubgroupSet:
        return SubgroupSet.trivial(self.order)

    def power(self, x: int, k: int) -> int:
        result, base = 0, int(x)
        k = int(k)
        while k:
            if k & 1:
                result = int(self.mul[result, base])
            base = int(self.mul[base, base])
            k >>= 1
        return result

    def commutator(self, g: int, h: int) -> int:
        """``g^-1 h^-1 g h``."""
        return int(self.comm_table[g, h])

    @cached_property
    def commute_matrix(self) -> np.ndarray:
        """``commute_matrix[g, h]`` is True iff ``gh == hg``; row ``x`` is the centralizer of ``x``."""
        out = self.mul == self.mul.T
        out.flags.writeable = False
        return out

    @cached_property
    def comm_table(self) -> np.ndarray:
        mul, inv = self.mul, self.inv
        left = mul[inv[:, None], inv[None, :]]
        out = mul[left, mul]
        out.flags.writeable = False
        return out

    @cached_property
    def conj_table(self) -> np.ndarray:
        """``conj_table[g, x] == g x g^-1``."""
        out = self.mul[self.mul, self.inv[:, None]]
        out.flags.writeable = False
        return out

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        cur = np.arange(n)
        k = 1
        while True:
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            if orders.all():
                break
            cur = self.mul[cur, np.arange(n)]
            k += 1
        orders.flags.writeable = False
        return orders

    @cached_property
    def is_abelian(self) -> bool:
        return bool(self.commute_matrix.all())


# ---------------------------------------------------------------------------
# construction and validation


def _generating_set_of_table(mul: np.ndarray) -> list[int]:
    """Greedy generators whose right-multiplication closure from 0 covers the table."""
    n = mul.shape[0]
    gens: list[int] = []
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    while not seen.all():
        g = int(np.flatnonzero(~seen)[0])
        gens.append(g)
        seen[:] = False
        seen[0] = True
        frontier = np.array([0])
        g_arr = np.array(gens)
        while frontier.size:
            nxt = np.unique(mul[np.ix_(frontier, g_arr)].ravel())
            nxt = nxt[~seen[nxt]]
            seen[nxt] = True
            frontier = nxt
    return gens


def _check_associative(mul: np.ndarray) -> tuple[int, int, int] | None:
    """Light's test: return a non-associative triple or None.

    The elements ``a`` with ``(xa)y == x(ay)`` for all ``x, y`` are closed
    under multiplication, so checking ``a`` over a generating set suffices.
    """
    for a in _generating_set_of_table(mul):
        lhs = mul[mul[:, a], :]
        rhs = mul[:, mul[a, :]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            x, y = bad[0]
            return int(x), a, int(y)
    return None


def from_table(rows: Sequence[Sequence[int]] | np.ndarray, name: str | None = None, *, cap: int | None = None) -> Group:
    """Validate a Cayley table and return the corresponding :class:`Group`.

    Raises :class:`NotAGroup` naming the violated axiom.
    """
    try:
        mul = np.array(rows, dtype=np.int64)
    except (ValueError, TypeError) as exc:
        raise NotAGroup(f"table is not rectangular: {exc}") from None
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
        raise NotAGroup(f"table must be a non-empty square, got shape {mul.shape}")
    n = mul.shape[0]
    cap = order_cap() if cap is None else cap
    if n > cap:
        raise OrderCapExceeded(f"order {n} exceeds the order cap {cap}")
    if mul.min() < 0 or mul.max() >= n:
        raise NotAGroup(f"entries must lie in 0..{n - 1}")
    ident = np.arange(n)
    if not (np.array_equal(mul[0], ident) and np.array_equal(mul[:, 0], ident)):
        raise NotAGroup("index 0 is not a two-sided identity")
    bad_rows = np.flatnonzero((np.sort(mul, axis=1) != ident).any(axis=1))
    if bad_rows.size:
        raise NotAGroup(f"row {bad_rows[0]} is not a permutation (Latin square property)")
    bad_cols = np.flatnonzero((np.sort(mul, axis=0) != ident[:, None]).any(axis=0))
    if bad_cols.size:
        raise NotAGroup(f"column {bad_cols[0]} is not a permutation (Latin square property)")
    inv = np.argmax(mul == 0, axis=1)
    left = mul[inv, ident]
    if (left != 0).any():
        i = int(np.flatnonzero(left != 0)[0])
        raise NotAGroup(f"element {i} has no two-sided inverse")
    triple = _check_associative(mul)
    if triple is not None:
        x, a, y = triple
        raise NotAGroup(f"associativity fails for ({x}, {a}, {y})")
    return Group(mul, name)


# ---------------------------------------------------------------------------
# subgroups


def is_subgroup(G: Group, H: SubgroupSet) -> bool:
    if 0 not in H or H.n != G.order:
        return False
    hs = H.members
    return bool(H.mask[G.mul[np.ix_(hs, hs)]].all())


def generated_subgroup(G: Group, seeds: Iterable[int]) -> SubgroupSet:
    """Smallest subgroup containing ``seeds`` (closure under right multiplication)."""
    n = G.order
    gens = np.unique(np.fromiter((int(s) for s in seeds), dtype=np.int64))
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    frontier = np.array([0])
    if gens.size:
        while frontier.size:
            nxt = np.unique(G.mul[np.ix_(frontier, gens)].ravel())
            nxt = nxt[~seen[nxt]]
            seen[nxt] = True
            frontier = nxt
    out = SubgroupSet.from_mask(seen)
    assert n % out.size == 0, "Lagrange violated; table is not a group"
    return out


def subgroup_generators(G: Group, H: SubgroupSet) -> list[int]:
    """A small generating set of ``H`` chosen greedily in ascending index order."""
    gens: list[int] = []
    cur = G.trivial()
    for h in H:
        if h not in cur:
            gens.append(h)
            cur = generated_subgroup(G, gens)
            if cur == H:
                break
    return gens


def center(G: Group) -> SubgroupSet:
    memo = G._memo
    if "center" not in memo:
        memo["center"] = SubgroupSet.from_mask(G.commute_matrix.all(axis=1))
    return memo["center"]


def commutator_subgroup(G: Group) -> SubgroupSet:
    memo = G._memo
    if "derived" not in memo:
        memo["derived"] = generated_subgroup(G, np.unique(G.comm_table))
    return memo["derived"]


def centralizer(G: Group, x: int) -> SubgroupSet:
    return SubgroupSet.from_mask(G.commute_matrix[x])


def is_abelian_subgroup(G: Group, H: SubgroupSet) -> bool:
    hs = H.members
    return bool(G.commute_matrix[np.ix_(hs, hs)].all())


def subgroup_center(G: Group, H: SubgroupSet) -> SubgroupSet:
    """Center of ``H`` computed inside ``H``, as a subset of ``G``."""
    hs = H.members
    inner = G.commute_matrix[np.ix_(hs, hs)].all(axis=1)
    return SubgroupSet.from_indices(G.order, hs[inner])


def subgroup_as_group(G: Group, H: SubgroupSet, name: str | None = None) -> tuple[Group, np.ndarray]:
    """Relabel ``H`` as a standalone group; returns it with the index map back into ``G``."""
    hs = H.members
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[hs] = np.arange(hs.size)
    return Group(pos[G.mul[np.ix_(hs, hs)]], name), hs


def normalizer(G: Group, H: SubgroupSet) -> SubgroupSet:
    conj = G.conj_table[:, H.members]
    return SubgroupSet.from_mask(H.mask[conj].all(axis=1))


def is_normal(G: Group, H: SubgroupSet) -> bool:
    return normalizer(G, H).is_full()


def is_maximal_subgroup(G: Group, H: SubgroupSet) -> bool:
    """True iff adjoining any element outside ``H`` generates all of ``G``."""
    if H.is_full():
        raise NotProper("a maximal subgroup must be proper")
    base = subgroup_generators(G, H)
    covered = H.mask.copy()
    hs = H.members
    for g in range(G.order):
        if covered[g]:
            continue
        # <H, g> == <H, gh> for every h in H, so one test per left coset
        covered[G.mul[g, hs]] = True
        if not generated_subgroup(G, base + [g]).is_full():
            return False
    return True


def left_cosets(G: Group, N: SubgroupSet) -> np.ndarray:
    """Coset label of each element; labels ordered by each coset's minimal member."""
    mins = G.mul[:, N.members].min(axis=1)
    _, labels = np.unique(mins, return_inverse=True)
    return labels.astype(np.int64)


def quotient_map(G: Group, N: SubgroupSet) -> tuple[Group, np.ndarray]:
    """``G/N`` together with the projection ``g -> coset index``."""
    ns = N.members
    left = np.sort(G.mul[:, ns], axis=1)
    right = np.sort(G.mul[ns, :].T, axis=1)
    if not np.array_equal(left, right):
        g = int(np.flatnonzero((left != right).any(axis=1))[0])
        raise NotNormal(f"gN != Ng for g = {g}")
    labels = left_cosets(G, N)
    reps = np.unique(left[:, 0])
    table = labels[G.mul[np.ix_(reps, reps)]]
    label = f"{G.name}/N" if G.name else None
    return Group(table, label), labels


def quotient(G: Group, N: SubgroupSet) -> Group:
    return quotient_map(G, N)[0]


# ---------------------------------------------------------------------------
# numerical invariants


def element_order(G: Group, i: int) -> int:
    return int(G.element_orders[i])


def exponent(G: Group) -> int:
    return math.lcm(*map(int, np.unique(G.element_orders)))


def nilpotency_class(G: Group) -> int | None:
    """Length of the upper central series, or None when ``G`` is not nilpotent."""
    n = G.order
    if n == 1:
        return 0
    comm = G.comm_table
    current = np.zeros(n, dtype=bool)
    current[0] = True
    c = 0
    while True:
        nxt = current[comm].all(axis=1)
        c += 1
        if nxt.all():
            return c
        if np.array_equal(nxt, current):
            return None
        current = nxt


def conjugacy_classes(G: Group) -> list[tuple[int, ...]]:
    """Conjugacy classes as sorted tuples, ordered by their smallest member."""
    memo = G._memo
    if "classes" not in memo:
        conj = G.conj_table
        assigned = np.zeros(G.order, dtype=bool)
        classes = []
        for x in range(G.order):
            if assigned[x]:
                continue
            orbit = np.unique(conj[:, x])
            assigned[orbit] = True
            classes.append(tuple(int(v) for v in orbit))
        memo["classes"] = classes
    return memo["classes"]


def is_elementary_abelian(G: Group, p: int | None = None) -> bool:
    """Abelian with every non-identity element of one prime order (``p`` if given).

    The trivial group counts as elementary abelian.
    """
    if not G.is_abelian:
        return False
    orders = set(np.unique(G.element_orders).tolist()) - {1}
    if not orders:
        return True
    if len(orders) != 1:
        return False
    (q,) = orders
    return factorize(q) == {q: 1} and (p is None or q == p)


def is_elementary_abelian_subgroup(G: Group, H: SubgroupSet, p: int | None = None) -> bool:
    return is_elementary_abelian(subgroup_as_group(G, H)[0], p)


def abelian_invariants(G: Group) -> tuple[int, ...]:
    """Orders of the prime-power cyclic factors of an abelian group, ascending.

    Read off from element-order counts, which determine a finite abelian group.
    """
    if not G.is_abelian:
        raise ValueError("abelian_invariants needs an abelian group")
    factors: list[int] = []
    orders = G.element_orders
    for p in sorted(factorize(G.order)):
        counts = []
        j = 0
        while True:
            cnt = int(np.sum(np.isin(orders, [p**i for i in range(j + 1)])))
            counts.append(cnt)
            if cnt == p ** factorize(G.order)[p]:
                break
            j += 1
        # ranks[j] = number of cyclic factors of order >= p^j
        ranks = [0] + [round(math.log(counts[i] / counts[i - 1], p)) for i in range(1, len(counts))]
        for i in range(1, len(ranks)):
            nxt = ranks[i + 1] if i + 1 < len(ranks) else 0
            factors += [p**i] * (ranks[i] - nxt)
    return tuple(sorted(factors))


def index_p_subgroups(G: Group, A: SubgroupSet, p: int) -> list[SubgroupSet]:
    """All subgroups of index ``p`` in the abelian subgroup ``A`` of ``G``.

    They are the kernels of the non-zero functionals on ``A / A^p``, which is an
    elementary abelian ``p``-group.
    """
    if not is_abelian_subgroup(G, A):
        raise ValueError("index_p_subgroups needs an abelian subgroup")
    if A.size % p:
        return []
    members = A.members
    powers = np.array([G.power(int(a), p) for a in members])
    P = generated_subgroup(G, powers)
    labels = G.mul[:, P.members].min(axis=1)  # coset key of each element of G
    # basis of A/P chosen greedily
    basis: list[int] = []
    span = P
    for a in members:
        if int(a) not in span:
            basis.append(int(a))
            span = generated_subgroup(G, list(P.members) + basis)
    r = len(basis)
    if r == 0:
        return []
    coords: dict[int, tuple[int, ...]] = {}
    for c in product(range(p), repeat=r):
        g = 0
        for b, e in zip(basis, c):
            g = int(G.mul[g, G.power(b, e)])
        coords[int(labels[g])] = c
    member_coords = np.array([coords[int(labels[a])] for a in members], dtype=np.int64)
    out = []
    for f in product(range(p), repeat=r):
        nz = [v for v in f if v]
        if not nz or nz[0] != 1:
            continue
        keep = (member_coords @ np.array(f)) % p == 0
        out.append(SubgroupSet.from_indices(G.order, members[keep]))
    out.sort(key=lambda s: s.bits)
    return out


def normal_subgroups_of_prime_index(G: Group) -> list[tuple[int, SubgroupSet]]:
    """Every normal subgroup of prime index, as ``(p, N)``; each contains ``G'``."""
    derived = commutator_subgroup(G)
    Q, labels = quotient_map(G, derived)
    out = []
    for p in sorted(factorize(Q.order)):
        for K in index_p_subgroups(Q, Q.full(), p):
            out.append((p, SubgroupSet.from_mask(K.mask[labels])))
    return out
