"""Builders for the group families used throughout the library.

Element orderings are canonical and documented per family so that tables are
reproducible byte for byte:

* cyclic ``C_n``: index ``k`` is ``g^k``.
* dihedral of order ``2m``: ``r^0..r^(m-1)`` then ``s r^0..s r^(m-1)``.
* ``Q8``: ``1, -1, i, -i, j, -j, k, -k``.
* symmetric ``S_k``: permutations of ``0..k-1`` in lexicographic order, with
  ``(g h)(i) = g(h(i))``; ``A_4`` keeps the even ones in the same order.
* direct product ``A x B``: index ``a |B| + b``.
* Heisenberg group mod ``p``: ``[[1, x, z], [0, 1, y], [0, 0, 1]]`` at index
  ``x p^2 + y p + z``.
* central products are quotients of direct products, labelled by the
  quotient's minimal-coset rule.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Callable, Sequence

import numpy as np

from .errors import NotPrime, OutOfRange
from .group import Group, center, from_table, generated_subgroup, order_cap, quotient
from .numbers import is_prime

PLUS = "+"
MINUS = "-"


def _check_cap(n: int) -> None:
    cap = order_cap()
    if n > cap:
        raise OutOfRange(f"order {n} exceeds the order cap {cap}")


def _table(elements: Sequence, op: Callable) -> np.ndarray:
    index = {e: i for i, e in enumerate(elements)}
    return np.array([[index[op(a, b)] for b in elements] for a in elements], dtype=np.int64)


def construct_cyclic(n: int) -> Group:
    if n < 1:
        raise OutOfRange(f"cyclic order must be positive, got {n}")
    _check_cap(n)
    idx = np.arange(n)
    return from_table((idx[:, None] + idx[None, :]) % n, name=f"C{n}")


def construct_dihedral(n: int) -> Group:
    """Dihedral group of order ``n = 2m`` (``D_8`` has order 8)."""
    if n < 2 or n % 2:
        raise OutOfRange(f"dihedral order must be even and >= 2, got {n}")
    _check_cap(n)
    m = n // 2
    elements = [(a, b) for a in (0, 1) for b in range(m)]

    def op(x, y):
        (a, b), (c, d) = x, y
        return ((a + c) % 2, ((-b if c else b) + d) % m)

    return from_table(_table(elements, op), name=f"D{n}")


_QUAT = {  # unit quaternion products on basis labels
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


def construct_quaternion8() -> Group:
    elements = [(s, u) for u in "1ijk" for s in (1, -1)]

    def op(x, y):
        sign, unit = _QUAT[x[1], y[1]]
        return (x[0] * y[0] * sign, unit)

    return from_table(_table(elements, op), name="Q8")


def construct_symmetric(k: int) -> Group:
    if not 1 <= k <= 5:
        raise OutOfRange(f"symmetric degree must be in 1..5, got {k}")
    elements = list(permutations(range(k)))
    return from_table(_table(elements, lambda g, h: tuple(g[i] for i in h)), name=f"S{k}")


def _parity(perm: Sequence[int]) -> int:
    return sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j]) % 2


def construct_alternating(k: int = 4) -> Group:
    if k != 4:
        raise OutOfRange(f"only the alternating group of degree 4 is provided, got {k}")
    elements = [p for p in permutations(range(4)) if _parity(p) == 0]
    return from_table(_table(elements, lambda g, h: tuple(g[i] for i in h)), name="A4")


def _direct_product_table(A: Group, B: Group) -> np.ndarray:
    m = B.order
    a_part = A.mul[:, None, :, None]
    b_part = B.mul[None, :, None, :]
    table = a_part * m + b_part
    n = A.order * m
    return table.reshape(n, n)


def construct_direct_product(A: Group, B: Group) -> Group:
    _check_cap(A.order * B.order)
    name = f"{A.name or 'A'}x{B.name or 'B'}"
    return from_table(_direct_product_table(A, B), name=name)


def construct_heisenberg(p: int) -> Group:
    """Upper unitriangular 3x3 matrices over the field with ``p`` elements (``p`` odd)."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2:
        raise OutOfRange("the Heisenberg constructor takes an odd prime (mod 2 it is D8)")
    _check_cap(p**3)
    return from_table(_heisenberg_table(p), name=f"Heis{p}")


def _heisenberg_table(p: int) -> np.ndarray:
    idx = np.arange(p**3)
    x, y, z = idx // (p * p), (idx // p) % p, idx % p
    nx = (x[:, None] + x[None, :]) % p
    ny = (y[:, None] + y[None, :]) % p
    nz = (z[:, None] + z[None, :] + x[:, None] * y[None, :]) % p
    return nx * p * p + ny * p + nz


def _metacyclic_p3(p: int) -> np.ndarray:
    """``<a, b | a^(p^2) = b^p = 1, b a b^-1 = a^(1+p)>`` as pairs ``a^i b^j`` at index ``i p + j``."""
    q = p * p
    elements = [(i, j) for i in range(q) for j in range(p)]

    def op(x, y):
        (i, j), (k, l) = x, y
        # b^j a^k = a^(k (1+p)^j) b^j
        return ((i + k * pow(1 + p, j, q)) % q, (j + l) % p)

    return _table(elements, op)


def _central_generator(G: Group) -> int:
    """Smallest non-identity central element; the amalgamated centers have prime order."""
    z = center(G)
    return int(z.members[1])


def central_product(A: Group, B: Group, name: str | None = None) -> Group:
    """Central product amalgamating the prime-order centers of ``A`` and ``B``.

    Implemented as ``(A x B) / {(z^k, w^-k)}`` for the smallest central
    generators ``z`` of ``A`` and ``w`` of ``B``.
    """
    za, zb = _central_generator(A), _central_generator(B)
    if A.element_orders[za] != B.element_orders[zb]:
        raise OutOfRange("central product needs centers of equal prime order")
    product_group = Group(_direct_product_table(A, B))
    m = B.order
    anti = za * m + int(B.inv[zb])
    N = generated_subgroup(product_group, [anti])
    Q = quotient(product_group, N)
    _check_cap(Q.order)
    return from_table(Q.mul, name=name)


@lru_cache(maxsize=None)
def _extraspecial_table(p: int, a: int, variant: str) -> np.ndarray:
    if p == 2:
        d8 = construct_dihedral(8)
        q8 = construct_quaternion8()
        last = d8 if variant == PLUS else q8
        factors = [d8] * (a - 1) + [last]
    else:
        heis = Group(_heisenberg_table(p))
        last = heis if variant == PLUS else Group(_metacyclic_p3(p))
        factors = [heis] * (a - 1) + [last]
    G = factors[0]
    for F in factors[1:]:
        G = central_product(G, F)
    return G.mul


def construct_extraspecial(p: int, a: int, variant: str = PLUS) -> Group:
    """Extraspecial group of order ``p^(2a+1)``.

    For odd ``p`` the ``+`` variant has exponent ``p`` and the ``-`` variant
    exponent ``p^2``. For ``p == 2`` the ``+`` variant is a central product of
    ``a`` copies of ``D8`` and the ``-`` variant replaces one copy by ``Q8``.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if a < 1:
        raise OutOfRange(f"a must be positive, got {a}")
    if variant not in (PLUS, MINUS):
        raise OutOfRange(f"variant must be '+' or '-', got {variant!r}")
    _check_cap(p ** (2 * a + 1))
    return from_table(_extraspecial_table(p, a, variant), name=f"ES{p}^{2 * a + 1}{variant}")


# ---------------------------------------------------------------------------
# textual constructor specs


_SIMPLE = {
    "quaternion8": construct_quaternion8,
    "alternating4": construct_alternating,
}


def _params(text: str, spec: str) -> dict[str, str]:
    out = {}
    for part in filter(None, text.split(",")):
        key, sep, value = part.partition("=")
        if not sep:
            raise OutOfRange(f"bad parameter {part!r} in constructor spec {spec!r}")
        out[key.strip()] = value.strip()
    return out


def _int_param(params: dict[str, str], key: str, spec: str) -> int:
    try:
        return int(params[key])
    except KeyError:
        raise OutOfRange(f"constructor spec {spec!r} is missing {key}=") from None
    except ValueError:
        raise OutOfRange(f"{key} must be an integer in {spec!r}") from None


def from_spec(spec: str) -> Group:
    """Build a group from a constructor spec such as ``extraspecial:p=3,a=1,variant=+``.

    Grammar::

        cyclic:n=<n> | dihedral:n=<2m> | quaternion8 | symmetric:k=<k>
        | alternating4 | extraspecial:p=<p>,a=<a>,variant=<+|->
        | heisenberg:p=<p> | product:<spec>*<spec>

    ``product`` splits at the first ``*``, so ``product:A*product:B*C`` nests
    to the right.
    """
    spec = spec.strip()
    family, _, rest = spec.partition(":")
    if family == "product":
        left, star, right = rest.partition("*")
        if not star or not left or not right:
            raise OutOfRange(f"product spec needs two factors: {spec!r}")
        return construct_direct_product(from_spec(left), from_spec(right))
    if family in _SIMPLE:
        if rest:
            raise OutOfRange(f"{family} takes no parameters: {spec!r}")
        return _SIMPLE[family]()
    params = _params(rest, spec)
    if family == "cyclic":
        return construct_cyclic(_int_param(params, "n", spec))
    if family == "dihedral":
        return construct_dihedral(_int_param(params, "n", spec))
    if family == "symmetric":
        return construct_symmetric(_int_param(params, "k", spec))
    if family == "heisenberg":
        return construct_heisenberg(_int_param(params, "p", spec))
    if family == "extraspecial":
        variant = params.get("variant", PLUS)
        return construct_extraspecial(_int_param(params, "p", spec), _int_param(params, "a", spec), variant)
    raise OutOfRange(f"unknown constructor family in {spec!r}")
