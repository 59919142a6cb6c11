"""Small integer helpers; every order handled here is at most a few thousand."""

from __future__ import annotations

from math import isqrt


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, isqrt(n) + 1, 2))


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation as ``{prime: exponent}``; ``factorize(1) == {}``."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``n == p**k`` and ``k >= 1``, else None."""
    f = factorize(n)
    if len(f) != 1:
        return None
    ((p, k),) = f.items()
    return p, k


def smallest_prime_divisor(n: int) -> int | None:
    f = factorize(n)
    return min(f) if f else None


def geometric_count(p: int, k: int, m: int = 1) -> int:
    """``(p**k - 1) / (p**m - 1) + 1``, the number of centralizers of a uniformly partitioned F-group."""
    num, den = p**k - 1, p**m - 1
    if num % den:
        raise ValueError(f"p^{m}-1 does not divide p^{k}-1 for p={p}")
    return num // den + 1
