"""Coordinate vectors of the named root families in types A and D.

Type A uses plain segments a[p..q].  Type D adds the convention that a
segment ending at n routes through the fork leaf n (skipping n-1), and
the doubled-tail forms theta[p,q] = a_min..a_(max-1) + 2(a_max..a_(n-2))
+ a_(n-1) + a_n, which are roots exactly when p != q.
"""

from .errors import InvalidInputError

__all__ = ["segment_a", "segment_d", "sigma_d", "theta_d"]


def segment_a(n: int, p: int, q: int):
    if not 1 <= p <= q <= n:
        raise InvalidInputError(f"segment a[{p},{q}] out of range")
    return tuple(1 if p - 1 <= t <= q - 1 else 0 for t in range(n))


def segment_d(n: int, p: int, q: int):
    if not 1 <= p <= q <= n:
        raise InvalidInputError(f"segment a[{p},{q}] out of range")
    if q < n:
        return tuple(1 if p - 1 <= t <= q - 1 else 0 for t in range(n))
    return tuple(1 if (p - 1 <= t <= n - 3 or t == n - 1) else 0 for t in range(n))


def theta_d(n: int, p: int, q: int):
    lo, hi = min(p, q), max(p, q)
    if not 1 <= lo or hi > n - 1:
        raise InvalidInputError(f"theta[{p},{q}] out of range")
    coords = [0] * n
    for t in range(lo, hi):
        coords[t - 1] = 1
    for t in range(hi, n - 1):
        coords[t - 1] = 2
    coords[n - 2] = 1
    coords[n - 1] = 1
    return tuple(coords)


def sigma_d(n: int, i: int, power: int) -> int:
    """Diagram flip swapping the two fork leaves, raised to a power."""
    if power % 2 == 0 or i < n - 1:
        return i
    return n - 1 if i == n else n
