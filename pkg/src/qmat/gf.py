"""Arithmetic in the prime field F_q.

Scalars are plain ints reduced mod q.  Everything above this module works
with tuples of such ints.
"""

from __future__ import annotations


class FieldError(ValueError):
    """Raised for a non-prime order or a division by zero."""


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


def check_order(q: int) -> int:
    if not isinstance(q, int) or isinstance(q, bool) or not is_prime(q):
        raise FieldError(f"field order must be prime, got {q!r}")
    return q


def add(a: int, b: int, q: int) -> int:
    return (a + b) % q


def sub(a: int, b: int, q: int) -> int:
    return (a - b) % q


def neg(a: int, q: int) -> int:
    return -a % q


def mul(a: int, b: int, q: int) -> int:
    return (a * b) % q


def inv(a: int, q: int) -> int:
    a %= q
    if a == 0:
        raise FieldError("zero has no multiplicative inverse")
    return pow(a, q - 2, q)
