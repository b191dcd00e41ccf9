"""Lattice monomials ``x^a`` with ``a`` in Z^k, stored as plain int tuples.

Both the ``X^a`` monomials of the type-A Bernstein presentation and the
``theta^lambda`` monomials of root-lattice affine Hecke algebras use this
representation; index ``i`` of the tuple is the exponent of the i-th
generator.
"""
from __future__ import annotations

from typing import Dict, Sequence, Tuple

from ..errors import NotDivisible

Monomial = Tuple[int, ...]

__all__ = [
    "Monomial",
    "unit",
    "zero",
    "add",
    "sub",
    "neg",
    "scale",
    "geometric_quotient",
    "multiply_back",
    "render",
]


def zero(rank: int) -> Monomial:
    return (0,) * rank


def unit(rank: int, i: int, power: int = 1) -> Monomial:
    a = [0] * rank
    a[i] = power
    return tuple(a)


def add(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def neg(a: Monomial) -> Monomial:
    return tuple(-x for x in a)


def scale(a: Monomial, k: int) -> Monomial:
    return tuple(k * x for x in a)


def _multiple_of(diff: Monomial, delta: Monomial) -> int:
    """Return k with ``diff == k * delta`` or raise NotDivisible."""
    if not any(delta):
        if any(diff):
            raise NotDivisible("direction is zero but the numerator is not")
        return 0
    k = None
    for d, x in zip(delta, diff):
        if d == 0:
            if x != 0:
                raise NotDivisible(f"{diff} is not a multiple of {delta}")
        else:
            if x % d:
                raise NotDivisible(f"{diff} is not a multiple of {delta}")
            if k is None:
                k = x // d
            elif k != x // d:
                raise NotDivisible(f"{diff} is not a multiple of {delta}")
    return k


def geometric_quotient(lam: Monomial, mu: Monomial, delta: Monomial) -> Dict[Monomial, int]:
    """Expand ``(x^lam - x^mu) / (1 - x^-delta)`` as a finite sum of monomials.

    With ``lam - mu = k*delta`` the quotient telescopes to
    ``x^(mu+delta) + ... + x^(mu+k*delta)`` for ``k > 0`` and to
    ``-(x^(lam+delta) + ... + x^(lam+|k|*delta))`` for ``k < 0``.

    >>> geometric_quotient((1, 0), (1, 2), (0, 1))
    {(1, 1): -1, (1, 2): -1}
    """
    k = _multiple_of(sub(lam, mu), delta)
    out: Dict[Monomial, int] = {}
    if k > 0:
        for j in range(1, k + 1):
            out[add(mu, scale(delta, j))] = 1
    elif k < 0:
        for j in range(1, -k + 1):
            out[add(lam, scale(delta, j))] = -1
    return out


def multiply_back(terms: Dict[Monomial, int], delta: Monomial) -> Dict[Monomial, int]:
    """Multiply a monomial combination by ``(1 - x^-delta)``."""
    out: Dict[Monomial, int] = {}
    shift = neg(delta)
    for a, c in terms.items():
        out[a] = out.get(a, 0) + c
        b = add(a, shift)
        out[b] = out.get(b, 0) - c
    return {a: c for a, c in out.items() if c}


def render(a: Sequence[int]) -> str:
    return "[" + ",".join(str(x) for x in a) + "]"
