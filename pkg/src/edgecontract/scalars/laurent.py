"""Sparse Laurent polynomials in one variable ``v`` over the integers."""
from __future__ import annotations

import re
from typing import Mapping, Union

__all__ = ["LaurentPoly", "v", "q", "parse_laurent"]


class LaurentPoly:
    """An element of ``Z[v, v^-1]`` stored as ``{exponent: coefficient}``.

    Zero coefficients are never stored, so the zero polynomial is the empty
    map.  Instances are immutable and hashable.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Union[Mapping[int, int], int, None] = None):
        if coeffs is None:
            c = {}
        elif isinstance(coeffs, int):
            c = {0: coeffs} if coeffs else {}
        else:
            c = {int(e): int(a) for e, a in coeffs.items() if a}
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c):
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPoly":
        return cls._raw({exponent: coefficient} if coefficient else {})

    # -- inspection -------------------------------------------------------

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def min_degree(self) -> int:
        return min(self._c)

    def max_degree(self) -> int:
        return max(self._c)

    def eval_at_one(self) -> int:
        """Specialize ``v -> 1``."""
        return sum(self._c.values())

    def evaluate(self, x):
        """Evaluate at a nonzero number (ints give a Fraction when needed)."""
        from fractions import Fraction

        total = 0
        for e, a in self._c.items():
            total += a * (Fraction(x) ** e if e < 0 else x**e)
        return total

    def bar(self) -> "LaurentPoly":
        """The involution ``v -> v^-1``."""
        return LaurentPoly._raw({-e: a for e, a in self._c.items()})

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for e, a in other._c.items():
            s = c.get(e, 0) + a
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -a for e, a in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._c or not other._c:
            return LaurentPoly._raw({})
        c: dict = {}
        for e1, a1 in self._c.items():
            for e2, a2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + a1 * a2
        return LaurentPoly._raw({e: a for e, a in c.items() if a})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._c) == 1:
                ((e, a),) = self._c.items()
                if a in (1, -1):
                    return LaurentPoly._raw({-e * (-n): a ** (-n)})
            raise ValueError("only units v^k and -v^k have Laurent inverses")
        result = LaurentPoly(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``v^k``."""
        return LaurentPoly._raw({e + k: a for e, a in self._c.items()})

    def divmod_exact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient ``self / other``; raises if the division is not exact."""
        if not other._c:
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        rem = dict(self._c)
        quo: dict = {}
        dtop = max(other._c)
        dlow = min(other._c)
        lead = other._c[dtop]
        while rem:
            top = max(rem)
            if top - dtop < min(rem) - dlow:
                raise ArithmeticError("inexact Laurent division")
            a = rem[top]
            if a % lead:
                raise ArithmeticError("inexact Laurent division")
            k = a // lead
            e = top - dtop
            quo[e] = quo.get(e, 0) + k
            for d, b in other._c.items():
                x = rem.get(e + d, 0) - k * b
                if x:
                    rem[e + d] = x
                else:
                    rem.pop(e + d, None)
        return LaurentPoly._raw({e: a for e, a in quo.items() if a})

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if not self._c:
                self._hash = hash(0)
            elif len(self._c) == 1 and 0 in self._c:
                self._hash = hash(self._c[0])
            else:
                self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- text -------------------------------------------------------------

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, a in sorted(self._c.items()):
            mag = abs(a)
            if e == 0:
                body = str(mag)
            else:
                var = "v" if e == 1 else f"v^{e}"
                body = var if mag == 1 else f"{mag}{var}"
            if not parts:
                parts.append(("-" if a < 0 else "") + body)
            else:
                parts.append((" - " if a < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self})"


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+)\s*\*?\s*)?
        (?P<var>v(?:\s*\^\s*(?P<exp>\(?\s*-?\d+\s*\)?))?)?\s*""",
    re.VERBOSE,
)


def parse_laurent(text: str) -> LaurentPoly:
    """Parse the canonical rendering (``"-v^-2 + 3 + v^4"``) and close variants."""
    s = text.strip()
    if not s:
        raise ValueError("empty Laurent polynomial")
    pos = 0
    c: dict = {}
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group("coef") is None and m.group("var") is None):
            raise ValueError(f"cannot parse Laurent polynomial {text!r} at {pos}")
        if m.group("sign") is None and not first:
            raise ValueError(f"missing operator in {text!r} at {pos}")
        sign = -1 if m.group("sign") == "-" else 1
        coef = int(m.group("coef")) if m.group("coef") is not None else 1
        if m.group("var") is None:
            e = 0
        elif m.group("exp") is None:
            e = 1
        else:
            e = int(m.group("exp").strip("() "))
        c[e] = c.get(e, 0) + sign * coef
        pos = m.end()
        first = False
    return LaurentPoly(c)


v = LaurentPoly.monomial(1)
#: ``v - v^-1``, the ubiquitous Hecke structure constant.
q = LaurentPoly({1: 1, -1: -1})
