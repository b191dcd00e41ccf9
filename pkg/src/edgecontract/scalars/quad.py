"""Exact real numbers in Q(sqrt2, sqrt3, sqrt5).

Every value is a rational combination of the eight square roots
``sqrt(d)`` with ``d`` a squarefree product of 2, 3 and 5.  These roots are
linearly independent over Q, so equality (and the zero test) is coordinate
equality; the sign of a nonzero value is found by interval refinement.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Dict, Union

__all__ = ["QuadScalar", "sqrt_int", "sign", "two_cos_pi_over", "RADICANDS"]

RADICANDS = (2, 3, 5)
# basis index is a bitmask over RADICANDS
_RADICAND_OF = {}
for _mask in range(8):
    _d = 1
    for _bit, _p in enumerate(RADICANDS):
        if _mask >> _bit & 1:
            _d *= _p
    _RADICAND_OF[_mask] = _d
_MASK_OF = {d: m for m, d in _RADICAND_OF.items()}
_BASIS_NAMES = {m: ("" if d == 1 else f"sqrt{d}") for m, d in _RADICAND_OF.items()}


def _overlap(a: int, b: int) -> int:
    """Integer factor produced by sqrt(d_a) * sqrt(d_b)."""
    return _RADICAND_OF[a & b]


Number = Union[int, Fraction, "QuadScalar"]


class QuadScalar:
    """A number ``sum_d c_d sqrt(d)`` with rational coordinates ``c_d``.

    Arithmetic results that happen to be rational are returned as ``int`` or
    ``Fraction`` (see :func:`_simplify`), so mixed matrices hash and compare
    consistently with plain integers.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coords: Dict[int, Union[int, Fraction]]):
        self._c = {m: Fraction(x) for m, x in coords.items() if x}
        self._hash = None

    @classmethod
    def from_radicals(cls, terms: Dict[int, Union[int, Fraction]]) -> Number:
        """Build from ``{radicand: coefficient}``, e.g. ``{1: 1/2, 5: 1/2}``."""
        coords: Dict[int, Fraction] = {}
        for d, c in terms.items():
            coords[_MASK_OF[d]] = coords.get(_MASK_OF[d], 0) + Fraction(c)
        return _simplify(coords)

    def coordinates(self) -> Dict[int, Fraction]:
        """``{radicand: coefficient}`` of the nonzero coordinates."""
        return {_RADICAND_OF[m]: c for m, c in sorted(self._c.items())}

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coords(x) -> Dict[int, Fraction]:
        if isinstance(x, QuadScalar):
            return x._c
        if isinstance(x, (int, Fraction)):
            return {0: Fraction(x)} if x else {}
        raise TypeError(f"unsupported scalar {x!r}")

    def __add__(self, other):
        if not isinstance(other, (QuadScalar, int, Fraction)):
            return NotImplemented
        c = dict(self._c)
        for m, x in self._coords(other).items():
            c[m] = c.get(m, 0) + x
        return _simplify(c)

    __radd__ = __add__

    def __neg__(self):
        return _simplify({m: -x for m, x in self._c.items()})

    def __sub__(self, other):
        if not isinstance(other, (QuadScalar, int, Fraction)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, (QuadScalar, int, Fraction)):
            return NotImplemented
        c: Dict[int, Fraction] = {}
        for a, x in self._c.items():
            for b, y in self._coords(other).items():
                m = a ^ b
                c[m] = c.get(m, 0) + x * y * _overlap(a, b)
        return _simplify(c)

    __rmul__ = __mul__

    def conjugate(self, bit: int) -> Number:
        """Apply the Galois automorphism negating ``sqrt(RADICANDS[bit])``."""
        return _simplify({m: (-x if m >> bit & 1 else x) for m, x in self._c.items()})

    def norm(self) -> Fraction:
        """Product of all eight Galois conjugates (a rational number)."""
        value: Number = self
        for bit in range(len(RADICANDS)):
            # x * conj(x) is fixed by the automorphism, so the bit drops out
            value = value * (value.conjugate(bit) if isinstance(value, QuadScalar) else value)
        if isinstance(value, QuadScalar):
            raise ArithmeticError("norm did not descend to Q")
        return Fraction(value)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return _simplify({m: x / other for m, x in self._c.items()})
        return NotImplemented

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, QuadScalar):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == ({0: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if set(self._c) <= {0}:
                self._hash = hash(self._c.get(0, 0))
            else:
                self._hash = hash(tuple(sorted(self._c.items())))
        return self._hash

    def sign(self) -> int:
        return sign(self)

    def __lt__(self, other):
        return sign(self - other) < 0

    def __gt__(self, other):
        return sign(self - other) > 0

    def __le__(self, other):
        return sign(self - other) <= 0

    def __ge__(self, other):
        return sign(self - other) >= 0

    def __float__(self):
        return float(sum(float(x) * _RADICAND_OF[m] ** 0.5 for m, x in self._c.items()))

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for m, x in sorted(self._c.items()):
            name = _BASIS_NAMES[m]
            if not name:
                parts.append(str(x))
            elif x == 1:
                parts.append(name)
            elif x == -1:
                parts.append("-" + name)
            else:
                parts.append(f"{x}*{name}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"QuadScalar({self})"


def _simplify(coords: Dict[int, Fraction]) -> Number:
    c = {m: x for m, x in coords.items() if x}
    if set(c) <= {0}:
        x = c.get(0, Fraction(0))
        return int(x) if x.denominator == 1 else x
    obj = QuadScalar.__new__(QuadScalar)
    obj._c = c
    obj._hash = None
    return obj


def sqrt_int(d: int) -> Number:
    """Exact ``sqrt(d)`` for ``d`` a squarefree product of RADICANDS."""
    if d not in _MASK_OF:
        raise ValueError(f"sqrt({d}) is outside Q(sqrt2, sqrt3, sqrt5)")
    return _simplify({_MASK_OF[d]: Fraction(1)})


def _sqrt_bounds(d: int, bits: int):
    """Rational ``lo <= sqrt(d) <= hi`` with ``hi - lo = 2^-bits``."""
    scale = 1 << bits
    r = isqrt(d * scale * scale)
    if r * r == d * scale * scale:
        return Fraction(r, scale), Fraction(r, scale)
    return Fraction(r, scale), Fraction(r + 1, scale)


def sign(x: Number) -> int:
    """Exact sign of an int, Fraction or QuadScalar."""
    if not isinstance(x, QuadScalar):
        return (x > 0) - (x < 0)
    if not x._c:
        return 0
    # nonzero by linear independence of the radicals, so refinement terminates
    bits = 16
    while True:
        lo = hi = Fraction(0)
        for m, c in x._c.items():
            a, b = _sqrt_bounds(_RADICAND_OF[m], bits)
            if c > 0:
                lo += c * a
                hi += c * b
            else:
                lo += c * b
                hi += c * a
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits *= 2


_TWO_COS = {
    2: 0,
    3: 1,
    4: sqrt_int(2),
    5: QuadScalar.from_radicals({1: Fraction(1, 2), 5: Fraction(1, 2)}),
    6: sqrt_int(3),
}


def two_cos_pi_over(m) -> Number:
    """``2 cos(pi/m)`` for m in {1,...,6, inf}; ``m = inf`` gives 2."""
    import math

    if m == math.inf:
        return 2
    if m == 1:
        return -2
    if m not in _TWO_COS:
        raise ValueError(f"2cos(pi/{m}) is outside Q(sqrt2, sqrt3, sqrt5)")
    return _TWO_COS[m]
