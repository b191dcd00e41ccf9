"""Finite formal linear combinations with Laurent-polynomial coefficients.

Every algebra in the package (finite Hecke, extended affine, Bernstein-
Lusztig, theta, tensor space) stores elements as ``key -> LaurentPoly`` maps
and differs only in how two keys multiply.  A parent object supplies that
product plus key ordering and rendering.
"""
from __future__ import annotations

from typing import Dict, Iterable, Iterator, Tuple

from .errors import SystemMismatch
from .scalars.laurent import LaurentPoly

__all__ = ["Element", "Parent", "accumulate", "as_laurent"]


def as_laurent(c) -> LaurentPoly:
    return c if isinstance(c, LaurentPoly) else LaurentPoly(int(c))


def accumulate(target: Dict, key, coeff: LaurentPoly) -> None:
    """``target[key] += coeff``, dropping the key when it cancels."""
    if not coeff:
        return
    old = target.get(key)
    if old is None:
        target[key] = coeff
    else:
        new = old + coeff
        if new:
            target[key] = new
        else:
            del target[key]


class Parent:
    """Base class for algebras; subclasses implement :meth:`multiply`."""

    def element(self, terms=None) -> "Element":
        return Element(self, terms or {})

    def zero(self) -> "Element":
        return Element(self, {})

    def monomial(self, key, coeff=1) -> "Element":
        c = as_laurent(coeff)
        return Element(self, {key: c} if c else {})

    def multiply(self, a: "Element", b: "Element") -> "Element":
        raise NotImplementedError

    def sort_key(self, key):
        return key

    def render_key(self, key) -> str:
        return str(key)

    def sum(self, elements: Iterable["Element"]) -> "Element":
        out: Dict = {}
        for x in elements:
            for k, c in x.terms.items():
                accumulate(out, k, c)
        return Element(self, out)


class Element:
    """An immutable finite combination ``sum c_k [k]``."""

    __slots__ = ("parent", "terms", "_hash")

    def __init__(self, parent: Parent, terms: Dict):
        self.parent = parent
        self.terms = {k: as_laurent(c) for k, c in terms.items() if c}
        self._hash = None

    # -- structure -------------------------------------------------------

    def __iter__(self) -> Iterator[Tuple[object, LaurentPoly]]:
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, key) -> LaurentPoly:
        return self.terms.get(key, LaurentPoly(0))

    def support(self):
        return sorted(self.terms, key=self.parent.sort_key)

    def map_coefficients(self, f) -> "Element":
        return Element(self.parent, {k: f(c) for k, c in self.terms.items()})

    # -- arithmetic ------------------------------------------------------

    def _same(self, other: "Element"):
        if other.parent is not self.parent:
            raise SystemMismatch("elements live in different algebras")

    def _coerce(self, other):
        if isinstance(other, Element):
            self._same(other)
            return other
        if isinstance(other, (int, LaurentPoly)):
            return self.parent.one() * as_laurent(other) if other else self.parent.zero()
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            accumulate(out, k, c)
        return Element(self.parent, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.parent, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Element":
        c = as_laurent(c)
        if not c:
            return self.parent.zero()
        return Element(self.parent, {k: x * c for k, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        if isinstance(other, Element):
            self._same(other)
            return self.parent.multiply(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers need an explicit inverse")
        out = self.parent.one()
        for _ in range(n):
            out = out * self
        return out

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.parent is other.parent and self.terms == other.terms
        if isinstance(other, (int, LaurentPoly)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"({c}) {self.parent.render_key(k)}" for k, c in
            ((k, self.terms[k]) for k in self.support())
        )

    __repr__ = __str__
