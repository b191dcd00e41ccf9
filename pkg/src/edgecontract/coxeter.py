"""Reflection representations, group elements, lengths and roots.

A :class:`CoxeterGroup` fixes a system and a matrix ``K`` and realizes
``W_S`` inside ``GL(V_S)`` through ``sigma_s(alpha_t) = alpha_t + k_{s,t} alpha_s``.
Group elements are interned by their matrix, so equality is matrix equality
and every per-element quantity (reduced word, descents, length) is cached
once per group.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .errors import BudgetExceeded, SystemMismatch, UnsupportedBond
from .scalars.quad import QuadScalar, sign, two_cos_pi_over
from .systems import INF, CoxeterSystem, Edge

__all__ = [
    "SYMMETRIC",
    "CRYSTALLOGRAPHIC",
    "KMatrix",
    "build_K",
    "contracted_K",
    "check_K",
    "CoxeterGroup",
    "GroupElement",
    "Root",
    "DEFAULT_BUDGET",
]

SYMMETRIC = "symmetric"
CRYSTALLOGRAPHIC = "crystallographic"
DEFAULT_BUDGET = 10**6

_CRYSTAL_PAIRS = {2: (0, 0), 3: (1, 1), 4: (1, 2), 6: (1, 3), INF: (2, 2)}
# exact 4cos^2(pi/m)
_FOUR_COS_SQ = {2: 0, 3: 1, 4: 2, 5: QuadScalar.from_radicals({1: Fraction(3, 2), 5: Fraction(1, 2)}), 6: 3}


@dataclass(frozen=True)
class KMatrix:
    """The matrix ``K = (k_{s,t})`` defining the reflection representation."""

    generators: Tuple[str, ...]
    entries: Tuple[tuple, ...]
    mode: str

    def k(self, i: int, j: int):
        return self.entries[i][j]

    def is_integral(self) -> bool:
        return all(isinstance(x, int) for row in self.entries for x in row)


def build_K(system: CoxeterSystem, mode: str = SYMMETRIC) -> KMatrix:
    """``2cos(pi/m)`` entries (symmetric) or integer Cartan-style pairs.

    In crystallographic mode the larger value of an asymmetric pair sits on
    the later generator: ``k_{later, earlier} >= k_{earlier, later}``.
    """
    n = system.rank
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            m = system.matrix[i][j]
            if i == j:
                rows[i][j] = -2
            elif mode == SYMMETRIC:
                if m not in (2, 3, 4, 5, 6, INF):
                    raise UnsupportedBond(f"m = {m} has no exact symmetric K entry")
                rows[i][j] = two_cos_pi_over(m)
            elif mode == CRYSTALLOGRAPHIC:
                if m not in _CRYSTAL_PAIRS:
                    raise UnsupportedBond(f"m = {m} is not crystallographic")
                small, large = _CRYSTAL_PAIRS[m]
                rows[i][j] = large if i > j else small
            else:
                raise ValueError(f"unknown K mode {mode!r}")
    return KMatrix(system.generators, tuple(tuple(r) for r in rows), mode)


def contracted_K(K: KMatrix, system: CoxeterSystem, e: Edge, contracted: CoxeterSystem) -> KMatrix:
    """The sum-rule matrix for ``S/e``: ``k~_{s,s0} = k_{s,s+} + k_{s,s-}`` etc."""
    ip, im = system.index(e.plus), system.index(e.minus)
    i0 = _s0_position(system, e)
    old = [i for i in range(system.rank) if i != im]
    n = len(old)
    rows = [[0] * n for _ in range(n)]
    for a, i in enumerate(old):
        for b, j in enumerate(old):
            if a == b:
                rows[a][b] = -2
            elif a == i0:
                rows[a][b] = K.k(ip, j) + K.k(im, j)
            elif b == i0:
                rows[a][b] = K.k(i, ip) + K.k(i, im)
            else:
                rows[a][b] = K.k(i, j)
    return KMatrix(contracted.generators, tuple(tuple(r) for r in rows), K.mode)


def _s0_position(system: CoxeterSystem, e: Edge) -> int:
    ip, im = system.index(e.plus), system.index(e.minus)
    return ip if ip < im else ip - 1


def check_K(K: KMatrix, system: CoxeterSystem) -> List[str]:
    """Violations of the five defining conditions on ``K`` (empty if valid)."""
    bad = []
    n = system.rank
    for i in range(n):
        if K.k(i, i) != -2:
            bad.append(f"k({i},{i}) != -2")
        for j in range(n):
            if i == j:
                continue
            m = system.matrix[i][j]
            kij, kji = K.k(i, j), K.k(j, i)
            if m == 2:
                if kij != 0:
                    bad.append(f"k({i},{j}) != 0 for m=2")
            elif sign(kij) <= 0:
                bad.append(f"k({i},{j}) <= 0 for m={m}")
            if m == INF:
                if sign(kij * kji - 4) < 0:
                    bad.append(f"k({i},{j})k({j},{i}) < 4 for m=inf")
            elif m in _FOUR_COS_SQ:
                if kij * kji != _FOUR_COS_SQ[m]:
                    bad.append(f"k({i},{j})k({j},{i}) != 4cos^2(pi/{m})")
            else:
                bad.append(f"m={m} cannot be checked exactly")
    return bad


def _matmul(A, B):
    n = len(B[0])
    out = []
    for row in A:
        nz = [(t, x) for t, x in enumerate(row) if x != 0]
        out.append(tuple(sum(x * B[t][j] for t, x in nz) if nz else 0 for j in range(n)))
    return tuple(out)


def _matvec(A, vec):
    return tuple(sum(a * x for a, x in zip(row, vec) if x != 0 and a != 0) for row in A)


class GroupElement:
    """An element of ``W_S`` realized as a matrix in the basis ``alpha_s``.

    Construct through :class:`CoxeterGroup`; instances are interned, so two
    elements are equal iff their matrices are equal.
    """

    __slots__ = ("group", "matrix", "inverse_matrix", "_hash", "__weakref__")

    def __init__(self, group, matrix, inverse_matrix):
        self.group = group
        self.matrix = matrix
        self.inverse_matrix = inverse_matrix
        self._hash = hash(matrix)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.group is other.group and self.matrix == other.matrix

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return self.group.multiply(self, other)

    def inverse(self) -> "GroupElement":
        return self.group.intern(self.inverse_matrix, self.matrix)

    def __call__(self, vector: Sequence) -> tuple:
        """Coordinates of ``w(vector)``."""
        return _matvec(self.matrix, tuple(vector))

    def word(self) -> Tuple[str, ...]:
        return self.group.normal_form(self)

    def length(self) -> int:
        return len(self.group.normal_form(self))

    def is_identity(self) -> bool:
        return self is self.group.identity

    def __repr__(self):
        return "e" if not self.word() else "*".join(self.word())


@dataclass(frozen=True)
class Root:
    vector: tuple
    positive: bool


class CoxeterGroup:
    """``W_S`` acting on ``V_S`` through a fixed matrix ``K``."""

    def __init__(self, system: CoxeterSystem, K: Optional[KMatrix] = None, mode: str = SYMMETRIC):
        self.system = system
        self.K = K if K is not None else build_K(system, mode)
        if self.K.generators != system.generators:
            raise SystemMismatch("K is indexed by different generators")
        self.rank = system.rank
        self.generators = system.generators
        self._elements: Dict[tuple, GroupElement] = {}
        self._words: Dict[GroupElement, Tuple[str, ...]] = {}
        self._right: Dict[Tuple[GroupElement, int], GroupElement] = {}
        self._left: Dict[Tuple[GroupElement, int], GroupElement] = {}
        n = self.rank
        ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        self.identity = self.intern(ident, ident)
        self._gens = []
        for s in range(n):
            rows = [list(r) for r in ident]
            for t in range(n):
                rows[s][t] = ident[s][t] + self.K.k(s, t)
            mat = tuple(tuple(r) for r in rows)
            self._gens.append(self.intern(mat, mat))

    # -- construction ----------------------------------------------------

    def intern(self, matrix, inverse_matrix) -> GroupElement:
        el = self._elements.get(matrix)
        if el is None:
            el = GroupElement(self, matrix, inverse_matrix)
            self._elements[matrix] = el
        return el

    def gen(self, s) -> GroupElement:
        return self._gens[s if isinstance(s, int) else self.system.index(s)]

    def from_word(self, word: Iterable) -> GroupElement:
        w = self.identity
        for s in word:
            w = self.right_gen(w, s if isinstance(s, int) else self.system.index(s))
        return w

    def _check(self, x: GroupElement):
        if x.group is not self:
            raise SystemMismatch("element belongs to a different group")

    def multiply(self, x: GroupElement, y: GroupElement) -> GroupElement:
        self._check(x)
        self._check(y)
        if x is self.identity:
            return y
        if y is self.identity:
            return x
        return self.intern(_matmul(x.matrix, y.matrix), _matmul(y.inverse_matrix, x.inverse_matrix))

    def right_gen(self, x: GroupElement, s: int) -> GroupElement:
        """``x * s`` (cached)."""
        key = (x, s)
        out = self._right.get(key)
        if out is None:
            g = self._gens[s]
            out = self.intern(_matmul(x.matrix, g.matrix), _matmul(g.matrix, x.inverse_matrix))
            self._right[key] = out
        return out

    def left_gen(self, s: int, x: GroupElement) -> GroupElement:
        """``s * x`` (cached)."""
        key = (x, s)
        out = self._left.get(key)
        if out is None:
            g = self._gens[s]
            out = self.intern(_matmul(g.matrix, x.matrix), _matmul(x.inverse_matrix, g.matrix))
            self._left[key] = out
        return out

    def power(self, x: GroupElement, n: int) -> GroupElement:
        out = self.identity
        for _ in range(n):
            out = self.multiply(out, x)
        return out

    # -- descents and lengths --------------------------------------------

    @staticmethod
    def _column_sign(matrix, s: int) -> int:
        for row in matrix:
            x = row[s]
            if x != 0:
                return sign(x)
        return 0

    def is_right_descent(self, x: GroupElement, s: int) -> bool:
        """``l(xs) < l(x)`` iff ``x(alpha_s)`` is negative."""
        return self._column_sign(x.matrix, s) < 0

    def is_left_descent(self, s: int, x: GroupElement) -> bool:
        """``l(sx) < l(x)`` iff ``x^-1(alpha_s)`` is negative."""
        return self._column_sign(x.inverse_matrix, s) < 0

    def right_descents(self, x: GroupElement) -> FrozenSet[str]:
        return frozenset(self.generators[s] for s in range(self.rank) if self.is_right_descent(x, s))

    def left_descents(self, x: GroupElement) -> FrozenSet[str]:
        return frozenset(self.generators[s] for s in range(self.rank) if self.is_left_descent(s, x))

    def normal_form(self, x: GroupElement) -> Tuple[str, ...]:
        """Lexicographically smallest reduced word (greedy smallest left descent)."""
        self._check(x)
        cached = self._words.get(x)
        if cached is not None:
            return cached
        path = []
        cur = x
        while cur is not self.identity and cur not in self._words:
            s = next(s for s in range(self.rank) if self.is_left_descent(s, cur))
            path.append((cur, s))
            cur = self.left_gen(s, cur)
        tail = self._words.get(cur, ())
        for el, s in reversed(path):
            tail = (self.generators[s],) + tail
            self._words[el] = tail
        return self._words.get(x, ())

    def word_indices(self, x: GroupElement) -> Tuple[int, ...]:
        return tuple(self.system.index(s) for s in self.normal_form(x))

    def length(self, x: GroupElement) -> int:
        return len(self.normal_form(x))

    def length_and_descents(self, x: GroupElement):
        return self.length(x), self.left_descents(x), self.right_descents(x)

    # -- enumeration -----------------------------------------------------

    def ball(self, L: int, budget: int = DEFAULT_BUDGET) -> List[GroupElement]:
        """All elements of length ``<= L`` in BFS order (ties by generator order)."""
        if L < 0:
            raise ValueError("L must be >= 0")
        seen: Set[GroupElement] = {self.identity}
        out = [self.identity]
        frontier = [self.identity]
        for _ in range(L):
            nxt = []
            for w in frontier:
                for s in range(self.rank):
                    u = self.right_gen(w, s)
                    if u not in seen:
                        seen.add(u)
                        nxt.append(u)
                        if len(seen) > budget:
                            raise BudgetExceeded(f"ball exceeded {budget} elements")
            if not nxt:
                break
            out.extend(nxt)
            frontier = nxt
        return out

    def parabolic_ball(self, subset: Sequence[str], L: int) -> List[GroupElement]:
        """Elements of the parabolic subgroup ``W_subset`` of length ``<= L``."""
        idx = [self.system.index(s) for s in subset]
        seen = {self.identity}
        out = [self.identity]
        frontier = [self.identity]
        for _ in range(L):
            nxt = []
            for w in frontier:
                for s in idx:
                    u = self.right_gen(w, s)
                    if u not in seen:
                        seen.add(u)
                        nxt.append(u)
            out.extend(nxt)
            frontier = nxt
        return out

    def simple_root(self, s) -> tuple:
        i = s if isinstance(s, int) else self.system.index(s)
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def roots(self, bound: int = 10_000) -> List[Root]:
        """Closure of the simple roots under all ``sigma_s`` (at most ``bound`` roots)."""
        start = [self.simple_root(s) for s in range(self.rank)]
        seen = set(start)
        queue = deque(start)
        while queue:
            vec = queue.popleft()
            for s in range(self.rank):
                u = _matvec(self._gens[s].matrix, vec)
                if u not in seen:
                    seen.add(u)
                    if len(seen) > bound:
                        raise BudgetExceeded(f"more than {bound} roots")
                    queue.append(u)
        out = []
        for vec in sorted(seen, key=_root_key):
            signs = {sign(x) for x in vec if x != 0}
            if len(signs) != 1:
                raise ArithmeticError(f"root {vec} is neither positive nor negative")
            out.append(Root(vec, signs == {1}))
        return out

    def positive_roots(self, bound: int = 10_000) -> List[tuple]:
        return [r.vector for r in self.roots(bound) if r.positive]


def _root_key(vec):
    return tuple(str(x) for x in vec)
