"""Tensor space ``V_n^{(x)d}`` as a ``U_n``-``H_d`` bimodule and the edge-contraction maps.

Basis words ``[r_1, ..., r_d]`` with letters in ``1..n``.  ``U_n`` acts on the
left through the coproduct, ``H_d`` on the right by the usual three-case rule.
``U_n`` is only ever represented through these actions: an
:class:`OperatorRecipe` is a linear combination of products of primitive
operators and is evaluated on tensors.
"""
from __future__ import annotations

import itertools
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import IndexOutOfRange
from .hecke import HeckeEmbedding
from .embedding import Contraction
from .linear import Element, Parent, accumulate
from .report import Report
from .scalars.laurent import LaurentPoly, q, v
from .systems import Edge, type_A

__all__ = [
    "TensorSpace",
    "space",
    "OperatorRecipe",
    "act_E",
    "act_F",
    "act_K",
    "act_T",
    "act_T_inv",
    "phi_epsilon",
    "phi_T",
    "phi_T1",
    "phi_v_recipe",
    "check_U_relations",
    "check_H_relations",
    "check_bimodule",
    "check_prop_U",
    "check_prop_H",
    "check_comm",
    "verify_duality",
    "admissible_iplus",
]

Word = Tuple[int, ...]


class TensorSpace(Parent):
    """``T_{n,d}``; elements are maps ``word -> LaurentPoly``."""

    def __init__(self, n: int, d: int):
        if n < 1 or d < 1:
            raise IndexOutOfRange("tensor space needs n >= 1 and d >= 1")
        self.n = n
        self.d = d

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.n, self.d)

    def word(self, letters: Sequence[int], coeff=1) -> Element:
        w = tuple(letters)
        if len(w) != self.d or any(not 1 <= r <= self.n for r in w):
            raise IndexOutOfRange(f"{list(w)} is not a basis word of T_{{{self.n},{self.d}}}")
        return self.monomial(w, coeff)

    def basis(self) -> List[Word]:
        return list(itertools.product(range(1, self.n + 1), repeat=self.d))

    def multiply(self, a, b):
        raise TypeError("tensor space elements cannot be multiplied")

    def render_key(self, key) -> str:
        return "[" + ",".join(map(str, key)) + "]"

    def __eq__(self, other):
        return isinstance(other, TensorSpace) and self.shape == other.shape

    def __hash__(self):
        return hash(("T", self.n, self.d))


_SPACES: Dict[Tuple[int, int], TensorSpace] = {}


def space(n: int, d: int) -> TensorSpace:
    sp = _SPACES.get((n, d))
    if sp is None:
        sp = _SPACES[(n, d)] = TensorSpace(n, d)
    return sp


def _linear(x: Element, on_word: Callable[[Word], Iterable[Tuple[Word, LaurentPoly]]]) -> Element:
    out: Dict = {}
    for w, c in x.terms.items():
        for u, d in on_word(w):
            accumulate(out, u, c * d)
    return Element(x.parent, out)


def _check_u_index(x: Element, i: int) -> None:
    if not 1 <= i <= x.parent.n - 1:
        raise IndexOutOfRange(f"U_{x.parent.n} has no generator with index {i}")


def act_E(i: int, x: Element) -> Element:
    _check_u_index(x, i)

    def on_word(w):
        for p, r in enumerate(w):
            if r == i + 1:
                later = w[p + 1:]
                e = later.count(i) - later.count(i + 1)
                yield w[:p] + (r - 1,) + w[p + 1:], LaurentPoly.monomial(e)

    return _linear(x, on_word)


def act_F(i: int, x: Element) -> Element:
    _check_u_index(x, i)

    def on_word(w):
        for p, r in enumerate(w):
            if r == i:
                earlier = w[:p]
                e = earlier.count(i + 1) - earlier.count(i)
                yield w[:p] + (r + 1,) + w[p + 1:], LaurentPoly.monomial(e)

    return _linear(x, on_word)


def act_K(i: int, x: Element, power: int = 1) -> Element:
    _check_u_index(x, i)

    def on_word(w):
        yield w, LaurentPoly.monomial(power * (w.count(i) - w.count(i + 1)))

    return _linear(x, on_word)


def act_T(i: int, x: Element) -> Element:
    """Right action ``x . T_i``."""
    if not 1 <= i <= x.parent.d - 1:
        raise IndexOutOfRange(f"H_{x.parent.d} has no generator T_{i}")

    def on_word(w):
        a, b = w[i - 1], w[i]
        swapped = w[:i - 1] + (b, a) + w[i + 1:]
        if a < b:
            yield swapped, LaurentPoly(1)
        elif a == b:
            yield w, v
        else:
            yield w, q
            yield swapped, LaurentPoly(1)

    return _linear(x, on_word)


def act_T_inv(i: int, x: Element) -> Element:
    """``x . T_i^{-1}`` with ``T_i^{-1} = T_i - (v - v^{-1})``."""
    return act_T(i, x) - x.scale(q)


_PRIMITIVES = {
    "E": lambda i, x: act_E(i, x),
    "F": lambda i, x: act_F(i, x),
    "K": lambda i, x: act_K(i, x, 1),
    "Kinv": lambda i, x: act_K(i, x, -1),
    "T": lambda i, x: act_T(i, x),
    "Tinv": lambda i, x: act_T_inv(i, x),
}
_LEFT = {"E", "F", "K", "Kinv"}


class OperatorRecipe:
    """A linear combination of products of primitive actions.

    Products are stored in algebra order.  Left (``U``) products act
    right-to-left on a tensor, right (``H``) products act left-to-right.
    """

    def __init__(self, terms: Sequence[Tuple[LaurentPoly, Tuple[Tuple[str, int], ...]]], side: str = "left"):
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        self.side = side
        self.terms = [(LaurentPoly(c) if not isinstance(c, LaurentPoly) else c, tuple(m)) for c, m in terms]

    @classmethod
    def one(cls, side: str = "left") -> "OperatorRecipe":
        return cls([(LaurentPoly(1), ())], side)

    @classmethod
    def prim(cls, kind: str, i: int) -> "OperatorRecipe":
        if kind not in _PRIMITIVES:
            raise ValueError(f"unknown primitive {kind}")
        return cls([(LaurentPoly(1), ((kind, i),))], "left" if kind in _LEFT else "right")

    def _same_side(self, other: "OperatorRecipe") -> None:
        if self.side != other.side:
            raise ValueError("cannot combine left and right operators")

    def __add__(self, other: "OperatorRecipe") -> "OperatorRecipe":
        self._same_side(other)
        return OperatorRecipe(self.terms + other.terms, self.side)

    def __sub__(self, other: "OperatorRecipe") -> "OperatorRecipe":
        return self + other.scale(-1)

    def scale(self, c) -> "OperatorRecipe":
        return OperatorRecipe([(LaurentPoly(c) * k if not isinstance(c, LaurentPoly) else c * k, m)
                               for k, m in self.terms], self.side)

    def __mul__(self, other: "OperatorRecipe") -> "OperatorRecipe":
        self._same_side(other)
        return OperatorRecipe([(a * b, m1 + m2) for a, m1 in self.terms for b, m2 in other.terms], self.side)

    def apply(self, x: Element) -> Element:
        out = x.parent.zero()
        for c, m in self.terms:
            y = x
            for kind, i in (reversed(m) if self.side == "left" else m):
                y = _PRIMITIVES[kind](i, y)
            out = out + y.scale(c)
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for c, m in self.terms:
            word = "*".join(f"{k}{i}" for k, i in m) or "1"
            parts.append(f"({c}) {word}")
        return " + ".join(parts)


E = lambda i: OperatorRecipe.prim("E", i)  # noqa: E731
F = lambda i: OperatorRecipe.prim("F", i)  # noqa: E731
K = lambda i: OperatorRecipe.prim("K", i)  # noqa: E731
Kinv = lambda i: OperatorRecipe.prim("Kinv", i)  # noqa: E731
T = lambda i: OperatorRecipe.prim("T", i)  # noqa: E731
Tinv = lambda i: OperatorRecipe.prim("Tinv", i)  # noqa: E731


def phi_epsilon(kind: str, i: int, i_plus: int, epsilon: int) -> OperatorRecipe:
    """Image of the ``U_n`` generator ``kind_i`` under ``phi_eps: U_n -> U_{n+1}``."""
    if epsilon not in (1, -1):
        raise ValueError("epsilon must be +1 or -1")
    if i_plus < 1 or i < 1:
        raise IndexOutOfRange("indices start at 1")
    if i < i_plus:
        return OperatorRecipe.prim(kind, i)
    if i > i_plus:
        return OperatorRecipe.prim(kind, i + 1)
    if kind == "E":
        return E(i) * E(i + 1) - (E(i + 1) * E(i)).scale(LaurentPoly.monomial(epsilon))
    if kind == "F":
        return F(i + 1) * F(i) - (F(i) * F(i + 1)).scale(LaurentPoly.monomial(-epsilon))
    if kind == "K":
        return K(i) * K(i + 1)
    if kind == "Kinv":
        return Kinv(i) * Kinv(i + 1)
    raise ValueError(f"unknown U generator {kind}")


def _check_insertion(x: Element, i_plus: int) -> None:
    n, d = x.parent.shape
    if not 1 <= i_plus <= n - 1:
        raise IndexOutOfRange(f"i_+ = {i_plus} needs 1 <= i_+ <= n-1 = {n - 1}")
    if i_plus > d:
        raise IndexOutOfRange(f"cannot insert after position {i_plus} in a word of length {d}")


def _breve(r: int, i_plus: int) -> int:
    return r if r <= i_plus else r + 1


def phi_T(x: Element, i_plus: int, position: Optional[int] = None) -> Element:
    """Relabel ``r -> r`` (``r <= i_+``) or ``r + 1``, then insert ``i_- = i_+ + 1`` after position ``i_+``.

    ``position`` overrides the number of letters placed before the inserted one.
    """
    _check_insertion(x, i_plus)
    n, d = x.parent.shape
    pos = i_plus if position is None else position
    if not 0 <= pos <= d:
        raise IndexOutOfRange(f"insertion position {pos} outside 0..{d}")
    target = space(n + 1, d + 1)
    out: Dict = {}
    for w, c in x.terms.items():
        b = tuple(_breve(r, i_plus) for r in w)
        accumulate(out, b[:pos] + (i_plus + 1,) + b[pos:], c)
    return Element(target, out)


def phi_T1(x: Element, i_plus: int, relabel: bool = False) -> Element:
    """Insert ``n + 1`` after position ``i_+``.

    By default the letters are kept as they are.  ``relabel=True`` first applies
    the relabelling used by :func:`phi_T`; that variant is not compatible with
    the Hecke actions and is kept for comparison.
    """
    _check_insertion(x, i_plus)
    n, d = x.parent.shape
    target = space(n + 1, d + 1)
    out: Dict = {}
    for w, c in x.terms.items():
        b = tuple(_breve(r, i_plus) for r in w) if relabel else w
        accumulate(out, b[:i_plus] + (n + 1,) + b[i_plus:], c)
    return Element(target, out)


def phi_v_recipe(j: int, i_plus: int) -> OperatorRecipe:
    """``phi_v(T_j)`` for ``H_d -> H_{d+1}`` with the edge ``(i_+, i_+ + 1)``."""
    if j < i_plus:
        return T(j)
    if j == i_plus:
        return T(i_plus) * T(i_plus + 1) * Tinv(i_plus)
    return T(j + 1)


def _hecke_to_recipe(x: Element) -> OperatorRecipe:
    """A type-A Hecke element as a right operator (generator index ``g`` is ``T_{g+1}``)."""
    g = x.parent.group
    terms = [(c, tuple(("T", s + 1) for s in g.word_indices(w))) for w, c in x.terms.items()]
    return OperatorRecipe(terms, "right")


def phi_v_from_hecke(d: int, i_plus: int) -> List[OperatorRecipe]:
    """``phi_v(T_1), ..., phi_v(T_{d-1})`` taken from the finite Hecke embedding."""
    c = Contraction(type_A(d), Edge(str(i_plus), str(i_plus + 1)))
    emb = HeckeEmbedding(c)
    return [_hecke_to_recipe(img) for img in emb.morphism.images]


def admissible_iplus(n: int, d: int, square: str) -> List[int]:
    """``i_+`` values for which the ``U`` or ``H`` square is defined."""
    if square == "U":
        return list(range(1, min(n - 1, d) + 1))
    if square == "H":
        return list(range(1, min(n - 1, d - 1) + 1))
    raise ValueError("square must be 'U' or 'H'")


# -- checks ---------------------------------------------------------------


def _operator_identity(rep: Report, name: str, sp: TensorSpace, lhs: OperatorRecipe,
                       rhs: OperatorRecipe, **params) -> None:
    for w in sp.basis():
        x = sp.monomial(w)
        a, b = lhs.apply(x), rhs.apply(x)
        if a != b:
            rep.add(name, False, f"on {sp.render_key(w)}: {a} != {b}", **params)
            return
    rep.add(name, True, **params)


def check_U_relations(n: int, d: int) -> Report:
    """Every defining relation of ``U_n`` as an operator identity on ``T_{n,d}``."""
    sp = space(n, d)
    rep = Report()
    idx = range(1, n)
    one = OperatorRecipe.one()
    zero = OperatorRecipe([], "left")
    vv = v + LaurentPoly.monomial(-1)
    sh = {"n": n, "d": d}
    for i in idx:
        _operator_identity(rep, "U.K_inverse", sp, K(i) * Kinv(i), one, i=i, **sh)
        _operator_identity(rep, "U.K_inverse", sp, Kinv(i) * K(i), one, i=i, order="inv_first", **sh)
        for j in idx:
            _operator_identity(rep, "U.K_commute", sp, K(i) * K(j), K(j) * K(i), i=i, j=j, **sh)
            a = 2 * (i == j) - (i == j + 1) - (i == j - 1)
            _operator_identity(rep, "U.KE", sp, K(i) * E(j), (E(j) * K(i)).scale(LaurentPoly.monomial(a)),
                               i=i, j=j, **sh)
            _operator_identity(rep, "U.KF", sp, K(i) * F(j), (F(j) * K(i)).scale(LaurentPoly.monomial(-a)),
                               i=i, j=j, **sh)
            rhs = (K(i) - Kinv(i)) if i == j else zero
            _operator_identity(rep, "U.EF", sp, (E(i) * F(j) - F(j) * E(i)).scale(q), rhs, i=i, j=j, **sh)
            if abs(i - j) == 1:
                for name, X in (("U.serre_E", E), ("U.serre_F", F)):
                    lhs = X(i) * X(i) * X(j) - (X(i) * X(j) * X(i)).scale(vv) + X(j) * X(i) * X(i)
                    _operator_identity(rep, name, sp, lhs, zero, i=i, j=j, **sh)
            elif abs(i - j) > 1:
                _operator_identity(rep, "U.E_commute", sp, E(i) * E(j), E(j) * E(i), i=i, j=j, **sh)
                _operator_identity(rep, "U.F_commute", sp, F(i) * F(j), F(j) * F(i), i=i, j=j, **sh)
    return rep


def check_H_relations(n: int, d: int) -> Report:
    """Quadratic, inverse, braid and commuting relations of ``H_d`` acting on the right."""
    sp = space(n, d)
    rep = Report()
    one = OperatorRecipe.one("right")
    zero = OperatorRecipe([], "right")
    sh = {"n": n, "d": d}
    vinv = LaurentPoly.monomial(-1)
    for i in range(1, d):
        quad = (T(i) - one.scale(v)) * (T(i) + one.scale(vinv))
        _operator_identity(rep, "H.quadratic", sp, quad, zero, i=i, **sh)
        _operator_identity(rep, "H.inverse", sp, T(i) * Tinv(i), one, i=i, **sh)
        for j in range(i + 1, d):
            if j == i + 1:
                _operator_identity(rep, "H.braid", sp, T(i) * T(j) * T(i), T(j) * T(i) * T(j), i=i, j=j, **sh)
            else:
                _operator_identity(rep, "H.commute", sp, T(i) * T(j), T(j) * T(i), i=i, j=j, **sh)
    return rep


def check_bimodule(n: int, d: int) -> Report:
    """``u.(x.T_j) = (u.x).T_j`` for every ``U`` generator ``u``, every ``T_j`` and basis word ``x``."""
    sp = space(n, d)
    rep = Report()
    for kind in ("E", "F", "K", "Kinv"):
        for i in range(1, n):
            u = OperatorRecipe.prim(kind, i)
            for j in range(1, d):
                bad = None
                for w in sp.basis():
                    x = sp.monomial(w)
                    a = u.apply(act_T(j, x))
                    b = act_T(j, u.apply(x))
                    if a != b:
                        bad = f"on {sp.render_key(w)}: {a} != {b}"
                        break
                rep.add("bimodule.commute", bad is None, bad, generator=f"{kind}{i}", j=j, n=n, d=d)
    return rep


def check_prop_U(n: int, d: int, i_plus: int, epsilon: int) -> Report:
    """``phi_T(u.x) = phi_eps(u).phi_T(x)`` for every generator ``u`` and basis word ``x``.

    ``prop_U.square`` uses the insertion after position ``i_+``.  The
    ``prop_U.square_edge_insertion`` diagnostic repeats the sweep with ``i_-``
    inserted at the end (``epsilon = 1``) or at the start (``epsilon = -1``).
    """
    sp = space(n, d)
    rep = Report()
    edge_pos = d if epsilon == 1 else 0
    for name, pos in (("prop_U.square", None), ("prop_U.square_edge_insertion", edge_pos)):
        for kind in ("E", "F", "K", "Kinv"):
            for i in range(1, n):
                u = OperatorRecipe.prim(kind, i)
                img = phi_epsilon(kind, i, i_plus, epsilon)
                bad = None
                for w in sp.basis():
                    x = sp.monomial(w)
                    a = phi_T(u.apply(x), i_plus, pos)
                    b = img.apply(phi_T(x, i_plus, pos))
                    if a != b:
                        bad = f"on {sp.render_key(w)}: {a} != {b}"
                        break
                params = dict(generator=f"{kind}{i}", i_plus=i_plus, epsilon=epsilon, n=n, d=d)
                if pos is not None:
                    params["position"] = pos
                rep.add(name, bad is None, bad, **params)
    return rep


def check_prop_H(n: int, d: int, i_plus: int) -> Report:
    """``phi_T1(x.T_j) = phi_T1(x).phi_v(T_j)`` with ``phi_v`` from the formula and from the Hecke embedding.

    The relabelled reading of ``phi_T1`` is audited on the same squares.
    """
    sp = space(n, d)
    rep = Report()
    routes = {"formula": [phi_v_recipe(j, i_plus) for j in range(1, d)],
              "hecke": phi_v_from_hecke(d, i_plus)}
    for j in range(1, d):
        for route, images in routes.items():
            for relabel in (False, True):
                img = images[j - 1]
                bad = None
                for w in sp.basis():
                    x = sp.monomial(w)
                    a = phi_T1(act_T(j, x), i_plus, relabel)
                    b = img.apply(phi_T1(x, i_plus, relabel))
                    if a != b:
                        bad = f"on {sp.render_key(w)}: {a} != {b}"
                        break
                name = "prop_H.square_relabelled" if relabel else "prop_H.square"
                rep.add(name, bad is None, bad, j=j, route=route, i_plus=i_plus, n=n, d=d,
                        contracted_generator=(j == i_plus))
    for j in range(1, d):
        a, b = phi_v_recipe(j, i_plus), routes["hecke"][j - 1]
        bad = None
        big = space(n + 1, d + 1)
        for w in big.basis():
            x = big.monomial(w)
            if a.apply(x) != b.apply(x):
                bad = f"on {big.render_key(w)}"
                break
        rep.add("prop_H.routes_agree", bad is None, bad, j=j, i_plus=i_plus, n=n, d=d)
    rep.extend(check_comm(n, d, i_plus))
    return rep


def check_comm(n: int, d: int, i_plus: int) -> Report:
    """The three displayed identities for ``y . T_{i_+} T_{i_-} T_{i_+}^{-1}`` on every ``y`` in the image of ``phi_T1``."""
    sp = space(n, d)
    big = space(n + 1, d + 1)
    op = T(i_plus) * T(i_plus + 1) * Tinv(i_plus)
    a_pos, b_pos = i_plus - 1, i_plus + 1
    results: Dict[str, Optional[str]] = {"comm-1": None, "comm-2": None, "comm-3": None}
    seen = set()
    for w in sp.basis():
        y = phi_T1(sp.monomial(w), i_plus)
        (word,) = y.terms
        a, b = word[a_pos], word[b_pos]
        swapped = list(word)
        swapped[a_pos], swapped[b_pos] = b, a
        swap = big.monomial(tuple(swapped))
        if a < b:
            name, expected = "comm-1", swap
        elif a == b:
            name, expected = "comm-2", swap.scale(v)
        else:
            name, expected = "comm-3", y.scale(q) + swap
        seen.add(name)
        got = op.apply(y)
        if got != expected and results[name] is None:
            results[name] = f"on {big.render_key(word)}: {got} != {expected}"
    rep = Report()
    for name, bad in results.items():
        if name in seen:
            rep.add(name, bad is None, bad, i_plus=i_plus, n=n, d=d)
        else:
            rep.skip(name, "no basis word in this case", i_plus=i_plus, n=n, d=d)
    return rep


def verify_duality(n: int, d: int, i_plus: Optional[int] = None, epsilon: Optional[int] = None) -> Report:
    """All relation, bimodule and compatibility checks; ``None`` sweeps every admissible value."""
    if i_plus is not None and i_plus not in admissible_iplus(n, d, "U"):
        raise IndexOutOfRange(f"i_+ = {i_plus} is not admissible for n={n}, d={d}")
    rep = Report()
    rep.extend(check_U_relations(n, d))
    rep.extend(check_H_relations(n, d))
    rep.extend(check_bimodule(n, d))
    eps_values = (1, -1) if epsilon is None else (epsilon,)
    for ip in admissible_iplus(n, d, "U"):
        if i_plus is not None and ip != i_plus:
            continue
        for eps in eps_values:
            rep.extend(check_prop_U(n, d, ip, eps))
    for ip in admissible_iplus(n, d, "H"):
        if i_plus is not None and ip != i_plus:
            continue
        rep.extend(check_prop_H(n, d, ip))
    return rep
