"""Iwahori-Hecke algebras with unequal parameters and the embedding ``phi_v``.

Elements are finite maps ``GroupElement -> LaurentPoly`` in the ``T_w`` basis,
so ``T_w`` does not depend on a choice of reduced word by construction.
Multiplication by a generator on the right uses

    T_w T_s = T_{ws}                               if l(ws) > l(w)
    T_w T_s = T_{ws} + (v_s - v_s^{-1}) T_w         otherwise,

with ``v_s = v^{L(s)}``.
"""
from __future__ import annotations

import re
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .coxeter import CoxeterGroup, GroupElement
from .embedding import BranchData, Contraction, _word_text
from .errors import NoBranch, RelationError, SystemMismatch, WeightMismatch
from .linear import Element, Parent, accumulate, as_laurent
from .report import Report
from .scalars.laurent import LaurentPoly, parse_laurent
from .scalars.rank import rank_over_fraction_field
from .systems import INF, BranchSequence, CoxeterSystem, Edge, find_linear_branch

__all__ = [
    "HeckeAlgebra",
    "HeckeMorphism",
    "phi_v_morphism",
    "specialize_v1",
    "verify_hecke_relations",
    "verify_phi_v",
    "HeckeEmbedding",
    "image_matrix",
    "group_ring_product",
    "quadratic_defect",
    "verify_specialization",
    "verify_injectivity",
    "verify_branch_diagram_hecke",
    "tau_v",
    "parse_hecke_expression",
]


class HeckeAlgebra(Parent):
    """``H_S`` over ``Z[v, v^-1]`` for a fixed realization of ``W_S``."""

    def __init__(self, group: CoxeterGroup):
        self.group = group
        self.system = group.system
        self.params = [LaurentPoly.monomial(w) for w in self.system.weights]
        self.gaps = [LaurentPoly({w: 1, -w: -1}) for w in self.system.weights]

    # -- constructors ----------------------------------------------------

    def one(self) -> Element:
        return self.monomial(self.group.identity)

    def T(self, w: GroupElement) -> Element:
        if w.group is not self.group:
            raise SystemMismatch("group element from another group")
        return self.monomial(w)

    def _index(self, s) -> int:
        return s if isinstance(s, int) else self.system.index(s)

    def gen(self, s) -> Element:
        return self.monomial(self.group.gen(self._index(s)))

    def inv_gen(self, s) -> Element:
        """``T_s^{-1} = T_s + (v_s^{-1} - v_s)``."""
        i = self._index(s)
        return self.gen(i) - self.one().scale(self.gaps[i])

    def T_word(self, word: Iterable) -> Element:
        """``T_{s_1} ... T_{s_k}`` for an arbitrary word."""
        x = self.one()
        for s in word:
            x = self.right_gen(x, self._index(s))
        return x

    def signed_word(self, letters: Iterable[Tuple[object, int]]) -> Element:
        """Product of ``T_s^{+-1}`` for ``(s, +-1)`` pairs."""
        x = self.one()
        for s, e in letters:
            i = self._index(s)
            x = self.right_gen(x, i) if e > 0 else self.right_inv_gen(x, i)
        return x

    def v_s(self, s) -> LaurentPoly:
        return self.params[self._index(s)]

    # -- multiplication --------------------------------------------------

    def right_gen_terms(self, terms: Mapping, s: int, key=lambda k: k, rebuild=lambda k, w: w) -> Dict:
        """``(sum c_k T_{w_k}) T_s`` where ``key`` extracts the group element.

        ``rebuild(k, w')`` forms the new key; this lets algebras whose keys pair
        a group element with extra data (lattice monomials) reuse the rule.
        """
        g = self.group
        gap = self.gaps[s]
        out: Dict = {}
        for k, c in terms.items():
            w = key(k)
            ws = g.right_gen(w, s)
            accumulate(out, rebuild(k, ws), c)
            if g.is_right_descent(w, s):
                accumulate(out, k, c * gap)
        return out

    def right_gen(self, x: Element, s: int) -> Element:
        return Element(self, self.right_gen_terms(x.terms, s))

    def right_inv_gen(self, x: Element, s: int) -> Element:
        out = self.right_gen_terms(x.terms, s)
        gap = self.gaps[s]
        for k, c in x.terms.items():
            accumulate(out, k, -(c * gap))
        return Element(self, out)

    def multiply(self, a: Element, b: Element) -> Element:
        result: Dict = {}
        for u, d in b.terms.items():
            terms = a.terms
            for s in self.group.word_indices(u):
                terms = self.right_gen_terms(terms, s)
            for k, c in terms.items():
                accumulate(result, k, c * d)
        return Element(self, result)

    # -- presentation ----------------------------------------------------

    def sort_key(self, w: GroupElement):
        word = self.group.normal_form(w)
        return (len(word), word)

    def render_key(self, w: GroupElement) -> str:
        return "T[" + ",".join(self.group.normal_form(w)) + "]"


def specialize_v1(x: Element) -> Dict[GroupElement, int]:
    """Coefficientwise ``v -> 1``: an element of the integral group ring."""
    out = {}
    for w, c in x.terms.items():
        n = c.eval_at_one()
        if n:
            out[w] = n
    return out


def group_ring_product(a: Mapping[GroupElement, int], b: Mapping[GroupElement, int]) -> Dict:
    out: Dict = {}
    for x, c in a.items():
        for y, d in b.items():
            xy = x * y
            out[xy] = out.get(xy, 0) + c * d
            if out[xy] == 0:
                del out[xy]
    return out


class HeckeMorphism:
    """An algebra map given by the images of the source generators.

    With ``check=True`` every image must satisfy the quadratic relation of its
    source generator; otherwise :class:`RelationError` is raised.
    """

    def __init__(self, source: HeckeAlgebra, target: HeckeAlgebra, images: Sequence[Element],
                 check: bool = True):
        if len(images) != source.system.rank:
            raise SystemMismatch("one image per source generator is required")
        self.source = source
        self.target = target
        self.images = list(images)
        self._cache: Dict[GroupElement, Element] = {source.group.identity: target.one()}
        if check:
            for s, img in enumerate(self.images):
                bad = quadratic_defect(img, source.params[s])
                if bad:
                    raise RelationError(
                        f"image of T_{source.system.generators[s]} violates the quadratic relation: {bad}"
                    )

    def on_basis(self, w: GroupElement) -> Element:
        out = self._cache.get(w)
        if out is not None:
            return out
        g = self.source.group
        word = g.word_indices(w)
        prefix = g.identity
        img = self.target.one()
        for s in word:
            prefix = g.right_gen(prefix, s)
            cached = self._cache.get(prefix)
            if cached is None:
                cached = img * self.images[s]
                self._cache[prefix] = cached
            img = cached
        return img

    def __call__(self, x: Element) -> Element:
        if x.parent is not self.source:
            raise SystemMismatch("element is not in the source algebra")
        out: Dict = {}
        for w, c in x.terms.items():
            for k, d in self.on_basis(w).terms.items():
                accumulate(out, k, c * d)
        return Element(self.target, out)


def quadratic_defect(x: Element, param: LaurentPoly) -> Optional[Element]:
    """``(x - p)(x + p^{-1})`` or ``None`` when it vanishes."""
    one = x.parent.one()
    inv = LaurentPoly({-e: c for e, c in param.coeffs.items()})
    val = (x - one.scale(param)) * (x + one.scale(inv))
    return val if val else None


class HeckeEmbedding:
    """``phi_v: H_{S/e} -> H_S`` together with the underlying contraction."""

    def __init__(self, c: Contraction, check: bool = True, images: Optional[Sequence[Element]] = None):
        self.c = c
        ip, im = c.ip, c.im
        if c.system.weights[ip] != c.system.weights[im] or c.contracted.weights[c.s0] != c.system.weights[ip]:
            raise WeightMismatch("L(s_0), L(s_+) and L(s_-) must agree")
        self.big = HeckeAlgebra(c.group)
        self.small = HeckeAlgebra(c.small)
        if images is None:
            images = [
                self.big.signed_word([(ip, 1), (im, 1), (ip, -1)]) if src is None else self.big.gen(src)
                for src in c.source_of
            ]
        self.morphism = HeckeMorphism(self.small, self.big, images, check=check)

    def __call__(self, x: Element) -> Element:
        return self.morphism(x)


def phi_v_morphism(system: CoxeterSystem, e: Edge, check: bool = True) -> HeckeEmbedding:
    return HeckeEmbedding(Contraction(system, e), check=check)


def _alternating(alg: HeckeAlgebra, x: Element, y: Element, m: int) -> Element:
    out = alg.one()
    for k in range(m):
        out = out * (x if k % 2 == 0 else y)
    return out


def verify_hecke_relations(m: HeckeMorphism, label: str = "") -> Report:
    """Quadratic and braid relations of the source, evaluated on the images."""
    rep = Report()
    src = m.source
    gens = src.system.generators
    for s, img in enumerate(m.images):
        bad = quadratic_defect(img, src.params[s])
        rep.add("hecke.quadratic", bad is None, bad, morphism=label, generator=gens[s])
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            n = src.system.matrix[a][b]
            if n == INF:
                continue
            lhs = _alternating(m.target, m.images[a], m.images[b], int(n))
            rhs = _alternating(m.target, m.images[b], m.images[a], int(n))
            rep.add("hecke.braid", lhs == rhs, f"{lhs} != {rhs}", morphism=label,
                    pair=[gens[a], gens[b]], order=int(n))
    return rep


def verify_phi_v(system: CoxeterSystem, e: Edge) -> Report:
    emb = phi_v_morphism(system, e)
    label = f"{_system_name(system)}/{e}"
    rep = verify_hecke_relations(emb.morphism, label)
    big = emb.big
    ip, im = emb.c.ip, emb.c.im
    lhs = big.signed_word([(ip, 1), (im, 1), (ip, -1)])
    rhs = big.signed_word([(im, -1), (ip, 1), (im, 1)])
    rep.add("hecke.conjugation_identity", lhs == rhs, f"{lhs} != {rhs}", morphism=label)
    return rep


def _system_name(system: CoxeterSystem) -> str:
    return "".join(system.generators)


def verify_specialization(system: CoxeterSystem, e: Edge, L: int,
                          emb: Optional[HeckeEmbedding] = None) -> Report:
    """``phi_v(T'_w)|_{v=1} = phi(w)`` for all ``w`` in the ball."""
    emb = emb or phi_v_morphism(system, e)
    c = emb.c
    rep = Report()
    with rep.timed("hecke.specialization", edge=str(e), L=L) as slot:
        for w in c.small.ball(L):
            got = specialize_v1(emb.morphism.on_basis(w))
            if got != {c.phi(w): 1}:
                slot[:] = [False, f"w={_word_text(c.small, w)}"]
                break
    return rep


def image_matrix(emb: HeckeEmbedding, ball: Sequence[GroupElement]) -> List[List[LaurentPoly]]:
    """Rows indexed by target basis elements, columns by ``ball``."""
    images = [emb.morphism.on_basis(w) for w in ball]
    rows = sorted({k for img in images for k in img.terms}, key=emb.big.sort_key)
    index = {k: i for i, k in enumerate(rows)}
    mat = [[LaurentPoly(0)] * len(ball) for _ in rows]
    for j, img in enumerate(images):
        for k, c in img.terms.items():
            mat[index[k]][j] = c
    return mat


def verify_injectivity(system: CoxeterSystem, e: Edge, L: int,
                       emb: Optional[HeckeEmbedding] = None) -> Report:
    """Specialization certificate, then the exact rank certificate."""
    emb = emb or phi_v_morphism(system, e)
    c = emb.c
    ball = c.small.ball(L)
    rep = Report()
    params = {"edge": str(e), "L": L, "ball": len(ball)}
    with rep.timed("hecke.injective.specialization", **params) as slot:
        images = {}
        for w in ball:
            img = c.phi(w)
            if img in images:
                slot[:] = [False, f"{_word_text(c.small, w)} and {_word_text(c.small, images[img])}"]
                break
            images[img] = w
    with rep.timed("hecke.injective.rank", **params) as slot:
        rank = rank_over_fraction_field(image_matrix(emb, ball))
        slot[:] = [rank == len(ball), f"rank {rank} < {len(ball)}"]
    rep.checks[-1].parameters["rank"] = rank
    return rep


def tau_v(alg: HeckeAlgebra, w: GroupElement, x: Element) -> Element:
    """``T_w x T_w^{-1}``."""
    word = alg.group.word_indices(w)
    inv = alg.signed_word([(s, -1) for s in reversed(word)])
    return alg.T(w) * x * inv


def verify_branch_diagram_hecke(system: CoxeterSystem, e: Edge, L: int = 4,
                                branch: Optional[BranchSequence] = None) -> Report:
    """``tau^v_{s_{j_1}...s_{j_n}} o can = phi_v o tau^v`` on generators and a ball."""
    if branch is None:
        branch = find_linear_branch(system, e)
    if branch is None:
        raise NoBranch(f"no linear branch through {e}")
    emb = phi_v_morphism(system, e)
    c = emb.c
    bd = BranchData(c, branch)
    big, small = emb.big, emb.small
    rep = Report()
    params = {"edge": str(e), "branch": list(branch.nodes), "L": L}
    conj = bd.conjugator
    with rep.timed("branch.hecke.generators", **params) as slot:
        for s in bd.domain:
            lhs = tau_v(big, conj, big.gen(s))
            rhs = emb(small.gen(bd.tau[s]))
            if lhs != rhs:
                slot[:] = [False, f"s={system.generators[s]}: {lhs} != {rhs}"]
                break
    with rep.timed("branch.hecke.ball", **params) as slot:
        sub = [system.generators[i] for i in bd.domain]
        for x in c.group.parabolic_ball(sub, L):
            lhs = tau_v(big, conj, big.T(x))
            rhs = emb(small.T(bd.tau_word(c.group.word_indices(x))))
            if lhs != rhs:
                slot[:] = [False, f"x={_word_text(c.group, x)}"]
                break
    return rep


# -- expression parsing ------------------------------------------------------

_FACTOR = re.compile(r"\s*(Tinv\[([^\]]*)\]|T\[([^\]]*)\]|\(([^()]*)\)|(\d+))\s*")


def _split_top(text: str, seps: str) -> List[Tuple[str, str]]:
    """Split at separators outside brackets; returns ``(sep, chunk)`` pairs."""
    parts, depth, cur, sign = [], 0, [], "+"
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if depth == 0 and ch in seps:
            parts.append((sign, "".join(cur)))
            cur, sign = [], ch
            continue
        cur.append(ch)
    parts.append((sign, "".join(cur)))
    return parts


def _word_labels(text: str) -> List[str]:
    text = text.strip()
    if not text:
        return []
    return [p.strip() for p in text.split(",")]


def parse_hecke_expression(alg: HeckeAlgebra, text: str) -> Element:
    """Evaluate sums of products of ``T[word]``, ``Tinv[s]``, ``(laurent)`` and integers."""
    total = alg.zero()
    for sign, chunk in _split_top(text, "+-"):
        if not chunk.strip():
            if sign == "-" or total:
                raise ValueError(f"dangling operator in {text!r}")
            continue
        term = alg.one()
        for _, factor in _split_top(chunk, "*"):
            m = _FACTOR.fullmatch(factor)
            if not m:
                raise ValueError(f"cannot parse factor {factor!r}")
            if m.group(2) is not None:
                labels = _word_labels(m.group(2))
                if len(labels) != 1:
                    raise ValueError("Tinv[...] takes exactly one generator")
                term = term * alg.inv_gen(labels[0])
            elif m.group(3) is not None:
                term = term * alg.T_word(_word_labels(m.group(3)))
            elif m.group(4) is not None:
                term = term.scale(parse_laurent(m.group(4)))
            else:
                term = term.scale(int(m.group(5)))
        total = total - term if sign == "-" else total + term
    return total
