"""The group embedding ``W_{S/e} -> W_S`` and its verification suites.

``s_0 -> s_+ s_- s_+`` and ``s -> s`` otherwise.  The contracted group is
realized with the sum-rule matrix ``K~`` so that the span of
``alpha_s (s != s_+-)`` and ``alpha_{s_0} = alpha_{s_+} + alpha_{s_-}`` is a
copy of the contracted reflection representation inside ``V_S``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .coxeter import (
    CRYSTALLOGRAPHIC,
    SYMMETRIC,
    CoxeterGroup,
    GroupElement,
    KMatrix,
    build_K,
    contracted_K,
)
from .errors import BudgetExceeded, NoBranch, NonIntegralK, SystemMismatch
from .report import Report
from .systems import INF, BranchSequence, CoxeterSystem, Edge, contract, find_linear_branch

__all__ = [
    "Contraction",
    "AffineElement",
    "AffineWeylGroup",
    "verify_phi",
    "verify_branch_diagram",
    "verify_root_inclusion",
    "verify_length_bounds",
    "verify_typeA_length_formula",
    "verify_phi_aff",
    "typeA_length_formula",
    "permutation_of",
    "admissible_edges",
]


class Contraction:
    """A system, an edge and both reflection representations.

    ``small`` is the group of ``S/e`` (built on ``K~``), ``group`` the group of
    ``S``.  ``source_of[a]`` is the ``S``-index of contracted generator ``a``
    (``None`` for ``s_0``).
    """

    def __init__(self, system: CoxeterSystem, e: Edge, mode: str = SYMMETRIC,
                 label: Optional[str] = None, K: Optional[KMatrix] = None):
        self.system = system
        self.edge = e
        self.mode = mode
        self.contracted = contract(system, e, label)
        self.K = K if K is not None else build_K(system, mode)
        self.group = CoxeterGroup(system, self.K)
        self.K_tilde = contracted_K(self.K, system, e, self.contracted)
        self.small = CoxeterGroup(self.contracted, self.K_tilde)
        self.ip = system.index(e.plus)
        self.im = system.index(e.minus)
        old = [i for i in range(system.rank) if i != self.im]
        self.s0 = old.index(self.ip)
        self.source_of: List[Optional[int]] = [None if i == self.ip else i for i in old]
        g = self.group
        self.phi_gens = [
            g.from_word([self.ip, self.im, self.ip]) if src is None else g.gen(src)
            for src in self.source_of
        ]
        self._phi: Dict[GroupElement, GroupElement] = {self.small.identity: g.identity}

    @property
    def s0_label(self) -> str:
        return self.contracted.generators[self.s0]

    def phi(self, w: GroupElement) -> GroupElement:
        """Image of ``w`` through its canonical reduced word (memoized)."""
        if w.group is not self.small:
            raise SystemMismatch("phi expects an element of the contracted group")
        out = self._phi.get(w)
        if out is not None:
            return out
        word = self.small.word_indices(w)
        prefix = self.small.identity
        img = self.group.identity
        for s in word:
            prefix = self.small.right_gen(prefix, s)
            cached = self._phi.get(prefix)
            if cached is None:
                cached = self.group.multiply(img, self.phi_gens[s])
                self._phi[prefix] = cached
            img = cached
        return img

    def phi_word(self, word: Sequence[int]) -> GroupElement:
        """Image of an arbitrary (not necessarily reduced) word."""
        img = self.group.identity
        for s in word:
            img = self.group.multiply(img, self.phi_gens[s])
        return img

    def embed_vector(self, vec: Sequence) -> tuple:
        """``V_{S/e} -> V_S``: ``alpha_{s_0} -> alpha_{s_+} + alpha_{s_-}``."""
        out = [0] * self.system.rank
        for a, x in enumerate(vec):
            src = self.source_of[a]
            if src is None:
                out[self.ip] = out[self.ip] + x
                out[self.im] = out[self.im] + x
            else:
                out[src] = out[src] + x
        return tuple(out)

    def embedding_matrix(self):
        cols = [self.embed_vector(self.small.simple_root(a)) for a in range(self.contracted.rank)]
        return tuple(tuple(cols[a][i] for a in range(len(cols))) for i in range(self.system.rank))


def admissible_edges(system: CoxeterSystem) -> List[Edge]:
    """Every ordered pair with ``m = 3`` (both orientations)."""
    out = []
    for i, s in enumerate(system.generators):
        for j, t in enumerate(system.generators):
            if i != j and system.matrix[i][j] == 3:
                out.append(Edge(s, t))
    return out


def _matmul(A, B):
    return tuple(tuple(sum(A[i][t] * B[t][j] for t in range(len(B))) for j in range(len(B[0])))
                 for i in range(len(A)))


def _word_text(group: CoxeterGroup, w: GroupElement) -> str:
    word = group.normal_form(w)
    return "[" + ",".join(word) + "]"


# -- verify_phi ------------------------------------------------------------


def verify_phi(system: CoxeterSystem, e: Edge, L: int, mode: str = SYMMETRIC) -> Report:
    """Relations, ball injectivity and root-subspace stability of ``phi``."""
    c = Contraction(system, e, mode)
    rep = Report()
    params = {"edge": str(e), "L": L, "mode": mode}
    small, big = c.small, c.group
    n = c.contracted.rank

    with rep.timed("phi.relations", **params) as slot:
        for a in range(n):
            for b in range(a, n):
                m = c.contracted.matrix[a][b]
                if m == INF:
                    continue
                prod = big.multiply(c.phi_gens[a], c.phi_gens[b])
                if not big.power(prod, int(m)).is_identity():
                    slot[:] = [False, f"({c.contracted.generators[a]},{c.contracted.generators[b]}) "
                                      f"order {m} violated"]
                    break
            if not slot[0]:
                break

    with rep.timed("phi.injective_on_ball", **params) as slot:
        ball = small.ball(L)
        seen: Dict[GroupElement, GroupElement] = {}
        for w in ball:
            img = c.phi(w)
            if img in seen:
                slot[:] = [False, f"{_word_text(small, w)} and {_word_text(small, seen[img])} "
                                  f"share the image {_word_text(big, img)}"]
                break
            seen[img] = w

    with rep.timed("phi.root_subspace", **params) as slot:
        E = c.embedding_matrix()
        for a in range(n):
            lhs = _matmul(c.phi_gens[a].matrix, E)
            rhs = _matmul(E, small.gen(a).matrix)
            if lhs != rhs:
                slot[:] = [False, f"generator {c.contracted.generators[a]}: {lhs} != {rhs}"]
                break

    with rep.timed("phi.s0_root_formula", **params) as slot:
        ok, wit = check_s0_root_formula(c)
        slot[:] = [ok, wit]
    return rep


def check_s0_root_formula(c: Contraction) -> Tuple[bool, Optional[str]]:
    """``(s+ s- s+)(alpha_s) = alpha_s + (k_{s+,s} + k_{s-,s})(alpha_+ + alpha_-)`` for all s."""
    img = c.phi_gens[c.s0]
    ip, im = c.ip, c.im
    for s in range(c.system.rank):
        coef = c.K.k(ip, s) + c.K.k(im, s)
        expected = [0] * c.system.rank
        expected[s] = 1
        expected[ip] = expected[ip] + coef
        expected[im] = expected[im] + coef
        got = img(c.group.simple_root(s))
        if tuple(got) != tuple(expected):
            return False, f"s={c.system.generators[s]}: {got} != {tuple(expected)}"
    return True, None


# -- branch diagram ----------------------------------------------------------


class BranchData:
    """``tau: W_{S - {s_{j_n}}} -> W_{S/e}`` and the conjugator ``s_{j_1}...s_{j_n}``."""

    def __init__(self, c: Contraction, branch: BranchSequence):
        self.c = c
        self.branch = branch
        sysm = c.system
        nodes = [sysm.index(x) for x in branch.nodes]
        self.nodes = nodes
        self.last = nodes[-1]
        self.domain = [i for i in range(sysm.rank) if i != self.last]
        contracted_index = {}
        for a, src in enumerate(c.source_of):
            if src is not None:
                contracted_index[src] = a
        self.tau: Dict[int, int] = {}
        for i in self.domain:
            if i == nodes[0]:
                self.tau[i] = c.s0
            elif i in nodes[1:-1]:
                ell = nodes.index(i)
                self.tau[i] = contracted_index[nodes[ell + 1]]
            else:
                self.tau[i] = contracted_index[i]
        self.conjugator = c.group.from_word(nodes[1:])

    def tau_word(self, word: Sequence[int]) -> GroupElement:
        return self.c.small.from_word([self.tau[s] for s in word])


def tau_conj(w: GroupElement, x: GroupElement) -> GroupElement:
    """``w x w^{-1}``."""
    return w * x * w.inverse()


def verify_branch_diagram(system: CoxeterSystem, e: Edge, L: int = 4,
                          branch: Optional[BranchSequence] = None, mode: str = SYMMETRIC) -> Report:
    """The square ``tau_{s_{j_1}...s_{j_n}} o can = phi o tau`` on generators and a ball."""
    if branch is None:
        branch = find_linear_branch(system, e)
    if branch is None:
        raise NoBranch(f"no linear branch through {e}")
    c = Contraction(system, e, mode)
    bd = BranchData(c, branch)
    g = c.group
    rep = Report()
    params = {"edge": str(e), "branch": list(branch.nodes), "L": L}
    with rep.timed("branch.group.generators", **params) as slot:
        for s in bd.domain:
            lhs = tau_conj(bd.conjugator, g.gen(s))
            rhs = c.phi(c.small.gen(bd.tau[s]))
            if lhs != rhs:
                slot[:] = [False, f"s={system.generators[s]}: {_word_text(g, lhs)} != {_word_text(g, rhs)}"]
                break
    with rep.timed("branch.group.ball", **params) as slot:
        sub = [system.generators[i] for i in bd.domain]
        for x in g.parabolic_ball(sub, L):
            lhs = tau_conj(bd.conjugator, x)
            rhs = c.phi(bd.tau_word(g.word_indices(x)))
            if lhs != rhs:
                slot[:] = [False, f"x={_word_text(g, x)}"]
                break
    return rep


# -- roots -----------------------------------------------------------------


def verify_root_inclusion(system: CoxeterSystem, e: Edge, bound: int = 10_000) -> Report:
    """Every positive root of ``S/e`` (sum-rule ``K~``) is a positive root of ``S``."""
    c = Contraction(system, e, SYMMETRIC)
    rep = Report()
    params = {"edge": str(e)}
    # the plain 2cos matrix of S/e differs from K~ only when s_+ and s_- share a
    # neighbour; such a triangle is never finite, so the difference is reported only
    plain = build_K(c.contracted, SYMMETRIC)
    n = c.contracted.rank
    diff = [(c.contracted.generators[a], c.contracted.generators[b])
            for a in range(n) for b in range(n) if plain.k(a, b) != c.K_tilde.k(a, b)]
    if diff:
        rep.skip("roots.inclusion_2cos", f"2cos entries differ from K~ at {diff}", **params)
    try:
        big = set(c.group.positive_roots(bound))
        small = c.small.positive_roots(bound)
    except BudgetExceeded as exc:
        rep.skip("roots.inclusion", f"infinite or too large: {exc}", **params)
        return rep
    with rep.timed("roots.inclusion", **params) as slot:
        for r in small:
            img = c.embed_vector(r)
            if img not in big:
                slot[:] = [False, f"{r} -> {img}"]
                break
    rep.add("roots.count", True, None, edge=str(e), contracted=len(small), source=len(big))
    return rep


# -- lengths ---------------------------------------------------------------


def verify_length_bounds(system: CoxeterSystem, e: Edge, L: int) -> Report:
    """``l_S(phi(x)) <= l_{S/e}(x) + 2 mult_{s_0}(x)`` for the canonical word of x."""
    c = Contraction(system, e, SYMMETRIC)
    rep = Report()
    with rep.timed("length.inequality", edge=str(e), L=L) as slot:
        for x in c.small.ball(L):
            word = c.small.word_indices(x)
            mult = word.count(c.s0)
            lhs = c.group.length(c.phi(x))
            if lhs > len(word) + 2 * mult:
                slot[:] = [False, f"{_word_text(c.small, x)}: {lhs} > {len(word)} + 2*{mult}"]
                break
    return rep


def permutation_of(word: Sequence[int], n: int) -> Tuple[int, ...]:
    """One-line notation of ``s_{w_1} ... s_{w_k}`` in ``S_n`` (``s_i = (i, i+1)``)."""
    perm = list(range(1, n + 1))
    for i in word:
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return tuple(perm)


def _inversions(perm: Sequence[int]) -> int:
    return sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])


def typeA_length_formula(perm: Sequence[int], threshold: int) -> int:
    """``l(w) + #{k < t : w(k) >= t} + #{k >= t : w(k) < t}`` with ``t = threshold``."""
    n = len(perm)
    up = sum(1 for k in range(1, threshold) if k <= n and perm[k - 1] >= threshold)
    down = sum(1 for k in range(threshold, n + 1) if perm[k - 1] < threshold)
    return _inversions(perm) + up + down


def verify_typeA_length_formula(n: int, p: int) -> Report:
    """Compare the permutation formula with ``l_S(phi(w))`` on all of ``S_n``.

    The source is ``A_n`` (generators ``1..n``) contracted along ``{p, p+1}``;
    the contracted ``A_{n-1}`` is identified with ``S_n`` by sending ``s_0``
    to ``(p, p+1)`` and generator ``j >= p+2`` to ``(j-1, j)``.  The threshold
    of the counting terms is the upper endpoint ``p+1``.
    """
    from .systems import type_A

    system = type_A(n)
    c = Contraction(system, Edge(str(p), str(p + 1)))
    rep = Report()
    # contracted index -> Coxeter generator number of S_n
    to_perm_gen = []
    for a, src in enumerate(c.source_of):
        if src is None:
            to_perm_gen.append(p)
        else:
            label = src + 1
            to_perm_gen.append(label if label < p else label - 1)
    with rep.timed("length.typeA_formula", n=n, p=p) as slot:
        count = 0
        for w in c.small.ball(n * n):
            word = [to_perm_gen[s] for s in c.small.word_indices(w)]
            perm = permutation_of(word, n)
            formula = typeA_length_formula(perm, p + 1)
            actual = c.group.length(c.phi(w))
            count += 1
            if formula != actual:
                slot[:] = [False, f"w={perm}: formula {formula} != length {actual}"]
                break
        if slot[0] and count != _factorial(n):
            slot[:] = [False, f"enumerated {count} permutations"]
    return rep


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


# -- affine Weyl group -----------------------------------------------------


@dataclass(frozen=True)
class AffineElement:
    """``(lambda, w)`` with ``(l, w)(m, u) = (l + w.m, wu)``."""

    translation: Tuple[int, ...]
    finite: GroupElement

    def __mul__(self, other: "AffineElement") -> "AffineElement":
        moved = self.finite(other.translation)
        return AffineElement(tuple(a + b for a, b in zip(self.translation, moved)),
                             self.finite * other.finite)


class AffineWeylGroup:
    """``V_{S,Z} x| W_S`` for an integral ``K``."""

    def __init__(self, group: CoxeterGroup):
        if not group.K.is_integral():
            raise NonIntegralK("the lattice is only stable under an integral K")
        self.group = group

    def element(self, translation, w: GroupElement) -> AffineElement:
        return AffineElement(tuple(int(x) for x in translation), w)

    def identity(self) -> AffineElement:
        return AffineElement((0,) * self.group.rank, self.group.identity)


def phi_aff(c: Contraction, a: AffineElement) -> AffineElement:
    """``(alpha, w) -> (alpha, phi(w))`` with ``alpha`` embedded into ``V_S``."""
    return AffineElement(c.embed_vector(a.translation), c.phi(a.finite))


def verify_phi_aff(system: CoxeterSystem, e: Edge, samples: int = 200, max_length: int = 4,
                   seed: int = 0) -> Report:
    """Homomorphism and injectivity of ``phi^aff`` on seeded random samples."""
    c = Contraction(system, e, CRYSTALLOGRAPHIC)
    AffineWeylGroup(c.group)
    src = AffineWeylGroup(c.small)
    rng = random.Random(seed)
    n = c.contracted.rank
    pool = c.small.ball(max_length)

    def sample():
        lam = tuple(rng.randint(-2, 2) for _ in range(n))
        return src.element(lam, pool[rng.randrange(len(pool))])

    rep = Report(seed=seed)
    params = {"edge": str(e), "samples": samples, "max_length": max_length, "seed": seed}
    pairs = [(sample(), sample()) for _ in range(samples)]
    with rep.timed("phi_aff.homomorphism", **params) as slot:
        for x, y in pairs:
            if phi_aff(c, x * y) != phi_aff(c, x) * phi_aff(c, y):
                slot[:] = [False, f"({x.translation},{_word_text(c.small, x.finite)}) * "
                                  f"({y.translation},{_word_text(c.small, y.finite)})"]
                break
    with rep.timed("phi_aff.injective", **params) as slot:
        seen = {}
        for x, _ in pairs:
            img = phi_aff(c, x)
            if img in seen and seen[img] != x:
                slot[:] = [False, f"{x.translation} collides"]
                break
            seen[img] = x
    return rep
