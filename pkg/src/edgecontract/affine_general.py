"""Affine Hecke algebras ``H^aff_S`` in the theta presentation and ``phi^aff_v``.

Elements are finite maps ``(lambda, w) -> LaurentPoly`` meaning
``theta^lambda T_w`` with ``lambda`` in the root lattice ``Z^S``.  The single
commutation rule, valid for every lattice point,

    theta^lam T_s = T_s theta^{s(lam)} + (v - v^-1) (theta^lam - theta^{s(lam)}) / (1 - theta^{-alpha_s})

is solved for ``T_s theta^mu`` to bring products into normal form.  Here
``s(lam)`` is the reflection representation ``sigma_s`` on the lattice.
"""
from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .affine_a import BLAlgebra, PhiBL, phi_bl_composite
from .coxeter import CRYSTALLOGRAPHIC, CoxeterGroup, KMatrix
from .embedding import Contraction
from .errors import NoBranch, NonIntegralK, SystemMismatch
from .hecke import HeckeAlgebra, quadratic_defect
from .linear import Element, Parent, accumulate
from .report import Report
from .scalars import monomial as mono
from .scalars.laurent import LaurentPoly, q
from .systems import INF, BranchSequence, CoxeterSystem, Edge, find_linear_branch

__all__ = [
    "ThetaAlgebra",
    "PhiAff",
    "READINGS",
    "verify_theta_relations",
    "verify_phi_aff_v",
    "theta_to_bl",
]

#: the two readings of the generator written ``T_{s_{i_-}}`` in the image of ``theta_{s_0}^{-1}``
READINGS = ("s_plus", "s_minus")


class ThetaAlgebra(Parent):
    """``H^aff_S`` for a finite system with an integral ``K`` (equal parameters)."""

    def __init__(self, system: CoxeterSystem, K: Optional[KMatrix] = None):
        self.group = CoxeterGroup(system, K, mode=CRYSTALLOGRAPHIC)
        if not self.group.K.is_integral():
            raise NonIntegralK("the root lattice is only stable under an integral K")
        self.system = system
        self.rank = system.rank
        self.hecke = HeckeAlgebra(self.group)
        self._move: Dict = {}

    # -- lattice ---------------------------------------------------------

    def alpha(self, s: int) -> Tuple[int, ...]:
        return mono.unit(self.rank, s)

    def reflect(self, s: int, lam: Sequence[int]) -> Tuple[int, ...]:
        """``sigma_s(lam) = lam + (sum_t k_{s,t} lam_t) alpha_s``."""
        K = self.group.K
        coef = sum(K.k(s, t) * x for t, x in enumerate(lam) if x)
        out = list(lam)
        out[s] += coef
        return tuple(out)

    def quotient(self, lam: Sequence[int], s: int) -> Dict[Tuple[int, ...], int]:
        """``(theta^lam - theta^{s(lam)}) / (1 - theta^{-alpha_s})``."""
        return mono.geometric_quotient(tuple(lam), self.reflect(s, lam), self.alpha(s))

    # -- constructors ----------------------------------------------------

    def _index(self, s) -> int:
        return s if isinstance(s, int) else self.system.index(s)

    def one(self) -> Element:
        return self.monomial((mono.zero(self.rank), self.group.identity))

    def theta(self, lam: Sequence[int]) -> Element:
        if len(lam) != self.rank:
            raise SystemMismatch("lattice point of the wrong rank")
        return self.monomial((tuple(lam), self.group.identity))

    def theta_gen(self, s, power: int = 1) -> Element:
        return self.theta(mono.unit(self.rank, self._index(s), power))

    def theta_poly(self, terms: Dict[Tuple[int, ...], int]) -> Element:
        return Element(self, {(lam, self.group.identity): LaurentPoly(c) for lam, c in terms.items()})

    def gen(self, s) -> Element:
        return self.monomial((mono.zero(self.rank), self.group.gen(self._index(s))))

    def inv_gen(self, s) -> Element:
        return self.gen(s) - self.one().scale(q)

    def signed_word(self, letters) -> Element:
        x = self.one()
        for s, e in letters:
            i = self._index(s)
            x = self._right_gen(x, i) if e > 0 else self._right_gen(x, i) - x.scale(q)
        return x

    def from_hecke(self, h: Element) -> Element:
        z = mono.zero(self.rank)
        return Element(self, {(z, w): c for w, c in h.terms.items()})

    # -- multiplication --------------------------------------------------

    def _right_gen_terms(self, terms, s: int) -> Dict:
        return self.hecke.right_gen_terms(terms, s, key=lambda k: k[1], rebuild=lambda k, w: (k[0], w))

    def _right_gen(self, x: Element, s: int) -> Element:
        return Element(self, self._right_gen_terms(x.terms, s))

    def theta_commute(self, lam: Sequence[int], s) -> Element:
        """Normal form of ``T_s theta^lam``: ``theta^{s lam} T_s - (v - v^-1) Q(s lam)``."""
        i = self._index(s)
        return Element(self, self._commute(i, tuple(lam)))

    def h5_rhs(self, lam: Sequence[int], s) -> Element:
        """``T_s theta^{s(lam)} + (v - v^-1) Q(lam)`` evaluated in normal form (equals ``theta^lam T_s``)."""
        i = self._index(s)
        return self.gen(i) * self.theta(self.reflect(i, lam)) + self.theta_poly(self.quotient(lam, i)).scale(q)

    def _commute(self, s: int, mu: Tuple[int, ...]) -> Dict:
        smu = self.reflect(s, mu)
        out: Dict = {(smu, self.group.gen(s)): LaurentPoly(1)}
        for lam, n in self.quotient(smu, s).items():
            accumulate(out, (lam, self.group.identity), -(q * n))
        return out

    def move(self, w, mu: Tuple[int, ...]) -> Dict:
        """Normal form of ``T_w theta^mu``."""
        key = (w, mu)
        out = self._move.get(key)
        if out is not None:
            return out
        g = self.group
        if w is g.identity:
            out = {(mu, w): LaurentPoly(1)}
        else:
            s = g.word_indices(w)[-1]
            shorter = g.right_gen(w, s)
            smu = self.reflect(s, mu)
            out = self._right_gen_terms(self.move(shorter, smu), s)
            for lam, n in self.quotient(smu, s).items():
                for k, c in self.move(shorter, lam).items():
                    accumulate(out, k, -(c * q * n))
        self._move[key] = out
        return out

    def multiply(self, a: Element, b: Element) -> Element:
        by_u: Dict = {}
        for (bm, u), d in b.terms.items():
            acc = by_u.setdefault(u, {})
            for (am, w), c in a.terms.items():
                cd = c * d
                for (m, x), e in self.move(w, bm).items():
                    accumulate(acc, (mono.add(am, m), x), cd * e)
        result: Dict = {}
        for u, terms in by_u.items():
            for s in self.group.word_indices(u):
                terms = self._right_gen_terms(terms, s)
            for k, c in terms.items():
                accumulate(result, k, c)
        return Element(self, result)

    def sort_key(self, key):
        lam, w = key
        word = self.group.normal_form(w)
        return (len(word), word, lam)

    def render_key(self, key) -> str:
        lam, w = key
        return f"Theta^[{','.join(map(str, lam))}] T[{','.join(self.group.normal_form(w))}]"


class ThetaMorphism:
    """An algebra map out of ``H^aff_S`` given by images of ``T_s`` and ``theta_s^{+-1}``."""

    def __init__(self, source: ThetaAlgebra, target: Parent, t_images, theta_images, theta_inv_images):
        self.source = source
        self.target = target
        self.t_images = list(t_images)
        self.theta_images = list(theta_images)
        self.theta_inv_images = list(theta_inv_images)
        self._t: Dict = {source.group.identity: target.one()}
        self._x: Dict = {}

    def on_theta(self, lam: Tuple[int, ...]) -> Element:
        out = self._x.get(lam)
        if out is None:
            out = self.target.one()
            for s, e in enumerate(lam):
                img = self.theta_images[s] if e > 0 else self.theta_inv_images[s]
                for _ in range(abs(e)):
                    out = out * img
            self._x[lam] = out
        return out

    def on_T(self, w) -> Element:
        out = self._t.get(w)
        if out is None:
            g = self.source.group
            s = g.word_indices(w)[-1]
            out = self.on_T(g.right_gen(w, s)) * self.t_images[s]
            self._t[w] = out
        return out

    def __call__(self, x: Element) -> Element:
        out: Dict = {}
        for (lam, w), c in x.terms.items():
            for k, d in (self.on_theta(lam) * self.on_T(w)).terms.items():
                accumulate(out, k, c * d)
        return Element(self.target, out)


class PhiAff(ThetaMorphism):
    """``phi^aff_v: H^aff_{S/e} -> H^aff_S`` with the displayed generator images.

    ``reading`` selects the generator written ``T_{s_{i_-}}`` in the image of
    ``theta_{s_0}^{-1}``.
    """

    def __init__(self, system: CoxeterSystem, e: Edge, branch: Optional[BranchSequence] = None,
                 reading: str = "s_plus"):
        if reading not in READINGS:
            raise ValueError(f"reading must be one of {READINGS}")
        if branch is None:
            branch = find_linear_branch(system, e)
        if branch is None:
            raise NoBranch(f"no linear branch through {e}")
        self.contraction = c = Contraction(system, e, CRYSTALLOGRAPHIC)
        self.branch = branch
        self.reading = reading
        src = ThetaAlgebra(c.contracted, c.K_tilde)
        tgt = ThetaAlgebra(system, c.K)
        self.nodes = [system.index(x) for x in branch.nodes]
        nodes = self.nodes
        ip, im = c.ip, c.im
        qq = q * q

        def W(positions_signs):
            return tgt.signed_word([(nodes[p], e_) for p, e_ in positions_signs])

        def Theta(positions, power):
            lam = [0] * system.rank
            for p in positions:
                lam[nodes[p]] += power
            return tgt.theta(lam)

        def down(a, b, e_=1):
            return [(p, e_) for p in range(a, b - 1, -1)]

        def up(a, b, e_=1):
            return [(p, e_) for p in range(a, b + 1)]

        ts, th, thi = [], [], []
        for a, src_i in enumerate(c.source_of):
            if src_i is None:
                ts.append(tgt.signed_word([(ip, 1), (im, 1), (ip, -1)]))
                th.append(tgt.theta_gen(ip) * tgt.theta_gen(im) - (tgt.gen(ip) * tgt.theta_gen(im)).scale(q))
                t_letter = ip if reading == "s_plus" else im
                base = tgt.theta_gen(ip, -1) * tgt.theta_gen(im, -1)
                thi.append(base + (tgt.gen(t_letter) * base).scale(q))
                continue
            ts.append(tgt.gen(src_i))
            ell = nodes.index(src_i) if src_i in nodes else -1
            if ell >= 2:
                t1 = W(down(ell, 1) + up(2, ell)) * Theta(range(1, ell), -1)
                t2 = Theta(range(ell, 0, -1), 1) * W(down(ell - 1, 1, -1) + up(2, ell - 1, -1))
                t3 = W(down(ell - 1, 2, -1) + up(1, ell))
                th.append(tgt.theta_gen(src_i) - t1.scale(q) + t2.scale(q) - t3.scale(qq))
                u1 = W(down(ell, 2, -1) + up(1, ell)) * tgt.theta_gen(src_i, -1)
                u2 = W(down(ell - 1, 1) + up(2, ell - 1)) * Theta(range(ell, 0, -1), -1)
                u3 = W(down(ell - 1, 1) + up(2, ell)) * Theta(range(ell, 0, -1), -1)
                thi.append(tgt.theta_gen(src_i, -1) + u1.scale(q) - u2.scale(q) - u3.scale(qq))
            else:
                th.append(tgt.theta_gen(src_i))
                thi.append(tgt.theta_gen(src_i, -1))
        super().__init__(src, tgt, ts, th, thi)


def _h5_shift(alg: ThetaAlgebra, s: int, t: int, literal: bool) -> Tuple[int, ...]:
    """``x_{s,t}``: ``alpha_s + k alpha_t`` with ``k = k_{t,s}`` (sigma) or ``k_{s,t}`` (verbatim)."""
    K = alg.group.K
    k = K.k(s, t) if literal else K.k(t, s)
    lam = [0] * alg.rank
    lam[s] += 1
    lam[t] += k
    return tuple(lam)


def verify_theta_relations(m: ThetaMorphism, label: Dict) -> Report:
    """(H1)-(H5) of the source algebra evaluated on the images."""
    src = m.source
    tgt = m.target
    rep = Report()
    gens = src.system.generators
    n = src.rank
    one = tgt.one()
    for s in range(n):
        bad = quadratic_defect(m.t_images[s], LaurentPoly.monomial(1))
        rep.add("H1.quadratic", bad is None, bad, generator=gens[s], **label)
    for a in range(n):
        for b in range(a + 1, n):
            order = src.system.matrix[a][b]
            if order == INF:
                continue
            x, y = m.t_images[a], m.t_images[b]
            lhs, rhs = one, one
            for k in range(int(order)):
                lhs = lhs * (x if k % 2 == 0 else y)
                rhs = rhs * (y if k % 2 == 0 else x)
            rep.add("H2.braid", lhs == rhs, f"{lhs} != {rhs}", pair=[gens[a], gens[b]], **label)
    for s in range(n):
        x, xi = m.theta_images[s], m.theta_inv_images[s]
        left, right = x * xi, xi * x
        ok = left == one and right == one
        rep.add("H3.inverse", ok, f"theta*theta^-1 = {left} ; theta^-1*theta = {right}",
                generator=gens[s], **label)
    for a in range(n):
        for b in range(a + 1, n):
            x, y = m.theta_images[a], m.theta_images[b]
            rep.add("H4.commute", x * y == y * x, f"{x * y - y * x}", pair=[gens[a], gens[b]], **label)
    for s in range(n):
        for t in range(n):
            lam = _h5_shift(src, s, t, literal=False)
            lhs = m.theta_images[s] * m.t_images[t]
            quot = src.quotient(mono.unit(n, s), t)
            rhs = m.t_images[t] * m.on_theta(lam)
            for mu, c in quot.items():
                rhs = rhs + m.on_theta(mu).scale(q * c)
            rep.add("H5.commutation", lhs == rhs, f"difference {lhs - rhs}",
                    pair=[gens[s], gens[t]], **label)
            K = src.group.K
            if K.k(s, t) != K.k(t, s):
                # the relation read with k_{s,t} in place of the sigma coefficient
                lam = _h5_shift(src, s, t, literal=True)
                rhs = m.t_images[t] * m.on_theta(lam)
                for mu, c in quot.items():
                    rhs = rhs + m.on_theta(mu).scale(q * c)
                rep.add("H5.verbatim_indices", lhs == rhs, f"difference {lhs - rhs}",
                        pair=[gens[s], gens[t]], **label)
    return rep


class _Identity(ThetaMorphism):
    def __init__(self, alg: ThetaAlgebra):
        n = alg.rank
        super().__init__(alg, alg, [alg.gen(s) for s in range(n)], [alg.theta_gen(s) for s in range(n)],
                         [alg.theta_gen(s, -1) for s in range(n)])


def theta_to_bl(x: Element, bl: BLAlgebra) -> Element:
    """Type ``A_N`` theta element to ``H^BL_{N+1}``.

    Generator ``g`` (position ``1..N``) corresponds to BL index ``k = N + 1 - g``
    and ``theta_{alpha_g} -> X_k^{-1} X_{k+1}``.
    """
    alg = x.parent
    N = alg.rank
    if bl.r != N + 1:
        raise SystemMismatch("BL rank must be one more than the type-A rank")
    out = bl.zero()
    for (lam, w), c in x.terms.items():
        a = [0] * bl.r
        for g, e in enumerate(lam):
            k = N - g  # 1-based BL index of 0-based generator g
            a[k - 1] -= e
            a[k] += e
        word = [(N - s, 1) for s in alg.group.word_indices(w)]
        out = out + (bl.X(a) * bl.signed_word(word)).scale(c)
    return out


def verify_phi_aff_v(system: CoxeterSystem, e: Edge, branch: Optional[BranchSequence] = None,
                     cross_check: bool = True) -> Report:
    """Relations (H1)-(H5) on the images, the ``theta^{-1}`` audit, and the type-A cross-check."""
    rep = Report()
    if branch is None:
        branch = find_linear_branch(system, e)
    if branch is None:
        raise NoBranch(f"no linear branch through {e}")
    label = {"edge": str(e), "branch": list(branch.nodes)}
    maps = {r: PhiAff(system, e, branch, reading=r) for r in READINGS}
    # the displayed theta^{-1} images are audited separately for each reading
    for reading, phi in maps.items():
        one = phi.target.one()
        for s in range(phi.source.rank):
            x, xi = phi.theta_images[s], phi.theta_inv_images[s]
            ok = x * xi == one and xi * x == one
            rep.add("phi_aff.theta_inverse_displayed", ok, f"theta*theta^-1 = {x * xi}",
                    generator=phi.source.system.generators[s], reading=reading, **label)
    good = [r for r, phi in maps.items()
            if all(c.passed for c in rep.find("phi_aff.theta_inverse_displayed", reading=r))]
    chosen = good[0] if good else READINGS[0]
    rep.extend(verify_theta_relations(maps[chosen], dict(label, reading=chosen)))
    if cross_check:
        rep.extend(_cross_check_bl(maps[chosen], label))
    return rep


def _cross_check_bl(phi: PhiAff, label: Dict) -> Report:
    """``phi^aff_v`` against ``phi^BL_v`` through ``theta_{alpha_k} = X_k^{-1} X_{k+1}``."""
    rep = Report()
    c = phi.contraction
    system = c.system
    if not _is_type_a_chain(system) or not _is_type_a_chain(c.contracted):
        rep.skip("phi_aff.cross_check_bl", "cross-check needs a type-A chain", **label)
        return rep
    N = system.rank
    r = N  # the contracted A_{N-1} matches H^BL_N; the source A_N matches H^BL_{N+1}
    i_minus = N - c.ip  # BL index of s_+ inside H^BL_{N+1} is N + 1 - (ip + 1)
    i_minus_small = (N - 1) - c.s0
    if i_minus_small != i_minus or not 1 <= i_minus <= r - 1 or N - c.im != i_minus + 1:
        rep.skip("phi_aff.cross_check_bl", "edge orientation does not match i_+ = i_- + 1", **label)
        return rep
    bl_r, bl_r1 = BLAlgebra(r), BLAlgebra(r + 1)
    literal = PhiBL(r, i_minus, source=bl_r, target=bl_r1)
    composite = phi_bl_composite(r, i_minus, bl_r, bl_r1)
    src = phi.source
    gens = src.system.generators
    params = dict(label, r=r, i_minus=i_minus)
    for s in range(src.rank):
        cases = [("T", src.gen(s), phi.t_images[s]), ("theta", src.theta_gen(s), phi.theta_images[s]),
                 ("theta_inv", src.theta_gen(s, -1), phi.theta_inv_images[s])]
        for kind, x, img in cases:
            via_bl = literal(theta_to_bl(x, bl_r))
            via_theta = theta_to_bl(img, bl_r1)
            rep.add("phi_aff.cross_check_bl", via_bl == via_theta, f"difference {via_theta - via_bl}",
                    generator=gens[s], kind=kind, route="literal", **params)
            via_comp = composite(theta_to_bl(x, bl_r))
            rep.add("phi_aff.cross_check_bl", via_comp == via_theta, f"difference {via_theta - via_comp}",
                    generator=gens[s], kind=kind, route="composite", **params)
    return rep


def _is_type_a_chain(system: CoxeterSystem) -> bool:
    n = system.rank
    for i in range(n):
        for j in range(n):
            want = 1 if i == j else (3 if abs(i - j) == 1 else 2)
            if system.matrix[i][j] != want:
                return False
    return True


def verify_theta_algebra(system: CoxeterSystem) -> Report:
    """Sanity: the identity assignment satisfies (H1)-(H5) in ``H^aff_S`` itself."""
    alg = ThetaAlgebra(system)
    return verify_theta_relations(_Identity(alg), {"system": ",".join(system.generators)})
