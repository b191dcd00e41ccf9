"""Assembly of the verification suites used by the command line and the full report."""
from __future__ import annotations

from typing import Dict, List, Optional

from . import affine_a, affine_general, duality, embedding, hecke
from .coxeter import CRYSTALLOGRAPHIC, build_K
from .errors import EdgeContractError, UnsupportedBond
from .report import Report
from .systems import INF, CoxeterSystem, Edge, affine_A2, builtin_systems, contract, find_linear_branch, type_A

__all__ = [
    "verify_contractions",
    "group_suite",
    "hecke_suite",
    "branch_suite",
    "affine_a_suite",
    "affine_bl_suite",
    "affine_general_suite",
    "duality_suite",
    "system_report",
    "global_report",
    "full_report",
    "DEFAULT_L",
]

#: ball radius per builtin system in the full report
DEFAULT_L = {"A3": 6, "A4": 6, "B3": 6, "D4": 4, "H3": 4, "affineA2": 6}

DUALITY_SHAPES = [(2, 2), (2, 3), (3, 2), (3, 3)]


def _is_chain(system: CoxeterSystem) -> bool:
    n = system.rank
    return all(system.matrix[i][j] == (1 if i == j else 3 if abs(i - j) == 1 else 2)
               for i in range(n) for j in range(n))


def verify_contractions(ranks=range(3, 7)) -> Report:
    """Every edge of ``A_n`` contracts to ``A_{n-1}``; the all-3 triangle contracts to ``I_2(inf)``."""
    rep = Report()
    for n in ranks:
        gens = type_A(n).generators
        for a, b in zip(gens, gens[1:]):
            for e in (Edge(a, b), Edge(b, a)):
                small = contract(type_A(n), e)
                rep.add("contract.typeA", _is_chain(small), f"matrix {small.matrix}", n=n, edge=str(e))
    tri = affine_A2()
    for a in tri.generators:
        for b in tri.generators:
            if a == b:
                continue
            small = contract(tri, Edge(a, b))
            ok = small.rank == 2 and small.matrix[0][1] == INF
            rep.add("contract.triangle", ok, f"matrix {small.matrix}", edge=f"{a},{b}")
    return rep


def group_suite(system: CoxeterSystem, e: Edge, L: int) -> Report:
    return embedding.verify_phi(system, e, L)


def hecke_suite(system: CoxeterSystem, e: Edge, L: int) -> Report:
    rep = hecke.verify_phi_v(system, e)
    emb = hecke.phi_v_morphism(system, e)
    rep.extend(hecke.verify_specialization(system, e, L, emb))
    rep.extend(hecke.verify_injectivity(system, e, L, emb))
    return rep


def branch_suite(system: CoxeterSystem, e: Edge, L: int = 4) -> Report:
    rep = Report()
    if find_linear_branch(system, e) is None:
        rep.skip("branch", "no linear branch through this edge", edge=str(e))
        return rep
    rep.extend(embedding.verify_branch_diagram(system, e, L))
    rep.extend(hecke.verify_branch_diagram_hecke(system, e, L))
    return rep


def affine_a_suite(r: int, i_minus: int) -> Report:
    return affine_a.verify_phi_e(r, i_minus)


def affine_bl_suite(r: int, i_minus: int, seed: int = 0, terms: int = 50) -> Report:
    rep = affine_a.verify_phi_bl(r, i_minus)
    rep.extend(affine_a.verify_cor_xpairs(r, i_minus))
    rep.extend(affine_a.verify_iso_round_trip(r, terms, seed))
    rep.seed = seed
    return rep


def affine_general_suite(system: CoxeterSystem, e: Edge) -> Report:
    rep = Report()
    if find_linear_branch(system, e) is None:
        rep.skip("phi_aff_v", "no linear branch through this edge", edge=str(e))
        return rep
    try:
        return affine_general.verify_phi_aff_v(system, e)
    except EdgeContractError as exc:
        rep.skip("phi_aff_v", f"{type(exc).__name__}: {exc}", edge=str(e))
        return rep


def duality_suite(n: int, d: int, i_plus: Optional[int] = None, epsilon: Optional[int] = None) -> Report:
    return duality.verify_duality(n, d, i_plus, epsilon)


def _crystallographic(system: CoxeterSystem) -> bool:
    try:
        build_K(system, CRYSTALLOGRAPHIC)
    except UnsupportedBond:
        return False
    return True


def _finite(system: CoxeterSystem, bound: int = 5000) -> bool:
    from .coxeter import CoxeterGroup
    from .errors import BudgetExceeded
    g = CoxeterGroup(system)
    try:
        g.ball(10 ** 6, budget=bound)
    except BudgetExceeded:
        return False
    return True


def _tag(rep: Report, **labels) -> Report:
    for c in rep.checks:
        for k, v in labels.items():
            c.parameters.setdefault(k, v)
    return rep


def system_report(system: CoxeterSystem, name: str, L: int = 4, seed: int = 0) -> Report:
    """Every per-edge suite that applies to ``system``."""
    rep = Report(seed=seed)
    finite = _finite(system)
    cryst = _crystallographic(system)
    for e in embedding.admissible_edges(system):
        part = Report()
        part.extend(group_suite(system, e, L))
        if finite:
            part.extend(embedding.verify_root_inclusion(system, e))
        part.extend(embedding.verify_length_bounds(system, e, min(L, 5)))
        part.extend(hecke_suite(system, e, min(L, 5)))
        part.extend(branch_suite(system, e, min(L, 4)))
        if cryst:
            part.extend(embedding.verify_phi_aff(system, e, samples=50, seed=seed))
            if finite:
                part.extend(affine_general_suite(system, e))
        rep.extend(_tag(part, system=name, edge=str(e)))
    return rep


def global_report(seed: int = 0) -> Report:
    """Suites that do not depend on an input system."""
    rep = Report(seed=seed)
    rep.extend(verify_contractions())
    for n in (3, 4):
        for p in range(1, n):
            rep.extend(embedding.verify_typeA_length_formula(n, p))
    for r in (3, 4):
        for i in range(1, r + 1):
            rep.extend(affine_a_suite(r, i))
    for i in range(1, 3):
        rep.extend(affine_bl_suite(3, i, seed))
    for i in range(1, 4):
        rep.extend(affine_a.verify_phi_bl(4, i))
        rep.extend(affine_a.verify_cor_xpairs(4, i))
    for n, d in DUALITY_SHAPES:
        rep.extend(duality_suite(n, d))
    return rep


def full_report(systems: Optional[Dict[str, CoxeterSystem]] = None, seed: int = 0,
                include_global: bool = True) -> Report:
    rep = Report(seed=seed)
    if systems is None:
        systems = builtin_systems()
    for name, system in systems.items():
        rep.extend(system_report(system, name, DEFAULT_L.get(name, 4), seed))
    if include_global:
        rep.extend(global_report(seed))
    return rep
