"""The ten acceptance criteria, each checked exactly and reported on one line."""
import itertools
import time

import pytest

from edgecontract.affine_a import (
    verify_cor_xpairs,
    verify_iso_round_trip,
    verify_phi_bl,
    verify_phi_e,
)
from edgecontract.affine_general import verify_phi_aff_v
from edgecontract.cli import run
from edgecontract.duality import verify_duality
from edgecontract.embedding import (
    admissible_edges,
    verify_branch_diagram,
    verify_length_bounds,
    verify_phi,
    verify_root_inclusion,
    verify_typeA_length_formula,
)
from edgecontract.hecke import (
    phi_v_morphism,
    verify_branch_diagram_hecke,
    verify_injectivity,
    verify_phi_v,
    verify_specialization,
)
from edgecontract.systems import (
    INF,
    Edge,
    affine_A2,
    contract,
    find_linear_branch,
    type_A,
    type_B,
    type_D,
    type_H3,
)


@pytest.fixture
def say(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
    return emit


def _failures(rep, names=None):
    return [c for c in rep.failures() if names is None or c.name in names]


def _isomorphic(matrix, target):
    n = len(matrix)
    if len(target) != n:
        return False
    return any(all(matrix[p[i]][p[j]] == target[i][j] for i in range(n) for j in range(n))
               for p in itertools.permutations(range(n)))


def test_1_contraction(say):
    start = time.perf_counter()
    bad = []
    for n in range(3, 7):
        for i in range(1, n):
            small = contract(type_A(n), Edge(str(i), str(i + 1)))
            if not _isomorphic(small.matrix, type_A(n - 1).matrix):
                bad.append(f"A{n}/{i},{i + 1}")
    tri = affine_A2()
    for a, b in itertools.permutations(tri.generators, 2):
        small = contract(tri, Edge(a, b))
        if small.matrix != ((1, INF), (INF, 1)):
            bad.append(f"triangle/{a},{b}")
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 1
    say(1, ok, f"contractions of A3..A6 and the triangle; {elapsed:.2f}s; bad={bad}")
    assert ok


GROUP_CASES = [("A3", type_A(3), 6), ("A4", type_A(4), 6), ("B3", type_B(3), 6),
               ("D4", type_D(4), 4), ("H3", type_H3(), 4), ("affineA2", affine_A2(), 6)]


def test_2_group_embedding(say):
    start = time.perf_counter()
    bad, count = [], 0
    for name, sysm, L in GROUP_CASES:
        for e in admissible_edges(sysm):
            rep = verify_phi(sysm, e, L)
            names = {c.name for c in rep.checks}
            count += 1
            if not rep.passed or not {"phi.relations", "phi.injective_on_ball", "phi.s0_root_formula"} <= names:
                bad.append(f"{name}/{e}")
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 30
    say(2, ok, f"verify_phi on {count} (system, edge) pairs; {elapsed:.1f}s; bad={bad}")
    assert ok


def test_3_branch_diagrams(say):
    bad, count = [], 0
    for n in (3, 4, 5):
        sysm = type_A(n)
        for e in admissible_edges(sysm):
            if find_linear_branch(sysm, e) is None:
                continue
            count += 1
            if not verify_branch_diagram(sysm, e, 4).passed:
                bad.append(f"group A{n}/{e}")
            if not verify_branch_diagram_hecke(sysm, e, 4).passed:
                bad.append(f"hecke A{n}/{e}")
    ok = not bad and count > 0
    say(3, ok, f"group and Hecke squares on {count} branch edges; bad={bad}")
    assert ok


def test_4_hecke_embedding(say):
    start = time.perf_counter()
    bad = []
    for name, sysm in (("A3", type_A(3)), ("A4", type_A(4)), ("B3", type_B(3))):
        for e in admissible_edges(sysm):
            if not verify_phi_v(sysm, e).passed:
                bad.append(f"{name}/{e}")
    sysm, e = type_A(4), Edge("2", "3")
    emb = phi_v_morphism(sysm, e)
    inj = verify_injectivity(sysm, e, 6, emb)
    rank = inj.find("hecke.injective.rank")[0].parameters["rank"]
    spec = verify_specialization(sysm, e, 6, emb)
    elapsed = time.perf_counter() - start
    ok = not bad and inj.passed and rank == 24 and spec.passed and elapsed < 60
    say(4, ok, f"relations bad={bad}; A4/e ball(6) rank {rank}; specialization "
               f"{'pass' if spec.passed else 'fail'}; {elapsed:.1f}s")
    assert ok


def test_5_root_inclusion(say):
    bad = []
    for name, sysm in (("A3", type_A(3)), ("B3", type_B(3))):
        for e in admissible_edges(sysm):
            if not verify_root_inclusion(sysm, e).passed:
                bad.append(f"{name}/{e}")
    ok = not bad
    say(5, ok, f"positive roots of A3/e and B3/e inside the source; bad={bad}")
    assert ok


def test_6_length_formulas(say):
    bad = []
    for e in admissible_edges(type_A(4)):
        if not verify_length_bounds(type_A(4), e, 5).passed:
            bad.append(f"bound A4/{e}")
    for n in (3, 4):
        for p in range(1, n):
            if not verify_typeA_length_formula(n, p).passed:
                bad.append(f"formula S{n}/p={p}")
    ok = not bad
    say(6, ok, f"length inequality on ball(5) of A4/e and the type-A formula on S3, S4; bad={bad}")
    assert ok


def test_7_extended_affine_type_a(say):
    start = time.perf_counter()
    bad = []
    for r in (3, 4):
        for i in range(1, r + 1):
            if not verify_phi_e(r, i).passed:
                bad.append(f"phi_e r={r} i={i}")
    iso = verify_iso_round_trip(3, 50, seed=0)
    for name in ("iso.round_trip.im", "iso.round_trip.bl", "iso.multiplicative", "iso.bl_relations"):
        if not all(c.passed for c in iso.find(name)):
            bad.append(name)
    for i in (1, 2):
        if not verify_phi_bl(3, i).passed:
            bad.append(f"phi_bl r=3 i={i}")
        cor = verify_cor_xpairs(3, i)
        if any(not c.witness for c in cor.failures()) or not cor.checks:
            bad.append(f"corollary r=3 i={i}")
    cor_fail = sum(len(verify_cor_xpairs(3, i).failures()) for i in (1, 2))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 120
    say(7, ok, f"IM relations r=3,4; iso round trip (50 terms, seed 0); phi_BL = composite at r=3; "
               f"corollary mismatches {cor_fail}; {elapsed:.1f}s; bad={bad}")
    assert ok


def test_8_affine_general(say):
    sysm, e = type_A(3), Edge("2", "1")
    branch = find_linear_branch(sysm, e)
    assert branch.nodes == ("1", "2", "3")
    rep = verify_phi_aff_v(sysm, e, branch)
    relations = [c for c in rep.checks if c.name.split(".")[0] in ("H1", "H2", "H3", "H4")
                 or c.name == "H5.commutation"]
    cross = rep.find("phi_aff.cross_check_bl")
    unexplained = [c for c in rep.failures() if not c.witness]
    audit = [c for c in rep.failures() if c.name == "phi_aff.theta_inverse_displayed"]
    ok = (relations and all(c.passed for c in relations) and cross and all(c.passed for c in cross)
          and not unexplained)
    say(8, ok, f"(H1)-(H5) on {len(relations)} checks; BL cross-check {len(cross)} checks; "
               f"{len(audit)} literal-transcription failures reported with witnesses")
    assert ok


# The relabelled phi^T_1 and the end/start insertion are audits, not the squares
DIAGNOSTICS = {"prop_H.square_relabelled", "prop_U.square_edge_insertion"}


def test_9_duality(say):
    start = time.perf_counter()
    lines = []
    failing = []
    for n, d in ((2, 2), (2, 3), (3, 2), (3, 3)):
        rep = verify_duality(n, d)
        bad = [c for c in rep.failures() if c.name not in DIAGNOSTICS]
        skipped = [c for c in rep.checks if c.status == "skipped"]
        comm = {c.name for c in rep.checks if c.name.startswith("comm-") and c.passed}
        failing += bad
        lines.append(f"({n},{d}): {len(rep.checks)} checks, {len(bad)} failing, comm {sorted(comm)}, "
                     f"{len(skipped)} skipped")
    elapsed = time.perf_counter() - start
    names = sorted({c.name for c in failing})
    ok = not failing and elapsed < 60
    say(9, ok, f"{'; '.join(lines)}; failing {names}; {elapsed:.1f}s")
    assert ok, "\n".join(f"{c.name} {c.parameters}: {c.witness}" for c in failing[:4])


def test_10_determinism(say, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    code_a = run(["report", "--all", "--seed", "0", "--out", str(a)])
    code_b = run(["report", "--all", "--seed", "0", "--out", str(b)])
    ok = a.read_bytes() == b.read_bytes() and code_a == code_b
    say(10, ok, f"report --all --seed 0 twice: {len(a.read_bytes())} bytes, identical={ok}")
    assert ok
