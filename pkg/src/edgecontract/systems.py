"""Weighted Coxeter systems, edge contraction and linear branches."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import (
    AsymmetricMatrix,
    BadDiagonal,
    InvalidSystem,
    NotAnEdge,
    UnknownGenerator,
    WeightConflict,
    WeightMismatch,
)

__all__ = [
    "INF",
    "CoxeterSystem",
    "Edge",
    "BranchSequence",
    "validate",
    "contract",
    "find_linear_branch",
    "satisfies_branch_condition",
    "is_branch_prefix",
    "dump_system",
    "load_system",
    "parse_system",
    "serialize_system",
    "type_A",
    "type_B",
    "type_D",
    "type_H3",
    "dihedral",
    "affine_A2",
    "builtin_systems",
]

#: Sentinel for an infinite bond.  Never encoded as 0.
INF = math.inf


@dataclass(frozen=True)
class CoxeterSystem:
    """Generator labels, Coxeter matrix and weight function ``L``.

    ``matrix[i][j]`` is the order of ``s_i s_j`` (``INF`` when infinite).
    ``weights`` defaults to 1 on every generator.
    """

    generators: Tuple[str, ...]
    matrix: Tuple[Tuple[float, ...], ...]
    weights: Tuple[int, ...] = ()

    def __post_init__(self):
        gens = tuple(str(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(
            self, "matrix", tuple(tuple(_bond(x) for x in row) for row in self.matrix)
        )
        if not self.weights:
            object.__setattr__(self, "weights", (1,) * len(gens))
        else:
            object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if len(set(gens)) != len(gens):
            raise InvalidSystem("duplicate generator labels")
        if len(self.matrix) != len(gens) or any(len(r) != len(gens) for r in self.matrix):
            raise InvalidSystem("matrix shape does not match the generators")
        if len(self.weights) != len(gens):
            raise InvalidSystem("weights length does not match the generators")
        object.__setattr__(self, "_index", {g: i for i, g in enumerate(gens)})

    @classmethod
    def from_bonds(
        cls,
        generators: Sequence[str],
        bonds: Mapping[Tuple[str, str], float],
        weights: Optional[Mapping[str, int]] = None,
    ) -> "CoxeterSystem":
        """Build from the non-commuting pairs; unlisted pairs get ``m = 2``."""
        gens = [str(g) for g in generators]
        idx = {g: i for i, g in enumerate(gens)}
        n = len(gens)
        mat = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        for (a, b), m in bonds.items():
            mat[idx[str(a)]][idx[str(b)]] = m
            mat[idx[str(b)]][idx[str(a)]] = m
        w = tuple((weights or {}).get(g, 1) for g in gens)
        return cls(tuple(gens), tuple(tuple(r) for r in mat), w)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def index(self, s: str) -> int:
        try:
            return self._index[str(s)]
        except KeyError:
            raise UnknownGenerator(f"unknown generator {s!r}") from None

    def m(self, s: str, t: str):
        return self.matrix[self.index(s)][self.index(t)]

    def weight(self, s: str) -> int:
        return self.weights[self.index(s)]

    def weight_map(self) -> Dict[str, int]:
        return dict(zip(self.generators, self.weights))

    def neighbors(self, s: str) -> List[str]:
        """Generators not commuting with ``s`` (``m >= 3``)."""
        i = self.index(s)
        return [g for j, g in enumerate(self.generators) if j != i and self.matrix[i][j] != 2]

    def is_finite_bond(self, s: str, t: str) -> bool:
        return self.m(s, t) != INF

    def relabel(self, mapping: Mapping[str, str]) -> "CoxeterSystem":
        gens = tuple(mapping.get(g, g) for g in self.generators)
        return CoxeterSystem(gens, self.matrix, self.weights)

    def restrict(self, subset: Iterable[str]) -> "CoxeterSystem":
        """The parabolic subsystem on ``subset`` (kept in the original order)."""
        keep = set(subset)
        idx = [i for i, g in enumerate(self.generators) if g in keep]
        return CoxeterSystem(
            tuple(self.generators[i] for i in idx),
            tuple(tuple(self.matrix[i][j] for j in idx) for i in idx),
            tuple(self.weights[i] for i in idx),
        )


def _bond(x):
    if x == INF or x == "inf":
        return INF
    if isinstance(x, float):
        if not x.is_integer():
            raise InvalidSystem(f"bond {x} is not an integer")
        return int(x)
    return int(x)


@dataclass(frozen=True)
class Edge:
    """A contractible pair; ``plus`` is s_+ and ``minus`` is s_-."""

    plus: str
    minus: str

    @classmethod
    def parse(cls, text: str) -> "Edge":
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 2 or not all(parts):
            raise ValueError(f"edge must look like 'S+,S-', got {text!r}")
        return cls(parts[0], parts[1])

    def __str__(self):
        return f"{self.plus},{self.minus}"


@dataclass(frozen=True)
class BranchSequence:
    """``s_{j_0} = s_-, s_{j_1} = s_+, ..., s_{j_n}`` satisfying condition (B)."""

    nodes: Tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.nodes) - 1

    @property
    def conjugator(self) -> Tuple[str, ...]:
        """The word ``s_{j_1} s_{j_2} ... s_{j_n}``."""
        return self.nodes[1:]


def _odd_components(system: CoxeterSystem) -> List[List[int]]:
    n = system.rank
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            m = system.matrix[i][j]
            if m != INF and m % 2 == 1:
                parent[find(i)] = find(j)
    comps: Dict[int, List[int]] = {}
    for i in range(n):
        comps.setdefault(find(i), []).append(i)
    return list(comps.values())


def validate(system: CoxeterSystem) -> None:
    """Raise if the matrix or weights violate the Coxeter-system invariants."""
    n = system.rank
    M = system.matrix
    for i in range(n):
        if M[i][i] != 1:
            raise BadDiagonal(f"m({system.generators[i]},{system.generators[i]}) = {M[i][i]} != 1")
        for j in range(n):
            if M[i][j] != M[j][i]:
                raise AsymmetricMatrix(
                    f"m({system.generators[i]},{system.generators[j]}) != "
                    f"m({system.generators[j]},{system.generators[i]})"
                )
            if i != j and (M[i][j] != INF and M[i][j] < 2):
                raise BadDiagonal(
                    f"off-diagonal entry m({system.generators[i]},{system.generators[j]}) = {M[i][j]}"
                )
    for comp in _odd_components(system):
        ws = {system.weights[i] for i in comp}
        if len(ws) > 1:
            names = ",".join(system.generators[i] for i in comp)
            raise WeightConflict(f"generators {names} are conjugate but have weights {sorted(ws)}")


def contract(system: CoxeterSystem, e: Edge, label: Optional[str] = None) -> CoxeterSystem:
    """Edge contraction ``(S/e, N, L_{S/e})``.

    ``s_0`` replaces ``s_+`` at its position in the generator order and gets
    the label ``"<s_+>+<s_->"`` unless ``label`` is given.
    """
    ip, im = system.index(e.plus), system.index(e.minus)
    M = system.matrix
    if ip == im or M[ip][im] != 3:
        raise NotAnEdge(f"m({e.plus},{e.minus}) = {M[ip][im]}, contraction needs 3")
    if system.weights[ip] != system.weights[im]:
        raise WeightMismatch(f"L({e.plus}) != L({e.minus})")
    s0 = label if label is not None else f"{e.plus}+{e.minus}"
    old = [i for i in range(system.rank) if i != im]
    gens = tuple(s0 if i == ip else system.generators[i] for i in old)
    if len(set(gens)) != len(gens):
        raise InvalidSystem(f"label {s0!r} collides with an existing generator")

    def bond(i, j):
        if i == j:
            return 1
        if i != ip and j != ip:
            return M[i][j]
        s = j if i == ip else i
        a, b = M[s][ip], M[s][im]
        if a == 2 or b == 2:
            return a + b - 2
        return INF

    matrix = tuple(tuple(bond(i, j) for j in old) for i in old)
    weights = tuple(system.weights[i] for i in old)
    return CoxeterSystem(gens, matrix, weights)


def contracted_label(e: Edge) -> str:
    return f"{e.plus}+{e.minus}"


def satisfies_branch_condition(system: CoxeterSystem, nodes: Sequence[str]) -> bool:
    """Literal condition (B) for the sequence ``nodes = (s_-, s_+, ...)``."""
    if len(nodes) < 2 or len(set(nodes)) != len(nodes):
        return False
    if system.m(nodes[0], nodes[1]) != 3:
        return False
    n = len(nodes) - 1
    for k in range(1, n):
        if system.m(nodes[k], nodes[k + 1]) != 3:
            return False
    for k in range(1, n + 1):
        allowed = {nodes[k - 1], nodes[k]}
        if k < n:
            allowed.add(nodes[k + 1])
        for s in system.generators:
            if s not in allowed and system.m(nodes[k], s) != 2:
                return False
    return True


def is_branch_prefix(system: CoxeterSystem, nodes: Sequence[str]) -> bool:
    """Condition (B) on the interior nodes ``1 <= k <= n-1`` only.

    This is the predicate that is closed under taking prefixes: the terminal
    node of a prefix still has its successor as a neighbour.
    """
    if len(nodes) < 2 or len(set(nodes)) != len(nodes):
        return False
    if system.m(nodes[0], nodes[1]) != 3:
        return False
    n = len(nodes) - 1
    for k in range(1, n):
        if system.m(nodes[k], nodes[k + 1]) != 3:
            return False
        allowed = {nodes[k - 1], nodes[k], nodes[k + 1]}
        for s in system.generators:
            if s not in allowed and system.m(nodes[k], s) != 2:
                return False
    return True


def find_linear_branch(system: CoxeterSystem, e: Edge) -> Optional[BranchSequence]:
    """Greedy maximal sequence satisfying (B), or ``None``."""
    if system.m(e.plus, e.minus) != 3:
        raise NotAnEdge(f"m({e.plus},{e.minus}) != 3")
    nodes = [e.minus, e.plus]
    while True:
        cur, prev = nodes[-1], nodes[-2]
        ahead = [s for s in system.neighbors(cur) if s != prev]
        if not ahead:
            break
        if len(ahead) > 1 or system.m(cur, ahead[0]) != 3 or ahead[0] in nodes:
            return None
        nodes.append(ahead[0])
    return BranchSequence(tuple(nodes)) if satisfies_branch_condition(system, nodes) else None


# -- serialization --------------------------------------------------------


def serialize_system(system: CoxeterSystem) -> str:
    """Canonical JSON text (sorted keys, ``"inf"`` for infinite bonds)."""
    doc = {
        "generators": list(system.generators),
        "matrix": [["inf" if x == INF else int(x) for x in row] for row in system.matrix],
        "weights": {g: w for g, w in zip(system.generators, system.weights)},
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def parse_system(text: str) -> CoxeterSystem:
    doc = json.loads(text)
    try:
        gens = doc["generators"]
        matrix = doc["matrix"]
    except (KeyError, TypeError):
        raise InvalidSystem("system file needs 'generators' and 'matrix'") from None
    for row in matrix:
        for x in row:
            if isinstance(x, float) or isinstance(x, bool) or not (isinstance(x, int) or x == "inf"):
                raise InvalidSystem(f"matrix entries must be integers or 'inf', got {x!r}")
    weights = doc.get("weights") or {}
    unknown = set(weights) - set(map(str, gens))
    if unknown:
        raise UnknownGenerator(f"weights for unknown generators {sorted(unknown)}")
    system = CoxeterSystem(
        tuple(gens), tuple(tuple(r) for r in matrix), tuple(weights.get(str(g), 1) for g in gens)
    )
    return system


def dump_system(system: CoxeterSystem, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_system(system))


def load_system(path) -> CoxeterSystem:
    with open(path, encoding="utf-8") as fh:
        return parse_system(fh.read())


# -- standard systems -----------------------------------------------------


def type_A(n: int) -> CoxeterSystem:
    """``A_n``: chain ``1 - 2 - ... - n``."""
    gens = [str(i) for i in range(1, n + 1)]
    return CoxeterSystem.from_bonds(gens, {(gens[i], gens[i + 1]): 3 for i in range(n - 1)})


def type_B(n: int) -> CoxeterSystem:
    """``B_n``: chain with the 4-bond at the end ``(n-1) = n``."""
    gens = [str(i) for i in range(1, n + 1)]
    bonds = {(gens[i], gens[i + 1]): 3 for i in range(n - 2)}
    bonds[(gens[n - 2], gens[n - 1])] = 4
    return CoxeterSystem.from_bonds(gens, bonds)


def type_D(n: int) -> CoxeterSystem:
    """``D_n`` with the fork at ``n-2``; ``D_4`` is the star centred at 2."""
    gens = [str(i) for i in range(1, n + 1)]
    bonds = {(gens[i], gens[i + 1]): 3 for i in range(n - 2)}
    bonds[(gens[n - 3], gens[n - 1])] = 3
    return CoxeterSystem.from_bonds(gens, bonds)


def type_H3() -> CoxeterSystem:
    return CoxeterSystem.from_bonds(["1", "2", "3"], {("1", "2"): 5, ("2", "3"): 3})


def dihedral(m) -> CoxeterSystem:
    return CoxeterSystem.from_bonds(["1", "2"], {("1", "2"): m})


def affine_A2() -> CoxeterSystem:
    """The all-3 triangle ``a - b - c - a``."""
    return CoxeterSystem.from_bonds(["a", "b", "c"], {("a", "b"): 3, ("b", "c"): 3, ("a", "c"): 3})


def builtin_systems() -> Dict[str, CoxeterSystem]:
    return {
        "A3": type_A(3),
        "A4": type_A(4),
        "B3": type_B(3),
        "D4": type_D(4),
        "H3": type_H3(),
        "affineA2": affine_A2(),
    }
