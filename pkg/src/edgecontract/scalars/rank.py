"""Exact rank of matrices over Z[v, v^-1] (equivalently over Q(v)).

Two fraction-free routes:

* a *specialization lower bound*: the rank of the image under any ring map
  ``Z[v, v^-1] -> GF(p)`` never exceeds the generic rank, so if some
  specialization already has full rank the answer is certified;
* Bareiss elimination with exact Laurent division, used whenever no cheap
  specialization is full rank.
"""
from __future__ import annotations

from typing import List, Sequence

from .laurent import LaurentPoly

__all__ = ["rank_over_fraction_field", "bareiss_rank", "specialized_rank"]

# (prime, value of v) pairs; v must be a unit mod p
_SPECIALIZATIONS = ((2_147_483_647, 48_271), (1_000_000_007, 3), (998_244_353, 12_345))


def _as_poly(x) -> LaurentPoly:
    return x if isinstance(x, LaurentPoly) else LaurentPoly(int(x))


def specialized_rank(matrix: Sequence[Sequence[LaurentPoly]], p: int, value: int) -> int:
    """Rank over GF(p) after substituting ``v = value``."""
    inv = pow(value, p - 2, p)
    rows: List[List[int]] = []
    for row in matrix:
        out = []
        for x in row:
            acc = 0
            for e, a in _as_poly(x).coeffs.items():
                acc += a * (pow(value, e, p) if e >= 0 else pow(inv, -e, p))
            out.append(acc % p)
        rows.append(out)
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        pinv = pow(pr[col], p - 2, p)
        for i in range(rank + 1, len(rows)):
            f = rows[i][col]
            if f:
                f = f * pinv % p
                r = rows[i]
                for j in range(col, ncols):
                    if pr[j]:
                        r[j] = (r[j] - f * pr[j]) % p
        rank += 1
    return rank


def bareiss_rank(matrix: Sequence[Sequence[LaurentPoly]]) -> int:
    """Rank by fraction-free Bareiss elimination with exact division."""
    rows = [[_as_poly(x) for x in row] for row in matrix if any(_as_poly(x) for x in row)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    prev = LaurentPoly(1)
    for col in range(ncols):
        candidates = [i for i in range(rank, len(rows)) if rows[i][col]]
        if not candidates:
            continue
        # cheapest pivot keeps intermediate degrees small
        piv = min(candidates, key=lambda i: len(rows[i][col].coeffs))
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        a = pr[col]
        for i in range(rank + 1, len(rows)):
            r = rows[i]
            b = r[col]
            for j in range(col + 1, ncols):
                x = a * r[j]
                if b and pr[j]:
                    x = x - b * pr[j]
                r[j] = x.divmod_exact(prev) if x else x
            r[col] = LaurentPoly(0)
        prev = a
        rank += 1
        if rank == len(rows):
            break
    return rank


def rank_over_fraction_field(matrix: Sequence[Sequence[LaurentPoly]]) -> int:
    """Exact rank over the fraction field of ``Z[v, v^-1]``."""
    if not matrix or not matrix[0]:
        return 0
    bound = min(len(matrix), len(matrix[0]))
    for p, value in _SPECIALIZATIONS:
        if specialized_rank(matrix, p, value) == bound:
            return bound
    return bareiss_rank(matrix)
