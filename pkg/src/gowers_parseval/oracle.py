"""Brute-force references for cube spaces, inner products and signed duals.

Nothing here goes through corner completion, Smith forms or the FFT: cube
spaces are found by filtering all of G^{2^d} with Gray sums written out from
bit masks, and duals by testing complex character values directly. Only the
group tables (residues, mixed-radix order) are shared with the structured code.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

import numpy as np

from .cubes import CubePoint
from .errors import EnumerationLimitError, SpecMismatchError
from .functions import FunctionCube
from .groups import GroupSpec, as_group
from .subgroups import ExplicitSubgroup, Subgroup

ORACLE_LIMIT = 10**8
BLOCK = 1 << 15


def _all_tuples(n: int, k: int, limit: int):
    """Blocks of every index tuple in {0..n-1}^k, lexicographic."""
    total = n**k
    if total > limit:
        raise EnumerationLimitError(f"brute scan of {n}^{k} tuples", total, limit)
    powers = n ** np.arange(k - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, BLOCK):
        codes = np.arange(start, min(start + BLOCK, total), dtype=np.int64)
        yield (codes[:, None] // powers[None, :]) % n


def gray_relations(d: int, l: int) -> np.ndarray:
    """One ±1/0 row per (l+1)-subset B and per setting of the bits outside B."""
    size = 1 << d
    rows = []
    if l + 1 > d:
        return np.zeros((0, size), dtype=np.int64)
    for B in combinations(range(d), l + 1):
        mask = sum(1 << b for b in B)
        groups: dict[int, list[int]] = {}
        for v in range(size):
            groups.setdefault(v & ~mask, []).append(v)
        for members in groups.values():
            row = np.zeros(size, dtype=np.int64)
            for v in members:
                row[v] = -1 if bin(v & mask).count("1") % 2 else 1
            rows.append(row)
    return np.array(rows, dtype=np.int64)


def brute_cube_space_indices(group, d: int, l: int, limit: int = ORACLE_LIMIT) -> np.ndarray:
    """All of P^{d,l}(G) as rows of element indices, by filtering G^{2^d}."""
    group = as_group(group)
    relations = gray_relations(d, max(l, -1))
    residues = group.residue_table
    kept = []
    for block in _all_tuples(group.cardinality, 1 << d, limit):
        res = residues[block]  # (N, 2^d, r)
        ok = np.ones(block.shape[0], dtype=bool)
        for j, n in enumerate(group.orders):
            ok &= np.all(np.mod(res[:, :, j] @ relations.T, n) == 0, axis=1)
        kept.append(block[ok])
    return np.concatenate(kept)


def brute_cube_space(group, d: int, l: int, limit: int = ORACLE_LIMIT) -> set[CubePoint]:
    group = as_group(group)
    return {CubePoint.from_indices(group, row) for row in brute_cube_space_indices(group, d, l, limit)}


def brute_inner_product(F: FunctionCube, l: int, limit: int = ORACLE_LIMIT) -> complex:
    """Mean of ``prod_w C^{|w|} f_w(x_w)`` over the brute-force cube space."""
    rows = brute_cube_space_indices(F.spec, F.d, l, limit)
    odd = np.array([bin(v).count("1") % 2 == 1 for v in range(1 << F.d)])
    table = F.values.copy()
    table[odd] = np.conj(table[odd])
    vals = np.prod(table[np.arange(1 << F.d)[None, :], rows], axis=1)
    return complex(vals.mean())


def _character_values(group: GroupSpec) -> np.ndarray:
    """``values[chi, x] = exp(2 pi i sum_t chi_t x_t / n_t)``."""
    res = group.residue_table.astype(float)
    orders = np.array(group.orders, dtype=float)
    angle = 2 * np.pi * (res / orders) @ res.T if group.rank else np.zeros((1, 1))
    return np.exp(1j * angle)


def brute_signed_dual(
    H: Subgroup | np.ndarray,
    signs: Sequence[int] | None = None,
    group=None,
    limit: int = ORACLE_LIMIT,
) -> ExplicitSubgroup:
    """Every ``(chi_j)`` with ``prod_j C^{s_j} chi_j(x_j) = 1`` for all ``x`` in ``H``."""
    if isinstance(H, Subgroup):
        group = H.group
        rows = H.index_array(limit).astype(np.int64)
    else:
        if group is None:
            raise ValueError("a group is needed when H is given as an index array")
        group = as_group(group)
        rows = np.asarray(H, dtype=np.int64)
    k = rows.shape[1]
    signs = [0] * k if signs is None else list(signs)
    if len(signs) != k:
        raise SpecMismatchError(f"signature of length {len(signs)} for a subgroup of G^{k}")
    chars = _character_values(group)
    kept = []
    for block in _all_tuples(group.cardinality, k, limit // max(1, rows.shape[0])):
        prod = np.ones((block.shape[0], rows.shape[0]), dtype=np.complex128)
        for j in range(k):
            vals = chars[block[:, j][:, None], rows[:, j][None, :]]
            prod *= np.conj(vals) if signs[j] else vals
        kept.append(block[np.all(np.abs(prod - 1) < 1e-9, axis=1)])
    return ExplicitSubgroup(group, np.concatenate(kept), k=k, check=False)
