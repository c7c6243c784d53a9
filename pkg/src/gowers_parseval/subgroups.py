"""Subgroups of G^k, enumerated as arrays of flat element indices.

Two representations are used throughout:

* :class:`ParametrizedSubgroup` -- the image ``{M y : y in G^m}`` of an integer
  matrix ``M`` (shape ``k x m``) acting coordinate-wise. ``M`` is assumed to be
  injective on ``G^m`` (true for corner completions and unimodular bases), so
  the cardinality is ``|G|**m``.
* :class:`ExplicitSubgroup` -- a list of rows, checked for closure on request.

Elements of G^k are rows of ``k`` flat indices into ``group.residue_table``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import EnumerationLimitError, SpecMismatchError
from .groups import GroupSpec

DEFAULT_LIMIT = 10**7
BLOCK_ROWS = 1 << 16
# Whole index arrays are kept in memory up to this many rows.
CACHE_ROWS = 1 << 22


def index_dtype(spec: GroupSpec):
    n = spec.cardinality
    if n <= np.iinfo(np.uint8).max + 1:
        return np.uint8
    if n <= np.iinfo(np.uint16).max + 1:
        return np.uint16
    return np.int64


def _param_digits(spec: GroupSpec, m: int, start: int, stop: int) -> np.ndarray:
    """Parameter tuples ``start..stop-1`` in mixed-radix order, first slot slowest."""
    n = spec.cardinality
    t = np.arange(start, stop, dtype=np.int64)
    digits = np.empty((stop - start, m), dtype=np.int64)
    for j in range(m - 1, -1, -1):
        digits[:, j] = t % n
        t //= n
    return digits


def _apply_matrix(spec: GroupSpec, matrix: np.ndarray, params: np.ndarray) -> np.ndarray:
    """Flat indices of ``matrix @ y`` for each row ``y`` of element indices."""
    res = spec.residue_table[params]  # (N, m, r)
    out = np.zeros((params.shape[0], matrix.shape[0]), dtype=np.int64)
    for j, n in enumerate(spec.orders):
        out += np.mod(res[:, :, j] @ matrix.T, n) * int(spec.strides[j])
    return out


@lru_cache(maxsize=24)
def _cached_image(spec: GroupSpec, matrix_bytes: bytes, shape: tuple[int, int]) -> np.ndarray:
    matrix = np.frombuffer(matrix_bytes, dtype=np.int64).reshape(shape)
    total = spec.cardinality ** shape[1]
    dtype = index_dtype(spec)
    out = np.empty((total, shape[0]), dtype=dtype)
    for start in range(0, total, BLOCK_ROWS):
        stop = min(total, start + BLOCK_ROWS)
        out[start:stop] = _apply_matrix(spec, matrix, _param_digits(spec, shape[1], start, stop))
    out.flags.writeable = False
    return out


class Subgroup:
    """Common interface; subclasses provide ``cardinality`` and ``iter_blocks``."""

    group: GroupSpec
    k: int
    cardinality: int
    # integer relation lattice whose joint kernel is this subgroup, if known
    lattice = None

    def iter_blocks(self, limit: int = DEFAULT_LIMIT) -> Iterator[np.ndarray]:
        raise NotImplementedError

    def check_limit(self, limit: int, what: str = "subgroup"):
        if self.cardinality > limit:
            raise EnumerationLimitError(what, self.cardinality, limit)

    def index_array(self, limit: int = DEFAULT_LIMIT) -> np.ndarray:
        self.check_limit(limit)
        blocks = list(self.iter_blocks(limit))
        if not blocks:
            return np.empty((0, self.k), dtype=np.int64)
        return np.concatenate(blocks, axis=0)

    def element_set(self, limit: int = DEFAULT_LIMIT) -> frozenset:
        return frozenset(map(tuple, self.index_array(limit).tolist()))

    def same_elements(self, other: "Subgroup", limit: int = DEFAULT_LIMIT) -> bool:
        if other.group != self.group or other.k != self.k:
            return False
        return self.cardinality == other.cardinality and self.element_set(limit) == other.element_set(limit)


class ParametrizedSubgroup(Subgroup):
    def __init__(self, group: GroupSpec, matrix):
        matrix = np.array(matrix, dtype=np.int64)
        if matrix.ndim != 2:
            raise ValueError("parametrisation matrix must be two-dimensional")
        self.group = group
        self.matrix = matrix
        self.matrix.flags.writeable = False
        self.k = matrix.shape[0]
        self.cardinality = group.cardinality ** matrix.shape[1]

    def __repr__(self):
        return f"ParametrizedSubgroup({self.group}, k={self.k}, size={self.cardinality})"

    def iter_blocks(self, limit: int = DEFAULT_LIMIT) -> Iterator[np.ndarray]:
        self.check_limit(limit)
        if self.cardinality <= CACHE_ROWS:
            full = _cached_image(self.group, self.matrix.tobytes(), self.matrix.shape)
            for start in range(0, full.shape[0], BLOCK_ROWS):
                yield full[start:start + BLOCK_ROWS]
            return
        m = self.matrix.shape[1]
        for start in range(0, self.cardinality, BLOCK_ROWS):
            stop = min(self.cardinality, start + BLOCK_ROWS)
            yield _apply_matrix(self.group, self.matrix, _param_digits(self.group, m, start, stop))

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        params = rng.integers(0, self.group.cardinality, size=(size, self.matrix.shape[1]))
        return _apply_matrix(self.group, self.matrix, params)


class ExplicitSubgroup(Subgroup):
    def __init__(self, group: GroupSpec, rows, k: int | None = None, check: bool = True):
        rows = np.array(rows, dtype=np.int64)
        if rows.ndim == 1:
            rows = rows.reshape(-1, k if k is not None else 1)
        if k is not None and rows.shape[1] != k:
            raise SpecMismatchError(f"rows have {rows.shape[1]} coordinates, expected {k}")
        if rows.size and (rows.min() < 0 or rows.max() >= group.cardinality):
            raise ValueError("element indices out of range for the group")
        rows = np.unique(rows, axis=0) if rows.shape[0] else rows
        rows.flags.writeable = False
        self.group = group
        self.rows = rows
        self.k = rows.shape[1]
        self.cardinality = rows.shape[0]
        if check and not self.is_closed():
            raise ValueError("element list is not closed under addition and negation")

    def __repr__(self):
        return f"ExplicitSubgroup({self.group}, k={self.k}, size={self.cardinality})"

    def iter_blocks(self, limit: int = DEFAULT_LIMIT) -> Iterator[np.ndarray]:
        self.check_limit(limit)
        for start in range(0, self.cardinality, BLOCK_ROWS):
            yield self.rows[start:start + BLOCK_ROWS]

    def is_closed(self) -> bool:
        if self.cardinality == 0:
            return False
        members = set(map(tuple, self.rows.tolist()))
        zero = (int(self.group.flat_index(np.zeros(self.group.rank, dtype=np.int64))),) * self.k
        if zero not in members:
            return False
        add, neg = self.group.addition_table, self.group.negation_table
        if any(tuple(r) not in members for r in neg[self.rows].tolist()):
            return False
        for row in self.rows:
            sums = add[row[None, :], self.rows]
            if any(tuple(s) not in members for s in sums.tolist()):
                return False
        return True


def full_power(group: GroupSpec, k: int) -> ParametrizedSubgroup:
    return ParametrizedSubgroup(group, np.eye(k, dtype=np.int64))


def translate(rows: np.ndarray, group: GroupSpec, t: np.ndarray) -> np.ndarray:
    """Add the fixed tuple ``t`` (flat indices) to every row."""
    return group.addition_table[rows.astype(np.int64), np.asarray(t, dtype=np.int64)[None, :]]
