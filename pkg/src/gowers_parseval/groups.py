"""Finite abelian groups Z/n_1 x ... x Z/n_r, their duals, and the character pairing.

Elements are residue tuples. The dual group is identified with the group itself
through the canonical isomorphism, so a :class:`Character` carries the same kind
of residue tuple as a :class:`GroupElement`; the pairing is

    <xi, x> = exp(2 pi i sum_j xi_j x_j / n_j).

Every table in the package is laid out in mixed-radix order with the last factor
varying fastest, which is also numpy's C order for an array of shape ``orders``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import EnumerationLimitError, SpecMismatchError

DEFAULT_ELEMENT_LIMIT = 10**7


@dataclass(frozen=True)
class GroupSpec:
    """A finite abelian group given by its cyclic factor orders."""

    orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(n) for n in self.orders)
        if any(n < 1 for n in orders):
            raise ValueError(f"cyclic factor orders must be >= 1, got {orders}")
        object.__setattr__(self, "orders", orders)

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        """Parse the ``"2x3x5"`` text format."""
        parts = str(text).strip().lower().replace("z/", "").split("x")
        try:
            orders = tuple(int(p) for p in parts)
        except ValueError:
            raise ValueError(f"malformed group spec {text!r}; expected e.g. '2x3x5'") from None
        return cls(orders)

    def __str__(self):
        return "x".join(str(n) for n in self.orders) if self.orders else "1"

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def cardinality(self) -> int:
        return math.prod(self.orders)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.orders) if self.orders else 1

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def element(self, residues: Sequence[int]) -> "GroupElement":
        return GroupElement(self, tuple(residues))

    def character(self, residues: Sequence[int]) -> "Character":
        return Character(self, tuple(residues))

    def element_at(self, index: int) -> "GroupElement":
        return GroupElement(self, tuple(int(r) for r in self.residue_table[index]))

    # -- vectorised helpers (flat index <-> residues) --------------------------

    @cached_property
    def strides(self) -> np.ndarray:
        strides = np.ones(self.rank, dtype=np.int64)
        for j in range(self.rank - 2, -1, -1):
            strides[j] = strides[j + 1] * self.orders[j + 1]
        return strides

    @cached_property
    def residue_table(self) -> np.ndarray:
        """Residues of every element, shape ``(|G|, rank)``, mixed-radix order."""
        if self.rank == 0:
            return np.zeros((1, 0), dtype=np.int64)
        grids = np.indices(self.orders).reshape(self.rank, -1).T
        table = np.ascontiguousarray(grids, dtype=np.int64)
        table.flags.writeable = False
        return table

    def flat_index(self, residues: np.ndarray) -> np.ndarray:
        """Map residue arrays (last axis = factors) to flat element indices."""
        residues = np.asarray(residues, dtype=np.int64)
        if self.rank == 0:
            return np.zeros(residues.shape[:-1], dtype=np.int64)
        reduced = np.mod(residues, np.asarray(self.orders, dtype=np.int64))
        return reduced @ self.strides

    @cached_property
    def addition_table(self) -> np.ndarray:
        """``table[a, b]`` is the flat index of ``a + b``."""
        res = self.residue_table
        table = self.flat_index(res[:, None, :] + res[None, :, :])
        table.flags.writeable = False
        return table

    @cached_property
    def negation_table(self) -> np.ndarray:
        table = self.flat_index(-self.residue_table)
        table.flags.writeable = False
        return table

    @cached_property
    def phase_table(self) -> np.ndarray:
        """Integer pairing phases: ``<xi, x> = exp(2 pi i table[xi, x] / exponent)``."""
        res = self.residue_table
        scale = np.asarray([self.exponent // n for n in self.orders], dtype=np.int64)
        table = np.mod((res * scale) @ res.T, self.exponent)
        table.flags.writeable = False
        return table

    @cached_property
    def pairing_matrix(self) -> np.ndarray:
        """Complex character table, rows indexed by characters, columns by elements."""
        table = np.exp(2j * np.pi * self.phase_table / self.exponent)
        table.flags.writeable = False
        return table


@dataclass(frozen=True)
class GroupElement:
    spec: GroupSpec
    residues: tuple[int, ...] = field(default=())

    def __post_init__(self):
        residues = tuple(int(r) for r in self.residues)
        if len(residues) != self.spec.rank:
            raise SpecMismatchError(
                f"{len(residues)} residues given for a group with {self.spec.rank} factors"
            )
        object.__setattr__(
            self, "residues", tuple(r % n for r, n in zip(residues, self.spec.orders))
        )

    def _check(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        if other.spec != self.spec:
            raise SpecMismatchError(f"elements of {self.spec} and {other.spec} cannot be combined")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return type(self)(self.spec, tuple(a + b for a, b in zip(self.residues, other.residues)))

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return type(self)(self.spec, tuple(a - b for a, b in zip(self.residues, other.residues)))

    def __neg__(self):
        return type(self)(self.spec, tuple(-a for a in self.residues))

    def __mul__(self, k):
        if not isinstance(k, (int, np.integer)):
            return NotImplemented
        return type(self)(self.spec, tuple(int(k) * a for a in self.residues))

    __rmul__ = __mul__

    @property
    def index(self) -> int:
        return int(self.spec.flat_index(np.asarray(self.residues, dtype=np.int64)))

    def is_zero(self) -> bool:
        return not any(self.residues)

    def to_list(self) -> list[int]:
        return list(self.residues)


class Character(GroupElement):
    """An additive character, written additively as a residue tuple."""

    def __call__(self, x: GroupElement) -> complex:
        return pairing(self, x)

    def is_trivial(self) -> bool:
        return self.is_zero()


def add(a: GroupElement, b: GroupElement) -> GroupElement:
    return a + b


def pairing(chi: GroupElement, x: GroupElement) -> complex:
    """Evaluate the character ``chi`` at ``x``."""
    if chi.spec != x.spec:
        raise SpecMismatchError(f"character of {chi.spec} paired with element of {x.spec}")
    spec = chi.spec
    L = spec.exponent
    phase = sum(a * b * (L // n) for a, b, n in zip(chi.residues, x.residues, spec.orders)) % L
    return complex(np.exp(2j * np.pi * phase / L))


def enumerate_elements(spec: GroupSpec, limit: int = DEFAULT_ELEMENT_LIMIT) -> list[GroupElement]:
    if spec.cardinality > limit:
        raise EnumerationLimitError(f"group {spec}", spec.cardinality, limit)
    return [GroupElement(spec, tuple(int(r) for r in row)) for row in spec.residue_table]


def enumerate_characters(spec: GroupSpec, limit: int = DEFAULT_ELEMENT_LIMIT) -> list[Character]:
    if spec.cardinality > limit:
        raise EnumerationLimitError(f"dual of {spec}", spec.cardinality, limit)
    return [Character(spec, tuple(int(r) for r in row)) for row in spec.residue_table]


def as_group(group) -> GroupSpec:
    """Accept a GroupSpec, an ``"2x3"`` string, an int, or a sequence of orders."""
    if isinstance(group, GroupSpec):
        return group
    if isinstance(group, str):
        return GroupSpec.parse(group)
    if isinstance(group, (int, np.integer)):
        return GroupSpec((int(group),))
    if isinstance(group, Iterable):
        return GroupSpec(tuple(group))
    raise TypeError(f"cannot interpret {group!r} as a finite abelian group")
