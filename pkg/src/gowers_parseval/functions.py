"""Complex-valued functions on a finite abelian group and cubes of them."""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .cubes import CubePoint, _normalise_coords, face_layout, weights
from .errors import SpecMismatchError
from .groups import GroupElement, GroupSpec, as_group, enumerate_elements


class GroupFunction:
    """A value table ``f(x)`` over the elements of ``spec`` in mixed-radix order.

    ``dual=True`` marks a function on the dual group (a spectrum); the table
    is then indexed by characters in the same order.
    """

    __slots__ = ("spec", "values", "dual")

    def __init__(self, spec: GroupSpec, values, dual: bool = False):
        spec = as_group(spec)
        arr = np.array(values, dtype=np.complex128).reshape(-1)
        if arr.shape[0] != spec.cardinality:
            raise SpecMismatchError(f"{arr.shape[0]} values given for a group of order {spec.cardinality}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("function values must be finite")
        arr.flags.writeable = False
        self.spec = spec
        self.values = arr
        self.dual = bool(dual)

    @classmethod
    def from_callable(cls, spec, fn: Callable[[GroupElement], complex], dual=False):
        spec = as_group(spec)
        return cls(spec, [fn(x) for x in enumerate_elements(spec)], dual=dual)

    @classmethod
    def constant(cls, spec, c: complex = 1.0, dual=False):
        spec = as_group(spec)
        return cls(spec, np.full(spec.cardinality, c, dtype=np.complex128), dual=dual)

    @classmethod
    def indicator(cls, x: GroupElement, dual=False):
        values = np.zeros(x.spec.cardinality, dtype=np.complex128)
        values[x.index] = 1.0
        return cls(x.spec, values, dual=dual)

    @classmethod
    def character(cls, chi: GroupElement):
        """The function ``x -> <chi, x>`` on the group."""
        return cls(chi.spec, chi.spec.pairing_matrix[chi.index])

    @classmethod
    def random(cls, spec, rng: np.random.Generator, kind: str = "complex-gaussian", dual=False):
        spec = as_group(spec)
        n = spec.cardinality
        if kind == "complex-gaussian":
            values = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        elif kind == "unit-phase":
            values = np.exp(2j * np.pi * rng.random(n))
        elif kind == "real-gaussian":
            values = rng.standard_normal(n).astype(np.complex128)
        else:
            raise ValueError(f"unknown random function kind {kind!r}")
        return cls(spec, values, dual=dual)

    def __call__(self, x) -> complex:
        if isinstance(x, GroupElement):
            if x.spec != self.spec:
                raise SpecMismatchError(f"function on {self.spec} evaluated at an element of {x.spec}")
            x = x.index
        return complex(self.values[x])

    def __repr__(self):
        side = "dual " if self.dual else ""
        return f"GroupFunction({side}{self.spec}, {np.array2string(self.values, precision=3)})"

    def _like(self, values):
        return GroupFunction(self.spec, values, dual=self.dual)

    def _other(self, other):
        if isinstance(other, GroupFunction):
            if other.spec != self.spec:
                raise SpecMismatchError(f"functions on {self.spec} and {other.spec} cannot be combined")
            return other.values
        if isinstance(other, (int, float, complex, np.number)):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else self._like(self.values + v)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else self._like(self.values - v)

    def __mul__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else self._like(self.values * v)

    __rmul__ = __mul__

    def __neg__(self):
        return self._like(-self.values)

    def conj(self) -> "GroupFunction":
        return self._like(np.conj(self.values))

    def shift(self, y) -> "GroupFunction":
        """``T^y f (x) = f(x + y)``."""
        if isinstance(y, GroupElement):
            if y.spec != self.spec:
                raise SpecMismatchError(f"shift by an element of {y.spec} on {self.spec}")
            y = y.index
        return self._like(self.values[self.spec.addition_table[:, int(y)]])

    def reflect(self) -> "GroupFunction":
        """``x -> f(-x)``."""
        return self._like(self.values[self.spec.negation_table])

    def allclose(self, other: "GroupFunction", rtol=1e-10, atol=1e-12) -> bool:
        return self.spec == other.spec and np.allclose(self.values, other.values, rtol=rtol, atol=atol)


class FunctionCube:
    """One function per vertex of {0,1}^d, all on the same group."""

    __slots__ = ("spec", "d", "entries", "values", "dual")

    def __init__(self, entries: Sequence[GroupFunction]):
        entries = tuple(entries)
        n = len(entries)
        if n == 0 or n & (n - 1):
            raise ValueError(f"a function cube needs 2**d entries, got {n}")
        spec = entries[0].spec
        if any(f.spec != spec for f in entries):
            raise SpecMismatchError("all functions in a cube must share one group")
        dual = entries[0].dual
        if any(f.dual != dual for f in entries):
            raise SpecMismatchError("cannot mix functions on a group and on its dual")
        self.spec = spec
        self.d = n.bit_length() - 1
        self.entries = entries
        self.dual = dual
        values = np.stack([f.values for f in entries])
        values.flags.writeable = False
        self.values = values

    @classmethod
    def from_array(cls, spec, values, dual=False):
        spec = as_group(spec)
        values = np.asarray(values, dtype=np.complex128).reshape(-1, spec.cardinality)
        return cls([GroupFunction(spec, row, dual=dual) for row in values])

    @classmethod
    def constant(cls, f: GroupFunction, d: int) -> "FunctionCube":
        return cls([f] * (1 << d))

    @classmethod
    def ones(cls, spec, d: int, dual=False) -> "FunctionCube":
        return cls.constant(GroupFunction.constant(spec, 1.0, dual=dual), d)

    @classmethod
    def random(cls, spec, d: int, rng: np.random.Generator, kind="complex-gaussian", dual=False):
        return cls([GroupFunction.random(spec, rng, kind, dual=dual) for _ in range(1 << d)])

    @classmethod
    def of_characters(cls, P: CubePoint) -> "FunctionCube":
        """The cube of character functions ``x -> <chi_w, x>`` for a character cube ``P``."""
        table = P.spec.pairing_matrix
        return cls([GroupFunction(P.spec, table[i]) for i in P.indices()])

    def __getitem__(self, vertex: int) -> GroupFunction:
        return self.entries[vertex]

    def __len__(self):
        return len(self.entries)

    def __repr__(self):
        return f"FunctionCube({'dual ' if self.dual else ''}{self.spec}, d={self.d})"

    def signed_table(self) -> np.ndarray:
        """Value table with odd-weight rows conjugated."""
        odd = (weights(self.d) % 2 == 1)[:, None]
        return np.where(odd, np.conj(self.values), self.values)

    def face(self, i: int, bit: int) -> "FunctionCube":
        """``F_{0_i}`` or ``F_{1_i}``: the sub-cube with coordinate ``i`` frozen."""
        coords = _normalise_coords([i], self.d)
        layout = face_layout(self.d, coords)
        return FunctionCube([self.entries[v] for v in layout[:, bit]])

    @classmethod
    def join(cls, F0: "FunctionCube", F1: "FunctionCube", i: int) -> "FunctionCube":
        if F0.d != F1.d:
            raise SpecMismatchError("faces must have equal dimension")
        d = F0.d + 1
        layout = face_layout(d, _normalise_coords([i], d))
        entries = [None] * (1 << d)
        for w in range(1 << F0.d):
            entries[layout[w, 0]] = F0.entries[w]
            entries[layout[w, 1]] = F1.entries[w]
        return cls(entries)

    def swap_faces(self, i: int) -> "FunctionCube":
        return FunctionCube.join(self.face(i, 1), self.face(i, 0), i)

    def map(self, fn: Callable[[int, GroupFunction], GroupFunction]) -> "FunctionCube":
        return FunctionCube([fn(v, f) for v, f in enumerate(self.entries)])

    def punctured(self) -> tuple[GroupFunction, ...]:
        return self.entries[1:]
