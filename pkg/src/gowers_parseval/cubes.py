"""Vertices of {0,1}^d, cubes of group elements, faces and Gray-sum boundaries.

Coordinates are labelled ``1..d``; coordinate ``i`` is bit ``i - 1`` of a vertex,
and vertex tables are indexed by the integer value of the bit pattern. When
coordinates are removed (restriction, boundary) the surviving coordinates are
relabelled ``1..d'`` in increasing order.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import SpecMismatchError
from .groups import GroupElement, GroupSpec


def weight(vertex: int) -> int:
    return int(vertex).bit_count()


def vertices(d: int) -> range:
    return range(1 << d)


@lru_cache(maxsize=None)
def weights(d: int) -> np.ndarray:
    w = np.array([weight(v) for v in vertices(d)], dtype=np.int64)
    w.flags.writeable = False
    return w


def vertex_from_bits(bits: Sequence[int]) -> int:
    """``bits[i - 1]`` is coordinate ``i``."""
    return sum((int(b) & 1) << j for j, b in enumerate(bits))


def vertex_bits(vertex: int, d: int) -> tuple[int, ...]:
    return tuple((vertex >> j) & 1 for j in range(d))


def _normalise_coords(B: Iterable[int], d: int) -> tuple[int, ...]:
    coords = tuple(sorted({int(i) for i in B}))
    if any(i < 1 or i > d for i in coords):
        raise ValueError(f"coordinates {coords} are not within 1..{d}")
    return coords


def _fixed_bits(coords: tuple[int, ...], fixed) -> tuple[int, ...]:
    if isinstance(fixed, Mapping):
        if set(fixed) != set(coords):
            raise ValueError(f"fixed assignment keys {sorted(fixed)} do not match {list(coords)}")
        bits = tuple(int(fixed[i]) for i in coords)
    elif isinstance(fixed, (int, np.integer)) and len(coords) <= 1:
        bits = (int(fixed),) * len(coords)
    else:
        bits = tuple(int(b) for b in fixed)
        if len(bits) != len(coords):
            raise ValueError("fixed assignment must give one bit per frozen coordinate")
    if any(b not in (0, 1) for b in bits):
        raise ValueError(f"fixed assignment must consist of bits, got {bits}")
    return bits


def _embed(rest: tuple[int, ...], rest_vertex: int, coords: tuple[int, ...], bits: int) -> int:
    """Assemble a vertex of {0,1}^A from its A\\B part and its B part."""
    v = 0
    for j, i in enumerate(rest):
        v |= ((rest_vertex >> j) & 1) << (i - 1)
    for j, i in enumerate(coords):
        v |= ((bits >> j) & 1) << (i - 1)
    return v


@lru_cache(maxsize=None)
def face_layout(d: int, coords: tuple[int, ...]) -> np.ndarray:
    """``layout[w, t]``: vertex with A\\B part ``w`` and B part ``t`` (both packed)."""
    rest = tuple(i for i in range(1, d + 1) if i not in coords)
    layout = np.array(
        [[_embed(rest, w, coords, t) for t in range(1 << len(coords))] for w in range(1 << len(rest))],
        dtype=np.int64,
    ).reshape(1 << len(rest), 1 << len(coords))
    layout.flags.writeable = False
    return layout


class CubePoint:
    """A point of G^{{0,1}^d}: one group element per vertex.

    ``values`` has shape ``(2**d, rank)`` and holds reduced residues.
    """

    __slots__ = ("spec", "values", "d")

    def __init__(self, spec: GroupSpec, values):
        arr = np.array(values, dtype=np.int64).reshape(-1, spec.rank)
        n = arr.shape[0]
        if n == 0 or n & (n - 1):
            raise ValueError(f"a cube needs 2**d vertex values, got {n}")
        if spec.rank:
            arr = np.mod(arr, np.asarray(spec.orders, dtype=np.int64))
        arr.flags.writeable = False
        self.spec = spec
        self.values = arr
        self.d = n.bit_length() - 1

    @classmethod
    def from_elements(cls, elements: Sequence[GroupElement]) -> "CubePoint":
        if not elements:
            raise ValueError("empty element list")
        spec = elements[0].spec
        if any(e.spec != spec for e in elements):
            raise SpecMismatchError("cube values must share one group")
        return cls(spec, [e.residues for e in elements])

    @classmethod
    def from_indices(cls, spec: GroupSpec, indices) -> "CubePoint":
        return cls(spec, spec.residue_table[np.asarray(indices, dtype=np.int64)])

    @classmethod
    def zero(cls, spec: GroupSpec, d: int) -> "CubePoint":
        return cls(spec, np.zeros((1 << d, spec.rank), dtype=np.int64))

    @classmethod
    def constant(cls, x: GroupElement, d: int) -> "CubePoint":
        return cls(x.spec, np.tile(np.asarray(x.residues, dtype=np.int64), (1 << d, 1)))

    def __getitem__(self, vertex: int) -> GroupElement:
        return GroupElement(self.spec, tuple(int(r) for r in self.values[vertex]))

    def __len__(self):
        return self.values.shape[0]

    def elements(self) -> list[GroupElement]:
        return [self[v] for v in vertices(self.d)]

    def indices(self) -> np.ndarray:
        return self.spec.flat_index(self.values)

    def _check(self, other: "CubePoint"):
        if not isinstance(other, CubePoint):
            raise TypeError(f"expected a CubePoint, got {type(other).__name__}")
        if other.spec != self.spec or other.d != self.d:
            raise SpecMismatchError(
                f"cannot combine a {self.d}-cube over {self.spec} with a {other.d}-cube over {other.spec}"
            )

    def __add__(self, other):
        self._check(other)
        return CubePoint(self.spec, self.values + other.values)

    def __sub__(self, other):
        self._check(other)
        return CubePoint(self.spec, self.values - other.values)

    def __neg__(self):
        return CubePoint(self.spec, -self.values)

    def __eq__(self, other):
        if not isinstance(other, CubePoint):
            return NotImplemented
        return self.spec == other.spec and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.spec, self.values.tobytes()))

    def __repr__(self):
        return f"CubePoint({self.spec}, d={self.d}, {self.to_list()})"

    def is_zero(self) -> bool:
        return not self.values.any()

    def to_list(self) -> list[list[int]]:
        return self.values.tolist()


def restrict(p: CubePoint, B: Iterable[int], fixed=0) -> CubePoint:
    """The face of ``p`` with the coordinates in ``B`` frozen to ``fixed``."""
    coords = _normalise_coords(B, p.d)
    bits = vertex_from_bits(_fixed_bits(coords, fixed))
    layout = face_layout(p.d, coords)
    return CubePoint(p.spec, p.values[layout[:, bits]])


def delta(p: CubePoint, i: int) -> CubePoint:
    """Single-direction boundary: ``p o s_i^0 - p o s_i^1``."""
    (i,) = _normalise_coords([i], p.d)
    return restrict(p, [i], 0) - restrict(p, [i], 1)


def boundary(p: CubePoint, B: Iterable[int]) -> CubePoint:
    """Alternating Gray sum over the ``B``-directional faces of ``p``.

    ``(delta_B p)(w) = sum_t (-1)^{|t|} x_{(w, t)}``; an empty ``B`` returns ``p``.
    """
    coords = _normalise_coords(B, p.d)
    layout = face_layout(p.d, coords)
    signs = np.where(weights(len(coords)) % 2 == 0, 1, -1)
    summed = np.einsum("t,wtr->wr", signs, p.values[layout])
    return CubePoint(p.spec, summed)


def pullback(q: CubePoint, B: Iterable[int]) -> CubePoint:
    """Replicate ``q`` along the new coordinates ``B`` of a ``(q.d + |B|)``-cube."""
    B = set(int(i) for i in B)
    d = q.d + len(B)
    coords = _normalise_coords(B, d)
    layout = face_layout(d, coords)
    out = np.empty((1 << d, q.spec.rank), dtype=np.int64)
    for t in range(1 << len(coords)):
        out[layout[:, t]] = q.values
    return CubePoint(q.spec, out)


def split_faces(p: CubePoint, i: int) -> tuple[CubePoint, CubePoint]:
    return restrict(p, [i], 0), restrict(p, [i], 1)


def join_faces(p0: CubePoint, p1: CubePoint, i: int) -> CubePoint:
    """Inverse of :func:`split_faces`: glue two faces along new coordinate ``i``."""
    p0._check(p1)
    d = p0.d + 1
    coords = _normalise_coords([i], d)
    layout = face_layout(d, coords)
    out = np.empty((1 << d, p0.spec.rank), dtype=np.int64)
    out[layout[:, 0]] = p0.values
    out[layout[:, 1]] = p1.values
    return CubePoint(p0.spec, out)
