"""Degree-l cube spaces P^{d,l}(G): membership, corner completion, enumeration.

A degree-l cube is fixed by its values on the corner of vertices of weight at
most ``l``. Completion is linear with integer coefficients that do not depend
on the group, so each space is the image of ``G^k`` under one integer
``2**d x k`` matrix (``k = sum_{i<=l} C(d, i)``); enumeration, sampling and the
vanishing-corner subspaces D_{l'}P^{d,l} are all read off that matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Mapping

import numpy as np

from .cubes import (
    CubePoint,
    boundary,
    join_faces,
    split_faces,
    vertex_bits,
    vertices,
    weight,
)
from .errors import EnumerationLimitError, NotAMemberError, SpecMismatchError
from .groups import GroupElement, GroupSpec, as_group
from .subgroups import DEFAULT_LIMIT, ParametrizedSubgroup


@dataclass(frozen=True)
class CubeSpaceSpec:
    """Descriptor of P^{d,l}(G). Degrees ``l >= d`` mean the full space."""

    group: GroupSpec
    d: int
    l: int

    def __post_init__(self):
        object.__setattr__(self, "group", as_group(self.group))
        if self.d < 0:
            raise ValueError(f"dimension must be >= 0, got {self.d}")
        if self.l < -1:
            raise ValueError(f"degree must be >= -1, got {self.l}")

    @property
    def degree(self) -> int:
        return min(self.l, self.d)

    @property
    def corner_vertices(self) -> tuple[int, ...]:
        return corner_vertices(self.d, self.degree)

    @property
    def k(self) -> int:
        return len(self.corner_vertices)

    @property
    def cardinality(self) -> int:
        return self.group.cardinality ** self.k

    def completion_matrix(self) -> np.ndarray:
        return completion_matrix(self.d, self.degree)

    def subgroup(self) -> ParametrizedSubgroup:
        return ParametrizedSubgroup(self.group, self.completion_matrix())

    def dual(self) -> "CubeSpaceSpec":
        """The space P^{d, d-l-1} of the dual group (Ĝ is identified with G)."""
        return CubeSpaceSpec(self.group, self.d, max(self.d - self.degree - 1, -1))


@lru_cache(maxsize=None)
def corner_vertices(d: int, l: int) -> tuple[int, ...]:
    """Vertices of weight <= l, sorted by (weight, index)."""
    return tuple(v for v in sorted(vertices(d), key=lambda v: (weight(v), v)) if weight(v) <= l)


@lru_cache(maxsize=None)
def completion_matrix(d: int, l: int) -> np.ndarray:
    """Integer matrix sending corner values to the completed cube.

    Vertices above the corner are filled by increasing weight; the value at
    ``v`` solves the Gray equation on the face spanned by the ``l + 1``
    smallest coordinates in the support of ``v``.
    """
    l = min(l, d)
    corner = corner_vertices(d, l)
    C = np.zeros((1 << d, len(corner)), dtype=np.int64)
    for m, v in enumerate(corner):
        C[v, m] = 1
    rest = sorted((v for v in vertices(d) if weight(v) > l), key=lambda v: (weight(v), v))
    for v in rest:
        face = [j for j in range(d) if (v >> j) & 1][: l + 1]
        mask = sum(1 << j for j in face)
        acc = np.zeros(len(corner), dtype=np.int64)
        for t in range((1 << (l + 1)) - 1):
            u = v & ~mask
            for pos, j in enumerate(face):
                u |= ((t >> pos) & 1) << j
            acc += (-1) ** weight(t) * C[u]
        C[v] = (-1) ** l * acc
    C.flags.writeable = False
    return C


def _check_point(p: CubePoint, spec: CubeSpaceSpec):
    if p.spec != spec.group:
        raise SpecMismatchError(f"cube over {p.spec} tested against a space over {spec.group}")
    if p.d != spec.d:
        raise SpecMismatchError(f"{p.d}-cube tested against a space of dimension {spec.d}")


def is_member(p: CubePoint, spec: CubeSpaceSpec) -> bool:
    """Whether every Gray sum over an (l+1)-dimensional face of ``p`` vanishes."""
    _check_point(p, spec)
    l = spec.degree
    if l >= spec.d:
        return True
    return all(boundary(p, B).is_zero() for B in combinations(range(1, spec.d + 1), l + 1))


def exact_degree(p: CubePoint) -> int:
    for l in range(-1, p.d + 1):
        if is_member(p, CubeSpaceSpec(p.spec, p.d, l)):
            return l
    raise AssertionError("every cube lies in the full space")  # pragma: no cover


def corner_complete(corner: Mapping[int, GroupElement], spec: CubeSpaceSpec) -> CubePoint:
    """The unique member of P^{d,l} that agrees with ``corner`` on weights <= l."""
    wanted = spec.corner_vertices
    missing = [v for v in wanted if v not in corner]
    if missing:
        raise ValueError(f"corner assignment is missing vertices {missing}")
    extra = sorted(set(corner) - set(wanted))
    if extra:
        raise ValueError(f"corner assignment has vertices {extra} above weight {spec.degree}")
    group = spec.group
    if any(corner[v].spec != group for v in wanted):
        raise SpecMismatchError(f"corner values must lie in {group}")
    values = np.array([corner[v].residues for v in wanted], dtype=np.int64).reshape(len(wanted), group.rank)
    return CubePoint(group, spec.completion_matrix() @ values)


def corner_of(p: CubePoint, l: int) -> dict[int, GroupElement]:
    """The restriction of ``p`` to vertices of weight <= l."""
    return {v: p[v] for v in corner_vertices(p.d, min(l, p.d))}


def enumerate_cubes(spec: CubeSpaceSpec, limit: int = DEFAULT_LIMIT) -> Iterator[CubePoint]:
    """All points of P^{d,l}(G), in mixed-radix order of their corner values."""
    if spec.cardinality > limit:
        raise EnumerationLimitError(f"P^{{{spec.d},{spec.l}}}({spec.group})", spec.cardinality, limit)
    table = spec.group.residue_table
    for block in spec.subgroup().iter_blocks(limit):
        for row in block:
            yield CubePoint(spec.group, table[row.astype(np.int64)])


def sample_uniform(spec: CubeSpaceSpec, seed=None) -> CubePoint:
    rng = np.random.default_rng(seed)
    group = spec.group
    params = rng.integers(0, group.cardinality, size=spec.k)
    corner = group.residue_table[params].reshape(spec.k, group.rank)
    return CubePoint(group, spec.completion_matrix() @ corner)


def vanishing_corner_space(group: GroupSpec, d: int, l: int, vanish_upto: int) -> ParametrizedSubgroup:
    """D_{l'}P^{d,l}(G): the degree-l cubes that vanish on weights <= ``vanish_upto``."""
    group = as_group(group)
    l = min(l, d)
    corner = corner_vertices(d, l)
    cols = [m for m, v in enumerate(corner) if weight(v) > vanish_upto]
    return ParametrizedSubgroup(group, completion_matrix(d, l)[:, cols])


def _require_member(p: CubePoint, l: int):
    spec = CubeSpaceSpec(p.spec, p.d, l)
    if not is_member(p, spec):
        raise NotAMemberError(f"cube is not in P^{{{p.d},{l}}}({p.spec})")
    return spec


def decompose(p: CubePoint, i: int, l: int) -> tuple[CubePoint, CubePoint]:
    """``p -> (p o s_i^1, delta_i p)`` in P^{d-1,l} x P^{d-1,l-1}."""
    _require_member(p, l)
    p0, p1 = split_faces(p, i)
    return p1, p0 - p1


def recompose(q1: CubePoint, q2: CubePoint, i: int) -> CubePoint:
    return join_faces(q1 + q2, q1, i)


def corner_split(p: CubePoint, i: int, l: int) -> tuple[CubePoint, CubePoint, CubePoint]:
    """Split ``p`` into ``(r0, r1, rd)`` with ``p o s_i^a = r_a + rd``.

    ``r0``, ``r1`` are the degree-(l-1) cubes matching the two i-faces on
    weights <= l-1 and ``rd`` lies in D_{l-1}P^{d-1,l}.
    """
    if l < 0:
        raise ValueError("corner splitting needs l >= 0")
    _require_member(p, l)
    l = min(l, p.d)
    p0, p1 = split_faces(p, i)
    lower = CubeSpaceSpec(p.spec, p.d - 1, l - 1)
    r0 = corner_complete(corner_of(p0, l - 1), lower)
    r1 = corner_complete(corner_of(p1, l - 1), lower)
    same = CubeSpaceSpec(p.spec, p.d - 1, l)
    zero = p.spec.zero()
    rd_corner = {
        v: (zero if weight(v) <= l - 1 else p0[v] - r0[v]) for v in same.corner_vertices
    }
    rd = corner_complete(rd_corner, same)
    return r0, r1, rd


def cube_space_size_exponent(d: int, l: int) -> int:
    """``k = sum_{i<=l} C(d, i)`` with ``k = 0`` for ``l = -1``."""
    return sum(math.comb(d, i) for i in range(0, min(l, d) + 1))


def parallelepiped(x: GroupElement, steps: list[GroupElement]) -> CubePoint:
    """The degree-1 cube ``x_w = x + sum_i w_i h_i``."""
    d = len(steps)
    out = []
    for v in vertices(d):
        y = x
        for h, bit in zip(steps, vertex_bits(v, d)):
            if bit:
                y = y + h
        out.append(y)
    return CubePoint.from_elements(out)
