"""Multiplicative derivatives, 2^d-ary inner products and U^{d,l} norms.

For a cube of functions ``F = (f_w)`` and a point ``p = (x_w)``

    derivative(F, p) = prod_w C^{|w|} f_w(x_w)          (C = complex conjugation)

and the inner products average it over degree-l cubes:

    <F>_{d,l}   = mean over P^{d,l}(G) of derivative(F, p)
    <F^>_{d,l}  = sum  over P^{d,l}(Ĝ) of derivative(F^, P)

Both are evaluated exactly by enumerating the corner parametrisation of the
cube space. :func:`inner_product_monte_carlo` is the sampled approximation.
"""

from __future__ import annotations

import math

import numpy as np

from .cube_spaces import CubeSpaceSpec, vanishing_corner_space
from .cubes import CubePoint
from .errors import PositivityError, SpecMismatchError
from .fourier import cube_dft
from .functions import FunctionCube, GroupFunction
from .subgroups import DEFAULT_LIMIT, Subgroup

RTOL = 1e-9
ATOL = 1e-12
NEGATIVE_CLAMP = 1e-10


def derivative(F: FunctionCube, p: CubePoint) -> complex:
    if F.spec != p.spec:
        raise SpecMismatchError(f"function cube on {F.spec} evaluated at a cube over {p.spec}")
    if F.d != p.d:
        raise SpecMismatchError(f"{F.d}-cube of functions evaluated at a {p.d}-cube")
    table = F.signed_table()
    return complex(np.prod(table[np.arange(len(F)), p.indices()]))


def shift(F: FunctionCube, q: CubePoint) -> FunctionCube:
    """``T^q F``: translate the entry at each vertex by ``q``'s value there."""
    if F.spec != q.spec or F.d != q.d:
        raise SpecMismatchError("shift needs a cube point of the same group and dimension")
    idx = q.indices()
    return FunctionCube([f.shift(int(y)) for f, y in zip(F.entries, idx)])


def derivative_sum(F: FunctionCube, space: Subgroup, limit: int = DEFAULT_LIMIT) -> complex:
    """Sum of ``derivative(F, p)`` over every ``p`` in ``space``."""
    if space.group != F.spec or space.k != len(F):
        raise SpecMismatchError("averaging space does not match the function cube")
    table = F.signed_table()
    rows = np.arange(len(F))[None, :]
    total = 0j
    for block in space.iter_blocks(limit):
        total += np.prod(table[rows, block], axis=1).sum()
    return complex(total)


def inner_product_primal(F: FunctionCube, l: int, limit: int = DEFAULT_LIMIT) -> complex:
    """``<F>_{d,l}``: the mean of the derivative over P^{d,l}(G)."""
    space = CubeSpaceSpec(F.spec, F.d, l)
    return derivative_sum(F, space.subgroup(), limit) / space.cardinality


def inner_product_dual(Fhat: FunctionCube, l: int, limit: int = DEFAULT_LIMIT) -> complex:
    """``<F^>_{d,l}``: the sum of the derivative over P^{d,l}(Ĝ)."""
    space = CubeSpaceSpec(Fhat.spec, Fhat.d, l)
    return derivative_sum(Fhat, space.subgroup(), limit)


def inner_product(F: FunctionCube, l: int, limit: int = DEFAULT_LIMIT, method: str = "auto") -> complex:
    """``<F>_{d,l}`` evaluated on whichever side has the smaller cube space.

    ``method="dual"`` goes through the transform and the identity
    ``<F>_{d,l} = <F^>_{d,d-l-1}``.
    """
    if method not in ("auto", "primal", "dual"):
        raise ValueError(f"unknown method {method!r}")
    space = CubeSpaceSpec(F.spec, F.d, l)
    if method == "auto":
        method = "dual" if space.dual().cardinality < space.cardinality else "primal"
    if method == "primal":
        return inner_product_primal(F, l, limit)
    return inner_product_dual(cube_dft(F), space.dual().l, limit)


def inner_product_monte_carlo(F: FunctionCube, l: int, samples: int = 10_000, seed=None):
    """Approximate ``<F>_{d,l}`` by uniform sampling; returns ``(estimate, standard error)``."""
    rng = np.random.default_rng(seed)
    space = CubeSpaceSpec(F.spec, F.d, l).subgroup()
    table = F.signed_table()
    vals = np.prod(table[np.arange(len(F))[None, :], space.sample(rng, samples)], axis=1)
    stderr = math.sqrt(np.var(vals) / samples) if samples > 1 else math.inf
    return complex(vals.mean()), stderr


def _faces(F: FunctionCube, i: int):
    if F.d < 1:
        raise ValueError("recursive evaluation needs d >= 1")
    return F.face(i, 0), F.face(i, 1)


def inner_product_recursive(
    F: FunctionCube, l: int, i: int = 1, mode: str = "face-product", limit: int = DEFAULT_LIMIT
) -> complex:
    """``<F>_{d,l}`` through one of the two splittings along coordinate ``i``.

    ``face-product``::

        <(F0, F1)>_{d,l} = E_{p' in P^{d-1,l-1}} <F0 * conj(T^{p'} F1)>_{d-1,l}

    ``corner-split``::

        <(F0, F1)>_{d,l} = E_{r in D_{l-1}P^{d-1,l}} <T^r F0>_{d-1,l-1} conj(<T^r F1>_{d-1,l-1})
    """
    if l < 0:
        raise ValueError("recursive formulas need l >= 0")
    l = min(l, F.d)
    F0, F1 = _faces(F, i)
    spec = F.spec
    table = spec.residue_table
    if mode == "face-product":
        outer = CubeSpaceSpec(spec, F.d - 1, l - 1).subgroup()
        total = 0j
        for block in outer.iter_blocks(limit):
            for row in block:
                shifted = shift(F1, CubePoint(spec, table[row.astype(np.int64)]))
                G = FunctionCube([a * b.conj() for a, b in zip(F0.entries, shifted.entries)])
                total += inner_product_primal(G, l, limit)
        return total / outer.cardinality
    if mode == "corner-split":
        outer = vanishing_corner_space(spec, F.d - 1, l, l - 1)
        total = 0j
        for block in outer.iter_blocks(limit):
            for row in block:
                r = CubePoint(spec, table[row.astype(np.int64)])
                a = inner_product_primal(shift(F0, r), l - 1, limit)
                b = inner_product_primal(shift(F1, r), l - 1, limit)
                total += a * np.conj(b)
        return complex(total / outer.cardinality)
    raise ValueError(f"unknown recursion mode {mode!r}")


def _as_nonnegative(value: complex, what: str) -> float:
    scale = max(1.0, abs(value))
    if abs(value.imag) > RTOL * scale:
        raise PositivityError(f"{what} = {value} is not real")
    if value.real < -NEGATIVE_CLAMP * scale:
        raise PositivityError(f"{what} = {value} is negative")
    return max(value.real, 0.0)


def uniformity_norm(
    f: GroupFunction, d: int, l: int, limit: int = DEFAULT_LIMIT, method: str = "auto"
) -> float:
    """``||f||_{U^{d,l}}``: the 2^d-th root of ``<(f, ..., f)>_{d,l}``.

    ``method="auto"`` evaluates the constant cube on the cheaper side of the
    Fourier duality. That keeps e.g. U^{4,2} over Z/7 tractable, and for l
    near d it avoids cancellation in a long primal mean whose value is tiny.
    """
    if l < 0:
        raise ValueError("uniformity norms are defined for l >= 0")
    if f.dual:
        raise SpecMismatchError("uniformity_norm expects a function on the group; use dual_uniformity_norm")
    value = inner_product(FunctionCube.constant(f, d), l, limit, method=method)
    return _as_nonnegative(value, f"<f>_{{{d},{l}}}") ** (1.0 / (1 << d))


def dual_uniformity_norm(fhat: GroupFunction, d: int, l: int, limit: int = DEFAULT_LIMIT) -> float:
    """The norm on the dual side: 2^d-th root of the sum over P^{d,l}(Ĝ)."""
    if l < 0:
        raise ValueError("uniformity norms are defined for l >= 0")
    value = inner_product_dual(FunctionCube.constant(fhat, d), l, limit)
    return _as_nonnegative(value, f"<f^>_{{{d},{l}}}") ** (1.0 / (1 << d))


def character_cube_product(P: CubePoint, l: int, limit: int = DEFAULT_LIMIT) -> complex:
    """``<P>_{d,l}`` for a cube of characters: 1 if deg P + l < d, else 0."""
    return inner_product_primal(FunctionCube.of_characters(P), l, limit)


def is_close(a: complex, b: complex, rtol: float = RTOL, atol: float = ATOL) -> bool:
    return abs(a - b) <= max(atol, rtol * max(abs(a), abs(b)))
