"""Corner convolutions and their Fourier identity.

For a cube of functions with the 0-corner removed, ``F' = (f_w)_{w != 0}``,

    K(F')(x)      = E_{r in D_0 P^{d,l}(G)}          prod_{w != 0} C^{|w|} f_w(x + r_w)
    K(F'^)(chi)   = sum_{R in D_0 P^{d,d-l-1}(Ĝ)}    prod_{w != 0} C^{|w|} f^_w(chi + R_w)

where ``D_0`` marks cubes vanishing at the 0-corner. The first pairs with
``f_0`` to give ``<F>_{d,l} = E_x f_0(x) K(F')(x)``; the transform of the
first is the second read at ``-chi``.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .cube_spaces import CubeSpaceSpec, vanishing_corner_space
from .cubes import weights
from .errors import SpecMismatchError
from .fourier import dft
from .functions import FunctionCube, GroupFunction
from .gowers import inner_product_primal
from .groups import as_group
from .lattice import signed_product_sum
from .reports import IdentityReport, residual
from .subgroups import DEFAULT_LIMIT, ExplicitSubgroup, ParametrizedSubgroup, Subgroup

DEGENERATE_CUBIC_MATRIX = np.array([[1, 0], [1, 1], [1, 1], [1, 1], [1, 2], [1, 2], [1, 2], [1, 3]])
DEGENERATE_CUBIC_SIGNS = (0, 1, 1, 1, 0, 0, 0, 1)


class PuncturedCube:
    """The functions ``f_w`` at the ``2^d - 1`` nonzero vertices of a cube."""

    __slots__ = ("spec", "d", "entries", "dual")

    def __init__(self, entries: Sequence[GroupFunction]):
        entries = tuple(entries)
        n = len(entries) + 1
        if n & (n - 1) or n < 2:
            raise ValueError(f"a punctured cube needs 2**d - 1 entries with d >= 1, got {len(entries)}")
        spec = entries[0].spec
        if any(f.spec != spec for f in entries):
            raise SpecMismatchError("all functions in a cube must share one group")
        if any(f.dual != entries[0].dual for f in entries):
            raise SpecMismatchError("cannot mix functions on a group and on its dual")
        self.spec = spec
        self.d = n.bit_length() - 1
        self.entries = entries
        self.dual = entries[0].dual

    @classmethod
    def from_cube(cls, F: FunctionCube) -> "PuncturedCube":
        return cls(F.punctured())

    @classmethod
    def random(cls, spec, d: int, rng: np.random.Generator, kind="complex-gaussian"):
        spec = as_group(spec)
        return cls([GroupFunction.random(spec, rng, kind) for _ in range((1 << d) - 1)])

    def complete(self, f0: GroupFunction) -> FunctionCube:
        """Put ``f0`` back at the 0-corner."""
        return FunctionCube((f0,) + self.entries)

    def __len__(self):
        return len(self.entries)

    def __repr__(self):
        return f"PuncturedCube({'dual ' if self.dual else ''}{self.spec}, d={self.d})"


def convolution_space(spec, d: int, l: int, side: str = "primal") -> ParametrizedSubgroup:
    """``D_0 P^{d,l}`` (primal) or ``D_0 P^{d,d-l-1}`` (dual) as a subgroup of G^{2^d}."""
    if side == "primal":
        degree = l
    elif side == "dual":
        degree = CubeSpaceSpec(as_group(spec), d, l).dual().l
    else:
        raise ValueError(f"side must be 'primal' or 'dual', got {side!r}")
    return vanishing_corner_space(as_group(spec), d, degree, 0)


def puncture(space: Subgroup, limit: int = DEFAULT_LIMIT) -> ExplicitSubgroup:
    """Drop the 0-vertex coordinate: the image of ``space`` in G^{2^d - 1}."""
    return ExplicitSubgroup(space.group, space.index_array(limit)[:, 1:], check=False)


def punctured_dual_space(spec, d: int, l: int, limit: int = DEFAULT_LIMIT) -> ExplicitSubgroup:
    """Signed dual of the punctured ``D_0 P^{d,l}(G)``: the whole ``P^{d,d-l-1}(Ĝ)`` punctured.

    It is the union of the translates ``chi + D_0 P^{d,d-l-1}(Ĝ)`` over
    constant ``chi``, which is why the dual convolution is read at ``chi + R``.
    """
    spec = as_group(spec)
    return puncture(CubeSpaceSpec(spec, d, l).dual().subgroup(), limit)


def corner_convolution(
    Fp: PuncturedCube, l: int, side: str = "primal", limit: int = DEFAULT_LIMIT
) -> GroupFunction:
    """Mean (primal) or sum (dual) of the shifted signed product, per base point."""
    if not 0 <= l <= Fp.d - 1:
        raise ValueError(f"corner convolutions need 0 <= l <= d - 1, got l={l}, d={Fp.d}")
    if side == "dual" and not Fp.dual:
        raise SpecMismatchError("the dual-side convolution expects transformed entries")
    if side == "primal" and Fp.dual:
        raise SpecMismatchError("the primal convolution expects functions on the group")
    spec = Fp.spec
    space = convolution_space(spec, Fp.d, l, side)
    values = np.stack([f.values for f in Fp.entries])
    odd = (weights(Fp.d)[1:] % 2 == 1)[:, None]
    signed = np.where(odd, np.conj(values), values)
    add = spec.addition_table
    out = np.zeros(spec.cardinality, dtype=np.complex128)
    for block in space.iter_blocks(limit):
        block = block.astype(np.int64)
        prod = np.ones((spec.cardinality, block.shape[0]), dtype=np.complex128)
        for w in range(1, 1 << Fp.d):
            prod *= signed[w - 1][add[:, block[:, w]]]
        out += prod.sum(axis=1)
    if side == "primal":
        out /= space.cardinality
    return GroupFunction(spec, out, dual=(side == "dual"))


def inner_product_via_convolution(F: FunctionCube, l: int, limit: int = DEFAULT_LIMIT) -> complex:
    """``<F>_{d,l}`` as ``E_x f_0(x) K(F')(x)``; needs ``0 <= l <= d - 1``."""
    K = corner_convolution(PuncturedCube.from_cube(F), l, "primal", limit)
    return complex(np.mean(F[0].values * K.values))


def convolution_fourier_check(
    Fp: PuncturedCube, l: int, limit: int = DEFAULT_LIMIT, tolerance: float = 1e-9
) -> IdentityReport:
    """Compare ``dft(K(F'))(-chi)`` with ``K(F'^)(chi)`` at every character.

    The residual is the max over characters of ``|lhs - rhs| / max(1, |lhs|)``.
    """
    K = corner_convolution(Fp, l, "primal", limit)
    lhs = dft(K).reflect().values
    Fhat = PuncturedCube([dft(f) for f in Fp.entries])
    rhs = corner_convolution(Fhat, l, "dual", limit).values
    res = float(np.max(np.abs(lhs - rhs) / np.maximum(1.0, np.abs(lhs))))
    return IdentityReport(
        check="convolution-fourier",
        lhs=lhs,
        rhs=rhs,
        residual=res,
        params={"group": str(Fp.spec), "d": Fp.d, "l": l, "dual_l": CubeSpaceSpec(Fp.spec, Fp.d, l).dual().l},
        sizes={
            "primal": convolution_space(Fp.spec, Fp.d, l, "primal").cardinality,
            "dual": convolution_space(Fp.spec, Fp.d, l, "dual").cardinality,
        },
        tolerance=tolerance,
    )


def convolution_reduction_check(F: FunctionCube, l: int, limit: int = DEFAULT_LIMIT, tolerance: float = 1e-9):
    """``<F>_{d,l}`` directly versus through the corner convolution."""
    lhs = inner_product_primal(F, l, limit)
    rhs = inner_product_via_convolution(F, l, limit)
    return IdentityReport(
        check="convolution-reduction",
        lhs=lhs,
        rhs=rhs,
        residual=residual(lhs, rhs),
        params={"group": str(F.spec), "d": F.d, "l": l},
        tolerance=tolerance,
    )


# -- degenerate cubic average ----------------------------------------------------


def degenerate_cubic_space(spec) -> ParametrizedSubgroup:
    """``{(x, x+a, x+a, x+a, x+2a, x+2a, x+2a, x+3a)}`` inside G^8."""
    return ParametrizedSubgroup(as_group(spec), DEGENERATE_CUBIC_MATRIX)


def degenerate_cubic_form(fs: Sequence[GroupFunction] | GroupFunction, limit: int = DEFAULT_LIMIT) -> complex:
    """``E_{x,a} f1(x) conj(f2 f3 f4)(x+a) (f5 f6 f7)(x+2a) conj(f8(x+3a))``."""
    if isinstance(fs, GroupFunction):
        fs = [fs] * 8
    fs = list(fs)
    if len(fs) != 8:
        raise ValueError(f"the degenerate cubic form takes 8 functions, got {len(fs)}")
    space = degenerate_cubic_space(fs[0].spec)
    tables = np.stack([f.values for f in fs])
    return signed_product_sum(tables, DEGENERATE_CUBIC_SIGNS, space, limit) / space.cardinality


def degenerate_cubic_probe(
    spec="5", trials: int = 2000, seed: int = 0, kinds=("complex-gaussian", "unit-phase", "real-gaussian")
) -> IdentityReport:
    """Random search for ``f`` making the diagonal degenerate cubic form negative.

    Reports the smallest real part found and the largest imaginary part seen;
    it asserts nothing (``informational=True``).
    """
    spec = as_group(spec)
    rng = np.random.default_rng(seed)
    best, best_values, max_imag = np.inf, None, 0.0
    for t in range(trials):
        f = GroupFunction.random(spec, rng, kinds[t % len(kinds)])
        value = degenerate_cubic_form(f)
        max_imag = max(max_imag, abs(value.imag))
        if value.real < best:
            best, best_values = value.real, f.values
    return IdentityReport(
        check="degenerate-cubic-probe",
        lhs=best,
        rhs=0.0,
        residual=0.0,
        params={
            "group": str(spec),
            "trials": trials,
            "seed": seed,
            "min_real": best,
            "max_abs_imag": max_imag,
            "negative_found": bool(best < 0),
            "witness": best_values,
        },
        informational=True,
    )
