"""Fourier transform on Z/n_1 x ... x Z/n_r.

Normalisation is fixed: averages on the group, sums on the dual,

    f^(chi) = E_x f(x) conj(<chi, x>),        f(x) = sum_chi f^(chi) <chi, x>.

The fast path is a separable transform (numpy's n-dimensional FFT over the
factor axes); :func:`dft_naive` multiplies by the full character table and
serves as its reference.
"""

from __future__ import annotations

import numpy as np

from .errors import SpecMismatchError
from .functions import FunctionCube, GroupFunction


def _grid(f: GroupFunction) -> np.ndarray:
    return f.values.reshape(f.spec.orders) if f.spec.rank else f.values.reshape(())


def dft(f: GroupFunction) -> GroupFunction:
    if f.dual:
        raise SpecMismatchError("dft expects a function on the group, got a spectrum")
    if f.spec.rank == 0:
        return GroupFunction(f.spec, f.values, dual=True)
    out = np.fft.fftn(_grid(f), norm="forward")
    return GroupFunction(f.spec, out.reshape(-1), dual=True)


def idft(fhat: GroupFunction) -> GroupFunction:
    if not fhat.dual:
        raise SpecMismatchError("idft expects a spectrum (a function on the dual group)")
    if fhat.spec.rank == 0:
        return GroupFunction(fhat.spec, fhat.values)
    out = np.fft.ifftn(_grid(fhat), norm="forward")
    return GroupFunction(fhat.spec, out.reshape(-1))


def dft_naive(f: GroupFunction) -> GroupFunction:
    """O(|G|^2) transform straight from the character table."""
    table = f.spec.pairing_matrix
    return GroupFunction(f.spec, np.conj(table) @ f.values / f.spec.cardinality, dual=True)


def idft_naive(fhat: GroupFunction) -> GroupFunction:
    table = fhat.spec.pairing_matrix
    return GroupFunction(fhat.spec, table.T @ fhat.values)


def cube_dft(F: FunctionCube) -> FunctionCube:
    return FunctionCube([dft(f) for f in F.entries])


def cube_idft(Fhat: FunctionCube) -> FunctionCube:
    return FunctionCube([idft(f) for f in Fhat.entries])


def parseval_check(F: FunctionCube, l: int, limit: int | None = None, tolerance: float = 1e-9):
    """``<F>_{d,l}`` on the group against ``<F^>_{d,d-l-1}`` on the dual."""
    from .cube_spaces import CubeSpaceSpec
    from .gowers import inner_product_dual, inner_product_primal
    from .reports import IdentityReport, residual
    from .subgroups import DEFAULT_LIMIT

    limit = DEFAULT_LIMIT if limit is None else limit
    primal = CubeSpaceSpec(F.spec, F.d, l)
    dual = primal.dual()
    lhs = inner_product_primal(F, l, limit)
    rhs = inner_product_dual(cube_dft(F), dual.l, limit)
    return IdentityReport(
        check="parseval",
        lhs=lhs,
        rhs=rhs,
        residual=residual(lhs, rhs),
        params={"group": str(F.spec), "d": F.d, "l": l, "dual_l": dual.l},
        sizes={"primal": primal.cardinality, "dual": dual.cardinality},
        tolerance=tolerance,
    )
