"""Integer lattices, signed duals and the higher-order Poisson summation formula.

A lattice ``Lambda <= Z^k`` cuts out the subgroup

    P^Lambda(G) = {x in G^k : sum_j v_j x_j = 0 for every v in Lambda}.

With a signature ``s: {1..k} -> {0, 1}`` the signed dual of ``H <= G^k`` is

    H^{perp_s} = {(chi_j) : prod_j C^{s_j} <chi_j, x_j> = 1 for all x in H},

and for lattices whose Smith normal form has unit pivots it is again a lattice
subgroup, cut out by the orthogonal complement for
``<v, w>_s = sum_j (-1)^{s_j} v_j w_j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .cube_spaces import CubeSpaceSpec
from .cubes import face_layout, weights
from .errors import SpecMismatchError
from .fourier import dft
from .functions import GroupFunction
from .groups import GroupSpec, as_group
from .reports import IdentityReport, residual
from .subgroups import (
    DEFAULT_LIMIT,
    ExplicitSubgroup,
    ParametrizedSubgroup,
    Subgroup,
    full_power,
    translate,
)

# -- Smith normal form ---------------------------------------------------------


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _det(M) -> int:
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    A = [list(row) for row in M]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[-1][-1]


@dataclass(frozen=True)
class SmithForm:
    """``U @ M @ V == D`` with ``U``, ``V`` unimodular and ``D`` diagonal."""

    U: np.ndarray
    D: np.ndarray
    V: np.ndarray
    rank: int
    unit_pivots: bool

    @property
    def invariants(self) -> list[int]:
        return [int(self.D[i, i]) for i in range(self.rank)]


def smith_normal_form(M) -> SmithForm:
    """Smith normal form over Python integers by elementary row/column moves."""
    A = [[int(x) for x in row] for row in np.asarray(M, dtype=object).tolist()] if len(M) else []
    m = len(A)
    n = len(A[0]) if m else np.asarray(M).shape[1] if np.asarray(M).ndim == 2 else 0
    U, V = _identity(m), _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    rank = 0
    for t in range(min(m, n)):
        nonzero = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            # clear column t and row t, moving any smaller remainder into the pivot
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]), None
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        rank += 1

    if abs(_det(U)) != 1 or abs(_det(V)) != 1:
        raise ArithmeticError("Smith normal form produced a non-unimodular transform")
    D = np.array(A, dtype=object).reshape(m, n)
    return SmithForm(
        U=np.array(U, dtype=object).reshape(m, m),
        D=D,
        V=np.array(V, dtype=object).reshape(n, n),
        rank=rank,
        unit_pivots=all(D[i, i] == 1 for i in range(rank)),
    )


# -- lattices ------------------------------------------------------------------


@dataclass(frozen=True)
class IntLattice:
    """The sublattice of Z^k spanned by integer generator rows."""

    k: int
    generators: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in row) for row in self.generators)
        if any(len(row) != self.k for row in gens):
            raise ValueError(f"every generator must have {self.k} entries")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def from_rows(cls, rows, k: int | None = None) -> "IntLattice":
        rows = [list(r) for r in rows]
        if k is None:
            if not rows:
                raise ValueError("k is required for a lattice with no generators")
            k = len(rows[0])
        return cls(k, tuple(tuple(r) for r in rows))

    def matrix(self) -> np.ndarray:
        return np.array(self.generators, dtype=object).reshape(len(self.generators), self.k)

    def smith(self) -> SmithForm:
        return smith_normal_form(self.matrix())

    @property
    def rank(self) -> int:
        return self.smith().rank if self.generators else 0

    @property
    def unit_pivots(self) -> bool:
        return self.smith().unit_pivots if self.generators else True

    def contains(self, v: Sequence[int]) -> bool:
        v = [int(x) for x in v]
        if len(v) != self.k:
            raise ValueError(f"vector of length {len(v)} tested against a lattice in Z^{self.k}")
        if not self.generators:
            return not any(v)
        snf = self.smith()
        # y D = v V for some integer y
        target = (np.array(v, dtype=object) @ snf.V).tolist()
        for i, t in enumerate(target):
            if i < snf.rank:
                if t % snf.D[i, i]:
                    return False
            elif t:
                return False
        return True

    def same_lattice(self, other: "IntLattice") -> bool:
        return (
            self.k == other.k
            and all(self.contains(g) for g in other.generators)
            and all(other.contains(g) for g in self.generators)
        )


def as_signature(signs: Sequence[int] | None, k: int) -> tuple[int, ...]:
    if signs is None:
        return (0,) * k
    signs = tuple(int(s) for s in signs)
    if len(signs) != k:
        raise ValueError(f"signature has {len(signs)} entries, expected {k}")
    if any(s not in (0, 1) for s in signs):
        raise ValueError(f"signature entries must be 0 or 1, got {signs}")
    return signs


def parity_signature(d: int) -> tuple[int, ...]:
    return tuple(int(w % 2) for w in weights(d))


def signed_orthogonal_lattice(L: IntLattice, signs: Sequence[int] | None = None) -> IntLattice:
    """A basis of ``{w : <v, w>_s = 0 for all v in L}``."""
    signs = as_signature(signs, L.k)
    if not L.generators:
        return IntLattice(L.k, tuple(tuple(r) for r in _identity(L.k)))
    twist = np.array([(-1) ** s for s in signs], dtype=object)
    snf = smith_normal_form(L.matrix() * twist[None, :])
    basis = snf.V[:, snf.rank:].T
    return IntLattice(L.k, tuple(tuple(int(x) for x in row) for row in basis.tolist()))


def cube_space_lattice(d: int, l: int) -> IntLattice:
    """The Gray-sum relations cutting out P^{d,l}: one row per (l+1)-face."""
    k = 1 << d
    if l >= d:
        return IntLattice(k, ())
    rows = []
    for B in combinations(range(1, d + 1), l + 1):
        layout = face_layout(d, B)
        signs = np.where(weights(len(B)) % 2 == 0, 1, -1)
        for w in range(layout.shape[0]):
            row = [0] * k
            for t, v in enumerate(layout[w]):
                row[int(v)] = int(signs[t])
            rows.append(tuple(row))
    return IntLattice(k, tuple(rows))


def _relation_residues(group: GroupSpec, rows: np.ndarray, L: IntLattice) -> np.ndarray:
    """Boolean mask of rows satisfying every generator relation of ``L``."""
    res = group.residue_table[rows.astype(np.int64)]  # (N, k, r)
    ok = np.ones(rows.shape[0], dtype=bool)
    gens = np.array(L.generators, dtype=np.int64).reshape(-1, L.k)
    for j, n in enumerate(group.orders):
        ok &= np.all(np.mod(res[:, :, j] @ gens.T, n) == 0, axis=1)
    return ok


def lattice_cube_space(L: IntLattice, group, mode: str = "auto", limit: int = DEFAULT_LIMIT) -> Subgroup:
    """The subgroup P^L(G) of G^k.

    ``parametrized`` reads the free coordinates off the Smith form (unit
    pivots only); ``explicit`` filters all of G^k; ``auto`` prefers the former.
    """
    group = as_group(group)
    if mode not in ("auto", "parametrized", "explicit"):
        raise ValueError(f"unknown mode {mode!r}")
    if not L.generators:
        H = full_power(group, L.k)
        H.lattice = L
        return H
    snf = L.smith()
    if mode == "auto":
        mode = "parametrized" if snf.unit_pivots else "explicit"
    if mode == "parametrized":
        if not snf.unit_pivots:
            raise ValueError(
                f"lattice has non-unit Smith invariants {snf.invariants}; use mode='explicit'"
            )
        H = ParametrizedSubgroup(group, np.array(snf.V[:, snf.rank:].tolist(), dtype=np.int64).reshape(L.k, -1))
    else:
        candidates = full_power(group, L.k)
        candidates.check_limit(limit, f"{group}^{L.k}")
        rows = [b[_relation_residues(group, b, L)] for b in candidates.iter_blocks(limit)]
        H = ExplicitSubgroup(group, np.concatenate(rows), k=L.k, check=False)
    H.lattice = L
    return H


def _generating_rows(H: Subgroup, limit: int) -> np.ndarray:
    if isinstance(H, ParametrizedSubgroup):
        group = H.group
        gens = []
        for j in range(group.rank):
            unit = np.zeros(group.rank, dtype=np.int64)
            unit[j] = 1
            for col in H.matrix.T:
                gens.append(group.flat_index(np.outer(col, unit)))
        if not gens:
            return np.zeros((1, H.k), dtype=np.int64)
        return np.array(gens, dtype=np.int64)
    return H.index_array(limit).astype(np.int64)


def signed_dual_subgroup(
    H: Subgroup, signs: Sequence[int] | None = None, mode: str = "auto", limit: int = DEFAULT_LIMIT
) -> Subgroup:
    """``H^{perp_s}`` inside Ĝ^k (Ĝ identified with G).

    ``lattice`` uses the orthogonal complement of ``H.lattice``; ``filter``
    scans Ĝ^k against a generating set of ``H``.
    """
    signs = as_signature(signs, H.k)
    group = H.group
    if mode not in ("auto", "lattice", "filter"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "auto":
        mode = "lattice" if H.lattice is not None and H.lattice.unit_pivots else "filter"
    if mode == "lattice":
        if H.lattice is None or not H.lattice.unit_pivots:
            raise ValueError("lattice mode needs a subgroup defined by a unit-pivot lattice")
        return lattice_cube_space(signed_orthogonal_lattice(H.lattice, signs), group, "parametrized", limit)
    gens = _generating_rows(H, limit)
    phase = group.phase_table
    twist = np.array([(-1) ** s for s in signs], dtype=np.int64)
    candidates = full_power(group, H.k)
    candidates.check_limit(limit, f"dual of {group}^{H.k}")
    kept = []
    for block in candidates.iter_blocks(limit):
        block = block.astype(np.int64)
        total = np.zeros((block.shape[0], gens.shape[0]), dtype=np.int64)
        for j in range(H.k):
            total += twist[j] * phase[block[:, j][:, None], gens[:, j][None, :]]
        kept.append(block[np.all(np.mod(total, group.exponent) == 0, axis=1)])
    return ExplicitSubgroup(group, np.concatenate(kept), k=H.k, check=False)


def cube_subgroup(group, d: int, l: int) -> ParametrizedSubgroup:
    """P^{d,l}(G) as a subgroup of G^{2^d}, tagged with its Gray relation lattice."""
    H = CubeSpaceSpec(as_group(group), d, l).subgroup()
    H.lattice = cube_space_lattice(d, l)
    return H


# -- Poisson summation -----------------------------------------------------------


def signed_product_sum(tables: np.ndarray, signs: Sequence[int], space: Subgroup, limit: int, shift=None):
    """Sum over ``space`` of ``prod_j C^{s_j} tables[j, x_j]``; ``shift`` translates the rows."""
    signed = np.where(np.asarray(signs, dtype=bool)[:, None], np.conj(tables), tables)
    cols = np.arange(space.k)[None, :]
    total = 0j
    for block in space.iter_blocks(limit):
        if shift is not None:
            block = translate(block, space.group, shift)
        total += np.prod(signed[cols, block], axis=1).sum()
    return complex(total)


def poisson_check(
    fs: Sequence[GroupFunction],
    H: Subgroup,
    signs: Sequence[int] | None = None,
    t=None,
    dual: Subgroup | None = None,
    limit: int = DEFAULT_LIMIT,
    tolerance: float = 1e-9,
) -> IdentityReport:
    """Compare ``E_{x in H + t} prod C^{s_j} f_j(x_j)`` with its dual-side sum.

    Without ``t`` the right side is ``sum_{chi in H^{perp_s}} prod C^{s_j} f^_j(chi_j)``;
    with ``t`` each term picks up the phase ``prod_j <chi_j, (-1)^{s_j} t_j>``.
    """
    fs = list(fs)
    if len(fs) != H.k:
        raise SpecMismatchError(f"{len(fs)} functions given for a subgroup of G^{H.k}")
    group = H.group
    if any(f.spec != group for f in fs):
        raise SpecMismatchError("all functions must live on the subgroup's group")
    signs = as_signature(signs, H.k)
    if dual is None:
        dual = signed_dual_subgroup(H, signs, limit=limit)
    shift = None
    if t is not None:
        shift = np.array([x.index if hasattr(x, "index") else int(x) for x in t], dtype=np.int64)
        if shift.shape != (H.k,):
            raise ValueError(f"translation must have {H.k} entries")

    values = np.stack([f.values for f in fs])
    lhs = signed_product_sum(values, signs, H, limit, shift) / H.cardinality

    spectra = np.stack([dft(f).values for f in fs])
    signed = np.where(np.asarray(signs, dtype=bool)[:, None], np.conj(spectra), spectra)
    cols = np.arange(H.k)[None, :]
    if shift is not None:
        neg = group.negation_table
        tw = np.array([shift[j] if signs[j] == 0 else neg[shift[j]] for j in range(H.k)], dtype=np.int64)
        phases = group.pairing_matrix[:, tw].T  # (k, |G|): <chi, (-1)^s t_j>
    rhs = 0j
    for block in dual.iter_blocks(limit):
        block = block.astype(np.int64)
        terms = np.prod(signed[cols, block], axis=1)
        if shift is not None:
            terms = terms * np.prod(phases[cols, block], axis=1)
        rhs += terms.sum()

    return IdentityReport(
        check="poisson",
        lhs=lhs,
        rhs=complex(rhs),
        residual=residual(lhs, rhs),
        params={
            "group": str(group),
            "k": H.k,
            "signature": list(signs),
            "lattice": [list(g) for g in H.lattice.generators] if H.lattice is not None else None,
            "translation": shift.tolist() if shift is not None else None,
        },
        sizes={"primal": H.cardinality, "dual": dual.cardinality},
        tolerance=tolerance,
    )
