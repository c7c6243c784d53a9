import itertools

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import invariant_factors

from _util import seeds
from gowers_parseval.cube_spaces import CubeSpaceSpec
from gowers_parseval.fourier import dft
from gowers_parseval.functions import FunctionCube, GroupFunction
from gowers_parseval.fourier import parseval_check
from gowers_parseval.groups import GroupSpec
from gowers_parseval.lattice import (
    IntLattice,
    as_signature,
    cube_space_lattice,
    cube_subgroup,
    lattice_cube_space,
    parity_signature,
    poisson_check,
    signed_dual_subgroup,
    signed_orthogonal_lattice,
    smith_normal_form,
)
from gowers_parseval.oracle import brute_signed_dual
from gowers_parseval.subgroups import full_power

matrices = st.integers(1, 3).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)

UNIT_LATTICES = [
    ([[1, -1]], None),
    ([[1, -2, 1]], None),
    ([[1, -1, -1, 1]], (0, 1, 1, 0)),
    ([[1, 1, 0], [0, 1, 2]], (0, 1, 0)),
    ([[1, -3, 3, -1]], (1, 0, 0, 1)),
]


def sympy_kernel(M, signs):
    twisted = sympy.Matrix(M) * sympy.diag(*[(-1) ** s for s in signs])
    out = []
    for v in twisted.nullspace():
        den = sympy.ilcm(1, *[sympy.fraction(x)[1] for x in v])
        out.append([int(x * den) for x in v])
    return out


def signed_pairing(v, w, signs):
    return sum((-1) ** s * a * b for a, b, s in zip(v, w, signs))


def test_smith_examples():
    snf = smith_normal_form(np.eye(3, dtype=int))
    assert snf.invariants == [1, 1, 1] and snf.unit_pivots
    snf = smith_normal_form([[1, -2, 1]])
    assert snf.invariants == [1] and snf.unit_pivots
    snf = smith_normal_form([[2, 4]])
    assert snf.invariants == [2] and not snf.unit_pivots


@given(matrices)
def test_smith_form_matches_sympy(M):
    snf = smith_normal_form(M)
    assert (snf.U.dot(np.array(M, dtype=object)).dot(snf.V) == snf.D).all()
    assert abs(sympy.Matrix(snf.U.tolist()).det()) == 1
    assert abs(sympy.Matrix(snf.V.tolist()).det()) == 1
    D = snf.D
    off = [D[i, j] for i in range(D.shape[0]) for j in range(D.shape[1]) if i != j]
    assert not any(off)
    inv = snf.invariants
    assert all(b % a == 0 for a, b in zip(inv, inv[1:]))
    expected = [abs(int(x)) for x in invariant_factors(sympy.Matrix(M), domain=sympy.ZZ) if x != 0]
    assert inv == expected
    assert snf.unit_pivots == all(x == 1 for x in expected)


def test_smith_handles_large_entries():
    M = [[10**30 + 1, 10**30], [10**30, 10**30 - 1]]
    snf = smith_normal_form(M)
    assert snf.invariants == [1, 1]


def test_signed_orthogonal_examples():
    assert signed_orthogonal_lattice(IntLattice.from_rows([[1, -1]])).same_lattice(IntLattice.from_rows([[1, 1]]))
    roth = signed_orthogonal_lattice(IntLattice.from_rows([[1, -2, 1]]))
    assert roth.same_lattice(IntLattice.from_rows([[2, 1, 0], [-1, 0, 1]]))
    gowers = signed_orthogonal_lattice(IntLattice.from_rows([[1, -1, -1, 1]]), (0, 1, 1, 0))
    assert gowers.rank == 3
    assert gowers.same_lattice(IntLattice.from_rows([[1, -1, 0, 0], [0, 1, -1, 0], [0, 0, 1, -1]]))
    assert signed_orthogonal_lattice(IntLattice(3)).same_lattice(IntLattice.from_rows(np.eye(3, dtype=int)))


@given(matrices, st.data())
def test_signed_orthogonal_is_the_saturated_kernel(M, data):
    k = len(M[0])
    signs = data.draw(st.lists(st.integers(0, 1), min_size=k, max_size=k))
    L = IntLattice.from_rows(M)
    perp = signed_orthogonal_lattice(L, signs)
    for v in M:
        for w in perp.generators:
            assert signed_pairing(v, w, signs) == 0
    assert perp.rank == k - sympy.Matrix(M).rank()
    assert perp.unit_pivots  # saturated: Z^k meets its rational span only in itself
    for w in sympy_kernel(M, signs):
        assert perp.contains(w)


def test_lattice_membership():
    L = IntLattice.from_rows([[2, 0], [0, 3]])
    assert L.contains([4, -3]) and not L.contains([1, 0])
    with pytest.raises(ValueError):
        L.contains([1])
    with pytest.raises(ValueError):
        IntLattice(2, ((1, 2, 3),))
    with pytest.raises(ValueError):
        IntLattice.from_rows([])


def test_signatures():
    assert as_signature(None, 3) == (0, 0, 0)
    assert parity_signature(2) == (0, 1, 1, 0)
    with pytest.raises(ValueError):
        as_signature([0, 1], 3)
    with pytest.raises(ValueError):
        as_signature([0, 2], 2)


def test_lattice_cube_space_examples():
    z5 = GroupSpec.parse("5")
    assert lattice_cube_space(IntLattice(2), z5).cardinality == 25
    diag = lattice_cube_space(IntLattice.from_rows([[1, -1]]), z5)
    assert diag.element_set() == {(x, x) for x in range(5)}
    roth = lattice_cube_space(IntLattice.from_rows([[1, -2, 1]]), z5)
    assert roth.element_set() == {(x, (x + a) % 5, (x + 2 * a) % 5) for x in range(5) for a in range(5)}


@pytest.mark.parametrize("rows,signs", UNIT_LATTICES)
@pytest.mark.parametrize("group", ["3", "4", "5", "2x3"])
def test_parametrized_and_explicit_modes_agree(rows, signs, group):
    L = IntLattice.from_rows(rows)
    a = lattice_cube_space(L, group, mode="parametrized")
    b = lattice_cube_space(L, group, mode="explicit")
    assert a.same_elements(b)


def test_non_unit_lattice_needs_explicit_mode():
    L = IntLattice.from_rows([[2, 4]])
    with pytest.raises(ValueError, match="explicit"):
        lattice_cube_space(L, "4", mode="parametrized")
    H = lattice_cube_space(L, "4")
    assert H.element_set() == {(a, b) for a in range(4) for b in range(4) if (2 * a + 4 * b) % 4 == 0}


def test_signed_dual_examples():
    z5 = GroupSpec.parse("5")
    assert signed_dual_subgroup(full_power(z5, 2)).element_set() == {(0, 0)}
    diag = lattice_cube_space(IntLattice.from_rows([[1, -1]]), z5)
    assert signed_dual_subgroup(diag).element_set() == {(c, (-c) % 5) for c in range(5)}
    for d in range(3):
        for l in range(-1, d + 1):
            H = cube_subgroup("3", d, l)
            dual = signed_dual_subgroup(H, parity_signature(d), mode="filter")
            assert dual.same_elements(CubeSpaceSpec("3", d, d - l - 1).subgroup())


@pytest.mark.parametrize("rows,signs", UNIT_LATTICES)
@pytest.mark.parametrize("group", ["3", "4", "5"])
def test_lattice_duality(rows, signs, group):
    L = IntLattice.from_rows(rows)
    H = lattice_cube_space(L, group)
    via_lattice = signed_dual_subgroup(H, signs, mode="lattice")
    via_filter = signed_dual_subgroup(H, signs, mode="filter")
    brute = brute_signed_dual(H, signs)
    assert via_lattice.same_elements(brute) and via_filter.same_elements(brute)
    assert H.cardinality * via_lattice.cardinality == GroupSpec.parse(group).cardinality ** L.k


@pytest.mark.parametrize("rows,signs", UNIT_LATTICES)
def test_sign_flip_moves_between_duals(rows, signs):
    g = GroupSpec.parse("5")
    L = IntLattice.from_rows(rows)
    signs = as_signature(signs, L.k)
    H = lattice_cube_space(L, g)
    plain = signed_dual_subgroup(H, None, mode="filter").element_set()
    signed = signed_dual_subgroup(H, signs, mode="filter").element_set()
    flip = lambda chi: tuple((-c) % 5 if s else c for c, s in zip(chi, signs))
    for chi in itertools.product(range(5), repeat=L.k):
        assert (chi in plain) == (flip(chi) in signed)


def test_lattice_mode_requires_unit_lattice():
    H = lattice_cube_space(IntLattice.from_rows([[2, 4]]), "4")
    with pytest.raises(ValueError):
        signed_dual_subgroup(H, mode="lattice")
    assert signed_dual_subgroup(H).same_elements(brute_signed_dual(H))


def test_non_unit_dual_cardinality():
    # torsion still gives |H| |H^perp| = |G|^k for subgroups of a finite group
    H = lattice_cube_space(IntLattice.from_rows([[2, 4, 1], [0, 2, 2]]), "4")
    dual = signed_dual_subgroup(H, (0, 1, 0))
    assert H.cardinality * dual.cardinality == 4**3
    assert dual.same_elements(brute_signed_dual(H, (0, 1, 0)))


def test_cube_space_lattice_cuts_out_cube_space():
    for d in range(4):
        for l in range(-1, d + 1):
            L = cube_space_lattice(d, l)
            H = lattice_cube_space(L, "3", mode="explicit" if 3 ** (1 << d) <= 10**5 else "parametrized")
            assert H.same_elements(CubeSpaceSpec("3", d, l).subgroup())


def test_poisson_examples(rng):
    for rows, signs in UNIT_LATTICES:
        L = IntLattice.from_rows(rows)
        ones = [GroupFunction.constant("5", 1.0)] * L.k
        rep = poisson_check(ones, lattice_cube_space(L, "5"), None)
        assert np.isclose(rep.lhs, 1) and np.isclose(rep.rhs, 1)

    fs = [GroupFunction.random("5", rng) for _ in range(3)]
    rep = poisson_check(fs, lattice_cube_space(IntLattice.from_rows([[1, -2, 1]]), "5"))
    hats = [dft(f).values for f in fs]
    expected = sum(hats[0][r] * hats[1][(-2 * r) % 5] * hats[2][r] for r in range(5))
    assert np.isclose(rep.rhs, expected) and rep.residual < 1e-9


def test_poisson_reproduces_parseval(rng):
    F = FunctionCube.random("4", 3, rng)
    rep = poisson_check(F.entries, cube_subgroup("4", 3, 1), parity_signature(3))
    par = parseval_check(F, 1)
    assert rep.residual < 1e-9
    assert np.isclose(rep.lhs, par.lhs) and np.isclose(rep.rhs, par.rhs)


@pytest.mark.parametrize("rows,signs", UNIT_LATTICES)
@given(seed=seeds, affine=st.booleans())
def test_poisson_random_instances(rows, signs, seed, affine):
    rng = np.random.default_rng(seed)
    L = IntLattice.from_rows(rows)
    g = GroupSpec.parse("7")
    fs = [GroupFunction.random(g, rng) for _ in range(L.k)]
    t = rng.integers(0, 7, size=L.k).tolist() if affine else None
    assert poisson_check(fs, lattice_cube_space(L, g), signs, t=t).residual < 1e-9


def test_poisson_affine_on_non_unit_lattice(rng):
    H = lattice_cube_space(IntLattice.from_rows([[2, 4, 1]]), "4")
    fs = [GroupFunction.random("4", rng) for _ in range(3)]
    assert poisson_check(fs, H, (1, 0, 1), t=[1, 3, 2]).residual < 1e-9


def test_poisson_errors():
    H = lattice_cube_space(IntLattice.from_rows([[1, -1]]), "5")
    with pytest.raises(ValueError):
        poisson_check([GroupFunction.constant("5")], H)
    with pytest.raises(ValueError):
        poisson_check([GroupFunction.constant("3")] * 2, H)
    with pytest.raises(ValueError):
        poisson_check([GroupFunction.constant("5")] * 2, H, t=[1, 2, 3])
