import numpy as np
import pytest
from hypothesis import given, strategies as st

from _util import groups, seeds, small_groups
from gowers_parseval.errors import SpecMismatchError
from gowers_parseval.fourier import cube_dft, cube_idft, dft, dft_naive, idft, idft_naive, parseval_check
from gowers_parseval.functions import FunctionCube, GroupFunction
from gowers_parseval.gowers import inner_product_dual, inner_product_primal, uniformity_norm, dual_uniformity_norm
from gowers_parseval.groups import GroupSpec
from gowers_parseval.reports import IdentityReport, residual

SWEEP_GROUPS = ["4", "5", "2x2", "6"]


def test_dft_examples():
    g = GroupSpec.parse("3x4")
    delta = GroupFunction.indicator(g.zero())
    assert np.allclose(dft(delta).values, 1 / 12)
    chi = g.character([2, 1])
    assert np.allclose(dft(GroupFunction.character(chi)).values, GroupFunction.indicator(chi).values)
    one = GroupFunction.constant(g, 1.0)
    fhat = dft(one)
    assert np.allclose(fhat.values, GroupFunction.indicator(g.zero()).values)
    assert np.isclose(inner_product_primal(FunctionCube([one]), 0), fhat.values[0])


def test_dft_marks_spectra():
    f = GroupFunction.random("5", np.random.default_rng(0))
    assert dft(f).dual and not idft(dft(f)).dual
    with pytest.raises(SpecMismatchError):
        dft(dft(f))
    with pytest.raises(SpecMismatchError):
        idft(f)


@given(groups, seeds)
def test_fast_transform_matches_character_table(spec, seed):
    f = GroupFunction.random(spec, np.random.default_rng(seed))
    assert np.allclose(dft(f).values, dft_naive(f).values, atol=1e-12)
    assert np.allclose(idft(dft(f)).values, idft_naive(dft_naive(f)).values, atol=1e-12)


@given(groups, seeds)
def test_round_trips(spec, seed):
    rng = np.random.default_rng(seed)
    f = GroupFunction.random(spec, rng)
    fhat = GroupFunction.random(spec, rng, dual=True)
    assert np.allclose(idft(dft(f)).values, f.values, rtol=1e-10, atol=1e-12)
    assert np.allclose(dft(idft(fhat)).values, fhat.values, rtol=1e-10, atol=1e-12)


def test_round_trip_z12_and_linearity(rng):
    f, g = (GroupFunction.random("12", rng) for _ in range(2))
    assert np.allclose(idft(dft(f)).values, f.values, rtol=1e-10)
    a = 2 - 3j
    assert np.allclose(dft(f * a + g).values, a * dft(f).values + dft(g).values)


def test_cube_transforms_are_entrywise(rng):
    F = FunctionCube.random("2x3", 2, rng)
    Fhat = cube_dft(F)
    assert Fhat.dual
    for f, fh in zip(F.entries, Fhat.entries):
        assert np.allclose(dft(f).values, fh.values)
    assert np.allclose(cube_idft(Fhat).values, F.values)


def test_parseval_examples(rng):
    f, g = GroupFunction.random("7", rng), GroupFunction.random("7", rng)
    rep = parseval_check(FunctionCube([f, g]), 0)
    assert np.isclose(rep.lhs, np.mean(f.values * np.conj(g.values)))
    assert np.isclose(rep.rhs, np.sum(dft(f).values * np.conj(dft(g).values)))
    assert rep.passed

    rep = parseval_check(FunctionCube.constant(f, 2), 1)
    assert np.isclose(rep.rhs, np.sum(np.abs(dft(f).values) ** 4))
    assert rep.passed

    h = GroupFunction.random("5", rng)
    assert np.isclose(uniformity_norm(h, 3, 1, method="primal"), dual_uniformity_norm(dft(h), 3, 1), rtol=1e-9)


def test_parseval_report_contents(rng):
    rep = parseval_check(FunctionCube.random("5", 3, rng), 1)
    assert isinstance(rep, IdentityReport)
    assert rep.params == {"group": "5", "d": 3, "l": 1, "dual_l": 1}
    assert rep.sizes == {"primal": 5**4, "dual": 5**4}
    assert rep.residual == residual(rep.lhs, rep.rhs)
    d = rep.to_dict()
    assert d["passed"] and isinstance(d["lhs"], list) and len(d["lhs"]) == 2


@pytest.mark.parametrize("group", SWEEP_GROUPS)
def test_full_parseval_sweep(group, rng):
    for d in range(4):
        for l in range(-1, d + 1):
            rep = parseval_check(FunctionCube.random(group, d, rng), l)
            assert rep.residual < 1e-9, (d, l, rep)


def test_unary_identities(rng):
    f = GroupFunction.random("6", rng)
    fhat = dft(f)
    assert np.isclose(inner_product_primal(FunctionCube([f]), -1), inner_product_dual(FunctionCube([fhat]), 0))
    assert np.isclose(inner_product_primal(FunctionCube([f]), 0), inner_product_dual(FunctionCube([fhat]), -1))


@given(st.sampled_from([g for g in small_groups(30, 3) if g.cardinality <= 30]), seeds)
def test_unitarity(spec, seed):
    rng = np.random.default_rng(seed)
    F = FunctionCube.random(spec, 1, rng)
    assert parseval_check(F, 0).residual < 1e-10


def test_convolution_theorem(rng):
    # dft turns group convolution (mean over G) into pointwise products
    g = GroupSpec.parse("3x4")
    f, h = GroupFunction.random(g, rng), GroupFunction.random(g, rng)
    neg = g.negation_table
    add = g.addition_table
    conv = np.array([np.mean(f.values * h.values[add[x][neg]]) for x in range(12)])
    assert np.allclose(dft(GroupFunction(g, conv)).values, dft(f).values * dft(h).values)
