import numpy as np
import pytest
from hypothesis import given

from _util import seeds
from gowers_parseval.convolutions import (
    DEGENERATE_CUBIC_SIGNS,
    PuncturedCube,
    convolution_fourier_check,
    convolution_reduction_check,
    convolution_space,
    corner_convolution,
    degenerate_cubic_form,
    degenerate_cubic_probe,
    inner_product_via_convolution,
    puncture,
    punctured_dual_space,
)
from gowers_parseval.errors import SpecMismatchError
from gowers_parseval.fourier import dft
from gowers_parseval.functions import FunctionCube, GroupFunction
from gowers_parseval.gowers import inner_product_primal
from gowers_parseval.groups import GroupSpec
from gowers_parseval.lattice import parity_signature, poisson_check
from gowers_parseval.oracle import brute_signed_dual

Z4, Z5 = GroupSpec((4,)), GroupSpec((5,))


def test_punctured_cube_shape(rng):
    Fp = PuncturedCube.random(Z4, 3, rng)
    assert Fp.d == 3 and len(Fp) == 7
    F = Fp.complete(GroupFunction.random(Z4, rng))
    assert F.d == 3 and PuncturedCube.from_cube(F).entries == Fp.entries
    for bad in (0, 2, 4):
        with pytest.raises(ValueError):
            PuncturedCube([GroupFunction.constant(Z4)] * bad)
    with pytest.raises(SpecMismatchError):
        PuncturedCube([GroupFunction.constant(Z4), GroupFunction.constant(Z5), GroupFunction.constant(Z4)])


def test_all_ones_convolution_is_one():
    Fp = PuncturedCube([GroupFunction.constant(Z5, 1.0)] * 7)
    for l in range(3):
        assert np.allclose(corner_convolution(Fp, l).values, 1)


def test_two_dimensional_convolution_formula(rng):
    f01, f10, f11 = (GroupFunction.random(Z5, rng) for _ in range(3))
    # vertex order: index 1 is w = (1, 0), index 2 is w = (0, 1)
    K = corner_convolution(PuncturedCube([f10, f01, f11]), 1)
    expected = [
        np.mean([
            np.conj(f01.values[(x + h2) % 5]) * np.conj(f10.values[(x + h1) % 5]) * f11.values[(x + h1 + h2) % 5]
            for h1 in range(5) for h2 in range(5)
        ])
        for x in range(5)
    ]
    assert np.allclose(K.values, expected)


@pytest.mark.parametrize("d,l", [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)])
def test_inner_product_reduction(d, l, rng):
    for _ in range(5):
        F = FunctionCube.random(Z4, d, rng)
        assert np.isclose(inner_product_via_convolution(F, l), inner_product_primal(F, l), rtol=1e-10)
        assert convolution_reduction_check(F, l).passed


def test_convolution_argument_checks(rng):
    Fp = PuncturedCube.random(Z4, 2, rng)
    with pytest.raises(ValueError):
        corner_convolution(Fp, 2)
    with pytest.raises(ValueError):
        corner_convolution(Fp, -1)
    with pytest.raises(SpecMismatchError):
        corner_convolution(Fp, 1, "dual")
    with pytest.raises(SpecMismatchError):
        corner_convolution(PuncturedCube([dft(f) for f in Fp.entries]), 1, "primal")
    with pytest.raises(ValueError):
        convolution_space(Z4, 2, 1, side="both")


def test_fourier_identity_examples(rng):
    ones = PuncturedCube([GroupFunction.constant(Z4, 1.0)] * 7)
    rep = convolution_fourier_check(ones, 1)
    delta = np.eye(4)[0]
    assert np.allclose(rep.lhs, delta) and np.allclose(rep.rhs, delta)
    assert convolution_fourier_check(PuncturedCube.random(Z4, 3, rng), 1).residual < 1e-9
    assert convolution_fourier_check(PuncturedCube.random(Z4, 3, rng), 2).residual < 1e-9


@pytest.mark.parametrize("group", ["3", "4", "2x2"])
@pytest.mark.parametrize("d,l", [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)])
@given(seed=seeds)
def test_fourier_identity_random(group, d, l, seed):
    Fp = PuncturedCube.random(group, d, np.random.default_rng(seed))
    rep = convolution_fourier_check(Fp, l)
    assert rep.residual < 1e-9
    assert rep.params["dual_l"] == d - l - 1


def test_transform_is_read_at_the_negated_character(rng):
    # without the reflection chi -> -chi the identity fails on Z/5
    Fp = PuncturedCube.random(Z5, 3, rng)
    rep = convolution_fourier_check(Fp, 1)
    unreflected = dft(corner_convolution(Fp, 1)).values
    assert rep.residual < 1e-9
    assert np.max(np.abs(unreflected - rep.rhs)) > 1e-3


@pytest.mark.parametrize("group", ["2", "3", "4"])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_punctured_signed_dual(group, d):
    signs = parity_signature(d)[1:]
    for l in range(d):
        H = puncture(convolution_space(group, d, l))
        brute = brute_signed_dual(H, signs)
        assert punctured_dual_space(group, d, l).same_elements(brute)
        # the corner-vanishing dual space alone is smaller by a factor |G|
        smaller = puncture(convolution_space(group, d, l, "dual"))
        assert brute.cardinality == smaller.cardinality * GroupSpec.parse(group).cardinality


def test_punctured_poisson(rng):
    H = puncture(convolution_space(Z4, 3, 1))
    fs = [GroupFunction.random(Z4, rng) for _ in range(7)]
    signs = parity_signature(3)[1:]
    rep = poisson_check(fs, H, signs, dual=punctured_dual_space(Z4, 3, 1))
    assert rep.residual < 1e-9


def test_degenerate_cubic_form(rng):
    assert np.isclose(degenerate_cubic_form(GroupFunction.constant(Z5, 1.0)), 1)
    f = GroupFunction.random(Z5, rng)
    direct = np.mean([
        f.values[x] * np.conj(f.values[(x + a) % 5]) ** 3 * f.values[(x + 2 * a) % 5] ** 3
        * np.conj(f.values[(x + 3 * a) % 5])
        for x in range(5) for a in range(5)
    ])
    assert np.isclose(degenerate_cubic_form(f), direct)
    assert sum(DEGENERATE_CUBIC_SIGNS) == 4
    with pytest.raises(ValueError):
        degenerate_cubic_form([f] * 7)


def test_degenerate_cubic_probe_reports():
    rep = degenerate_cubic_probe("5", trials=300, seed=0)
    assert rep.informational and rep.passed
    p = rep.params
    assert p["min_real"] == rep.lhs
    assert np.isclose(degenerate_cubic_form(GroupFunction(Z5, p["witness"])).real, p["min_real"])
    assert p["negative_found"] == (p["min_real"] < 0)
    assert degenerate_cubic_probe("5", trials=50, seed=4).to_dict() == degenerate_cubic_probe("5", trials=50, seed=4).to_dict()
