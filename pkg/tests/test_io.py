import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from _util import groups, seeds
from gowers_parseval.cubes import CubePoint
from gowers_parseval.errors import InputFormatError
from gowers_parseval.functions import FunctionCube, GroupFunction
from gowers_parseval.groups import GroupSpec
from gowers_parseval.io import (
    cube_from_json,
    cube_to_json,
    function_from_json,
    function_to_json,
    functions_from_json,
    lattice_from_json,
    lattice_to_json,
    parse_group,
    parse_polynomial,
    phase_polynomial,
    point_from_json,
    point_to_json,
    read_json,
)
from gowers_parseval.lattice import IntLattice


def roundtrip(obj):
    return json.loads(json.dumps(obj))


@given(groups, seeds)
def test_function_round_trip_is_exact(spec, seed):
    f = GroupFunction.random(spec, np.random.default_rng(seed))
    g = function_from_json(roundtrip(function_to_json(f)))
    assert g.spec == f.spec and np.array_equal(g.values, f.values) and not g.dual


def test_spectrum_flag_survives(rng):
    f = GroupFunction.random("6", rng, dual=True)
    assert function_from_json(roundtrip(function_to_json(f))).dual


@given(groups, st.integers(0, 3), seeds)
def test_cube_round_trip_is_exact(spec, d, seed):
    F = FunctionCube.random(spec, d, np.random.default_rng(seed))
    G = cube_from_json(roundtrip(cube_to_json(F)))
    assert G.d == d and np.array_equal(G.values, F.values)


def test_real_values_and_function_lists():
    f = function_from_json({"group": "3", "values": [1, 2, 3]})
    assert np.array_equal(f.values, [1, 2, 3])
    fs = functions_from_json({"group": "3", "functions": [[1, 2, 3], {"values": [[0, 1], [0, 0], [1, 0]]}]})
    assert len(fs) == 2 and fs[1].values[0] == 1j
    assert len(functions_from_json([{"group": "2", "values": [1, 1]}])) == 1


@pytest.mark.parametrize(
    "bad",
    [
        {"values": [1, 2, 3]},
        {"group": "3"},
        {"group": "3", "values": [1, 2]},
        {"group": "3", "values": [[1, 2, 3]] * 3},
        {"group": "3", "values": ["a", "b", "c"]},
        {"group": "0", "values": [1]},
        [1, 2],
    ],
)
def test_malformed_functions(bad):
    with pytest.raises(InputFormatError):
        function_from_json(bad)


def test_malformed_cubes():
    with pytest.raises(InputFormatError):
        cube_from_json({"group": "3", "d": 2, "functions": [[1, 2, 3]] * 3})
    with pytest.raises(InputFormatError):
        cube_from_json({"group": "3", "d": 2, "functions": [[1, 2, 3]] * 2})
    with pytest.raises(InputFormatError):
        functions_from_json("nope")


def test_points_and_lattices():
    z5 = GroupSpec.parse("2x5")
    p = CubePoint.from_indices(z5, [0, 3, 7, 9])
    assert point_from_json(roundtrip(point_to_json(p)), z5) == p
    L = IntLattice.from_rows([[1, -2, 1]])
    M, signs = lattice_from_json(roundtrip(lattice_to_json(L, (0, 1, 0))))
    assert M == L and signs == (0, 1, 0)
    assert lattice_from_json({"k": 2})[1] == (0, 0)
    for bad in ({"generators": [[1]]}, {"k": 2, "generators": [[1, 2, 3]]}, {"k": 2, "signature": [0, 3]}):
        with pytest.raises(InputFormatError):
            lattice_from_json(bad)


def test_read_json(tmp_path):
    path = tmp_path / "f.json"
    path.write_text('{"a": 1}')
    assert read_json(path) == {"a": 1}
    path.write_text("{")
    with pytest.raises(InputFormatError):
        read_json(path)
    with pytest.raises(InputFormatError):
        read_json(tmp_path / "missing.json")


def test_parse_group():
    assert parse_group("2x3x5").orders == (2, 3, 5)
    for bad in ("", "x", "2x", "a", "0"):
        with pytest.raises(InputFormatError):
            parse_group(bad)


@pytest.mark.parametrize(
    "text,expected",
    [
        ("x^2", {2: 1}),
        ("3x^2 + x - 7", {2: 3, 1: 1, 0: -7}),
        ("3*x^2-x", {2: 3, 1: -1}),
        ("-x + x", {1: 0}),
        ("5", {0: 5}),
        (" 2 x ^ 3 ", {3: 2}),
    ],
)
def test_parse_polynomial(text, expected):
    assert parse_polynomial(text) == expected


@pytest.mark.parametrize("bad", ["", "x^", "y", "2x^2x", "++x", "x*", "^2"])
def test_parse_polynomial_rejects(bad):
    with pytest.raises(InputFormatError):
        parse_polynomial(bad)


def test_phase_polynomial():
    f = phase_polynomial("7", "x^2 + 3")
    x = np.arange(7)
    assert np.allclose(f.values, np.exp(2j * np.pi * (x**2 + 3) / 7))
    assert np.allclose(phase_polynomial("5", "-x").values, np.exp(-2j * np.pi * np.arange(5) / 5))
    with pytest.raises(InputFormatError):
        phase_polynomial("2x3", "x")
