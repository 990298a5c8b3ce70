import json

import pytest
from hypothesis import given, strategies as st

import brute_oracle
from cattorus.exact import matmul, mneg, msub, transpose
from cattorus.lattice import (LatticeData, LatticeError, builtin, enumerate_by_norm, group_closed,
                              is_even, isometry_group, load_lattice, minus_identity,
                              orthogonal_mod2, parse_spec)
from conftest import SMALL

# frozen from tools/brute_oracle.py
ORACLE_ORDERS = {"A1": 2, "A1xA1": 8, "A2": 12, "D4": 1152, "U": 4}


def test_sharp_examples():
    A1, A2 = builtin("A1"), builtin("A2")
    assert A1.sharp_J((1,)) == (1,)
    assert A2.sharp_J((1, 0)) == (1, -1)
    assert A2.sharp_J((0, 0)) == (0, 0)


@pytest.mark.parametrize("name", SMALL + ("E8",))
def test_forms(name):
    lat = builtin(name)
    assert lat.gramI == transpose(lat.gramI)
    assert is_even(lat)
    for i in range(lat.rank):
        m = tuple(int(i == j) for j in range(lat.rank))
        assert lat.sharp_I(m) == tuple(a + b for a, b in zip(lat.sharp_J(m), lat.flat_J(m)))


def test_default_splitting():
    lat = LatticeData.from_I("x", [[2, 3], [3, 4]])
    assert lat.gramJ == ((1, 0), (3, 2))


def test_evenness():
    assert is_even(builtin("A1"))
    assert is_even(builtin("U"))
    with pytest.raises(LatticeError):
        parse_spec('{"gram": [[1]]}')


@pytest.mark.parametrize("text", ["not json", "[]", '{"gram": [[1, 2]]}', '{"gram": [[2.5]]}',
                                  '{"gram": [[2]], "gram_is": "K"}'])
def test_parse_errors(text):
    with pytest.raises(LatticeError):
        parse_spec(text)


def test_spec_file(tmp_path):
    p = tmp_path / "l.json"
    p.write_text(json.dumps({"name": "twoA1", "rank": 2, "gram": [[2, 0], [0, 2]], "gram_is": "I"}))
    lat = load_lattice(f"file:{p}")
    assert lat.name == "twoA1" and lat.gramI == ((2, 0), (0, 2))
    with pytest.raises(LatticeError):
        load_lattice(f"file:{tmp_path}/missing.json")
    with pytest.raises(LatticeError):
        load_lattice("B7")


def test_enumeration_examples():
    assert sorted(v for v, _ in enumerate_by_norm(builtin("A1"), 1)) == [(-1,), (0,), (1,)]
    assert len(enumerate_by_norm(builtin("A2"), 1)) == 7
    assert len(enumerate_by_norm(builtin("E8"), 1)) == 241
    with pytest.raises(LatticeError):
        enumerate_by_norm(builtin("U"), 1)


@pytest.mark.parametrize("name,upto", [("A1", 4), ("A2", 3), ("D4", 2), ("E8", 2)])
def test_enumeration_matches_oracle(name, upto):
    counts = [0] * (upto + 1)
    for _, h in enumerate_by_norm(builtin(name), upto):
        counts[h] += 1
    assert counts == brute_oracle.THETA[name](upto)


def test_enumeration_unique():
    vs = [v for v, _ in enumerate_by_norm(builtin("D4"), 2)]
    assert len(vs) == len(set(vs))


@pytest.mark.parametrize("name", SMALL)
def test_isometry_orders(name):
    O = isometry_group(builtin(name))
    assert len(O) == ORACLE_ORDERS[name]


@pytest.mark.parametrize("name", ["A1", "A2", "U"])
def test_isometry_oracle_live(name):
    assert brute_oracle.isometry_order(brute_oracle.GRAMS[name]) == ORACLE_ORDERS[name]


@pytest.mark.parametrize("name", SMALL)
def test_isometry_properties(name):
    lat = builtin(name)
    O = isometry_group(lat)
    assert group_closed(O, lat.rank)
    assert minus_identity(lat.rank) in O
    J = lat.gramJ
    for f in O:
        assert matmul(matmul(transpose(f), lat.gramI), f) == lat.gramI
        d = msub(J, matmul(matmul(transpose(f), J), f))
        assert transpose(d) == mneg(d)


def test_orthogonal_mod2_examples():
    assert len(orthogonal_mod2(builtin("A1"))["group"]) == 1
    data = orthogonal_mod2(builtin("U"))
    assert data["phi"][(1, 0)] == 0 and data["phi"][(0, 1)] == 0 and data["phi"][(1, 1)] == 1
    assert len(data["group"]) == 2
    assert orthogonal_mod2(LatticeData("zero", []))["group"] == [()]


@given(st.lists(st.integers(-4, 4), min_size=2, max_size=2),
       st.lists(st.integers(-4, 4), min_size=2, max_size=2))
def test_isometries_preserve_form(a, b):
    lat = builtin("A2")
    for f in isometry_group(lat):
        fa, fb = (tuple(sum(f[i][j] * v[j] for j in range(2)) for i in range(2)) for v in (a, b))
        assert lat.I(fa, fb) == lat.I(a, b)
