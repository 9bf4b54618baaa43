import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import preset_fixtures
from rleibniz.errors import FormatError, LeibnizIdentityViolation
from rleibniz.gfield import field_make
from rleibniz.io import decode_element, dump, dumps, encode_element, load, loads, parse_dict
from rleibniz.presets import preset, random_algebra
from rleibniz.restricted import is_restrictable

AFF2 = {"field": {"p": 3, "k": 1}, "dim": 2, "name": "aff2",
        "brackets": [[0, 1, [[1, 1]]], [1, 0, [[1, 2]]]]}


def test_parse_example():
    A, pm = loads(json.dumps(AFF2))
    assert A == preset("aff2", 3) and A.name == "aff2" and pm is None


def test_pmap_block():
    d = dict(AFF2, pmap=[[0, [[0, 1]]]])
    A, pm = loads(json.dumps(d))
    assert pm.tolist() == [[1, 0], [0, 0]]


@pytest.mark.parametrize("label,A", preset_fixtures(primes=(2, 5)))
def test_round_trip_presets(label, A):
    res = is_restrictable(A)
    text = dumps(A, res.pmap if res else None)
    B, pm = loads(text)
    assert B == A and B.name == A.name
    if res:
        assert np.array_equal(pm, res.pmap.images)
    assert dumps(B, pm) == text


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (3, 2)])
def test_round_trip_extension_fields(p, k):
    A = random_algebra(field_make(p, k), np.random.default_rng(k), max_dim=4)
    text = dumps(A)
    assert loads(text)[0] == A
    assert all(isinstance(c, list) for _, _, entries in json.loads(text)["brackets"]
               for _, c in entries)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([(2, 1), (3, 1), (2, 2), (5, 2)]), st.data())
def test_element_codec(field, data):
    F = field_make(*field)
    c = data.draw(st.integers(0, F.q - 1))
    assert decode_element(F, encode_element(F, c), "x") == c


def test_file_round_trip(tmp_path):
    A = preset("heis3", 5)
    path = tmp_path / "h.json"
    dump(A, path)
    assert load(path)[0] == A


@pytest.mark.parametrize("bad", [
    "not json",
    "[]",
    {"dim": 2},
    {"field": {"p": 4}, "dim": 1},
    {"field": {"p": 3, "k": 0}, "dim": 1},
    {"field": {"p": 3}, "dim": -1},
    {"field": {"p": 3, "q": 1}, "dim": 1},
    {"field": {"p": 3}, "dim": 1, "extra": 0},
    {"field": {"p": 3}, "dim": 2, "brackets": [[0, 2, []]]},
    {"field": {"p": 3}, "dim": 2, "brackets": [[0, 1, [[1, 3]]]]},
    {"field": {"p": 3}, "dim": 2, "brackets": [[0, 1, [[1, 1]]], [0, 1, []]]},
    {"field": {"p": 3}, "dim": 2, "brackets": [[0, 1, [[1, 1], [1, 2]]]]},
    {"field": {"p": 3}, "dim": 2, "brackets": [[0, 1, [[1, True]]]]},
    {"field": {"p": 2, "k": 2}, "dim": 1, "brackets": [[0, 0, [[0, 1]]]]},
    {"field": {"p": 2, "k": 2}, "dim": 1, "brackets": [[0, 0, [[0, [1]]]]]},
    {"field": {"p": 3}, "dim": 1, "pmap": [[1, []]]},
    {"field": {"p": 3}, "dim": 1, "pmap": [[0, []], [0, []]]},
    {"field": {"p": 3}, "dim": 1, "name": 5},
])
def test_malformed_files(bad):
    text = bad if isinstance(bad, str) else json.dumps(bad)
    with pytest.raises(FormatError):
        loads(text)


def test_identity_checked_after_parse():
    d = {"field": {"p": 3}, "dim": 2, "brackets": [[0, 0, [[1, 1]]], [1, 0, [[0, 1]]]]}
    with pytest.raises(LeibnizIdentityViolation):
        loads(json.dumps(d))
    assert parse_dict(d).sc[1, 0, 0] == 1
    assert loads(json.dumps(d), check=False)[0].n == 2


def test_writer_is_canonical():
    A = preset("aff2", 3)
    text = dumps(A)
    assert text.endswith("\n")
    assert text == json.dumps(json.loads(text), sort_keys=True) + "\n"
    assert json.loads(text)["brackets"] == AFF2["brackets"]
