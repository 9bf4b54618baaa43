"""JSON algebra files.

A file is one object::

    {"field": {"p": 3, "k": 1}, "dim": 2, "name": "aff2",
     "brackets": [[0, 1, [[1, 1]]], [1, 0, [[1, 2]]]],
     "pmap": [[0, [[0, 1]]]]}

Indices are 0-based; omitted bracket pairs and p-map images are zero.
Field elements are coefficient lists, constant term first; over a prime field
a bare integer is accepted and is what the writer emits.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .algebra import Algebra
from .errors import DegreeZero, FormatError, NotPrime
from .gfield import field_make

TOP_KEYS = {"field", "dim", "name", "brackets", "pmap"}
FIELD_KEYS = {"p", "k"}


@dataclass(frozen=True, eq=False)
class ParsedFile:
    F: object
    dim: int
    sc: np.ndarray
    name: str | None
    pmap: np.ndarray | None  # rows are basis images, or None when absent


def _int(v, what):
    if isinstance(v, bool) or not isinstance(v, int):
        raise FormatError(f"{what} must be an integer, got {v!r}")
    return v


def decode_element(F, v, what):
    if isinstance(v, list):
        if len(v) != F.k:
            raise FormatError(f"{what}: expected {F.k} coefficients, got {len(v)}")
        coeffs = [_int(c, what) for c in v]
    elif F.k == 1:
        coeffs = [_int(v, what)]
    else:
        raise FormatError(f"{what}: elements of GF({F.p}^{F.k}) need a coefficient list")
    if any(c < 0 or c >= F.p for c in coeffs):
        raise FormatError(f"{what}: coefficients must lie in 0..{F.p - 1}")
    return F.from_coeffs(coeffs)


def _vector(F, n, entries, what):
    if not isinstance(entries, list):
        raise FormatError(f"{what} must be a list of [index, element] pairs")
    out = np.zeros(n, dtype=np.int64)
    seen = set()
    for item in entries:
        if not (isinstance(item, list) and len(item) == 2):
            raise FormatError(f"{what}: entry {item!r} is not [index, element]")
        k = _int(item[0], what)
        if not 0 <= k < n:
            raise FormatError(f"{what}: index {k} out of range")
        if k in seen:
            raise FormatError(f"{what}: index {k} repeated")
        seen.add(k)
        out[k] = decode_element(F, item[1], what)
    return out


def parse_dict(d):
    """Decode the file object without checking the Leibniz identity."""
    if not isinstance(d, dict):
        raise FormatError("top level must be an object")
    extra = set(d) - TOP_KEYS
    if extra:
        raise FormatError(f"unknown keys: {sorted(extra)}")
    for key in ("field", "dim"):
        if key not in d:
            raise FormatError(f"missing key {key!r}")
    fd = d["field"]
    if not isinstance(fd, dict) or "p" not in fd:
        raise FormatError("field must be an object with at least 'p'")
    if set(fd) - FIELD_KEYS:
        raise FormatError(f"unknown field keys: {sorted(set(fd) - FIELD_KEYS)}")
    try:
        F = field_make(_int(fd["p"], "field.p"), _int(fd.get("k", 1), "field.k"))
    except (NotPrime, DegreeZero) as exc:
        raise FormatError(str(exc)) from None
    n = _int(d["dim"], "dim")
    if n < 0:
        raise FormatError("dim must be non-negative")
    name = d.get("name")
    if name is not None and not isinstance(name, str):
        raise FormatError("name must be a string")
    sc = np.zeros((n, n, n), dtype=np.int64)
    brackets = d.get("brackets", [])
    if not isinstance(brackets, list):
        raise FormatError("brackets must be a list")
    seen = set()
    for item in brackets:
        if not (isinstance(item, list) and len(item) == 3):
            raise FormatError(f"bracket entry {item!r} is not [i, j, entries]")
        i, j = _int(item[0], "bracket index"), _int(item[1], "bracket index")
        if not (0 <= i < n and 0 <= j < n):
            raise FormatError(f"bracket pair ({i}, {j}) out of range")
        if (i, j) in seen:
            raise FormatError(f"bracket pair ({i}, {j}) repeated")
        seen.add((i, j))
        sc[i, j] = _vector(F, n, item[2], f"[e{i}, e{j}]")
    pmap = None
    if "pmap" in d:
        if not isinstance(d["pmap"], list):
            raise FormatError("pmap must be a list")
        pmap = np.zeros((n, n), dtype=np.int64)
        seen = set()
        for item in d["pmap"]:
            if not (isinstance(item, list) and len(item) == 2):
                raise FormatError(f"pmap entry {item!r} is not [j, entries]")
            j = _int(item[0], "pmap index")
            if not 0 <= j < n:
                raise FormatError(f"pmap index {j} out of range")
            if j in seen:
                raise FormatError(f"pmap index {j} repeated")
            seen.add(j)
            pmap[j] = _vector(F, n, item[1], f"e{j}^[p]")
    return ParsedFile(F, n, sc, name, pmap)


def parse_text(text):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    return parse_dict(d)


def loads(text, check=True):
    """``(Algebra, pmap images or None)`` from JSON text."""
    pf = parse_text(text)
    return Algebra(pf.F, pf.sc, pf.name, check=check), pf.pmap


def load(path, check=True):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), check=check)


def encode_element(F, c):
    if F.k == 1:
        return int(c)
    return F.coeffs(c)


def _encode_vector(F, v):
    return [[int(k), encode_element(F, v[k])] for k in np.flatnonzero(v)]


def to_dict(A, pmap=None):
    F = A.F
    d = {"field": {"p": F.p, "k": F.k}, "dim": A.n}
    if A.name is not None:
        d["name"] = A.name
    d["brackets"] = [[int(i), int(j), _encode_vector(F, A.sc[i, j])]
                     for i in range(A.n) for j in range(A.n) if np.any(A.sc[i, j])]
    if pmap is not None:
        images = np.asarray(getattr(pmap, "images", pmap), dtype=np.int64)
        d["pmap"] = [[j, _encode_vector(F, images[j])] for j in range(A.n) if np.any(images[j])]
    return d


def dumps(A, pmap=None):
    """Canonical JSON: sorted keys, zero entries omitted, trailing newline."""
    return json.dumps(to_dict(A, pmap), sort_keys=True) + "\n"


def dump(A, path, pmap=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(A, pmap))
