"""Named small algebras and a compositional random generator.

Every generated algebra is valid by construction: leaves are known Leibniz
algebras and the only combinators are direct sums and semidirect products
``A x_phi B`` with B Lie and phi a homomorphism into Der(B).
"""

from __future__ import annotations

import numpy as np

from .algebra import Algebra, bracket_span, derivations, direct_sum, semidirect
from .gfield import field_make


def _sc(n):
    return np.zeros((n, n, n), dtype=np.int64)


def ab(F, n=2):
    """Abelian algebra of dimension n."""
    return Algebra(F, _sc(n), f"ab{n}")


def cyc(F, m=2):
    """Nilpotent cyclic algebra: ``[e_1, e_i] = e_{i+1}``."""
    sc = _sc(m)
    for i in range(m - 1):
        sc[0, i, i + 1] = 1
    return Algebra(F, sc, "cy2" if m == 2 else f"cyc{m}")


def cy2(F):
    return cyc(F, 2)


def aff2(F):
    """Basis (t, x) with ``[t, x] = x`` and ``[x, t] = -x``."""
    sc = _sc(2)
    sc[0, 1, 1] = 1
    sc[1, 0, 1] = F.p - 1
    return Algebra(F, sc, "aff2")


def laff2(F):
    """Basis (t, x) with ``[t, x] = x`` only; right and left centers differ."""
    sc = _sc(2)
    sc[0, 1, 1] = 1
    return Algebra(F, sc, "laff2")


def heis3(F):
    """Basis (x, y, z) with ``[x, y] = z = -[y, x]``."""
    sc = _sc(3)
    sc[0, 1, 2] = 1
    sc[1, 0, 2] = F.p - 1
    return Algebra(F, sc, "heis3")


def sl2(F):
    """Basis (e, h, f) with ``[h, e] = 2e``, ``[h, f] = -2f``, ``[e, f] = h``."""
    p = F.p
    sc = _sc(3)
    e, h, f = 0, 1, 2
    for (a, b, c, v) in ((h, e, e, 2), (h, f, f, -2), (e, f, h, 1)):
        sc[a, b, c] = v % p
        sc[b, a, c] = (-v) % p
    return Algebra(F, sc, "sl2")


def _jordan(F, m=2):
    J = np.eye(m, dtype=np.int64)
    for i in range(m - 1):
        J[i, i + 1] = 1
    return J


def nonres(F):
    """``span{t}`` acting on F^2 by a unipotent Jordan block; not restrictable."""
    return semidirect(ab(F, 1), ab(F, 2), [_jordan(F)], "nonres")


def nonresleib(F):
    """Cy2 acting on F^2 through ``e_1 -> J``; non-Lie and not restrictable."""
    phi = [_jordan(F), np.zeros((2, 2), dtype=np.int64)]
    return semidirect(cy2(F), ab(F, 2), phi, "nonresleib")


def torsd(F, m=2):
    """``span{t}`` acting on F^m by ``diag(1, 2, ...)``; centerless when p > m."""
    D = np.diag([(i + 1) % F.p for i in range(m)]).astype(np.int64)
    return semidirect(ab(F, 1), ab(F, m), [D], f"torsd{m}")


SIZED = ("ab", "cyc", "torsd")

PRESETS = {
    "ab": ab,
    "cy2": cy2,
    "cyc": cyc,
    "aff2": aff2,
    "laff2": laff2,
    "heis3": heis3,
    "sl2": sl2,
    "nonres": nonres,
    "nonresleib": nonresleib,
    "torsd": torsd,
}


def _leaf(F, token, dim=None):
    if token in PRESETS and token not in SIZED:
        return PRESETS[token](F)
    name = token.rstrip("0123456789")
    digits = token[len(name):]
    if name not in PRESETS:
        raise KeyError(f"unknown preset {token!r}; choose from {sorted(PRESETS)}")
    size = int(digits) if digits else dim
    if name in SIZED and size is not None:
        return PRESETS[name](F, size)
    return PRESETS[name](F)


def preset(name, p=2, k=1, dim=None):
    """Build a preset by name; ``"aff2+cy2"`` gives a direct sum.

    ``ab``, ``cyc`` and ``torsd`` take their size from a numeric suffix
    (``ab3``) or from ``dim``.
    """
    F = field_make(p, k)
    parts = [_leaf(F, tok.strip().lower(), dim) for tok in name.split("+")]
    out = parts[0]
    for part in parts[1:]:
        out = direct_sum(out, part)
    out.name = name.lower()
    return out


# random generation

LEAVES = ("ab1", "ab2", "cy2", "cyc3", "aff2", "heis3", "laff2")


def _annihilator_functional(F, rng, A, extra=None):
    """Random functional on A vanishing on ``[A, A]`` (and on ``extra`` rows)."""
    V = bracket_span(A, A.basis(), A.basis())
    if extra is not None and len(extra):
        V = V + type(V).span(F, A.n, extra)
    E = V.equations()
    if len(E) == 0:
        return np.zeros(A.n, dtype=np.int64)
    coeffs = F.random(rng, len(E))
    return F.einsum("r,rn->n", coeffs, E)


def _random_derivation(F, rng, B):
    basis = derivations(B)
    if not basis:
        return np.zeros((B.n, B.n), dtype=np.int64)
    coeffs = F.random(rng, len(basis))
    return F.einsum("r,rij->ij", coeffs, np.asarray(basis))


def random_algebra(F, rng, max_dim=6, depth=2):
    """A random Leibniz algebra of dimension at most ``max_dim``."""
    if isinstance(rng, (int, np.integer)):
        rng = np.random.default_rng(int(rng))
    fits = [t for t in LEAVES if _leaf(F, t).n <= max_dim]
    A = _leaf(F, fits[rng.integers(len(fits))])
    for _ in range(depth):
        room = max_dim - A.n
        if room <= 0:
            break
        op = rng.integers(3)
        if op == 0:
            leaves = [t for t in fits if _leaf(F, t).n <= room]
            if not leaves:
                break
            B = _leaf(F, leaves[rng.integers(len(leaves))])
            A = direct_sum(A, B) if rng.integers(2) else direct_sum(B, A)
        else:
            if room >= 3 and rng.integers(3) == 0:
                B = _leaf(F, "heis3")
            else:
                B = ab(F, int(rng.integers(1, min(room, 3) + 1)))
            c = _annihilator_functional(F, rng, A)
            D = _random_derivation(F, rng, B)
            phi = F.mul(c[:, None, None], D[None])
            A = semidirect(A, B, phi)
    A.name = None
    return A


def random_restricted_semidirect(F, rng, max_dim=6):
    """``(A, PA, B, PB, phi)`` meeting the hypotheses for a restrictable semidirect product.

    Either A is abelian with the identity p-map and phi acts by diagonal
    prime-field matrices with prime-field weights, or phi factors through a
    functional vanishing on ``[A, A]`` and the canonical p-powers of A, with
    a matrix D satisfying ``D^p = 0``.  B is abelian with the zero p-map.
    """
    from .restricted import PMap, is_restrictable

    if isinstance(rng, (int, np.integer)):
        rng = np.random.default_rng(int(rng))
    p = F.p
    m = int(rng.integers(1, 3))
    B = ab(F, m)
    PB = PMap(B, np.zeros((m, m), dtype=np.int64))
    if rng.integers(2) == 0:
        r = int(rng.integers(1, max(2, max_dim - m)))
        A = ab(F, r)
        # prime-field diagonals give D^p = D and commute with each other
        diag = rng.integers(0, p, size=(r, m))
        phi = np.asarray([np.diag(diag[i]) for i in range(r)], dtype=np.int64)
        return A, PMap(A, np.eye(r, dtype=np.int64)), B, PB, phi
    candidates = [t for t in LEAVES if _leaf(F, t).n <= max_dim - m]
    while True:
        A = _leaf(F, candidates[rng.integers(len(candidates))])
        res = is_restrictable(A)
        if res:
            break
    c = _annihilator_functional(F, rng, A, extra=res.pmap.images)
    N = np.triu(F.random(rng, (m, m)), 1)
    phi = F.mul(c[:, None, None], N[None])
    return A, res.pmap, B, PB, phi
