"""Brute-force reference computations.

Everything here is written from first principles with plain Python integers
(prime fields only, plus a tiny polynomial GF(p^k) multiply) and does not
import the package, so it can serve as an independent check.  The p-map
evaluator at the end uses numpy integer arithmetic for speed.
"""

from __future__ import annotations

import itertools


# scalars and polynomials


def gfq_mul(a, b, p, modulus):
    """Multiply two GF(p^k) elements given as coefficient lists (constant first)."""
    k = len(modulus) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for i in range(k + 1):
                prod[d - k + i] = (prod[d - k + i] - c * modulus[i]) % p
    return prod[:k]


def poly_divides(f, g, p):
    """Whether monic f divides g over GF(p) (coefficient lists, constant first)."""
    g = list(g)
    df = len(f) - 1
    while len(g) - 1 >= df and any(g):
        while g and g[-1] == 0:
            g.pop()
        if len(g) - 1 < df:
            break
        c = g[-1]
        shift = len(g) - 1 - df
        for i, fc in enumerate(f):
            g[shift + i] = (g[shift + i] - c * fc) % p
        g.pop()
    return not any(g)


def is_irreducible_bf(f, p):
    """Trial division by every monic polynomial of degree 1..deg/2."""
    d = len(f) - 1
    for e in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=e):
            if poly_divides(list(low) + [1], f, p):
                return False
    return True


# vectors and matrices over GF(p)


def vectors(p, n):
    return [list(v) for v in itertools.product(range(p), repeat=n)]


def mat_mul(A, B, p):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) % p for j in range(len(B[0]))]
            for i in range(len(A))]


def mat_pow(A, e, p):
    n = len(A)
    R = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(e):
        R = mat_mul(R, A, p)
    return R


def rank_mod(M, p):
    M = [[int(v) for v in r] for r in M]
    rank = 0
    cols = len(M[0]) if M else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(M)) if M[r][c] % p), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][c], p - 2, p)
        M[rank] = [v * inv % p for v in M[rank]]
        for r in range(len(M)):
            if r != rank and M[r][c]:
                f = M[r][c]
                M[r] = [(a - f * b) % p for a, b in zip(M[r], M[rank])]
        rank += 1
    return rank


# algebras given by nested-list structure constants sc[i][j][k]


def bracket(sc, x, y, p):
    n = len(sc)
    return [sum(x[i] * y[j] * sc[i][j][k] for i in range(n) for j in range(n)) % p
            for k in range(n)]


def left_mult(sc, x, p):
    n = len(sc)
    cols = [bracket(sc, x, [int(i == j) for i in range(n)], p) for j in range(n)]
    return [[cols[j][k] for j in range(n)] for k in range(n)]


def leibniz_failures(sc, p):
    """All basis triples (i, j, k), in lexicographic order, breaking the identity."""
    n = len(sc)
    e = [[int(i == j) for i in range(n)] for j in range(n)]
    out = []
    for i, j, k in itertools.product(range(n), repeat=3):
        lhs = bracket(sc, bracket(sc, e[i], e[j], p), e[k], p)
        a = bracket(sc, e[i], bracket(sc, e[j], e[k], p), p)
        b = bracket(sc, e[j], bracket(sc, e[i], e[k], p), p)
        if lhs != [(u - v) % p for u, v in zip(a, b)]:
            out.append((i, j, k))
    return out


def pth_power_solutions(sc, x, p):
    """Every y with L_y = (L_x)^p, by enumeration of GF(p)^n."""
    target = mat_pow(left_mult(sc, x, p), p, p)
    return [y for y in vectors(p, len(sc)) if left_mult(sc, y, p) == target]


def restrictable_bf(sc, p):
    """Per basis index, the list of all admissible p-th power images."""
    n = len(sc)
    return [pth_power_solutions(sc, [int(i == j) for i in range(n)], p) for j in range(n)]


def right_center_bf(sc, p):
    n = len(sc)
    zero = [[0] * n for _ in range(n)]
    return [z for z in vectors(p, n) if left_mult(sc, z, p) == zero]


# subspaces


def span_set(gens, p, n):
    """All vectors in the span of gens, as a frozenset of tuples."""
    out = {tuple([0] * n)}
    for g in gens:
        out = {tuple((a + c * b) % p for a, b in zip(v, g)) for v in out for c in range(p)}
    return frozenset(out)


def all_subspaces(p, n):
    """Every subspace of GF(p)^n, each as a frozenset of its vectors."""
    found = {span_set([], p, n)}
    frontier = set(found)
    vecs = vectors(p, n)
    while frontier:
        nxt = set()
        for S in frontier:
            for v in vecs:
                if tuple(v) not in S:
                    T = span_set([list(s) for s in S] + [v], p, n)
                    if T not in found:
                        found.add(T)
                        nxt.add(T)
        frontier = nxt
    return found


def is_ideal_set(sc, S, p):
    n = len(sc)
    basis = [[int(i == j) for i in range(n)] for j in range(n)]
    for s in S:
        for e in basis:
            if tuple(bracket(sc, list(s), e, p)) not in S or tuple(bracket(sc, e, list(s), p)) not in S:
                return False
    return True


def p_closed_set_unique(sc, S, p):
    """p-closure of S when the p-th power is pinned down by L_y = (L_x)^p alone.

    Valid only for algebras with trivial right center, where the solution y
    is unique.
    """
    for s in S:
        sols = pth_power_solutions(sc, list(s), p)
        assert len(sols) == 1, "p-th power not unique; oracle does not apply"
        if tuple(sols[0]) not in S:
            return False
    return True


def pideal_splittings_bf(sc, p):
    """All pairs of nonzero p-ideals (U, V) with U + V the whole space and U & V = 0."""
    n = len(sc)
    subs = [S for S in all_subspaces(p, n) if 1 < len(S) < p ** n]
    good = [S for S in subs if is_ideal_set(sc, S, p) and p_closed_set_unique(sc, S, p)]
    out = []
    for U, V in itertools.combinations(good, 2):
        if len(U & V) == 1 and len(U) * len(V) == p ** n:
            out.append((U, V))
    return out


# p-map evaluation by interpolation (prime fields, numpy, independent of the package)


def _vandermonde_inverse(p):
    """Inverse of V[l][d] = l^d over GF(p), l, d in 0..p-1, by Gauss-Jordan."""
    V = [[pow(l, d, p) if (l or d) else 1 for d in range(p)] + [int(l == r) for r in range(p)]
         for l in range(p)]
    for c in range(p):
        piv = next(r for r in range(c, p) if V[r][c] % p)
        V[c], V[piv] = V[piv], V[c]
        inv = pow(V[c][c], p - 2, p)
        V[c] = [v * inv % p for v in V[c]]
        for r in range(p):
            if r != c and V[r][c]:
                f = V[r][c]
                V[r] = [(a - f * b) % p for a, b in zip(V[r], V[c])]
    return [row[p:] for row in V]


def pmap_fold_interp(sc, images, X, p):
    """``x^[p]`` for rows of X, folding the basis in ascending order.

    The Jacobson terms come from evaluating ``(L(a l + b))^(p-1)(a)`` at the
    p points l = 0..p-1 and interpolating the coefficients in l.
    """
    import numpy as np

    sc = np.asarray(sc, dtype=np.int64)
    images = np.asarray(images, dtype=np.int64)
    X = np.asarray(X, dtype=np.int64) % p
    Vinv = np.asarray(_vandermonde_inverse(p), dtype=np.int64)
    inv = np.asarray([pow(i, p - 2, p) for i in range(1, p)], dtype=np.int64)

    def br(x, y):
        return np.einsum("...j,...jk->...k", y, np.tensordot(x, sc, axes=1)) % p

    def s_total(a, b):
        vals = []
        for lam in range(p):
            w = (a * lam + b) % p
            z = a
            for _ in range(p - 1):
                z = br(w, z)
            vals.append(z)
        vals = np.stack(vals)  # (p, ..., n)
        coeffs = np.einsum("dl,l...->d...", Vinv, vals) % p
        return np.einsum("i,i...->...", inv, coeffs[: p - 1]) % p

    n = sc.shape[0]
    acc = np.zeros_like(X)
    u = np.zeros_like(X)
    for j in range(n):
        v = np.zeros_like(X)
        v[..., j] = X[..., j]
        acc = (acc + X[..., j, None] * images[j]) % p  # x_j^p = x_j over GF(p)
        if j:
            acc = (acc + s_total(u, v)) % p
        u = (u + v) % p
    return acc
