"""p-mappings on Leibniz algebras.

A p-mapping is stored by the images of the standard basis.  Values on
arbitrary elements come from folding the sum rule

    (u + v)^[p] = u^[p] + v^[p] + sum_i s_i(u, v)

over the basis in ascending order, with ``(a e_j)^[p] = a^p e_j^[p]``.  The
coefficients ``s_i(u, v)`` are read off ``(L(u X + v))^(p-1)(u)`` computed in
``L[X]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (bracket_span, is_ideal, is_left_ideal, is_subalgebra,
                      right_center, subalgebra_algebra)
from .errors import (BasisAxiomFails, Degenerate, DimensionMismatch, HypothesisFails, NotCentral,
                     NotLeftIdeal, NotSemilinear, RandomSpotFails, TheoremViolation)
from .exactla import PSemilinear, Subspace, inverse, solve

DEFAULT_SAMPLES = 50


@dataclass(frozen=True, eq=False)
class SiTable:
    """``s[i-1]`` holds ``s_i(a, b)``; ``excess`` is the X^(p-1) coefficient."""

    s: np.ndarray
    excess: np.ndarray

    def total(self, F):
        return F.sum(self.s, axis=0)


def jacobson_si(A, a, b, check=True):
    """Coefficients of ``(L(aX + b))^(p-1)(a)`` in ``L[X]`` (batched over a, b).

    Coefficient ``X^(i-1)`` divided by ``i`` gives ``s_i`` for i < p.  The top
    coefficient ``(L_a)^(p-1)(a)`` is returned separately; it always lies in
    the right center, which is asserted when ``check`` is set.
    """
    F, p = A.F, A.F.p
    a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
    La, Lb = A.left_mult(a), A.left_mult(b)
    z = np.zeros((p,) + a.shape, dtype=np.int64)
    z[0] = a
    for _ in range(p - 1):
        nxt = F.matvec(Lb, z)
        nxt[1:] = F.add(nxt[1:], F.matvec(La, z[:-1]))
        z = nxt
    excess = z[p - 1]
    inv = F.inv(np.arange(1, p, dtype=np.int64))
    s = F.mul(inv.reshape((p - 1,) + (1,) * a.ndim), z[: p - 1])
    if check and np.any(A.left_mult(excess)):
        raise TheoremViolation("top Jacobson coefficient is not right-central")
    return SiTable(s, excess)


class PMap:
    """A p-mapping given by basis images ``images[j] = e_j^[p]``."""

    def __init__(self, A, images):
        images = np.array(images, dtype=np.int64).reshape(A.n, A.n)
        A.F.asarray(images)
        images.setflags(write=False)
        self.A = A
        self.images = images

    def __repr__(self):
        return f"PMap({self.images.tolist()})"

    def __call__(self, x):
        return pmap_eval(self, x)

    def power(self, x, i):
        """``x^([p]^i)``."""
        for _ in range(i):
            x = self(x)
        return x

    def same_images(self, other):
        return np.array_equal(self.images, other.images)


def pmap_eval(P, x, order=None):
    """Evaluate the p-map (batched over leading axes of x).

    ``order`` permutes the fold order of basis indices; the default is
    ascending.
    """
    A = P.A
    F = A.F
    x = np.asarray(x, dtype=np.int64)
    if x.shape[-1:] != (A.n,):
        raise DimensionMismatch("element does not match the algebra dimension")
    order = list(range(A.n)) if order is None else list(order)
    powered = F.frob(x)
    u = np.zeros_like(x)
    acc = np.zeros_like(x)
    for step, j in enumerate(order):
        v = np.zeros_like(x)
        v[..., j] = x[..., j]
        acc = F.add(acc, F.mul(powered[..., j, None], P.images[j]))
        if step:
            acc = F.add(acc, jacobson_si(A, u, v).total(F))
        u = F.add(u, v)
    return acc


def pmap_from_basis(A, B, Y):
    """The p-map with ``b_j^[p] = y_j`` for the basis given by the columns of B.

    Standard basis images are obtained by folding over the basis B, so the
    result agrees with the prescribed values on each ``b_j``.
    """
    F = A.F
    B = np.asarray(B, dtype=np.int64)
    Y = np.asarray(Y, dtype=np.int64)
    Binv = inverse(F, B)
    out = np.zeros((A.n, A.n), dtype=np.int64)
    for j in range(A.n):
        c = Binv[:, j]
        powered = F.frob(c)
        u = np.zeros(A.n, dtype=np.int64)
        acc = np.zeros(A.n, dtype=np.int64)
        for k in range(A.n):
            v = F.mul(c[k], B[:, k])
            acc = F.add(acc, F.mul(powered[k], Y[k]))
            if k:
                acc = F.add(acc, jacobson_si(A, u, v).total(F))
            u = F.add(u, v)
        out[j] = acc
    return PMap(A, out)


def _left_mult_system(A):
    # columns are the flattened L_{e_i}; y -> L_y is this matrix applied to y
    return A.L_basis.reshape(A.n, -1).T


def solve_left_mult(A, target, within=None):
    """Some y with ``L_y = target`` (optionally y in a subspace), or None."""
    F = A.F
    M = _left_mult_system(A)
    if within is not None:
        if within.dim == 0:
            return np.zeros(A.n, dtype=np.int64) if not np.any(target) else None
        M = F.matmul(M, within.basis.T)
    sol = solve(F, M, np.asarray(target, dtype=np.int64).reshape(-1))
    if sol is None:
        return None
    y = sol[0]
    return y if within is None else within.from_coords(y)


@dataclass(frozen=True)
class Restrictability:
    pmap: PMap = None
    failing_index: int = None

    def __bool__(self):
        return self.pmap is not None


def is_restrictable(A):
    """Solve ``L_y = (L_{e_j})^p`` for every j.

    On success the returned p-map uses the solutions with free coordinates
    set to zero; otherwise the first unsolvable index is reported.
    """
    F, p = A.F, A.F.p
    images = np.zeros((A.n, A.n), dtype=np.int64)
    for j in range(A.n):
        y = solve_left_mult(A, F.matpow(A.L_basis[j], p))
        if y is None:
            return Restrictability(None, j)
        images[j] = y
    return Restrictability(PMap(A, images))


def pmap_verify(A, images, samples=DEFAULT_SAMPLES, seed=0):
    """Check ``L_{y_j} = (L_{e_j})^p`` on the basis and spot-check axiom (1)."""
    F, p = A.F, A.F.p
    images = np.asarray(images, dtype=np.int64).reshape(A.n, A.n)
    powers = F.matpow(A.L_basis, p)
    got = A.left_mult(images)
    for j in range(A.n):
        if not np.array_equal(got[j], powers[j]):
            raise BasisAxiomFails(j)
    P = PMap(A, images)
    if samples and A.n:
        xs = A.random_elements(np.random.default_rng(seed), samples)
        lhs = A.left_mult(P(xs))
        rhs = F.matpow(A.left_mult(xs), p)
        bad = np.flatnonzero(np.any(lhs != rhs, axis=(-1, -2)))
        if bad.size:
            raise RandomSpotFails(xs[bad[0]])
    return P


def satisfies_axiom_one(P, x):
    """``L_{x^[p]} = (L_x)^p`` for each row of x."""
    A = P.A
    return np.all(A.left_mult(P(x)) == A.F.matpow(A.left_mult(x), A.F.p), axis=(-1, -2))


def pmap_difference(P1, P2, samples=DEFAULT_SAMPLES, seed=0):
    """``x -> x^[p]1 - x^[p]2`` as a p-semilinear map into the right center."""
    A = P1.A
    if P2.A != A:
        raise DimensionMismatch("p-maps on different algebras")
    F = A.F
    D = F.sub(P1.images, P2.images)
    Z = right_center(A)
    for j in range(A.n):
        if not Z.contains_vector(D[j]):
            raise NotCentral(j)
    f = PSemilinear(F, D.T.copy())
    if samples and A.n:
        rng = np.random.default_rng(seed)
        xs, ys = A.random_elements(rng, samples), A.random_elements(rng, samples)
        alphas = F.random(rng, samples)
        diff = lambda v: F.sub(P1(v), P2(v))  # noqa: E731
        lhs = diff(F.add(F.mul(alphas[:, None], xs), ys))
        rhs = F.add(F.mul(F.frob(alphas)[:, None], diff(xs)), diff(ys))
        bad = np.flatnonzero(np.any((lhs != rhs) | (diff(xs) != f(xs)), axis=-1))
        if bad.size:
            raise NotSemilinear(xs[bad[0]], ys[bad[0]])
    return f


def pmap_vanishing_on_center(P):
    """A p-map agreeing with P up to a central p-semilinear map, zero on Z(L)."""
    A = P.A
    F = A.F
    Z = right_center(A)
    G = np.zeros((A.n, A.n), dtype=np.int64)
    if Z.dim:
        G[list(Z.pivots)] = P(Z.basis)
    return PMap(A, F.sub(P.images, G))


def iterates(P, x):
    """``[x^[p], x^([p]^2), ...]`` until the span stops growing for n steps."""
    A = P.A
    out = []
    span = Subspace.zero(A.F, A.n)
    idle = 0
    y = np.asarray(x, dtype=np.int64)
    while idle < max(A.n, 1):
        y = P(y)
        out.append(y)
        nxt = span + Subspace.span(A.F, A.n, y)
        idle = idle + 1 if nxt == span else 0
        span = nxt
    return out


def central_pth_ideal(A, P, samples=20, seed=0):
    """Span of ``[x^([p]^i), x^([p]^j)]`` over basis and sampled x.

    The result is asserted to lie in the right center.
    """
    xs = np.concatenate([A.basis(), A.random_elements(np.random.default_rng(seed), samples)])
    I = Subspace.zero(A.F, A.n)
    for x in xs:
        its = np.asarray([x] + iterates(P, x))
        I = I + bracket_span(A, its, its)
    if not right_center(A).contains(I):
        raise TheoremViolation("brackets of p-power iterates leave the right center")
    return I


def is_p_closed(P, V):
    return V.dim == 0 or not np.any(V.reduce(P(V.basis)))


def is_p_subalgebra(A, P, V):
    return is_subalgebra(A, V) and is_p_closed(P, V)


def is_p_ideal(A, P, V):
    return is_ideal(A, V) and is_p_closed(P, V)


def p_closure(A, P, H):
    """Smallest p-subalgebra containing the left ideal H.

    Spanned by the iterated p-powers of a basis of H; the result is checked to
    be a p-closed left ideal with ``[H_p, L] = [H, L]``.
    """
    if not is_left_ideal(A, H):
        raise NotLeftIdeal("p-closure requires a left ideal")
    G = H
    for h in H.basis:
        G = G + Subspace.span(A.F, A.n, iterates(P, h))
    while not is_p_closed(P, G):
        G = G + Subspace.span(A.F, A.n, P(G.basis))
    full = A.basis()
    if not (is_left_ideal(A, G) and bracket_span(A, G, full) == bracket_span(A, H, full)):
        raise TheoremViolation("p-closure of a left ideal fails [H_p, L] = [H, L]")
    return G


@dataclass(frozen=True, eq=False)
class DerivationDefect:
    basis_defects: np.ndarray  # row j: D(e_j^[p]) - (L_{e_j})^(p-1) D(e_j)
    sample_defects: np.ndarray
    restricted: bool


def restricted_derivation_defect(A, P, D, samples=20, seed=0):
    """``D(x^[p]) - (L_x)^(p-1) D(x)`` on the basis and random samples.

    Every defect must be right-central; on centerless algebras every defect
    must vanish.
    """
    F, p = A.F, A.F.p
    D = np.asarray(D, dtype=np.int64)
    xs = np.concatenate([A.basis(), A.random_elements(np.random.default_rng(seed), samples)])
    Dx = F.matvec(D, xs)
    defects = F.sub(F.matvec(D, P(xs)), F.matvec(F.matpow(A.left_mult(xs), p - 1), Dx))
    Z = right_center(A)
    for x, d in zip(xs, defects):
        if not Z.contains_vector(d):
            raise TheoremViolation(f"derivation defect at {x.tolist()} is not right-central")
    if Z.dim == 0 and np.any(defects):
        raise TheoremViolation("nonzero derivation defect on a centerless algebra")
    return DerivationDefect(defects[: A.n], defects[A.n:], not np.any(defects))


def form_restrictability_certificate(A, G, PG, E, gram, samples=DEFAULT_SAMPLES, seed=0):
    """p-map on a subalgebra A of (G, PG) induced by an associative form.

    ``E`` has the embedding of A's basis in G as columns and ``gram`` is the
    Gram matrix of an associative symmetric form on G.  For each basis x of
    A, the functional ``z -> psi(x^[p], z)`` on A is represented by some y in
    A; then ``[x^[p] - y, A] = 0`` and y serves as ``x^[p]`` inside A.
    """
    F = A.F
    E = np.asarray(E, dtype=np.int64)
    gram = np.asarray(gram, dtype=np.int64)
    restricted_gram = F.matmul(F.matmul(E.T, gram), E)
    try:
        ginv = inverse(F, restricted_gram)
    except ZeroDivisionError:
        raise Degenerate("form is degenerate on the subalgebra") from None
    xp = PG(E.T)  # rows: (image of basis vector)^[p] in G
    functionals = F.matmul(F.matmul(xp, gram), E)
    images = F.matmul(functionals, ginv.T)
    P = pmap_verify(A, images, samples=samples, seed=seed)
    canon = is_restrictable(A)
    if not canon:
        raise TheoremViolation("form certificate succeeded but the algebra is not restrictable")
    pmap_difference(P, canon.pmap, samples=samples, seed=seed)
    return P


# transport along constructions


def restrict_pmap(P, V):
    """The p-map of a p-subalgebra V, as a p-map on V's echelon basis."""
    A = P.A
    if not is_p_subalgebra(A, P, V):
        raise TheoremViolation("restriction to a subspace that is not a p-subalgebra")
    sub = subalgebra_algebra(A, V)
    return PMap(sub, V.coords(P(V.basis)))


def quotient_pmap(P, I, Q, proj):
    """The p-map induced on ``Q = A / I`` (I a p-ideal) by the projection."""
    A = P.A
    if not is_p_ideal(A, P, I):
        raise TheoremViolation("induced p-map needs a p-ideal")
    comp = list(I.complement_coords())
    reps = A.basis()[comp]
    return PMap(Q, A.F.matmul(P(reps), proj.T))


def direct_sum_pmap(P1, P2, S):
    n, m = P1.A.n, P2.A.n
    images = np.zeros((n + m, n + m), dtype=np.int64)
    images[:n, :n] = P1.images
    images[n:, n:] = P2.images
    return PMap(S, images)


def semidirect_pmap(PA, PB, phi, samples=20, seed=0):
    """p-map of ``A x_phi B`` with ``(a, 0)^[p] = (a^[p], 0)`` and ``(0, b)^[p] = (0, b^[p])``.

    Requires phi to respect p-th powers and to act by restricted derivations;
    violations raise HypothesisFails.  The assembled images are verified.
    """
    from .algebra import semidirect

    A, B = PA.A, PB.A
    F, p = A.F, A.F.p
    phi = np.asarray(phi, dtype=np.int64).reshape(A.n, B.n, B.n)
    rng = np.random.default_rng(seed)
    xs = np.concatenate([A.basis(), A.random_elements(rng, samples)])
    act = lambda v: F.einsum("...i,ijk->...jk", v, phi)  # noqa: E731
    if not np.array_equal(act(PA(xs)), F.matpow(act(xs), p)):
        raise HypothesisFails("phi does not carry p-th powers to p-th powers")
    for i in range(A.n):
        if not restricted_derivation_defect(B, PB, phi[i], samples, seed).restricted:
            raise HypothesisFails(f"phi(e_{i}) is not a restricted derivation")
    S = semidirect(A, B, phi)
    images = np.zeros((S.n, S.n), dtype=np.int64)
    images[: A.n, : A.n] = PA.images
    images[A.n:, A.n:] = PB.images
    return S, pmap_verify(S, images, samples, seed)


def is_p_homomorphism(f, P1, P2):
    """Bracket-preserving and ``f(e_j^[p]) = f(e_j)^[p]`` on the basis."""
    from .algebra import hom_check

    f = np.asarray(f, dtype=np.int64)
    if not hom_check(f, P1.A, P2.A):
        return False
    F = P1.A.F
    return bool(np.array_equal(F.matmul(P1.images, f.T), P2(f.T)))


def left_mult_closed(A, H):
    """Whether ``(L_h)^p`` is some ``L_y`` with y in H, for every basis h of H."""
    F, p = A.F, A.F.p
    for h in H.basis:
        if solve_left_mult(A, F.matpow(A.left_mult(h), p), within=H) is None:
            return False
    return True


def pmap_with_p_subalgebra(A, H):
    """A p-map of the restrictable algebra A under which H is p-closed, or None.

    Basis images on H are chosen inside H; the remaining images come from the
    canonical solution, and the map is assembled on the adapted basis.
    """
    F, p = A.F, A.F.p
    canon = is_restrictable(A)
    if not canon:
        return None
    cols, imgs = [], []
    for h in H.basis:
        y = solve_left_mult(A, F.matpow(A.left_mult(h), p), within=H)
        if y is None:
            return None
        cols.append(h)
        imgs.append(y)
    for c in H.complement_coords():
        e = np.zeros(A.n, dtype=np.int64)
        e[c] = 1
        cols.append(e)
        imgs.append(canon.pmap.images[c])
    return pmap_from_basis(A, np.asarray(cols).T, np.asarray(imgs))


def restricted_algebra(A):
    """``(A, canonical p-map)`` or raise if A is not restrictable."""
    res = is_restrictable(A)
    if not res:
        raise BasisAxiomFails(res.failing_index)
    return res.pmap

