"""Semisimple elements, tori, Cartan subalgebras and root spaces."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import (bracket_span, hom_check, is_nilpotent, left_centralizer,
                      left_normalizer, right_centralizer, subalgebra_algebra)
from .errors import (CentralizersDiffer, CertificateFails, DimensionMismatch,
                     HypothesisFails, NotAbelian, NotPClosed, TheoremViolation)
from .exactla import PSemilinear, Subspace, kernel, psemilinear_fitting, psemilinear_kernel, rank
from .gfield import common_splitting_degree, eigenvalue_scan
from .restricted import PMap, is_p_closed, is_p_homomorphism, iterates

DEFAULT_TORUS_DRAWS = 100


def is_semisimple_element(A, P, x):
    """Whether x lies in the span of ``x^[p], x^([p]^2), ...``."""
    x = np.asarray(x, dtype=np.int64)
    if not np.any(x):
        return True
    return Subspace.span(A.F, A.n, iterates(P, x)).contains_vector(x)


def semisimple_power(A, P, x):
    """Smallest k >= 1 with ``x^([p]^k)`` semisimple."""
    y = np.asarray(x, dtype=np.int64)
    for k in range(1, 2 * A.n + 3):
        y = P(y)
        if is_semisimple_element(A, P, y):
            return k
    raise TheoremViolation(f"no semisimple p-power of {np.asarray(x).tolist()} found")


def is_abelian_subspace(A, V):
    return bracket_span(A, V, V).dim == 0


def pmap_on_abelian(A, P, V):
    """The restriction of [p] to an abelian p-subalgebra, in V's echelon coordinates."""
    if not is_abelian_subspace(A, V):
        raise NotAbelian("subspace is not abelian")
    if not is_p_closed(P, V):
        raise NotPClosed("subspace is not closed under the p-map")
    M = V.coords(P(V.basis)).T if V.dim else np.zeros((0, 0), dtype=np.int64)
    return PSemilinear(A.F, M)


@dataclass(frozen=True)
class Nonsingularity:
    nonsingular: bool
    kernel: Subspace

    def __bool__(self):
        return self.nonsingular


def pmap_nonsingular_on(A, P, V):
    """Whether [p] has no nonzero zero on the abelian p-subalgebra V."""
    f = pmap_on_abelian(A, P, V)
    if V.dim == 0:
        return Nonsingularity(True, V)
    ker = psemilinear_kernel(f)
    amb = Subspace.span(A.F, A.n, V.from_coords(ker.basis)) if ker.dim else Subspace.zero(A.F, A.n)
    return Nonsingularity(ker.dim == 0, amb)


def semisimple_part(A, P, V):
    """Semisimple elements of an abelian p-subalgebra V (a subspace)."""
    f = pmap_on_abelian(A, P, V)
    if V.dim == 0:
        return V
    _, V1 = psemilinear_fitting(f)
    if V1.dim == 0:
        return Subspace.zero(A.F, A.n)
    return Subspace.span(A.F, A.n, V.from_coords(V1.basis))


def is_torus(A, P, T):
    try:
        return bool(pmap_nonsingular_on(A, P, T))
    except (NotAbelian, NotPClosed):
        return False


def centralizer_pair(A, T):
    return right_centralizer(A, T), left_centralizer(A, T)


def torus_certificate(A, P, T):
    """Semisimple part of Z(H) for ``H = Z_L(T) & C_L(T)``; equals T when certified."""
    Z, C = centralizer_pair(A, T)
    H = Z & C
    ZH = H & right_centralizer(A, H)
    try:
        return semisimple_part(A, P, ZH)
    except (NotAbelian, NotPClosed) as exc:
        raise CertificateFails(f"center of the centralizer is unsuitable: {exc}") from None


@dataclass(frozen=True)
class TorusSearch:
    torus: Subspace
    candidates_tried: int


def maximal_torus(A, P, draws=DEFAULT_TORUS_DRAWS, seed=0, detail=False):
    """Greedy torus ascent, certified against the centralizer construction.

    Candidates are the basis of the current centralizer ``Z_L(T) & C_L(T)``
    followed by seeded random elements of it; each candidate is replaced by
    its first semisimple p-power and adjoined with its p-power iterates when
    the result is still a torus.
    """
    F = A.F
    rng = np.random.default_rng(seed)
    T = Subspace.zero(F, A.n)
    tried = 0
    grown = True
    while grown:
        grown = False
        Z, C = centralizer_pair(A, T)
        H = Z & C
        if H.dim == 0:
            break
        cands = np.concatenate([H.basis, H.from_coords(F.random(rng, (draws, H.dim)))])
        # x^([p]^n) lying in T rules x out: a torus gained from x would contain it
        far = cands
        for _ in range(A.n):
            far = P(far)
        useful = np.any(T.reduce(far) != 0, axis=-1)
        for x, ok in zip(cands, useful):
            tried += 1
            if not ok:
                continue
            y = P.power(x, semisimple_power(A, P, x))
            if T.contains_vector(y):
                continue
            S = T + Subspace.span(F, A.n, [y] + iterates(P, y))
            if is_torus(A, P, S):
                T = S
                grown = True
                break
    cert = torus_certificate(A, P, T)
    if cert != T:
        raise CertificateFails(
            f"found torus of dim {T.dim} but the centralizer construction gives dim {cert.dim}")
    return TorusSearch(T, tried) if detail else T


def cartan_subalgebra(A, P, torus=None, draws=DEFAULT_TORUS_DRAWS, seed=0):
    """``Z_L(T)`` for a maximal torus T with ``Z_L(T) = C_L(T)``.

    The result is checked to be nilpotent and self-normalizing.
    """
    T = maximal_torus(A, P, draws=draws, seed=seed) if torus is None else torus
    Z, C = centralizer_pair(A, T)
    if Z != C:
        raise CentralizersDiffer(T, Z, C)
    H = Z
    if not is_nilpotent(subalgebra_algebra(A, H)):
        raise HypothesisFails("centralizer of the maximal torus is not nilpotent")
    if left_normalizer(A, H) != H:
        raise HypothesisFails("centralizer of the maximal torus is not self-normalizing")
    return H


@dataclass(frozen=True, eq=False)
class Root:
    values: tuple  # alpha(h_i) for the echelon basis h_i of the Cartan subalgebra
    multiplicity: int


@dataclass(frozen=True, eq=False)
class RootDecomposition:
    cartan: Subspace
    extension_multiplier: int
    algebra: object  # the algebra over the work field
    embed: object
    roots: list = field(default_factory=list)  # [(Root, Subspace over the work field)]

    @property
    def field(self):
        return self.algebra.F

    def values(self):
        return [r.values for r, _ in self.roots]

    def space(self, values):
        for r, U in self.roots:
            if tuple(r.values) == tuple(values):
                return U
        raise KeyError(values)


def root_decomposition(A, P, H, max_ext=6):
    """Simultaneous generalized eigenspaces of ``L_h`` over the H basis.

    Scalars are extended to the smallest GF(q^m), m <= max_ext, over which
    every ``L_{h_i}`` splits.
    """
    F = A.F
    ops = A.left_mult(H.basis) if H.dim else np.zeros((0, A.n, A.n), dtype=np.int64)
    m = common_splitting_degree(list(ops), F, max_ext)
    AE, embed = A.extend_scalars(m)
    G = AE.F
    spaces = [((), Subspace.full(G, A.n))]
    for op in embed(ops):
        refined = []
        for vals, U in spaces:
            if not U.is_invariant(op):
                raise TheoremViolation("generalized weight space not invariant under the Cartan action")
            M = U.restrict(op)
            d = U.dim
            scan = eigenvalue_scan(M, G)
            if not scan.splits:
                raise TheoremViolation("restricted operator fails to split after extension")
            for lam, _ in scan.values:
                N = G.matpow(G.sub(M, G.mul(lam, G.eye(d))), d)
                K = kernel(G, N)
                refined.append((vals + (lam,), Subspace.span(G, A.n, U.from_coords(K.basis))))
        spaces = refined
    spaces.sort(key=lambda item: item[0])
    roots = [(Root(vals, U.dim), U) for vals, U in spaces]
    total = Subspace.zero(G, A.n)
    for _, U in roots:
        total = total + U
    if sum(U.dim for _, U in roots) != A.n or total.dim != A.n:
        raise TheoremViolation("root spaces do not form a direct sum decomposition")
    return RootDecomposition(H, m, AE, embed, roots)


def _scalar_of(G, M):
    """c if M = c I, else None."""
    d = M.shape[0]
    if d == 0:
        return 0
    c = int(M[0, 0])
    return c if np.array_equal(M, G.mul(c, G.eye(d))) else None


@dataclass
class RootPropertyReport:
    semisimple_checked: int = 0
    toral_checked: int = 0
    pth_power_checked: int = 0
    pth_power_skipped: int = 0
    notes: list = field(default_factory=list)


def root_properties_check(A, P, dec, samples=10, seed=0):
    """Check that semisimple Cartan elements act by scalars on root spaces, toral
    ones by prime-field scalars, and that ``x^[p]`` has weight zero on the root
    space of x whenever ``x^[p]`` lies in the Cartan subalgebra."""
    F = A.F
    AE, embed = dec.algebra, dec.embed
    G = AE.F
    H = dec.cartan
    rep = RootPropertyReport()
    rng = np.random.default_rng(seed)
    hs = H.basis
    if H.dim:
        hs = np.concatenate([hs, H.from_coords(F.random(rng, (samples, H.dim)))])
    for idx, h in enumerate(hs):
        if not is_semisimple_element(A, P, h):
            continue
        rep.semisimple_checked += 1
        toral = np.array_equal(P(h), h)
        Lh = embed(A.left_mult(h))
        for root, U in dec.roots:
            c = _scalar_of(G, U.restrict(Lh))
            if c is None:
                raise TheoremViolation(
                    f"semisimple {h.tolist()} does not act by a scalar on root {root.values}")
            if idx < H.dim and c != root.values[idx]:
                raise TheoremViolation(f"scalar of basis element {idx} disagrees with root {root.values}")
            if toral and c >= G.p:
                raise TheoremViolation(f"toral {h.tolist()} has weight {c} outside the prime field")
        rep.toral_checked += int(toral)
    PE = PMap(AE, embed(P.images))
    HE = Subspace.span(G, A.n, embed(H.basis)) if H.dim else Subspace.zero(G, A.n)
    for root, U in dec.roots:
        if U.dim == 0:
            continue
        xs = np.concatenate([U.basis, U.from_coords(G.random(rng, (samples, U.dim)))])
        for x in xs:
            if not np.any(x):
                continue
            xp = PE(x)
            if not HE.contains_vector(xp):
                rep.pth_power_skipped += 1
                continue
            R = U.restrict(AE.left_mult(xp))
            if np.any(G.matpow(R, U.dim)):
                raise TheoremViolation(f"x^[p] has nonzero weight on root {root.values}")
            rep.pth_power_checked += 1
    if rep.pth_power_skipped:
        rep.notes.append("p-th powers outside the Cartan subalgebra were skipped")
    return rep


def torus_decomposition_check(A, P, T, W):
    """``(C_W(T), [T, W])`` with their sum asserted to be W."""
    if not W.contains(bracket_span(A, T, W)):
        raise DimensionMismatch("W is not invariant under the torus")
    CW = W & left_centralizer(A, T)
    TW = bracket_span(A, T, W)
    if CW + TW != W:
        raise TheoremViolation("W != C_W(T) + [T, W]")
    return CW, TW


def torus_image_check(P1, P2, phi, T1):
    """The image of a maximal torus under a surjective p-homomorphism is a
    maximal torus (torus test plus the centralizer certificate)."""
    A1, A2 = P1.A, P2.A
    phi = np.asarray(phi, dtype=np.int64)
    if not hom_check(phi, A1, A2) or not is_p_homomorphism(phi, P1, P2):
        raise DimensionMismatch("map is not a p-homomorphism")
    if rank(A1.F, phi) != A2.n:
        raise DimensionMismatch("map is not surjective")
    img = T1.image(phi)
    if not is_torus(A2, P2, img):
        raise TheoremViolation("image of a maximal torus is not a torus")
    try:
        cert = torus_certificate(A2, P2, img)
    except CertificateFails as exc:
        raise TheoremViolation(f"image torus fails the maximality certificate: {exc}") from None
    if cert != img:
        raise TheoremViolation("image of a maximal torus is not maximal")
    return True
