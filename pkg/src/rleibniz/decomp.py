"""L-endomorphisms, Fitting splits into p-ideals and indecomposable decompositions.

A linear map phi on L is an L-endomorphism when it commutes with every left
and right multiplication.  It is an L-p-endomorphism when in addition
``phi(x^[p]) = phi(x)^[p]``.  That last condition is nonlinear, so it is
reported with a three-valued verdict: ``verified`` (samples pass and a
structural sufficient condition holds), ``sampled-only`` (samples pass) or
``refuted`` (a witness was found).

Indecomposability is evidence based: a summand is declared indecomposable
when none of the tried candidate endomorphisms splits it, and the number of
candidates is reported.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import is_ideal, right_center, right_centralizer, subalgebra_algebra
from .errors import (CenterNonzero, CertificationFailed, DimensionMismatch,
                     RefutedWithWitness, TheoremViolation)
from .exactla import Subspace, column_space, commutant, inverse, kernel
from .gfield import char_poly, poly_eval
from .restricted import is_p_closed, is_p_ideal, restrict_pmap

VERIFIED = "verified"
SAMPLED = "sampled-only"
REFUTED = "refuted"

DEFAULT_COMPAT_SAMPLES = 100
DEFAULT_DRAWS = 200


@dataclass(frozen=True, eq=False)
class LEndo:
    matrix: np.ndarray
    commutes_left: bool = True
    commutes_right: bool = True


@dataclass(frozen=True)
class PCompat:
    verdict: str
    witness: tuple | None = None
    evidence: int = 0

    def __bool__(self):
        return self.verdict != REFUTED


def _matrix(phi):
    return np.asarray(phi.matrix if isinstance(phi, LEndo) else phi, dtype=np.int64)


def is_l_endomorphism(A, phi):
    F = A.F
    M = _matrix(phi)
    ops = np.concatenate([A.L_basis, A.R_basis])
    return bool(np.array_equal(F.matmul(M[None], ops), F.matmul(ops, M[None])))


def l_endomorphisms(A):
    """Basis of the commutant of all ``L_{e_i}`` and ``R_{e_i}``."""
    F = A.F
    mats = commutant(F, list(A.L_basis) + list(A.R_basis), n=A.n)
    span = Subspace.span(F, A.n * A.n, [M.reshape(-1) for M in mats])
    if not span.contains_vector(F.eye(A.n).reshape(-1)):
        raise TheoremViolation("identity missing from the commutant")
    return [LEndo(M) for M in mats]


def _eigenspaces_p_closed(A, P, M):
    """Structural check: ``M^p = M`` and every prime-field eigenspace is p-closed.

    Under ``M^p = M`` the map is diagonalizable with prime-field eigenvalues,
    its eigenspaces are ideals with zero brackets between them, and
    p-compatibility reduces to each eigenspace being p-closed.
    """
    F = A.F
    if not np.array_equal(F.matpow(M, F.p), M):
        return False
    for lam in range(F.p):
        E = kernel(F, F.sub(M, F.mul(lam, F.eye(A.n))))
        if not is_p_closed(P, E):
            return False
    return True


def p_compat_check(A, P, phi, samples=DEFAULT_COMPAT_SAMPLES, seed=0, raise_on_refute=True):
    """Test ``phi(x^[p]) = phi(x)^[p]`` on the basis, pairwise basis sums and samples."""
    F = A.F
    M = _matrix(phi)
    eye = A.basis()
    iu, ju = np.triu_indices(A.n, 1)
    xs = [eye, F.add(eye[iu], eye[ju])]
    if samples:
        xs.append(A.random_elements(np.random.default_rng(seed), samples))
    xs = np.concatenate(xs)
    lhs = F.matmul(P(xs), M.T)
    rhs = P(F.matmul(xs, M.T))
    bad = np.flatnonzero(np.any(lhs != rhs, axis=-1))
    if len(bad):
        x = xs[bad[0]]
        if raise_on_refute:
            raise RefutedWithWitness(x)
        return PCompat(REFUTED, tuple(int(v) for v in x), int(bad[0]) + 1)
    Z = right_center(A)
    structural = Z.image(M) <= Z and _eigenspaces_p_closed(A, P, M)
    return PCompat(VERIFIED if structural else SAMPLED, None, len(xs))


def fitting_split_pideal(A, P, phi):
    """``(ker phi^n, im phi^n)`` certified as a direct sum of p-ideals."""
    F = A.F
    M = _matrix(phi)
    Mn = F.matpow(M, A.n)
    K, I = kernel(F, Mn), column_space(F, Mn)
    if K.dim + I.dim != A.n or (K & I).dim:
        raise CertificationFailed("kernel and image do not form a direct sum")
    for name, V in (("kernel", K), ("image", I)):
        if not is_ideal(A, V):
            raise CertificationFailed(f"{name} piece is not an ideal")
        if not is_p_closed(P, V):
            raise CertificationFailed(f"{name} piece is not closed under the p-map")
    return K, I


def _projection(F, U, V):
    """Idempotent with image V and kernel U, for ``U + V`` the whole space."""
    B = np.concatenate([U.basis, V.basis]).T
    D = np.zeros(B.shape[0], dtype=np.int64)
    D[U.dim:] = 1
    return F.matmul(F.matmul(B, np.diag(D)), inverse(F, B))


def _base_eigenvalues(F, M):
    chi = char_poly(F, M)
    vals = F.elements() if F.k == 1 else np.arange(F.p)
    return [int(v) for v in vals[poly_eval(F, chi, vals) == 0]]


@dataclass
class Decomposition:
    summands: list
    certificates: list = field(default_factory=list)  # per summand: dict
    seed: int = 0

    def validate(self, A, P):
        total = Subspace.zero(A.F, A.n)
        for U in self.summands:
            if not is_p_ideal(A, P, U):
                raise CertificationFailed(f"summand {U.tolist()} is not a p-ideal")
            total = total + U
        if total.dim != A.n or sum(U.dim for U in self.summands) != A.n:
            raise CertificationFailed("summands do not form a direct sum of L")
        return True

    def report(self):
        return [{"basis": U.tolist(), **cert} for U, cert in zip(self.summands, self.certificates)]


def _split_once(A, P, rng, draws, samples):
    """A nontrivial p-ideal split ``(U, V)`` of A, or None plus the candidate count."""
    F = A.F
    basis = [e.matrix for e in l_endomorphisms(A)]
    tried = 0
    stack = np.asarray(basis)

    def candidates():
        yield from basis
        for _ in range(draws):
            c = F.random(rng, len(basis))
            yield F.einsum("r,rij->ij", c, stack)

    for phi in candidates():
        for lam in _base_eigenvalues(F, phi):
            tried += 1
            psi = F.sub(phi, F.mul(lam, F.eye(A.n)))
            Mn = F.matpow(psi, A.n)
            K, I = kernel(F, Mn), column_space(F, Mn)
            if K.dim == 0 or I.dim == 0:
                continue
            e = _projection(F, K, I)
            if not p_compat_check(A, P, e, samples=samples, seed=tried, raise_on_refute=False):
                continue
            try:
                return fitting_split_pideal(A, P, e), tried
            except CertificationFailed:
                continue
    return None, tried


def indecomposable_decomposition(A, P, draws=DEFAULT_DRAWS, seed=0, samples=20):
    """Split A recursively into p-ideals that no tried candidate splits further."""
    rng = np.random.default_rng(seed)
    F = A.F
    out = []

    def recurse(V):
        sub = subalgebra_algebra(A, V)
        PV = restrict_pmap(P, V)
        split, tried = _split_once(sub, PV, rng, draws, samples)
        if split is None:
            out.append((V, {"is_p_ideal": True, "candidates_tried": tried}))
            return
        for piece in split:
            recurse(Subspace.span(F, A.n, V.from_coords(piece.basis)))

    recurse(Subspace.full(F, A.n))
    out.sort(key=lambda item: tuple(item[0].pivots))
    dec = Decomposition([U for U, _ in out], [c for _, c in out], seed)
    for U, cert in zip(dec.summands, dec.certificates):
        cert["is_p_ideal"] = bool(is_p_ideal(A, P, U))
    dec.validate(A, P)
    return dec


def uniqueness_check(A, P, dec1, dec2):
    """Permutation ``perm`` with ``dec1.summands[i] == dec2.summands[perm[i]]``."""
    if right_center(A).dim:
        raise CenterNonzero("uniqueness of decompositions needs a trivial center")
    dec1.validate(A, P)
    dec2.validate(A, P)
    if len(dec1.summands) != len(dec2.summands):
        raise TheoremViolation(
            f"decompositions have {len(dec1.summands)} and {len(dec2.summands)} summands")
    perm = []
    for U in dec1.summands:
        hits = [j for j, V in enumerate(dec2.summands) if U == V and j not in perm]
        if not hits:
            raise TheoremViolation(f"summand {U.tolist()} has no equal partner")
        perm.append(hits[0])
    return perm


def sum_automorphism_check(A, P, phis, samples=DEFAULT_COMPAT_SAMPLES, seed=0):
    """Index of an invertible p-compatible map among L-p-endomorphisms summing to id."""
    F = A.F
    mats = [_matrix(phi) for phi in phis]
    total = np.zeros((A.n, A.n), dtype=np.int64)
    for M in mats:
        if not is_l_endomorphism(A, M):
            raise DimensionMismatch("summand is not an L-endomorphism")
        total = F.add(total, M)
    if not np.array_equal(total, F.eye(A.n)):
        raise DimensionMismatch("maps do not sum to the identity")
    for i, M in enumerate(mats):
        try:
            inverse(F, M)
        except ZeroDivisionError:
            continue
        if p_compat_check(A, P, M, samples=samples, seed=seed, raise_on_refute=False):
            return i
    raise TheoremViolation("no summand is an automorphism although L is indecomposable")


def centralizer_p_check(A, P, S):
    """``Z_L(S)`` is a p-subalgebra, and a p-ideal when S is an ideal.

    S is a :class:`Subspace` or rows spanning one.
    """
    from .restricted import is_p_subalgebra

    if not isinstance(S, Subspace):
        S = Subspace.span(A.F, A.n, S)
    Zs = right_centralizer(A, S.basis)
    if not is_p_subalgebra(A, P, Zs):
        raise TheoremViolation("right centralizer is not a p-subalgebra")
    if is_ideal(A, S) and not is_p_ideal(A, P, Zs):
        raise TheoremViolation("right centralizer of an ideal is not a p-ideal")
    return Zs


def center_split_check(A, P, U, V):
    """For ``L = U + V`` a direct sum of p-ideals: ``Z(L) = Z(U) + Z(V)``, and
    ``Z_L(U) = V``, ``Z_L(V) = U`` when ``Z(L) = 0``."""
    if not (is_p_ideal(A, P, U) and is_p_ideal(A, P, V)):
        raise DimensionMismatch("pieces are not p-ideals")
    if (U + V).dim != A.n or (U & V).dim:
        raise DimensionMismatch("pieces do not form a direct sum")
    Z = right_center(A)
    ZU = U & right_centralizer(A, U)
    ZV = V & right_centralizer(A, V)
    if ZU + ZV != Z or (ZU & ZV).dim:
        raise TheoremViolation("center is not the sum of the summand centers")
    if Z.dim == 0:
        if right_centralizer(A, U) != V or right_centralizer(A, V) != U:
            raise TheoremViolation("right centralizer of one summand is not the other")
    return ZU, ZV

