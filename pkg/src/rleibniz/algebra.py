"""Left Leibniz algebras given by structure constants.

``sc[i, j, k]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``.  Elements
are coordinate vectors (numpy rows of field codes).  Multiplication
operators act on column vectors: column ``j`` of ``left_mult(x)`` holds
``[x, e_j]`` and column ``j`` of ``right_mult(x)`` holds ``[e_j, x]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (DimensionMismatch, LeibnizIdentityViolation, NotAnIdeal,
                     NotDerivation, NotHomomorphism, NotLie, TheoremViolation)
from .exactla import Subspace, inverse, linear_kernel, rank
from .gfield import extension


def _leibniz_defect(F, sc):
    lhs = F.einsum("ijm,mkl->ijkl", sc, sc)
    t1 = F.einsum("jkm,iml->ijkl", sc, sc)
    t2 = F.einsum("ikm,jml->ijkl", sc, sc)
    return lhs, F.sub(t1, t2)


def leibniz_violations(F, sc):
    """All basis triples ``(i, j, k)`` violating the left Leibniz identity,
    in lexicographic order."""
    sc = np.asarray(sc, dtype=np.int64)
    lhs, rhs = _leibniz_defect(F, sc)
    bad = np.any(lhs != rhs, axis=-1)
    return [tuple(int(v) for v in t) for t in np.argwhere(bad)]


class Algebra:
    """A finite-dimensional left Leibniz algebra over ``F``.

    The Leibniz identity ``[[x,y],z] = [x,[y,z]] - [y,[x,z]]`` is checked on
    all basis triples at construction; by trilinearity this is sufficient.
    """

    def __init__(self, F, sc, name=None, check=True):
        sc = np.array(sc, dtype=np.int64)
        if sc.ndim != 3 or len(set(sc.shape)) != 1:
            raise DimensionMismatch(f"structure constants must be n x n x n, got {sc.shape}")
        F.asarray(sc)
        if check:
            n = sc.shape[0]
            if n:
                lhs, rhs = _leibniz_defect(F, sc)
                bad = np.argwhere(np.any(lhs != rhs, axis=-1))
                if bad.size:
                    i, j, k = bad[0]
                    raise LeibnizIdentityViolation((i, j, k), lhs[i, j, k], rhs[i, j, k])
        sc.setflags(write=False)
        self.F = F
        self.sc = sc
        self.n = sc.shape[0]
        self.name = name
        # L_{e_i}[k, j] = c_{ij}^k ; R_{e_i}[k, j] = c_{ji}^k
        self.L_basis = np.ascontiguousarray(sc.transpose(0, 2, 1))
        self.R_basis = np.ascontiguousarray(sc.transpose(1, 2, 0))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<Algebra{label} dim={self.n} over {self.F!r}>"

    def __eq__(self, other):
        return (isinstance(other, Algebra) and self.F == other.F
                and np.array_equal(self.sc, other.sc))

    def __hash__(self):
        return hash((self.F, self.sc.tobytes()))

    def _vec(self, x):
        x = np.asarray(x, dtype=np.int64)
        if x.shape[-1:] != (self.n,):
            raise DimensionMismatch(f"element of length {x.shape[-1:]} in a {self.n}-dim algebra")
        return x

    def basis(self):
        return np.eye(self.n, dtype=np.int64)

    def zero(self):
        return np.zeros(self.n, dtype=np.int64)

    def bracket(self, x, y):
        x, y = self._vec(x), self._vec(y)
        return self.F.einsum("...j,...kj->...k", y, self.left_mult(x))

    def left_mult(self, x):
        return self.F.einsum("...i,ikj->...kj", self._vec(x), self.L_basis)

    def right_mult(self, x):
        return self.F.einsum("...i,ikj->...kj", self._vec(x), self.R_basis)

    def random_elements(self, rng, count):
        return self.F.random(rng, (count, self.n))

    def all_elements(self):
        """Every element of the algebra (use only for tiny q^n)."""
        q, n = self.F.q, self.n
        idx = np.arange(q ** n, dtype=np.int64)
        return (idx[:, None] // q ** np.arange(n, dtype=np.int64)) % q

    def extend_scalars(self, m):
        """The same algebra over GF(q^m), with the coefficient embedding."""
        G, embed = extension(self.F, m)
        if m == 1:
            return self, embed
        return Algebra(G, embed(self.sc), self.name, check=False), embed


def algebra_new(F, n, sc, name=None):
    sc = np.asarray(sc, dtype=np.int64)
    if sc.shape != (n, n, n):
        raise DimensionMismatch(f"expected structure constants of shape {(n, n, n)}")
    return Algebra(F, sc, name)


def _span(A, vectors):
    return Subspace.span(A.F, A.n, vectors)


def _rows(A, S):
    if isinstance(S, Subspace):
        return S.basis
    return np.asarray(S, dtype=np.int64).reshape(-1, A.n)


def bracket_span(A, U, V):
    """Span of ``[u, v]`` over u in U, v in V (subspaces or lists of vectors)."""
    U, V = _rows(A, U), _rows(A, V)
    if len(U) == 0 or len(V) == 0:
        return Subspace.zero(A.F, A.n)
    prods = A.bracket(U[:, None, :], V[None, :, :])
    return _span(A, prods.reshape(-1, A.n))


@dataclass(frozen=True)
class LieCheck:
    is_lie: bool
    witness: tuple = None  # (i, j, value) with value = [e_i,e_i] or [e_i,e_j] + [e_j,e_i]

    def __bool__(self):
        return self.is_lie


def is_lie(A):
    """Whether the bracket is alternating, with the first failing basis pair."""
    F, sc = A.F, A.sc
    for i in range(A.n):
        for j in range(i, A.n):
            v = sc[i, i] if i == j else F.add(sc[i, j], sc[j, i])
            if np.any(v):
                return LieCheck(False, (i, j, [int(c) for c in v]))
    return LieCheck(True)


def lower_central_series(A):
    """``[L^1 = L, L^2 = [L, L], L^3 = [L, L^2], ...]`` up to stabilization."""
    full = Subspace.full(A.F, A.n)
    series = [full]
    while True:
        nxt = bracket_span(A, full, series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def derived_series(A):
    series = [Subspace.full(A.F, A.n)]
    while True:
        nxt = bracket_span(A, series[-1], series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def is_nilpotent(A):
    return lower_central_series(A)[-1].dim == 0


def is_solvable(A):
    return derived_series(A)[-1].dim == 0


def _is_nilpotent_matrix(F, M):
    n = M.shape[-1]
    return not np.any(F.matpow(M, n))


def engel_check(A, samples=20, seed=0):
    """Whether every sampled ``L_x`` (basis and random x) is nilpotent.

    A positive answer is cross-checked against the lower central series.
    """
    rng = np.random.default_rng(seed)
    xs = np.concatenate([A.basis(), A.random_elements(rng, samples)])
    ok = all(_is_nilpotent_matrix(A.F, M) for M in A.left_mult(xs))
    if ok and not is_nilpotent(A):
        raise TheoremViolation("all sampled L_x nilpotent but the lower central series stalls")
    return ok


# centers, centralizers, normalizers


def right_center(A):
    """``Z(L) = {x : [x, L] = 0}``, the kernel of ``x -> L_x``."""
    return linear_kernel(A.F, A.L_basis)


def left_center(A):
    """``C(L) = {x : [L, x] = 0}``."""
    return linear_kernel(A.F, A.R_basis)


def right_centralizer(A, S):
    """``{x : [x, s] = 0 for all s in S}``."""
    S = _rows(A, S)
    if len(S) == 0:
        return Subspace.full(A.F, A.n)
    return linear_kernel(A.F, A.right_mult(S).transpose(2, 0, 1))


def left_centralizer(A, S):
    """``{x : [s, x] = 0 for all s in S}``."""
    S = _rows(A, S)
    if len(S) == 0:
        return Subspace.full(A.F, A.n)
    return linear_kernel(A.F, A.left_mult(S).transpose(2, 0, 1))


def left_normalizer(A, V):
    """``{x : [V, x] is contained in V}``."""
    if V.dim == 0:
        return Subspace.full(A.F, A.n)
    E = V.equations()
    # image of e_j: E [v_a, e_j] for every basis vector v_a
    imgs = A.F.einsum("ek,akj->jae", E, A.left_mult(V.basis))
    return linear_kernel(A.F, imgs)


# subalgebras and ideals


def is_subalgebra(A, V):
    return V.contains(bracket_span(A, V, V))


def is_left_ideal(A, V):
    return V.contains(bracket_span(A, A.basis(), V))


def is_right_ideal(A, V):
    return V.contains(bracket_span(A, V, A.basis()))


def is_ideal(A, V):
    return is_left_ideal(A, V) and is_right_ideal(A, V)


def subalgebra_generated(A, vectors):
    V = _span(A, _rows(A, vectors))
    while True:
        W = V + bracket_span(A, V, V)
        if W == V:
            return V
        V = W


def ideal_generated(A, vectors):
    V = _span(A, _rows(A, vectors))
    basis = A.basis()
    while True:
        W = V + bracket_span(A, basis, V) + bracket_span(A, V, basis)
        if W == V:
            return V
        V = W


def subalgebra_algebra(A, V, name=None):
    """The subalgebra V as an algebra in its echelon basis."""
    if not is_subalgebra(A, V):
        raise NotAnIdeal("subspace is not closed under the bracket")
    prods = A.bracket(V.basis[:, None, :], V.basis[None, :, :])
    return Algebra(A.F, V.coords(prods), name, check=False)


def quotient(A, I, name=None):
    """``(A / I, projection)`` on the complement basis of non-pivot coordinates."""
    if not is_ideal(A, I):
        raise NotAnIdeal("quotient by a subspace that is not a two-sided ideal")
    comp = list(I.complement_coords())
    P = I.reduce(A.basis())[:, comp].T
    prods = A.bracket(A.basis()[comp][:, None, :], A.basis()[comp][None, :, :])
    sc = A.F.einsum("kl,abl->abk", P, prods)
    Q = Algebra(A.F, sc, name, check=False)
    if not hom_check(P, A, Q):
        raise TheoremViolation("quotient projection is not a homomorphism")
    return Q, P


def hom_check(f, A, B):
    """Whether the matrix ``f`` (columns = images of A's basis) preserves brackets."""
    f = np.asarray(f, dtype=np.int64)
    if f.shape != (B.n, A.n):
        raise DimensionMismatch(f"map of shape {f.shape} between dims {A.n} and {B.n}")
    if A.n == 0:
        return True
    lhs = A.F.einsum("kl,ijl->ijk", f, A.sc)
    cols = f.T
    rhs = B.bracket(cols[:, None, :], cols[None, :, :])
    return bool(np.array_equal(lhs, rhs))


# representations


@dataclass(frozen=True, eq=False)
class RepPair:
    """Right action ``S_a`` and left action ``T_a`` on a module, per basis element."""

    S: np.ndarray
    T: np.ndarray

    @classmethod
    def adjoint(cls, A):
        return cls(A.R_basis.copy(), A.L_basis.copy())


def representation_check(R, A):
    """Check the bimodule identities on basis pairs.

    With ``ma = S_a m`` and ``am = T_a m``::

        (ma)b = m[a,b] - a(mb)      i.e.  S_b S_a = S_[a,b] - T_a S_b
        (am)b = a(mb) - m[a,b]      i.e.  S_b T_a = T_a S_b - S_[a,b]
        [a,b]m = a(bm) - b(am)      i.e.  T_[a,b] = T_a T_b - T_b T_a
    """
    F = A.F
    S, T = np.asarray(R.S, dtype=np.int64), np.asarray(R.T, dtype=np.int64)
    if S.shape[0] != A.n or T.shape != S.shape or S.shape[1] != S.shape[2]:
        raise DimensionMismatch("representation matrices do not match the algebra")
    S_ab = F.einsum("abk,kij->abij", A.sc, S)
    T_ab = F.einsum("abk,kij->abij", A.sc, T)
    Sa, Sb = S[:, None], S[None, :]
    Ta, Tb = T[:, None], T[None, :]
    mm = F.matmul
    one = np.array_equal(mm(Sb, Sa), F.sub(S_ab, mm(Ta, Sb)))
    two = np.array_equal(mm(Sb, Ta), F.sub(mm(Ta, Sb), S_ab))
    three = np.array_equal(T_ab, F.sub(mm(Ta, Tb), mm(Tb, Ta)))
    return bool(one and two and three)


def is_symmetric_rep(R, F):
    return bool(not np.any(F.add(R.S, R.T)))


# bilinear forms


@dataclass(frozen=True, eq=False)
class BilForm:
    """Symmetric bilinear form ``psi(x, y) = x^T gram y``."""

    gram: np.ndarray

    def __call__(self, F, x, y):
        return F.dot(x, F.matvec(self.gram, y))


def _sym_basis(n):
    out = []
    for a in range(n):
        for b in range(a, n):
            E = np.zeros((n, n), dtype=np.int64)
            E[a, b] = E[b, a] = 1
            out.append(E)
    return np.asarray(out, dtype=np.int64).reshape(-1, n, n)


def assoc_sym_forms(A):
    """Basis of symmetric forms with ``psi([x,z], y) = psi(x, [z,y])``."""
    F, sc, n = A.F, A.sc, A.n
    E = _sym_basis(n)
    if n == 0:
        return []
    defect = F.sub(F.einsum("izk,...ky->...izy", sc, E),
                   F.einsum("zyk,...ik->...izy", sc, E))
    ker = linear_kernel(F, defect)
    return [BilForm(F.einsum("c,cij->ij", row, E)) for row in ker.basis]


def is_associative_form(A, psi):
    F, sc, G = A.F, A.sc, np.asarray(psi.gram)
    return bool(np.array_equal(F.einsum("izk,ky->izy", sc, G), F.einsum("zyk,ik->izy", sc, G)))


def form_radical(psi, A):
    return Subspace.span(A.F, A.n, linear_kernel(A.F, np.asarray(psi.gram)).basis)


def is_nondegenerate(psi, F):
    G = np.asarray(psi.gram)
    return rank(F, G) == G.shape[0]


def trace_form(A):
    """Gram matrix ``tr(L_a L_b)`` on the basis."""
    F, Lb = A.F, A.L_basis
    prods = F.matmul(Lb[:, None], Lb[None, :])
    return BilForm(F.sum(np.diagonal(prods, axis1=-2, axis2=-1), axis=-1))


# derivations and constructions


def derivation_defect(A, D):
    """``D[e_i,e_j] - [D e_i, e_j] - [e_i, D e_j]`` for (a stack of) matrices D."""
    F, sc = A.F, A.sc
    D = np.asarray(D, dtype=np.int64)
    a = F.einsum("...kl,ijl->...ijk", D, sc)
    b = F.einsum("...li,ljk->...ijk", D, sc)
    c = F.einsum("...lj,ilk->...ijk", D, sc)
    return F.sub(a, F.add(b, c))


def is_derivation(A, D):
    return not np.any(derivation_defect(A, D))


def derivations(A):
    """Basis of Der(A) as matrices."""
    n = A.n
    if n == 0:
        return []
    units = np.eye(n * n, dtype=np.int64).reshape(n * n, n, n)
    ker = linear_kernel(A.F, derivation_defect(A, units))
    return [row.reshape(n, n).copy() for row in ker.basis]


def direct_sum(A, B, name=None):
    if A.F != B.F:
        raise DimensionMismatch("direct sum of algebras over different fields")
    n, m = A.n, B.n
    sc = np.zeros((n + m,) * 3, dtype=np.int64)
    sc[:n, :n, :n] = A.sc
    sc[n:, n:, n:] = B.sc
    if name is None and A.name and B.name:
        name = f"{A.name}+{B.name}"
    return Algebra(A.F, sc, name, check=False)


def semidirect(A, B, phi, name=None):
    """``A x_phi B`` with ``[(a,b),(a',b')] = ([a,a'], phi(a)b' - phi(a')b + [b,b'])``.

    ``phi[i]`` is the matrix of ``phi(e_i)`` acting on B; B must be Lie and
    ``phi`` a homomorphism into Der(B).
    """
    F = A.F
    if B.F != F:
        raise DimensionMismatch("semidirect product of algebras over different fields")
    n, m = A.n, B.n
    phi = np.asarray(phi, dtype=np.int64).reshape(n, m, m)
    lie = is_lie(B)
    if not lie:
        raise NotLie(f"B is not a Lie algebra (witness pair {lie.witness[:2]})")
    for i in range(n):
        if not is_derivation(B, phi[i]):
            raise NotDerivation(i)
    lhs = F.einsum("ijk,kab->ijab", A.sc, phi)
    rhs = F.sub(F.matmul(phi[:, None], phi[None, :]), F.matmul(phi[None, :], phi[:, None]))
    bad = np.argwhere(np.any(lhs != rhs, axis=(-1, -2)))
    if bad.size:
        raise NotHomomorphism(int(bad[0][0]), int(bad[0][1]))
    sc = np.zeros((n + m,) * 3, dtype=np.int64)
    sc[:n, :n, :n] = A.sc
    sc[n:, n:, n:] = B.sc
    # [e_i, f_r] = phi_i f_r  and  [f_r, e_i] = -phi_i f_r
    sc[:n, n:, n:] = phi.transpose(0, 2, 1)
    sc[n:, :n, n:] = F.neg(phi.transpose(2, 0, 1))
    return Algebra(F, sc, name)


def is_automorphism(F, M):
    try:
        inverse(F, M)
    except ZeroDivisionError:
        return False
    return True
