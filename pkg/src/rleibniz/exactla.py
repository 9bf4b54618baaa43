"""Dense exact linear algebra over a :class:`~rleibniz.gfield.GF`.

Matrices are ``int64`` numpy arrays of field codes and are always passed
together with their field.  Vectors are rows unless a docstring says
otherwise; linear maps act on column vectors, so ``M @ x`` is the image
of ``x``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotAnnihilating, NotCoprime
from .gfield import poly_deg, poly_gcd, poly_mul, poly_of_matrix


def _as_matrix(M, cols=None):
    M = np.asarray(M, dtype=np.int64)
    if M.ndim == 1 and M.size == 0 and cols is not None:
        M = M.reshape(0, cols)
    if M.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got shape {M.shape}")
    return M


def rref(F, M):
    """Reduced row echelon form.

    Returns ``(R, rank, pivots)`` where ``R`` has the shape of ``M``, its
    first ``rank`` rows are nonzero with leading entry 1, and ``pivots``
    lists the pivot column of each of those rows.
    """
    R = _as_matrix(M).copy()
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        if R[r, c] != 1:
            R[r] = F.mul(R[r], F.inv(R[r, c]))
        col = R[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            R[hit] = F.sub(R[hit], F.mul(col[hit, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, r, tuple(pivots)


def rank(F, M):
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        return 0
    return rref(F, M)[1]


def nullspace(F, M):
    """Rows spanning ``{x : M x = 0}``, one per free column."""
    M = _as_matrix(M)
    cols = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    R, r, piv = rref(F, M)
    free = [c for c in range(cols) if c not in set(piv)]
    N = np.zeros((len(free), cols), dtype=np.int64)
    for t, f in enumerate(free):
        N[t, f] = 1
        if r:
            N[t, list(piv)] = F.neg(R[:r, f])
    return N


def solve(F, A, b):
    """Solve ``A x = b``.

    Returns ``None`` when inconsistent, otherwise ``(x, kernel)`` with the
    free coordinates of ``x`` set to zero.
    """
    A = _as_matrix(A)
    b = np.asarray(b, dtype=np.int64)
    if b.shape != (A.shape[0],):
        raise DimensionMismatch(f"right-hand side of shape {b.shape} for a {A.shape} system")
    cols = A.shape[1]
    R, r, piv = rref(F, np.concatenate([A, b[:, None]], axis=1))
    if piv and piv[-1] == cols:
        return None
    x = np.zeros(cols, dtype=np.int64)
    x[list(piv)] = R[:r, cols]
    return x, Subspace.span(F, cols, nullspace(F, A))


def inverse(F, M):
    M = _as_matrix(M)
    n = M.shape[0]
    if M.shape != (n, n):
        raise DimensionMismatch("inverse of a non-square matrix")
    R, r, _ = rref(F, np.concatenate([M, F.eye(n)], axis=1))
    if r < n or not np.array_equal(R[:, :n], F.eye(n)):
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:]


class Subspace:
    """A subspace of F^n stored by its reduced row echelon basis.

    Equality and hashing are structural, which is sound because the reduced
    echelon basis of a subspace is unique.
    """

    __slots__ = ("F", "n", "basis", "pivots")

    def __init__(self, F, n, basis, pivots):
        self.F = F
        self.n = int(n)
        basis.setflags(write=False)
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def span(cls, F, n, vectors):
        V = np.asarray(vectors, dtype=np.int64)
        if V.size == 0:
            return cls.zero(F, n)
        V = V.reshape(-1, n)
        R, r, piv = rref(F, V)
        return cls(F, n, R[:r].copy(), piv)

    @classmethod
    def zero(cls, F, n):
        return cls(F, n, np.zeros((0, n), dtype=np.int64), ())

    @classmethod
    def full(cls, F, n):
        return cls(F, n, np.eye(n, dtype=np.int64), tuple(range(n)))

    @classmethod
    def from_equations(cls, F, n, E):
        """The subspace ``{x : E x = 0}``."""
        E = np.asarray(E, dtype=np.int64).reshape(-1, n)
        return cls.span(F, n, nullspace(F, E))

    @property
    def dim(self):
        return self.basis.shape[0]

    def __repr__(self):
        return f"Subspace(dim={self.dim}, n={self.n}, basis={self.basis.tolist()})"

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.n == other.n and self.F == other.F
                and np.array_equal(self.basis, other.basis))

    def __hash__(self):
        return hash((self.F, self.n, self.basis.tobytes()))

    def _check(self, other):
        if self.n != other.n:
            raise DimensionMismatch(f"ambient dimensions {self.n} and {other.n} differ")

    def reduce(self, V):
        """Remainders of the rows of V modulo this subspace."""
        V = np.asarray(V, dtype=np.int64)
        if self.dim == 0:
            return V.copy()
        return self.F.sub(V, self.F.einsum("...j,jk->...k", V[..., list(self.pivots)], self.basis))

    def contains_vector(self, v):
        v = np.asarray(v, dtype=np.int64)
        if v.shape[-1] != self.n:
            raise DimensionMismatch(f"vector of length {v.shape[-1]} in F^{self.n}")
        return not np.any(self.reduce(v))

    def contains(self, other):
        self._check(other)
        return other.dim == 0 or not np.any(self.reduce(other.basis))

    __ge__ = contains

    def __le__(self, other):
        return other.contains(self)

    def __add__(self, other):
        self._check(other)
        return Subspace.span(self.F, self.n, np.concatenate([self.basis, other.basis]))

    def __and__(self, other):
        # Zassenhaus: rows (u, u) and (w, 0); rows with vanishing left half span U & W
        self._check(other)
        n = self.n
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.F, n)
        top = np.concatenate([self.basis, self.basis], axis=1)
        bot = np.concatenate([other.basis, np.zeros_like(other.basis)], axis=1)
        R, r, piv = rref(self.F, np.concatenate([top, bot]))
        rows = [i for i in range(r) if piv[i] >= n]
        return Subspace.span(self.F, n, R[rows, n:])

    def coords(self, v):
        """Coordinates of vectors of this subspace in its echelon basis."""
        return np.asarray(v, dtype=np.int64)[..., list(self.pivots)]

    def from_coords(self, c):
        return self.F.einsum("...j,jk->...k", np.asarray(c, dtype=np.int64), self.basis)

    def equations(self):
        """Rows E with ``E x = 0`` exactly on this subspace."""
        if self.dim == 0:
            return np.eye(self.n, dtype=np.int64)
        return nullspace(self.F, self.basis)

    def complement_coords(self):
        """Non-pivot columns; the matching unit vectors span a complement."""
        piv = set(self.pivots)
        return tuple(c for c in range(self.n) if c not in piv)

    def image(self, M):
        """Image under the linear map with matrix M (acting on columns)."""
        M = _as_matrix(M)
        if M.shape[1] != self.n:
            raise DimensionMismatch("map does not act on this ambient space")
        if self.dim == 0:
            return Subspace.zero(self.F, M.shape[0])
        return Subspace.span(self.F, M.shape[0], self.F.matmul(M, self.basis.T).T)

    def is_invariant(self, M):
        return self.contains(self.image(M))

    def restrict(self, M):
        """Matrix of an invariant map on this subspace, in echelon coordinates."""
        return self.coords(self.F.matmul(M, self.basis.T).T).T

    def tolist(self):
        return self.basis.tolist()


def linear_kernel(F, images):
    """Kernel of a linear map given by the images of the standard basis.

    ``images[i]`` is the image of ``e_i`` (any shape, flattened).  Returns the
    kernel as a :class:`Subspace` of ``F^len(images)``.
    """
    images = np.asarray(images, dtype=np.int64)
    d = images.shape[0]
    M = images.reshape(d, -1).T
    return Subspace.span(F, d, nullspace(F, M))


def column_space(F, M):
    M = _as_matrix(M)
    return Subspace.span(F, M.shape[0], M.T)


def kernel(F, M):
    M = _as_matrix(M)
    return Subspace.span(F, M.shape[1], nullspace(F, M))


def fitting(F, f):
    """Fitting decomposition ``(ker f^n, im f^n)`` with n the dimension."""
    f = _as_matrix(f)
    n = f.shape[0]
    if f.shape != (n, n):
        raise DimensionMismatch("Fitting decomposition of a non-square matrix")
    fn = F.matpow(f, n)
    return kernel(F, fn), column_space(F, fn)


def primary_split(F, f, q1, q2):
    """``(ker q1(f), ker q2(f))`` for coprime q1, q2 with q1(f) q2(f) = 0."""
    f = _as_matrix(f)
    if poly_deg(poly_gcd(F, q1, q2)) != 0:
        raise NotCoprime("q1 and q2 share a factor")
    if np.any(poly_of_matrix(F, poly_mul(F, q1, q2), f)):
        raise NotAnnihilating("q1 q2 does not annihilate f")
    return kernel(F, poly_of_matrix(F, q1, f)), kernel(F, poly_of_matrix(F, q2, f))


def _kron(F, A, B):
    a, b = A.shape
    c, d = B.shape
    return F.einsum("ij,kl->ikjl", A, B).reshape(a * c, b * d)


def commutant(F, mats, n=None):
    """Basis of ``{phi : phi M = M phi for every M in mats}``.

    The basis matrices are read off the reduced echelon basis of the
    solution space of the n^2 unknowns (row-major entries of phi).
    """
    mats = [_as_matrix(M) for M in mats]
    if n is None:
        if not mats:
            raise DimensionMismatch("need n when there are no constraints")
        n = mats[0].shape[0]
    for M in mats:
        if M.shape != (n, n):
            raise DimensionMismatch(f"constraint of shape {M.shape}, expected {(n, n)}")
    I = F.eye(n)
    if mats:
        # row-major vec: vec(phi M) = (I kron M^T) vec(phi), vec(M phi) = (M kron I) vec(phi)
        system = np.concatenate([F.sub(_kron(F, I, M.T), _kron(F, M, I)) for M in mats])
        sol = Subspace.span(F, n * n, nullspace(F, system))
    else:
        sol = Subspace.full(F, n * n)
    return [row.reshape(n, n).copy() for row in sol.basis]


@dataclass(frozen=True, eq=False)
class PSemilinear:
    """The p-semilinear map ``x -> A x^(p)`` (Frobenius applied coordinatewise)."""

    F: object
    A: np.ndarray

    def __call__(self, x):
        x = np.asarray(x, dtype=np.int64)
        return self.F.einsum("ij,...j->...i", self.A, self.F.frob(x))

    @property
    def n(self):
        return self.A.shape[1]

    def power_matrix(self, i):
        """Matrix B with ``f^i(x) = B x^(p^i)``."""
        F = self.F
        B = F.eye(self.n)
        for _ in range(i):
            B = F.matmul(self.A, F.frob(B))
        return B

    def kernel(self):
        return psemilinear_kernel(self)

    def image(self):
        return column_space(self.F, self.A)


def psemilinear_kernel(f):
    """``{x : A x^(p) = 0}``, the Frobenius-inverse twist of ker A."""
    F = f.F
    return Subspace.span(F, f.n, F.frob_inv(nullspace(F, f.A)))


def psemilinear_fitting(f):
    """``(V0, V1)`` with f nilpotent on V0 and bijective on V1."""
    F = f.F
    n = f.n
    if n == 0:
        z = Subspace.zero(F, 0)
        return z, z
    B = f.power_matrix(n)
    V0 = Subspace.span(F, n, F.frob(nullspace(F, B), (-n) % F.k))
    return V0, column_space(F, B)
