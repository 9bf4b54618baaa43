"""Arithmetic in GF(p^k) and univariate polynomials over it.

Field elements are plain integers ``0 <= a < q``.  An element with
polynomial-basis coordinates ``c_0 + c_1 X + ... + c_{k-1} X^{k-1}`` is
stored as ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``, so the prime subfield
occupies codes ``0..p-1`` and embeds with the same code into every
extension of a prime field.  All operations on a :class:`GF` accept numpy
arrays (or scalars) of codes and broadcast like ufuncs.

Polynomials are lists of codes, constant term first, with no trailing zeros;
``[]`` is the zero polynomial.
"""

from __future__ import annotations

import functools
import math
import string
from dataclasses import dataclass

import numpy as np

from .errors import DegreeZero, FieldTooLarge, NoSplitWithinBound, NotPrime

#: Largest field that eigenvalue scans will enumerate.
MAX_SCAN_SIZE = 131072


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n):
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


class GF:
    """The finite field GF(p^k) = GF(p)[X] / (modulus).

    Build instances with :func:`field_make`; the constructor trusts its
    arguments.
    """

    def __init__(self, p, k, modulus):
        self.p = int(p)
        self.k = int(k)
        self.q = self.p ** self.k
        self.modulus = tuple(int(c) for c in modulus)
        self._pw = self.p ** np.arange(self.k, dtype=np.int64)
        self._T = self._reduction_tensor() if self.k > 1 else None
        self._inv_table = None

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.k, self.modulus) == (
            other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __reduce__(self):
        return (field_make, (self.p, self.k))

    def _reduction_tensor(self):
        # T[s, t, l] = coefficient of X^l in X^(s+t) mod modulus
        p, k = self.p, self.k
        low = [(-c) % p for c in self.modulus[:k]]
        rows = [[int(i == d) for i in range(k)] for d in range(k)]
        r = low
        for _ in range(k, 2 * k - 1):
            rows.append(r)
            top = r[k - 1]
            r = [0] + r[: k - 1]
            r = [(r[i] + top * low[i]) % p for i in range(k)]
        rows.append(r)
        T = np.zeros((k, k, k), dtype=np.int64)
        for s in range(k):
            for t in range(k):
                T[s, t] = rows[s + t]
        return T

    # coordinates

    def digits(self, a):
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._pw) % self.p

    def undigits(self, d):
        return np.asarray(d, dtype=np.int64) @ self._pw

    def coeffs(self, a):
        """Polynomial-basis coordinates of a single element."""
        return [int(c) for c in self.digits(int(a))]

    def from_coeffs(self, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) != self.k or any(not 0 <= int(c) < self.p for c in coeffs):
            raise ValueError(f"expected {self.k} coordinates in [0, {self.p})")
        return int(self.undigits(coeffs))

    def elements(self):
        return np.arange(self.q, dtype=np.int64)

    def asarray(self, a):
        a = np.asarray(a, dtype=np.int64)
        if a.size and (a.min() < 0 or a.max() >= self.q):
            raise ValueError(f"entries out of range for {self!r}")
        return a

    # arithmetic

    def add(self, a, b):
        if self.k == 1:
            return (np.asarray(a, dtype=np.int64) + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(np.asarray(a, dtype=np.int64), b)
        return self.undigits((self.digits(a) + self.digits(b)) % self.p)

    def neg(self, a):
        if self.k == 1:
            return (-np.asarray(a, dtype=np.int64)) % self.p
        if self.p == 2:
            return np.asarray(a, dtype=np.int64).copy()
        return self.undigits((-self.digits(a)) % self.p)

    def sub(self, a, b):
        if self.k == 1:
            return (np.asarray(a, dtype=np.int64) - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.k == 1:
            return (np.asarray(a, dtype=np.int64) * b) % self.p
        return self.einsum("...,...->...", a, b)

    def pow(self, a, e):
        e = int(e)
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = np.ones_like(np.asarray(a, dtype=np.int64))
        base = np.asarray(a, dtype=np.int64)
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.q <= 65536:
            if self._inv_table is None:
                tab = self.pow(self.elements(), self.q - 2)
                tab[0] = 0
                self._inv_table = tab
            return self._inv_table[a]
        return self.pow(a, self.q - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def frob(self, a, times=1):
        """``a -> a^(p^times)``; bijective, the identity on GF(p)."""
        times %= self.k
        a = np.asarray(a, dtype=np.int64)
        for _ in range(times):
            a = self.pow(a, self.p)
        return a

    def frob_inv(self, a):
        return self.frob(a, self.k - 1)

    def in_prime_field(self, a):
        return np.asarray(a) < self.p

    # contractions

    def einsum(self, spec, A, B):
        """Two-operand ``numpy.einsum`` with field arithmetic."""
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.k == 1:
            return np.einsum(spec, A, B) % self.p
        ins, out = spec.split("->")
        sa, sb = ins.split(",")
        free = [c for c in string.ascii_letters if c not in spec]
        s, t, l = free[:3]
        D = np.einsum(f"{sa}{s},{sb}{t},{s}{t}{l}->{out}{l}",
                      self.digits(A), self.digits(B), self._T)
        return self.undigits(D % self.p)

    def sum(self, a, axis=None):
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return a.sum(axis=axis) % self.p
        d = self.digits(a)
        if axis is None:
            d = d.reshape(-1, self.k)
            axis = 0
        elif axis < 0:
            axis -= 1
        return self.undigits(d.sum(axis=axis) % self.p)

    def matmul(self, A, B):
        return self.einsum("...ij,...jk->...ik", A, B)

    def matvec(self, A, x):
        return self.einsum("...ij,...j->...i", A, x)

    def dot(self, x, y):
        return self.einsum("...i,...i->...", x, y)

    def eye(self, n):
        return np.eye(n, dtype=np.int64)

    def zeros(self, shape):
        return np.zeros(shape, dtype=np.int64)

    def matpow(self, M, e):
        M = np.asarray(M, dtype=np.int64)
        result = np.broadcast_to(self.eye(M.shape[-1]), M.shape).copy()
        base = M
        e = int(e)
        while e:
            if e & 1:
                result = self.matmul(result, base)
            e >>= 1
            if e:
                base = self.matmul(base, base)
        return result

    def random(self, rng, shape):
        return rng.integers(0, self.q, size=shape, dtype=np.int64)

    # scalar helpers (python ints in, python ints out)

    def s_add(self, a, b):
        return int(self.add(a, b))

    def s_sub(self, a, b):
        return int(self.sub(a, b))

    def s_mul(self, a, b):
        if self.k == 1:
            return (a * b) % self.p
        return int(self.mul(a, b))

    def s_inv(self, a):
        return int(self.inv(a))

    def s_neg(self, a):
        return int(self.neg(a))


# ---------------------------------------------------------------------------
# polynomials


def poly_trim(f):
    f = [int(c) for c in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_deg(f):
    return len(f) - 1


def poly_add(F, f, g):
    n = max(len(f), len(g))
    a = np.zeros(n, dtype=np.int64)
    b = np.zeros(n, dtype=np.int64)
    a[: len(f)] = f
    b[: len(g)] = g
    return poly_trim(F.add(a, b))


def poly_neg(F, f):
    return poly_trim(F.neg(np.asarray(f, dtype=np.int64)))


def poly_sub(F, f, g):
    return poly_add(F, f, poly_neg(F, g))


def poly_scale(F, c, f):
    if not f:
        return []
    return poly_trim(F.mul(c, np.asarray(f, dtype=np.int64)))


def poly_mul(F, f, g):
    if not f or not g:
        return []
    outer = F.mul(np.asarray(f)[:, None], np.asarray(g)[None, :])
    res = np.zeros(len(f) + len(g) - 1, dtype=np.int64)
    for i in range(len(f)):
        res[i: i + len(g)] = F.add(res[i: i + len(g)], outer[i])
    return poly_trim(res)


def poly_divmod(F, f, g):
    g = poly_trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(poly_trim(f))
    dg = len(g) - 1
    lead_inv = F.s_inv(g[-1])
    if len(r) <= dg:
        return [], r
    quot = [0] * (len(r) - dg)
    garr = np.asarray(g, dtype=np.int64)
    r = np.asarray(r, dtype=np.int64)
    for d in range(len(r) - 1, dg - 1, -1):
        c = int(r[d])
        if c == 0:
            continue
        c = F.s_mul(c, lead_inv)
        quot[d - dg] = c
        r[d - dg: d + 1] = F.sub(r[d - dg: d + 1], F.mul(c, garr))
    return poly_trim(quot), poly_trim(r[:dg])


def poly_mod(F, f, g):
    return poly_divmod(F, f, g)[1]


def poly_monic(F, f):
    f = poly_trim(f)
    if not f:
        return f
    return poly_scale(F, F.s_inv(f[-1]), f)


def poly_gcd(F, f, g):
    """Monic greatest common divisor (zero if both inputs are zero)."""
    a, b = poly_trim(f), poly_trim(g)
    while b:
        a, b = b, poly_mod(F, a, b)
    return poly_monic(F, a)


def poly_powmod(F, f, e, m):
    result = [1]
    base = poly_mod(F, f, m)
    while e:
        if e & 1:
            result = poly_mod(F, poly_mul(F, result, base), m)
        e >>= 1
        if e:
            base = poly_mod(F, poly_mul(F, base, base), m)
    return result


def poly_eval(F, f, x):
    """Evaluate at a scalar or an array of field elements (Horner)."""
    x = np.asarray(x, dtype=np.int64)
    acc = np.zeros_like(x)
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def poly_of_matrix(F, f, M):
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[-1]
    acc = np.zeros_like(M)
    I = F.eye(n)
    for c in reversed(f):
        acc = F.add(F.matmul(acc, M), F.mul(c, I))
    return acc


def char_poly(F, M):
    """Characteristic polynomial det(X I - M) via Hessenberg reduction."""
    H = [[int(v) for v in row] for row in np.asarray(M)]
    n = len(H)
    for j in range(n - 2):
        r = j + 1
        piv = next((i for i in range(r, n) if H[i][j]), None)
        if piv is None:
            continue
        if piv != r:
            H[piv], H[r] = H[r], H[piv]
            for row in H:
                row[piv], row[r] = row[r], row[piv]
        hinv = F.s_inv(H[r][j])
        for i in range(r + 1, n):
            if not H[i][j]:
                continue
            u = F.s_mul(H[i][j], hinv)
            H[i] = [int(v) for v in F.sub(H[i], F.mul(u, np.asarray(H[r])))]
            for row in H:
                row[r] = F.s_add(row[r], F.s_mul(u, row[i]))
    polys = [[1]]
    for m in range(1, n + 1):
        pm = poly_mul(F, [F.s_neg(H[m - 1][m - 1]), 1], polys[m - 1])
        t = 1
        for i in range(1, m):
            t = F.s_mul(t, H[m - i][m - i - 1])
            c = F.s_mul(H[m - i - 1][m - 1], t)
            if c:
                pm = poly_sub(F, pm, poly_scale(F, c, polys[m - i - 1]))
        polys.append(pm)
    return polys[n]


def is_irreducible(F, f):
    """Rabin's irreducibility test over F."""
    f = poly_monic(F, f)
    d = poly_deg(f)
    if d < 1:
        return False
    if d == 1:
        return True
    q = F.q
    X = [0, 1]
    for r in _prime_factors(d):
        h = poly_sub(F, poly_powmod(F, X, q ** (d // r), f), X)
        if poly_deg(poly_gcd(F, f, h)) != 0:
            return False
    return not poly_sub(F, poly_powmod(F, X, q ** d, f), X)


# ---------------------------------------------------------------------------
# field construction


@functools.lru_cache(maxsize=None)
def field_make(p, k=1):
    """GF(p^k) with the lexicographically smallest monic irreducible modulus.

    Candidates ``X^k + c_{k-1} X^{k-1} + ... + c_0`` are compared on
    ``(c_{k-1}, ..., c_0)``; for ``k = 1`` this picks ``X`` itself.
    """
    p, k = int(p), int(k)
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise DegreeZero(f"extension degree must be >= 1, got {k}")
    if k == 1:
        return GF(p, 1, (0, 1))
    base = field_make(p, 1)
    for code in range(p ** k):
        low = [(code // p ** i) % p for i in range(k)]
        f = low + [1]
        if low[0] and is_irreducible(base, f):
            return GF(p, k, f)
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


@functools.lru_cache(maxsize=None)
def _embedding_root(F, m):
    G = field_make(F.p, F.k * m)
    if F.k == 1:
        return G, None
    vals = poly_eval(G, list(F.modulus), G.elements())
    beta = int(np.flatnonzero(vals == 0)[0])
    return G, beta


def extension(F, m):
    """Return ``(G, embed)`` with G = GF(q^m) and ``embed`` a field map F -> G."""
    if m < 1:
        raise DegreeZero("extension multiplier must be >= 1")
    G, beta = _embedding_root(F, m)
    if beta is None:
        return G, lambda a: np.asarray(a, dtype=np.int64).copy()
    powers = np.asarray([int(G.pow(beta, i)) for i in range(F.k)], dtype=np.int64)

    def embed(a):
        d = F.digits(a)
        return G.sum(G.mul(d, powers), axis=-1)

    return G, embed


# ---------------------------------------------------------------------------
# eigenvalues


@dataclass(frozen=True)
class EigenScan:
    values: tuple  # ((eigenvalue, generalized multiplicity), ...) by ascending code
    splits: bool


def eigenvalue_scan(M, F, max_size=MAX_SCAN_SIZE):
    """All eigenvalues of M lying in F with generalized multiplicities.

    Every field element is tested as a root of the characteristic polynomial;
    the multiplicity of a root is ``dim ker (M - lambda I)^n``.
    """
    from .exactla import rank

    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    if F.q > max_size:
        raise FieldTooLarge(f"{F!r} exceeds the scan limit of {max_size} elements")
    if n == 0:
        return EigenScan((), True)
    chi = char_poly(F, M)
    roots = np.flatnonzero(poly_eval(F, chi, F.elements()) == 0)
    out = []
    for lam in roots:
        shifted = F.sub(M, F.mul(int(lam), F.eye(n)))
        mult = n - rank(F, F.matpow(shifted, n))
        out.append((int(lam), mult))
    total = sum(m for _, m in out)
    return EigenScan(tuple(out), total == n)


def splits_over(F, chi, m):
    """Whether ``chi`` splits into linear factors over GF(q^m)."""
    if poly_deg(chi) <= 1:
        return True
    X = [0, 1]
    g = poly_gcd(F, chi, poly_sub(F, poly_powmod(F, X, F.q ** m, chi), X))
    return not poly_powmod(F, g, poly_deg(chi), chi)


def splitting_degree(M, F, k_max=6):
    """Smallest m <= k_max such that M splits over GF(p^(k m))."""
    if k_max < 1:
        raise DegreeZero("k_max must be >= 1")
    M = np.asarray(M, dtype=np.int64)
    if M.shape[0] == 0:
        return 1
    chi = char_poly(F, M)
    for m in range(1, k_max + 1):
        if splits_over(F, chi, m):
            G, embed = extension(F, m)
            if not eigenvalue_scan(embed(M), G).splits:
                raise AssertionError("split test and eigenvalue scan disagree")
            return m
    # report the degree that would have worked; it divides lcm(1..deg chi)
    cap = math.lcm(*range(1, len(chi)))
    needed = next((m for m in range(k_max + 1, cap + 1) if splits_over(F, chi, m)), None)
    raise NoSplitWithinBound(k_max, needed=needed)


def common_splitting_degree(mats, F, k_max=6):
    """Smallest m at which every matrix in ``mats`` splits."""
    m = 1
    for M in mats:
        m = math.lcm(m, splitting_degree(M, F, k_max))
        if m > k_max:
            raise NoSplitWithinBound(k_max, needed=m)
    return m
