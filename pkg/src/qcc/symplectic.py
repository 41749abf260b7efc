"""Linear algebra on F_p^n x F_p^n with the symplectic form a.d - b.c.

Vectors are numpy int arrays.  A :class:`SympSubspace` keeps its basis as the
rows of a reduced row-echelon matrix with columns ordered ``[a | b]``.
Polynomial-level routines (triples, ring isotropy) assume p = 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import NotSeparatelyCyclic
from .poly import BinaryPoly, poly_gcd, reverse, ring_mul

SUPPORTED_PRIMES = (2, 3, 5)


def _check_p(p: int) -> None:
    if p not in SUPPORTED_PRIMES:
        raise ValueError(f"p must be one of {SUPPORTED_PRIMES}, got {p}")


@dataclass(frozen=True)
class SympPair:
    a: np.ndarray
    b: np.ndarray
    p: int = 2

    def __post_init__(self):
        a = np.asarray(self.a, dtype=np.int64) % self.p
        b = np.asarray(self.b, dtype=np.int64) % self.p
        if a.shape != b.shape or a.ndim != 1:
            raise ValueError("both halves must be vectors of the same length")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return len(self.a)

    @classmethod
    def from_row(cls, row: np.ndarray, p: int = 2) -> SympPair:
        n = len(row) // 2
        return cls(row[:n], row[n:], p)

    @classmethod
    def from_polys(cls, a: BinaryPoly, b: BinaryPoly, n: int) -> SympPair:
        return cls(a.coeffs(n), b.coeffs(n), 2)

    def row(self) -> np.ndarray:
        return np.concatenate([self.a, self.b])

    def shift(self, k: int = 1) -> SympPair:
        """Simultaneous right cyclic shift of both halves."""
        return SympPair(np.roll(self.a, k), np.roll(self.b, k), self.p)

    def polys(self) -> tuple[BinaryPoly, BinaryPoly]:
        return BinaryPoly.from_coeffs(self.a), BinaryPoly.from_coeffs(self.b)


def symp_product(u: SympPair, v: SympPair) -> int:
    if u.n != v.n or u.p != v.p:
        raise ValueError("pairs live in different spaces")
    return int((u.a @ v.b - u.b @ v.a) % u.p)


def joint_weight(u: SympPair) -> int:
    return int(np.count_nonzero((u.a != 0) | (u.b != 0)))


# ---------------------------------------------------------------------------
# elimination mod p


def rref(rows: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form mod p, zero rows dropped. Returns (matrix, pivots)."""
    m = np.array(rows, dtype=np.int64, copy=True) % p
    if m.ndim != 2 or m.shape[0] == 0:
        return m.reshape(0, m.shape[-1] if m.ndim == 2 else 0), []
    pivots: list[int] = []
    r = 0
    for col in range(m.shape[1]):
        if r == m.shape[0]:
            break
        nz = np.nonzero(m[r:, col])[0]
        if len(nz) == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = (m[r] * pow(int(m[r, col]), -1, p)) % p
        others = np.nonzero(m[:, col])[0]
        others = others[others != r]
        if len(others):
            m[others] = (m[others] - np.outer(m[others, col], m[r])) % p
        pivots.append(col)
        r += 1
    return m[:r], pivots


def nullspace(mat: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of {x : mat @ x = 0 mod p}."""
    mat = np.asarray(mat, dtype=np.int64)
    ncols = mat.shape[1]
    red, pivots = rref(mat, p) if mat.shape[0] else (np.zeros((0, ncols), np.int64), [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = (-red[r, f]) % p
    return basis


@dataclass(frozen=True, eq=False)
class SympSubspace:
    n: int
    p: int
    basis: np.ndarray  # rows in RREF over columns [a | b]

    def __post_init__(self):
        _check_p(self.p)
        red, _ = rref(np.asarray(self.basis, dtype=np.int64).reshape(-1, 2 * self.n), self.p)
        object.__setattr__(self, "basis", red)

    @classmethod
    def span(cls, vectors: Iterable[SympPair | np.ndarray], n: int, p: int = 2) -> SympSubspace:
        rows = [v.row() if isinstance(v, SympPair) else np.asarray(v) for v in vectors]
        arr = np.array(rows, dtype=np.int64).reshape(-1, 2 * n)
        return cls(n, p, arr)

    @classmethod
    def zero(cls, n: int, p: int = 2) -> SympSubspace:
        return cls(n, p, np.zeros((0, 2 * n), dtype=np.int64))

    @classmethod
    def full(cls, n: int, p: int = 2) -> SympSubspace:
        return cls(n, p, np.eye(2 * n, dtype=np.int64))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def pairs(self) -> list[SympPair]:
        return [SympPair.from_row(r, self.p) for r in self.basis]

    def contains(self, v: SympPair | np.ndarray) -> bool:
        row = v.row() if isinstance(v, SympPair) else np.asarray(v)
        stacked = np.vstack([self.basis, row.reshape(1, -1)])
        return rref(stacked, self.p)[0].shape[0] == self.dim

    def issubspace(self, other: SympSubspace) -> bool:
        return all(other.contains(r) for r in self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SympSubspace):
            return NotImplemented
        return (self.n, self.p) == (other.n, other.p) and np.array_equal(self.basis, other.basis)

    def __hash__(self):
        return hash((self.n, self.p, self.basis.tobytes()))

    def elements(self) -> np.ndarray:
        """All p^dim vectors (small subspaces only)."""
        coeffs = np.array(np.meshgrid(*[range(self.p)] * self.dim, indexing="ij"))
        coeffs = coeffs.reshape(self.dim, -1).T
        return (coeffs @ self.basis) % self.p if self.dim else np.zeros((1, 2 * self.n), np.int64)

    def __str__(self) -> str:
        n = self.n
        lines = ["".join(map(str, r[:n])) + "|" + "".join(map(str, r[n:])) for r in self.basis]
        return "\n".join(lines) if lines else "(zero subspace)"


def _form_matrix(n: int, p: int) -> np.ndarray:
    """J with u J v^T = a.d - b.c."""
    eye = np.eye(n, dtype=np.int64)
    zero = np.zeros((n, n), dtype=np.int64)
    return np.block([[zero, eye], [(-eye) % p, zero]])


def is_totally_isotropic(S: SympSubspace) -> bool:
    if S.dim == 0:
        return True
    gram = S.basis @ _form_matrix(S.n, S.p) @ S.basis.T
    return not np.any(gram % S.p)


def centraliser_bruteforce(S: SympSubspace) -> SympSubspace:
    """Kernel of v -> (<v, s_i>)_i by elimination."""
    if S.dim == 0:
        return SympSubspace.full(S.n, S.p)
    # <v, s> = v J s^T, so the constraint rows are (J s^T)^T = s J^T
    constraints = (S.basis @ _form_matrix(S.n, S.p).T) % S.p
    return SympSubspace(S.n, S.p, nullspace(constraints, S.p))


def is_separately_cyclic(S: SympSubspace) -> bool:
    return all(S.contains(u.shift()) for u in S.pairs())


def is_css_form(S: SympSubspace) -> bool:
    """True iff S = (S cap F^n x 0) + (S cap 0 x F^n) in the given coordinates."""
    if S.dim == 0:
        return True
    # S cap (F^n x 0): elements whose b half vanishes
    x_part = _intersection_with_half(S, keep_a=True)
    z_part = _intersection_with_half(S, keep_a=False)
    return x_part.shape[0] + z_part.shape[0] == S.dim


def _intersection_with_half(S: SympSubspace, keep_a: bool) -> np.ndarray:
    n, p = S.n, S.p
    # coefficient vectors c with (c @ basis) zero on the other half
    other = S.basis[:, n:] if keep_a else S.basis[:, :n]
    coeffs = nullspace(other.T, p)
    if coeffs.shape[0] == 0:
        return coeffs
    return rref((coeffs @ S.basis) % p, p)[0]


# ---------------------------------------------------------------------------
# polynomial view (p = 2)


def poly_isotropic_pair(a: BinaryPoly, b: BinaryPoly, c: BinaryPoly, d: BinaryPoly,
                        n: int) -> bool:
    """a(X) d(X^-1) == b(X) c(X^-1) mod X^n - 1."""
    return ring_mul(a, reverse(d, n), n) == ring_mul(b, reverse(c, n), n)


def _ideal_generator(polys: Sequence[BinaryPoly], n: int) -> BinaryPoly:
    g = BinaryPoly.x_n_minus_1(n)
    for u in polys:
        if u:
            g = poly_gcd(g, u)
    return g


def extract_generating_triple(S: SympSubspace) -> tuple[BinaryPoly, BinaryPoly, BinaryPoly]:
    """(g, f, h) with S = {(a g, a f + b h)}.

    g generates the projection onto the first half, h generates
    {b : (0, b) in S}; either is X^n - 1 when the ideal is zero.  f is reduced
    modulo h, which fixes it uniquely.
    """
    if S.p != 2:
        raise ValueError("generating triples are implemented for p = 2")
    if not is_separately_cyclic(S):
        raise NotSeparatelyCyclic("subspace is not closed under the simultaneous shift")
    n = S.n
    rows = S.basis  # RREF with a-columns first
    a_rows = [r for r in rows if r[:n].any()]
    b0_rows = [r for r in rows if not r[:n].any()]
    g = _ideal_generator([BinaryPoly.from_coeffs(r[:n]) for r in a_rows], n)
    h = _ideal_generator([BinaryPoly.from_coeffs(r[n:]) for r in b0_rows], n)
    if g.degree == n:
        return g, BinaryPoly(), h
    # solve sum c_i a_i = g over the rows with a nonzero first half
    target = np.array(g.coeffs(n), dtype=np.int64)
    a_mat = np.array([r[:n] for r in a_rows], dtype=np.int64)
    coeffs = _solve_gf2(a_mat.T, target)
    f_row = (coeffs @ np.array(a_rows)) % 2
    f = BinaryPoly.from_coeffs(f_row[n:])
    return g, f % h, h


def _solve_gf2(mat: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """One solution x of mat @ x = rhs over F2."""
    aug = np.hstack([mat % 2, rhs.reshape(-1, 1) % 2])
    red, pivots = rref(aug, 2)
    ncols = mat.shape[1]
    if ncols in pivots:
        raise ValueError("system is inconsistent")
    x = np.zeros(ncols, dtype=np.int64)
    for r, pc in enumerate(pivots):
        x[pc] = red[r, -1]
    return x
