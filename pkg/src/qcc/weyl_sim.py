"""Dense 2^n x 2^n simulation of Weyl operators, stabiliser and pseudo-stabiliser projectors.

Qubit ``i`` is tensor factor ``i`` (the most significant bit of a basis index
is qubit 0).  Operators are plain complex numpy arrays.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import MinusIdentityInGroup, NotIsotropic
from .symplectic import SympSubspace, is_totally_isotropic

TOL = 1e-10
MAX_QUBITS = 12


def _index(bits: Sequence[int]) -> int:
    n = len(bits)
    return sum(int(v) << (n - 1 - i) for i, v in enumerate(bits))


def weyl_op(a: Sequence[int], b: Sequence[int]) -> np.ndarray:
    """Matrix of U_a V_b: |x> -> (-1)^(b.x) |x + a>."""
    n = len(a)
    if len(b) != n:
        raise ValueError("a and b must have equal length")
    if n > MAX_QUBITS:
        raise ValueError(f"{n} qubits exceed the dense budget of {MAX_QUBITS}")
    dim = 1 << n
    x = np.arange(dim)
    ai, bi = _index(a), _index(b)
    signs = 1 - 2 * (np.bitwise_count(x & bi).astype(np.int64) & 1)
    out = np.zeros((dim, dim), dtype=complex)
    out[x ^ ai, x] = signs
    return out


def shift_operator(n: int) -> np.ndarray:
    """|u> -> |N u> with (N u)_i = u_(i-1)."""
    dim = 1 << n
    out = np.zeros((dim, dim))
    for x in range(dim):
        bits = [(x >> (n - 1 - i)) & 1 for i in range(n)]
        out[_index(bits[-1:] + bits[:-1]), x] = 1
    return out


def laflamme_subspace() -> SympSubspace:
    """The five-qubit code: XZZXI and its cyclic shifts."""
    a, b = np.array([1, 0, 0, 1, 0]), np.array([0, 1, 1, 0, 0])
    rows = [np.concatenate([np.roll(a, k), np.roll(b, k)]) for k in range(4)]
    return SympSubspace(5, 2, np.array(rows))


def _signed_generators(S: SympSubspace) -> list[np.ndarray]:
    """iota^(c.d) W(c, d) per basis row: each squares to +I."""
    n = S.n
    gens = []
    for row in S.basis:
        c, d = row[:n], row[n:]
        gens.append(1j ** int(c @ d % 4) * weyl_op(c, d))
    return gens


def char_projector(S: SympSubspace, chi: Sequence[int]) -> np.ndarray:
    """Projector onto the joint eigenspace where generator i has eigenvalue chi[i]."""
    if S.p != 2:
        raise ValueError("only qubits are simulated")
    if not is_totally_isotropic(S):
        raise NotIsotropic("generators do not commute")
    dim = 1 << S.n
    eye = np.eye(dim, dtype=complex)
    out = eye
    for sign, g in zip(chi, _signed_generators(S)):
        out = out @ (eye + sign * g) / 2
    return out


def stabiliser_projector(S: SympSubspace) -> np.ndarray:
    P = char_projector(S, [1] * S.dim)
    if abs(np.trace(P)) < TOL and S.dim:
        raise MinusIdentityInGroup("signed generators multiply to -I")
    expected = 2 ** (S.n - S.dim)
    if abs(np.trace(P) - expected) > TOL:
        raise MinusIdentityInGroup(f"projector trace {np.trace(P).real:.3f} != {expected}")
    return P


def alpha_sum_projector(S: SympSubspace) -> np.ndarray:
    """2^-dim * sum over (u, v) in S of iota^(u.v) U_u V_v (integer dot product)."""
    n = S.n
    total = np.zeros((1 << n, 1 << n), dtype=complex)
    elems = S.elements()
    for row in elems:
        u, v = row[:n], row[n:]
        total += 1j ** int(u @ v % 4) * weyl_op(u, v)
    return total / len(elems)


def group_elements(S: SympSubspace) -> list[np.ndarray]:
    """All products of the signed generators."""
    gens = _signed_generators(S)
    dim = 1 << S.n
    out = []
    for mask in range(1 << len(gens)):
        m = np.eye(dim, dtype=complex)
        for i, g in enumerate(gens):
            if mask >> i & 1:
                m = m @ g
        out.append(m)
    return out


def is_projector(P: np.ndarray, tol: float = TOL) -> bool:
    return bool(np.abs(P @ P - P).max() <= tol and np.abs(P - P.conj().T).max() <= tol)


def check_cyclic(P: np.ndarray, tol: float = TOL) -> bool:
    n = int(round(math.log2(P.shape[0])))
    N = shift_operator(n)
    return bool(np.abs(N.T @ P @ N - P).max() <= tol)


def weyl_errors(n: int, weight: int):
    """Yield (a, b) for every Weyl error of exactly the given joint weight."""
    for support in itertools.combinations(range(n), weight):
        for paulis in itertools.product(((1, 0), (0, 1), (1, 1)), repeat=weight):
            a, b = [0] * n, [0] * n
            for i, (x, z) in zip(support, paulis):
                a[i], b[i] = x, z
            yield a, b


def kl_distance(P: np.ndarray, max_check: int = 3, tol: float = 1e-9) -> int:
    """Largest d <= max_check + 1 with P E P proportional to P for all E of weight < d."""
    n = int(round(math.log2(P.shape[0])))
    if n > 6:
        raise ValueError("Knill-Laflamme checks are limited to n <= 6")
    rank = np.trace(P).real
    for w in range(1, max_check + 1):
        for a, b in weyl_errors(n, w):
            PEP = P @ weyl_op(a, b) @ P
            lam = np.trace(PEP) / rank
            if np.abs(PEP - lam * P).max() > tol:
                return w
    return max_check + 1


def characters(S: SympSubspace) -> list[tuple[int, ...]]:
    """All sign assignments to the basis generators, trivial character first."""
    return list(itertools.product((1, -1), repeat=S.dim))


def character_shift(S: SympSubspace) -> dict[int, int]:
    """Permutation of character indices induced by conjugation with the shift."""
    chars = characters(S)
    projs = [char_projector(S, c) for c in chars]
    N = shift_operator(S.n)
    perm = {}
    for i, P in enumerate(projs):
        Q = N @ P @ N.T
        matches = [j for j, R in enumerate(projs) if np.abs(R - Q).max() <= TOL]
        if len(matches) != 1:
            raise ValueError("shift does not permute the characters; S is not separately cyclic")
        perm[i] = matches[0]
    return perm


def shift_orbits(S: SympSubspace) -> list[tuple[int, ...]]:
    perm = character_shift(S)
    seen, orbits = set(), []
    for i in sorted(perm):
        if i in seen:
            continue
        orbit, j = [i], perm[i]
        while j != i:
            orbit.append(j)
            j = perm[j]
        seen.update(orbit)
        orbits.append(tuple(sorted(orbit)))
    return orbits


@dataclass
class PseudoCode:
    subset: tuple[int, ...]
    characters: tuple[tuple[int, ...], ...]
    projector: np.ndarray
    trace: float
    distance: int
    cyclic: bool


@dataclass
class PseudoSearch:
    candidates: int
    scanned: int
    found: list[PseudoCode]


def search_562(S: SympSubspace, dim: int = 6, min_distance: int = 2,
               cyclic_only: bool = False) -> PseudoSearch:
    """Sums of character projectors of S with trace ``dim`` and KL distance >= min_distance.

    With ``cyclic_only`` the scan is limited to character subsets closed under
    the shift; these are exactly the cyclic ones, because the P_chi are
    linearly independent and the shift permutes them.
    """
    chars = characters(S)
    rank = 2 ** (S.n - S.dim)
    if dim % rank:
        return PseudoSearch(0, 0, [])
    size = dim // rank
    candidates = math.comb(len(chars), size)
    projs = [char_projector(S, c) for c in chars]
    if cyclic_only:
        orbits = shift_orbits(S)
        subsets = []
        for r in range(1, len(orbits) + 1):
            for combo in itertools.combinations(orbits, r):
                members = tuple(sorted(i for o in combo for i in o))
                if len(members) == size:
                    subsets.append(members)
    else:
        subsets = itertools.combinations(range(len(chars)), size)
    found, scanned = [], 0
    for subset in subsets:
        scanned += 1
        P = sum(projs[i] for i in subset)
        tr = float(np.trace(P).real)
        if abs(tr - dim) > TOL:
            continue
        d = kl_distance(P, max_check=min_distance)
        if d < min_distance:
            continue
        d = kl_distance(P, max_check=S.n)
        found.append(PseudoCode(tuple(subset), tuple(chars[i] for i in subset), P, tr, d,
                                check_cyclic(P)))
    return PseudoSearch(candidates, scanned, found)


def cyclic_logical_extension(S: SympSubspace) -> SympSubspace:
    """S enlarged by a shift-invariant vector of C(S) outside S (all-X, all-Z or all-Y)."""
    from .symplectic import centraliser_bruteforce

    n = S.n
    C = centraliser_bruteforce(S)
    ones, zeros = np.ones(n, dtype=np.int64), np.zeros(n, dtype=np.int64)
    for a, b in ((ones, zeros), (zeros, ones), (ones, ones)):
        row = np.concatenate([a, b])
        if C.contains(row) and not S.contains(row):
            return SympSubspace(n, 2, np.vstack([S.basis, row]))
    raise ValueError("no shift-invariant logical operator exists for this code")
