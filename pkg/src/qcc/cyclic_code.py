"""Cyclic stabiliser codes from generating triples, and exact distances."""

from __future__ import annotations

import itertools
import json
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import BudgetExceeded, InvalidTriple
from .poly import BinaryPoly, reverse, ring_mul, ring_reduce, rotate
from .symplectic import (
    SympPair,
    SympSubspace,
    centraliser_bruteforce,
    nullspace,
    rref,
)

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 2**30


@dataclass(frozen=True)
class GeneratingTriple:
    n: int
    g: BinaryPoly
    f: BinaryPoly
    h: BinaryPoly


@dataclass
class TripleCheck:
    ok: bool
    failures: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _divides_xn_minus_1(u: BinaryPoly, n: int) -> bool:
    return bool(u) and not (BinaryPoly.x_n_minus_1(n) % u)


def validate_triple(t: GeneratingTriple) -> TripleCheck:
    """Check the three polynomial conditions for a totally isotropic cyclic S."""
    n, g, f, h = t.n, t.g, t.f, t.h
    failures = []
    if n < 1 or n % 2 == 0:
        failures.append(f"n={n} must be odd")
        return TripleCheck(False, failures)
    if not _divides_xn_minus_1(g, n):
        failures.append("condition 1: g does not divide X^n - 1")
    if not _divides_xn_minus_1(h, n):
        failures.append("condition 1: h does not divide X^n - 1")
    if ring_mul(reverse(g, n), h, n) or ring_mul(g, reverse(h, n), n):
        failures.append("condition 2: g(X^-1) h(X) != 0 mod X^n - 1")
    if ring_mul(g, reverse(f, n), n) != ring_mul(f, reverse(g, n), n):
        failures.append("condition 3: (g, f) is not isotropic to itself")
    return TripleCheck(not failures, failures)


def _require_valid(t: GeneratingTriple) -> None:
    check = validate_triple(t)
    if not check:
        raise InvalidTriple("; ".join(check.failures))


def _shift_rows(a: BinaryPoly, b: BinaryPoly, n: int) -> list[np.ndarray]:
    a, b = ring_reduce(a, n), ring_reduce(b, n)
    rows = []
    for i in range(n):
        ai, bi = rotate(a.bits, i, n), rotate(b.bits, i, n)
        rows.append(np.array([(ai >> j) & 1 for j in range(n)] + [(bi >> j) & 1 for j in range(n)]))
    return rows


def span_from_triple(t: GeneratingTriple, check: bool = True) -> SympSubspace:
    """Span of {(X^i g, X^i f)} and {(0, X^j h)}."""
    if check:
        _require_valid(t)
    n = t.n
    rows = _shift_rows(t.g, t.f, n) + _shift_rows(BinaryPoly(), t.h, n)
    return SympSubspace.span(rows, n)


def _mul_matrix(u: BinaryPoly, n: int) -> np.ndarray:
    """Matrix of v -> u*v on coefficient vectors in F2[X]/(X^n - 1)."""
    u = ring_reduce(u, n).bits
    cols = [rotate(u, j, n) for j in range(n)]
    return np.array([[(c >> i) & 1 for c in cols] for i in range(n)], dtype=np.int64)


def _rev_matrix(n: int) -> np.ndarray:
    m = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        m[(n - i) % n, i] = 1
    return m


def centraliser_from_triple(t: GeneratingTriple) -> SympSubspace:
    """Solve c(X) h(X^-1) = 0 and g(X) d(X^-1) = f(X) c(X^-1) for (c, d)."""
    _require_valid(t)
    n = t.n
    rev = _rev_matrix(n)
    zero = np.zeros((n, n), dtype=np.int64)
    # c * rev(h) = 0
    top = np.hstack([_mul_matrix(reverse(t.h, n), n), zero])
    # g * rev(d) + f * rev(c) = 0
    bottom = np.hstack([_mul_matrix(t.f, n) @ rev, _mul_matrix(t.g, n) @ rev])
    system = np.vstack([top, bottom]) % 2
    return SympSubspace(n, 2, nullspace(system, 2))


@dataclass
class DistanceResult:
    d: int
    witness: SympPair | None
    enumerated: int
    method: str = "enumeration"


@dataclass
class CyclicStabiliserCode:
    triple: GeneratingTriple
    S: SympSubspace
    centraliser: SympSubspace
    d: int | None = None

    @classmethod
    def from_triple(cls, t: GeneratingTriple) -> CyclicStabiliserCode:
        return cls(t, span_from_triple(t), centraliser_from_triple(t))

    @property
    def n(self) -> int:
        return self.triple.n

    @property
    def k(self) -> int:
        return self.n - self.S.dim


# ---------------------------------------------------------------------------
# exact distance


def _pack(row: np.ndarray, n: int) -> int:
    bits = 0
    for i, v in enumerate(row):
        if v:
            bits |= 1 << i
    return bits  # a in bits [0, n), b in bits [n, 2n)


def adapted_basis(S: SympSubspace, C: SympSubspace) -> list[int]:
    """Packed basis of C whose first dim(S) vectors span S."""
    rows = [r for r in S.basis]
    current = S.basis
    for r in C.basis:
        trial = np.vstack([current, r.reshape(1, -1)]) if len(current) else r.reshape(1, -1)
        if rref(trial, 2)[0].shape[0] > len(rows):
            rows.append(r)
            current = trial
    if len(rows) != C.dim:
        raise ValueError("S is not contained in C")
    return [_pack(r, S.n) for r in rows]


def _span_table(vectors: list[int]) -> np.ndarray:
    table = np.zeros(1 << len(vectors), dtype=np.uint64)
    for j, v in enumerate(vectors):
        size = 1 << j
        table[size:2 * size] = table[:size] ^ np.uint64(v)
    return table


def _threads(threads: int | None) -> int:
    if threads is not None:
        return max(1, threads)
    env = os.environ.get("QCC_THREADS")
    if env:
        return max(1, int(env))
    return max(1, min(4, os.cpu_count() or 1))


def min_weight_outside(
    basis: list[int],
    s_dim: int,
    n: int,
    *,
    budget: int = DEFAULT_BUDGET,
    threads: int | None = None,
    checkpoint: str | os.PathLike | None = None,
    low_bits: int = 16,
    block: int = 32,
) -> DistanceResult:
    """Minimum joint weight over span(basis) minus span(basis[:s_dim]).

    Vectors are packed as ``a | b << n``.  Element number ``i`` of the
    enumeration is the combination of basis vectors selected by the bits of
    ``i``; the first ``2**s_dim`` elements are exactly the span of the S part.
    Work proceeds in blocks of high indices, so it is resumable from a JSON
    checkpoint and splits across threads with a (weight, index) min-reduction.
    """
    dim = len(basis)
    total = 1 << dim
    if total > budget:
        raise BudgetExceeded(f"2^{dim} elements exceed the budget of {budget}")
    if s_dim >= dim:
        raise ValueError("centraliser equals S; distance is undefined")
    nlow = min(dim, low_bits)
    low = _span_table(basis[:nlow])
    high = _span_table(basis[nlow:])
    mask = np.uint64((1 << n) - 1)
    shift = np.uint64(n)
    big = np.uint8(255)
    s_size = 1 << s_dim
    nhigh = len(high)

    state = {"next": 0, "best": None, "index": None, "dim": dim, "s_dim": s_dim,
             "basis": [format(v, "x") for v in basis]}
    path = Path(checkpoint) if checkpoint else None
    if path and path.exists():
        saved = json.loads(path.read_text())
        if saved.get("basis") == state["basis"] and saved.get("s_dim") == s_dim:
            state = saved
            log.info("resuming distance enumeration at block %d", state["next"])

    def run_block(start: int) -> tuple[int, int] | None:
        best: tuple[int, int] | None = None
        for hi in range(start, min(start + block, nhigh)):
            vals = low ^ high[hi]
            w = np.bitwise_count((vals & mask) | (vals >> shift)).astype(np.uint8)
            cut = s_size - (hi << nlow)
            if cut > 0:
                w[: min(cut, len(w))] = big
            j = int(np.argmin(w))
            cand = (int(w[j]), (hi << nlow) + j)
            if cand[0] != 255 and (best is None or cand < best):
                best = cand
        return best

    workers = _threads(threads)
    starts = list(range(state["next"], nhigh, block))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for wave in range(0, len(starts), workers):
            chunk = starts[wave:wave + workers]
            for res in pool.map(run_block, chunk):
                if res is None:
                    continue
                if state["best"] is None or res < (state["best"], state["index"]):
                    state["best"], state["index"] = res
            state["next"] = min(chunk[-1] + block, nhigh)
            if path:
                path.write_text(json.dumps(state))
    d, idx = state["best"], state["index"]
    vec = 0
    for j, v in enumerate(basis):
        if idx >> j & 1:
            vec ^= v
    a, b = vec & ((1 << n) - 1), vec >> n
    witness = SympPair(BinaryPoly(a).coeffs(n), BinaryPoly(b).coeffs(n))
    return DistanceResult(d, witness, total)


def _syndrome_tables(S: SympSubspace, C: SympSubspace) -> list[list[int]]:
    """Per position, packed syndromes of X, Z, Y: S-checks low, C-checks high."""
    n = S.n
    out = []
    for i in range(n):
        per = []
        for x, z in ((1, 0), (0, 1), (1, 1)):
            s_bits = 0
            # <(x e_i, z e_i), (c, d)> = x d_i - z c_i
            for r, row in enumerate(S.basis):
                s_bits |= ((x * row[n + i] + z * row[i]) & 1) << r
            c_bits = 0
            for r, row in enumerate(C.basis):
                c_bits |= ((x * row[n + i] + z * row[i]) & 1) << r
            per.append(s_bits | (c_bits << S.dim))
        out.append(per)
    return out


def weight_search_distance(S: SympSubspace, C: SympSubspace, max_weight: int,
                           budget: int | None = None) -> DistanceResult | None:
    """Smallest w <= max_weight with a weight-w vector in C minus S, by listing errors.

    A vector lies in C = C(S) iff it commutes with S, and outside S iff it fails
    to commute with some element of C.  Returns None if no such vector has
    weight <= max_weight.
    """
    n = S.n
    tables = _syndrome_tables(S, C)
    s_mask = (1 << S.dim) - 1
    visited = 0
    for w in range(1, max_weight + 1):
        for support in itertools.combinations(range(n), w):
            cols = [tables[i] for i in support]
            for choice in itertools.product(range(3), repeat=w):
                visited += 1
                syn = 0
                for col, c in zip(cols, choice):
                    syn ^= col[c]
                if syn & s_mask == 0 and syn >> S.dim:
                    a = [0] * n
                    b = [0] * n
                    for i, c in zip(support, choice):
                        a[i], b[i] = ((1, 0), (0, 1), (1, 1))[c]
                    return DistanceResult(w, SympPair(a, b), visited, "weight-search")
        if budget is not None and visited > budget:
            raise BudgetExceeded(f"weight search passed the budget at w={w}", lower_bound=w + 1)
    return None


def _weight_search_count(n: int, w: int) -> int:
    return sum(math.comb(n, i) * 3**i for i in range(1, w + 1))


def exact_distance(code: CyclicStabiliserCode | tuple[SympSubspace, SympSubspace],
                   budget: int = DEFAULT_BUDGET, *, threads: int | None = None,
                   checkpoint: str | os.PathLike | None = None) -> DistanceResult:
    """min joint weight over C(S) minus S by enumerating the centraliser."""
    S, C = (code.S, code.centraliser) if isinstance(code, CyclicStabiliserCode) else code
    if C.dim > 62:
        raise BudgetExceeded("centraliser too large to pack", lower_bound=1)
    if (1 << C.dim) > budget:
        # spend the budget on a lower bound from low-weight errors instead
        w = 0
        while _weight_search_count(S.n, w + 1) <= budget and w < S.n:
            w += 1
        found = weight_search_distance(S, C, w) if w else None
        if found is not None:
            return found
        raise BudgetExceeded(f"2^{C.dim} centraliser elements exceed budget {budget}",
                             lower_bound=w + 1)
    basis = adapted_basis(S, C)
    result = min_weight_outside(basis, S.dim, S.n, budget=budget, threads=threads,
                                checkpoint=checkpoint)
    if isinstance(code, CyclicStabiliserCode):
        code.d = result.d
    return result


def centraliser_check(t: GeneratingTriple) -> bool:
    """centraliser_from_triple agrees with brute-force elimination."""
    return centraliser_from_triple(t) == centraliser_bruteforce(span_from_triple(t))
