"""Decoding 4^m + 1 codes within the BCH limit.

Syndrome extraction is simulated by :class:`SyndromeOracle`, which answers
single-bit symplectic products against a hidden error.  From the answers for
``gtilde`` and ``eta*gtilde`` the decoder rebuilds ``e mod h`` where
``e(X) = a(X^-1) + eta b(X^-1)`` and then runs Berlekamp-Massey, Chien search
and Forney's formula over the splitting field.
"""

from __future__ import annotations

import functools
import random
import threading
from dataclasses import dataclass

from .errors import DecodingFailure
from .fourm import FourMCode
from .gf2k import ExtField
from .poly import (
    BinaryPoly,
    QuartPoly,
    inv_mod,
    reverse,
    ring_reduce,
    rotate,
)


class SyndromeOracle:
    """Hidden error (a, b); ``query(c, d, k)`` returns d.N^k a + c.N^k b mod 2."""

    def __init__(self, a: BinaryPoly, b: BinaryPoly, n: int):
        self.n = n
        self._a = ring_reduce(a, n).bits
        self._b = ring_reduce(b, n).bits
        self._lock = threading.Lock()
        self.queries = 0

    def query(self, c: BinaryPoly | int, d: BinaryPoly | int, k: int) -> int:
        c = c.bits if isinstance(c, BinaryPoly) else c
        d = d.bits if isinstance(d, BinaryPoly) else d
        with self._lock:
            self.queries += 1
        ak = rotate(self._a, k, self.n)
        bk = rotate(self._b, k, self.n)
        return ((d & ak).bit_count() + (c & bk).bit_count()) & 1

    def reveal(self) -> tuple[BinaryPoly, BinaryPoly]:
        """The hidden error; for test harnesses only."""
        return BinaryPoly(self._a), BinaryPoly(self._b)


@dataclass(frozen=True)
class ErrorEstimate:
    e: QuartPoly
    a: BinaryPoly
    b: BinaryPoly
    weight: int


def syndrome_poly(oracle: SyndromeOracle, c: BinaryPoly, d: BinaryPoly) -> BinaryPoly:
    """sum_k query(c, d, k) X^k, which is d(X) a(X^-1) + c(X) b(X^-1)."""
    bits = 0
    for k in range(oracle.n):
        bits |= oracle.query(c, d, k) << k
    return BinaryPoly(bits)


class _Context:
    """Per-code constants: field, syndrome roots, inverse of sigma(gtilde) mod h."""

    def __init__(self, code: FourMCode):
        self.code = code
        n = code.n
        fs = code.factors
        self.field: ExtField = fs.beta.field
        d, c, l = code.bch
        self.t = (d - 1) // 2
        self.l = l
        self.alpha = self.field.pow(fs.beta.value, c)
        gt = ring_reduce(code.gtilde, n)
        self.gt0, self.gt1 = gt.part0, gt.part1
        self.h = code.h
        if self.t:
            self.sg_inv = inv_mod(gt.sigma() % code.h, code.h)
        # alpha^(i*(l+j)) for syndrome j and position i
        F = self.field
        self.syn_pows = [[F.pow(self.alpha, i * (l + j)) for i in range(n)]
                         for j in range(2 * self.t)]
        self.alpha_inv_pows = [F.pow(self.alpha, -i) for i in range(n)]


@functools.lru_cache(maxsize=32)
def _context(code: FourMCode) -> _Context:
    return _Context(code)


def recover_e_mod_h(code: FourMCode, oracle: SyndromeOracle) -> QuartPoly:
    """e mod h from 4n oracle bits: two syndrome polynomials, one for gtilde, one for eta*gtilde."""
    ctx = _context(code)
    s1 = syndrome_poly(oracle, ctx.gt0, ctx.gt1)
    s2 = syndrome_poly(oracle, ctx.gt1, ctx.gt0 + ctx.gt1)
    w = QuartPoly(s2, s1)  # = e * sigma(gtilde) mod X^n - 1
    return (w * ctx.sg_inv) % ctx.h


def berlekamp_massey(field: ExtField, syndromes: list[int]) -> list[int]:
    """Shortest LFSR connection polynomial, low degree first, constant term 1."""
    size = len(syndromes) + 1
    conn = [1] + [0] * (size - 1)
    prev = conn[:]
    length, gap, last = 0, 1, 1
    for idx, s in enumerate(syndromes):
        disc = s
        for i in range(1, length + 1):
            disc ^= field.mul(conn[i], syndromes[idx - i])
        if disc == 0:
            gap += 1
            continue
        coef = field.div(disc, last)
        saved = conn[:]
        for i in range(size - gap):
            conn[i + gap] ^= field.mul(coef, prev[i])
        if 2 * length <= idx:
            length = idx + 1 - length
            prev, last, gap = saved, disc, 1
        else:
            gap += 1
    return conn[: length + 1]


def bch_decode(e_hat: QuartPoly, code: FourMCode) -> ErrorEstimate:
    """Recover the unique e of F4-weight <= t with e = e_hat mod h."""
    ctx = _context(code)
    F, n, t = ctx.field, code.n, ctx.t
    coeffs = [F.embed_f4(c) for c in ring_reduce(e_hat, n).coeffs(n)]
    syndromes = []
    for row in ctx.syn_pows:
        s = 0
        for ci, p in zip(coeffs, row):
            if ci:
                s ^= F.mul(ci, p)
        syndromes.append(s)
    if not any(syndromes):
        if e_hat % code.h:
            raise DecodingFailure("zero syndromes but e_hat is not a multiple of h")
        return ErrorEstimate(QuartPoly(), BinaryPoly(), BinaryPoly(), 0)

    locator = berlekamp_massey(F, syndromes)
    nerr = len(locator) - 1
    if nerr > t:
        raise DecodingFailure(f"error locator has degree {nerr} > t = {t}")
    positions = [i for i in range(n) if F.eval_coeffs(locator, ctx.alpha_inv_pows[i]) == 0]
    if len(positions) != nerr:
        raise DecodingFailure(f"locator of degree {nerr} has {len(positions)} roots among the n-th roots")

    # Omega = S(z) Lambda(z) mod z^(2t); Y_i = X_i Omega(X_i^-1) / Lambda'(X_i^-1)
    omega = [0] * (2 * t)
    for i, s in enumerate(syndromes):
        for j, lam in enumerate(locator):
            if i + j < 2 * t:
                omega[i + j] ^= F.mul(s, lam)
    deriv = [locator[k] if k % 2 else 0 for k in range(1, len(locator))]
    values = [0] * n
    for i in positions:
        x_inv = ctx.alpha_inv_pows[i]
        denom = F.eval_coeffs(deriv, x_inv)
        if denom == 0:
            raise DecodingFailure("repeated root in the error locator")
        y = F.div(F.mul(F.pow(ctx.alpha, i), F.eval_coeffs(omega, x_inv)), denom)
        value = F.to_f4(F.mul(y, F.pow(ctx.alpha, -i * ctx.l)))
        if not value:
            raise DecodingFailure(f"error value at position {i} is not a nonzero element of F4")
        values[i] = value
    e = QuartPoly.from_coeffs(values)
    if (e + e_hat) % code.h:
        raise DecodingFailure("recovered error is inconsistent with e_hat")
    return ErrorEstimate(e, reverse(e.part0, n), reverse(e.part1, n), e.weight)


def correct(code: FourMCode, oracle: SyndromeOracle) -> ErrorEstimate:
    """Full pipeline: oracle syndromes -> e mod h -> BCH decoding."""
    if code.t == 0:
        return ErrorEstimate(QuartPoly(), BinaryPoly(), BinaryPoly(), 0)
    return bch_decode(recover_e_mod_h(code, oracle), code)


def error_poly(a: BinaryPoly, b: BinaryPoly, n: int) -> QuartPoly:
    """e(X) = a(X^-1) + eta b(X^-1)."""
    return QuartPoly(reverse(a, n), reverse(b, n))


def random_error(n: int, weight: int, rng: random.Random) -> tuple[BinaryPoly, BinaryPoly]:
    """Uniform support of the given size with a random nonidentity Pauli on each site."""
    a = b = 0
    for i in rng.sample(range(n), weight):
        x, z = rng.choice(((1, 0), (0, 1), (1, 1)))
        a |= x << i
        b |= z << i
    return BinaryPoly(a), BinaryPoly(b)
