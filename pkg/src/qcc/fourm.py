"""Linear cyclic stabiliser codes of length 4^m + 1.

A code is fixed by a binary divisor ``g`` of X^n - 1 (containing X - 1) and a
choice ``h`` of one F4 factor from every conjugate pair {r, sigma(r)} that does
not divide ``g``.  S is the F4 ideal generated by ``g*h``; its centraliser is
the ideal generated by ``h``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

from .cyclic_code import (
    CyclicStabiliserCode,
    DistanceResult,
    GeneratingTriple,
    exact_distance,
    span_from_triple,
)
from .cyclotomic import FactorSet, bch_distance, factor_xn_minus_1, sigma_pairs
from .errors import GNotDivisible, SelfPairedFactorOutsideG, SigmaConditionViolated
from .poly import (
    ETA,
    ETA_BAR,
    BinaryPoly,
    QuartPoly,
    crt_combine,
    product,
    reverse,
    ring_mul,
    ring_reduce,
    rotate,
)
from .symplectic import SympSubspace, extract_generating_triple


def length(m: int) -> int:
    if m < 1:
        raise ValueError("m must be a positive integer")
    return 4**m + 1


def ideal_span(u: QuartPoly, n: int) -> SympSubspace:
    """F2-span of the F4 ideal (u) in F4[X]/(X^n - 1), as pairs (a, b) ~ a + eta b."""
    u = ring_reduce(u, n)
    rows = []
    for v in (u, u.scale(ETA)):
        a, b = v.part0.bits, v.part1.bits
        for i in range(n):
            ai, bi = rotate(a, i, n), rotate(b, i, n)
            rows.append([(ai >> j) & 1 for j in range(n)] + [(bi >> j) & 1 for j in range(n)])
    return SympSubspace(n, 2, np.array(rows, dtype=np.int64))


@dataclass(frozen=True)
class FourMCode:
    m: int
    n: int
    g: BinaryPoly
    h: QuartPoly
    h_indices: tuple[int, ...]
    a: BinaryPoly
    gtilde: QuartPoly
    k: int
    bch: tuple[int, int, int]  # (d, multiplier c, offset l)
    triple: GeneratingTriple

    @property
    def bch_d(self) -> int:
        return self.bch[0]

    @property
    def t(self) -> int:
        return (self.bch[0] - 1) // 2

    @property
    def factors(self) -> FactorSet:
        return factor_xn_minus_1(self.n, "f4")

    @cached_property
    def S(self) -> SympSubspace:
        return ideal_span(self.gtilde, self.n)

    @cached_property
    def centraliser(self) -> SympSubspace:
        return ideal_span(self.h, self.n)

    def stabiliser_code(self) -> CyclicStabiliserCode:
        return CyclicStabiliserCode(self.triple, self.S, self.centraliser)

    def exact_distance(self, **kwargs) -> DistanceResult:
        return exact_distance((self.S, self.centraliser), **kwargs)

    @property
    def h_cosets(self) -> tuple[int, ...]:
        """Coset leaders of the chosen F4 factors."""
        return tuple(self.factors.cosets[i][0] for i in self.h_indices)

    def label(self) -> str:
        return f"[[{self.n},{self.k},{self.bch_d}]]"


def _g_exponents(fs: FactorSet, g: BinaryPoly) -> frozenset[int]:
    field, beta = fs.beta.field, fs.beta.value
    return frozenset(j for j in range(fs.n) if field.eval_poly(g, field.pow(beta, j)) == 0)


def remaining_factors(n: int, g: BinaryPoly) -> list[int]:
    """Indices of F4 factors of X^n - 1 that do not divide g."""
    fs = factor_xn_minus_1(n, "f4")
    roots = _g_exponents(fs, g)
    return [i for i, c in enumerate(fs.cosets) if not roots.intersection(c)]


def construct(m: int, g: BinaryPoly, h_choice: Iterable[int]) -> FourMCode:
    """Build the code for divisor g and chosen F4 factor indices (coset-leader order)."""
    n = length(m)
    xn1 = BinaryPoly.x_n_minus_1(n)
    if not g or xn1 % g:
        raise GNotDivisible(f"{g} does not divide X^{n} - 1")
    fs = factor_xn_minus_1(n, "f4")
    chosen = tuple(sorted(set(h_choice)))
    remaining = remaining_factors(n, g)
    pairs, fixed = sigma_pairs(fs)
    for i in fixed:
        if i in remaining:
            raise SelfPairedFactorOutsideG(
                f"self-conjugate factor {fs.factors[i]} must divide g")
    bad = [i for i in chosen if i not in remaining]
    if bad:
        raise SigmaConditionViolated(f"factors {bad} divide g or do not exist")
    for i, j in pairs:
        if i in remaining and (i in chosen) == (j in chosen):
            raise SigmaConditionViolated(
                f"h must contain exactly one of {fs.factors[i]} and {fs.factors[j]}")

    h = fs.product(chosen)
    residues: list[tuple] = [(BinaryPoly(), g)]
    for i in remaining:
        residues.append((QuartPoly.constant(ETA_BAR if i in chosen else ETA), fs.factors[i]))
    a_full = crt_combine(residues) if len(residues) > 1 else BinaryPoly()
    if isinstance(a_full, QuartPoly):
        if a_full.sigma() != a_full:
            raise AssertionError("CRT element is not fixed by sigma")
        a_full = a_full.to_binary()
    a = ring_reduce(a_full, n)

    gtilde = g * h
    exps = fs.exponents(chosen)
    d, (c, l) = bch_distance(exps, n)
    triple = _registered_triple(n, g, a, gtilde)
    return FourMCode(m, n, g, h, chosen, a, gtilde, int(g.degree), (d, c, l), triple)


def construct_from_cosets(m: int, g: BinaryPoly, exponents: Iterable[int]) -> FourMCode:
    """construct() with the chosen F4 factors named by any root exponent (e.g. the coset leader)."""
    fs = factor_xn_minus_1(length(m), "f4")
    indices = []
    for j in exponents:
        if not 0 <= j < fs.n:
            raise SigmaConditionViolated(f"exponent {j} is outside 0..{fs.n - 1}")
        indices.append(fs.index_of_exponent(j))
    return construct(m, g, indices)


def _registered_triple(n: int, g: BinaryPoly, a: BinaryPoly, gtilde: QuartPoly) -> GeneratingTriple:
    S = ideal_span(gtilde, n)
    g2, _, h_b = extract_generating_triple(S)
    if g2 != g:
        raise AssertionError("first projection of the ideal is not generated by g")
    f = ring_mul(a, g, n) % h_b
    triple = GeneratingTriple(n, g, f, h_b)
    if span_from_triple(triple) != S:
        raise AssertionError("triple does not reproduce the ideal")
    return triple


def verify_isotropy_equation(code: FourMCode) -> bool:
    """CRT residues of a, sigma(a) = a, a^2 = a + 1 off g, and the g g(X^-1) a identity."""
    n, g, a = code.n, code.g, code.a
    fs = code.factors
    a4 = a.to_quart()
    if a4.sigma() != a4:
        return False
    if a % g:
        return False
    for i in remaining_factors(n, g):
        want = QuartPoly.constant(ETA_BAR if i in code.h_indices else ETA)
        if a4 % fs.factors[i] != want:
            return False
    cofactor = BinaryPoly.x_n_minus_1(n) // g
    if (a * a) % cofactor != (a + BinaryPoly(1)) % cofactor:
        return False
    ggr = ring_mul(g, reverse(g, n), n)
    return ring_mul(ggr, a, n) == ring_mul(ggr, reverse(a, n), n)


def binary_divisors(n: int) -> list[BinaryPoly]:
    """Divisors of X^n - 1 over F2 that contain X - 1, in factor-subset order."""
    fs = factor_xn_minus_1(n, "f2")
    others = range(1, len(fs))
    out = []
    for r in range(len(fs)):
        for combo in itertools.combinations(others, r):
            out.append(product([fs.factors[0]] + [fs.factors[i] for i in combo]))
    return out


def transversals(n: int, g: BinaryPoly) -> list[tuple[int, ...]]:
    fs = factor_xn_minus_1(n, "f4")
    remaining = set(remaining_factors(n, g))
    pairs = [p for p in sigma_pairs(fs)[0] if p[0] in remaining]
    return [tuple(sorted(pick)) for pick in itertools.product(*pairs)]


def iter_codes(m: int) -> Iterator[FourMCode]:
    n = length(m)
    for g in binary_divisors(n):
        for h_choice in transversals(n, g):
            yield construct(m, g, h_choice)


def enumerate_codes(m: int) -> list[FourMCode]:
    """Every generating pair (g, h) for length 4^m + 1, deduplicated."""
    seen, out = set(), []
    for code in iter_codes(m):
        key = (code.g, code.h)
        if key not in seen:
            seen.add(key)
            out.append(code)
    return out
