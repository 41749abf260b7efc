"""Factorisation of X^n - 1 over F2 and F4 through cyclotomic cosets."""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Iterable, Literal

from .errors import NoSuchRoot
from .gf2k import ExtField, ExtFieldElem, ext_field, multiplicative_order
from .poly import BinaryPoly, Poly, QuartPoly, product

FieldTag = Literal["f2", "f4"]


@dataclass(frozen=True)
class CosetPartition:
    n: int
    q: int
    cosets: tuple[tuple[int, ...], ...]

    @property
    def leaders(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self.cosets)

    def coset_of(self, s: int) -> tuple[int, ...]:
        s %= self.n
        for c in self.cosets:
            if s in c:
                return c
        raise KeyError(s)


def cyclotomic_cosets(n: int, q: int) -> CosetPartition:
    """q-ary cyclotomic cosets of Z_n, sorted by leader."""
    if n < 1:
        raise ValueError("n must be positive")
    if math.gcd(n, q) != 1:
        raise ValueError(f"n={n} shares a factor with q={q}")
    seen: set[int] = set()
    cosets = []
    for s in range(n):
        if s in seen:
            continue
        coset = []
        x = s
        while x not in coset:
            coset.append(x)
            x = x * q % n
        seen.update(coset)
        cosets.append(tuple(sorted(coset)))
    return CosetPartition(n, q, tuple(cosets))


def splitting_degree(n: int, base: FieldTag = "f2") -> int:
    """Least k with n | 2^k - 1, and with F4 inside GF(2^k) when base is F4."""
    if n % 2 == 0:
        raise ValueError("n must be odd")
    k = multiplicative_order(2, n)
    if base == "f4" and k % 2:
        k *= 2
    return k


def find_primitive_nth_root(n: int, field: ExtField) -> ExtFieldElem:
    """gamma^((2^k - 1)/n) for the least primitive gamma of the field."""
    if field.group_order % n:
        raise NoSuchRoot(f"{n} does not divide 2^{field.k} - 1")
    return ExtFieldElem(field, field.exp(field.group_order // n))


@dataclass(frozen=True)
class FactorSet:
    """Irreducible factors of X^n - 1 with their root exponents w.r.t. beta."""

    n: int
    field: FieldTag
    factors: tuple[Poly, ...]
    cosets: tuple[tuple[int, ...], ...]
    beta: ExtFieldElem

    def __len__(self) -> int:
        return len(self.factors)

    def index_of_exponent(self, j: int) -> int:
        j %= self.n
        for i, c in enumerate(self.cosets):
            if j in c:
                return i
        raise KeyError(j)

    def exponents(self, indices: Iterable[int]) -> frozenset[int]:
        return frozenset(j for i in indices for j in self.cosets[i])

    def sigma_index(self, i: int) -> int:
        """Index of sigma(factor i): sigma sends the roots beta^j to beta^(2j)."""
        if self.field == "f2":
            return i
        return self.index_of_exponent(2 * self.cosets[i][0])

    def product(self, indices: Iterable[int]) -> Poly:
        one = QuartPoly(BinaryPoly(1)) if self.field == "f4" else BinaryPoly(1)
        return product((self.factors[i] for i in indices), one)


def minimal_polynomial(coset: Iterable[int], beta: ExtFieldElem) -> list[int]:
    """Coefficients (in the extension field) of prod_{j in coset} (X - beta^j)."""
    field = beta.field
    coeffs = [1]
    for j in coset:
        root = field.pow(beta.value, j)
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] ^= c
            nxt[i] ^= field.mul(c, root)
        coeffs = nxt
    return coeffs


@functools.lru_cache(maxsize=None)
def factor_xn_minus_1(n: int, field: FieldTag = "f2") -> FactorSet:
    """Irreducible factors in coset-leader order; the product is re-verified."""
    if field not in ("f2", "f4"):
        raise ValueError(f"unknown field tag {field!r}")
    ext = ext_field(splitting_degree(n, field))
    beta = find_primitive_nth_root(n, ext)
    partition = cyclotomic_cosets(n, 2 if field == "f2" else 4)
    factors: list[Poly] = []
    for coset in partition.cosets:
        coeffs = minimal_polynomial(coset, beta)
        if field == "f2":
            if any(c not in (0, 1) for c in coeffs):
                raise AssertionError(f"minimal polynomial of coset {coset} not over F2")
            factors.append(BinaryPoly.from_coeffs(coeffs))
        else:
            small = [ext.to_f4(c) for c in coeffs]
            if None in small:
                raise AssertionError(f"minimal polynomial of coset {coset} not over F4")
            factors.append(QuartPoly.from_coeffs(small))
    out = FactorSet(n, field, tuple(factors), partition.cosets, beta)
    full = out.product(range(len(factors)))
    target = BinaryPoly.x_n_minus_1(n)
    if (full.to_binary() if isinstance(full, QuartPoly) else full) != target:
        raise AssertionError(f"factors of X^{n} - 1 do not multiply back")
    return out


def sigma_pairs(fs: FactorSet) -> tuple[list[tuple[int, int]], list[int]]:
    """Split F4 factor indices into conjugate pairs (i, sigma(i)) and self-paired ones.

    The pairing is read off coefficient conjugation and cross-checked against
    the coset map j -> 2j.
    """
    pairs, fixed, seen = [], [], set()
    for i, r in enumerate(fs.factors):
        if i in seen:
            continue
        conj = r.sigma() if isinstance(r, QuartPoly) else r
        j = fs.factors.index(conj)
        if j != fs.sigma_index(i):
            raise AssertionError("sigma pairing disagrees with the coset map")
        seen.update((i, j))
        if i == j:
            fixed.append(i)
        else:
            pairs.append((i, j))
    return pairs, fixed


def bch_distance(exponents: Iterable[int], n: int) -> tuple[int, tuple[int, int]]:
    """BCH distance maximised over primitive roots beta^c, c a unit mod n.

    Returns ``(d, (c, l))`` where beta^(c*l), ..., beta^(c*(l+d-2)) are roots.
    Runs wrap around Z_n.  The empty set has distance 1.
    """
    exps = {e % n for e in exponents}
    if len(exps) == n:
        raise ValueError("every n-th root is a root; BCH distance is undefined")
    if not exps:
        return 1, (1, 0)
    best, witness = 0, (1, 0)
    for c in range(1, n):
        if math.gcd(c, n) != 1:
            continue
        c_inv = pow(c, -1, n)
        # beta^(c*j) is a root iff c*j lies in exps
        scaled = {e * c_inv % n for e in exps}
        for start in sorted(scaled):
            if (start - 1) % n in scaled:
                continue
            length = 0
            while (start + length) % n in scaled:
                length += 1
            if length > best:
                best, witness = length, (c, start)
    return best + 1, witness
