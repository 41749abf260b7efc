"""Binary extension fields GF(2^k) with log/antilog tables.

Elements are ints below ``2**k`` (bit i = coefficient of t^i in the polynomial
basis).  The modulus is the lexicographically least irreducible polynomial of
degree k, comparing coefficients from the constant term upward, so the tables
(and every root chosen from them) are reproducible.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .poly import BinaryPoly, QuartPoly, bdivmod, clmul


def _mulmod(a: int, b: int, mod: int) -> int:
    return bdivmod(clmul(a, b), mod)[1]


def _powmod(a: int, e: int, mod: int) -> int:
    out = 1
    while e:
        if e & 1:
            out = _mulmod(out, a, mod)
        a = _mulmod(a, a, mod)
        e >>= 1
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, bdivmod(a, b)[1]
    return a


def is_irreducible(f: int) -> bool:
    """Irreducibility of a packed F2 polynomial (Ben-Or test)."""
    k = f.bit_length() - 1
    if k < 1:
        return False
    x_pow = 2  # X
    for _ in range(k // 2):
        x_pow = _mulmod(x_pow, x_pow, f)
        if _gcd(f, x_pow ^ 2) != 1:
            return False
    return True


def smallest_irreducible(k: int) -> int:
    """Least irreducible of degree k with coefficients compared low degree first."""
    for v in range(1 << k):
        low = int(format(v, f"0{k}b")[::-1], 2) if k else 0
        f = (1 << k) | low
        if is_irreducible(f):
            return f
    raise AssertionError(f"no irreducible polynomial of degree {k}")  # unreachable


def _prime_factors(m: int) -> list[int]:
    out, p = [], 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def multiplicative_order(a: int, n: int) -> int:
    """Order of a modulo n (gcd(a, n) = 1)."""
    if n == 1:
        return 1
    k, x = 1, a % n
    while x != 1:
        x = x * a % n
        k += 1
    return k


class ExtField:
    """GF(2^k)."""

    def __init__(self, k: int, modulus: int | None = None):
        if k < 1:
            raise ValueError("extension degree must be positive")
        self.k = k
        self.modulus = smallest_irreducible(k) if modulus is None else modulus
        if self.modulus.bit_length() - 1 != k or not is_irreducible(self.modulus):
            raise ValueError(f"modulus {self.modulus:#x} is not irreducible of degree {k}")
        self.order = 1 << k
        self.group_order = self.order - 1
        self.primitive = self._least_primitive()
        exp = [1] * (2 * self.group_order)
        log = [0] * self.order
        x = 1
        for i in range(self.group_order):
            exp[i] = exp[i + self.group_order] = x
            log[x] = i
            x = _mulmod(x, self.primitive, self.modulus)
        self._exp = exp
        self._log = log

    def _least_primitive(self) -> int:
        m = self.group_order
        if m == 1:
            return 1
        primes = _prime_factors(m)
        for g in range(2, self.order):
            if all(_powmod(g, m // p, self.modulus) != 1 for p in primes):
                return g
        raise AssertionError("field has no primitive element")  # unreachable

    def __repr__(self) -> str:
        return f"ExtField(2^{self.k}, modulus={BinaryPoly(self.modulus)})"

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return self._exp[self._log[x] + self._log[y]]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._exp[(self.group_order - self._log[x]) % self.group_order]

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, e: int) -> int:
        if x == 0:
            if e < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if e == 0 else 0
        return self._exp[(self._log[x] * e) % self.group_order]

    def log(self, x: int) -> int:
        if x == 0:
            raise ValueError("log of 0")
        return self._log[x]

    def exp(self, i: int) -> int:
        return self._exp[i % self.group_order]

    def element_order(self, x: int) -> int:
        return self.group_order // _int_gcd(self.group_order, self.log(x))

    # F4 sits inside GF(2^k) for even k: eta -> gamma^((2^k - 1)/3)
    @functools.cached_property
    def eta(self) -> int:
        if self.k % 2:
            raise ValueError(f"GF(2^{self.k}) does not contain F4")
        return self.exp(self.group_order // 3)

    def embed_f4(self, c: int) -> int:
        return (c & 1) ^ (self.eta if c & 2 else 0)

    def to_f4(self, x: int) -> int | None:
        """Inverse of :meth:`embed_f4`; None if x is outside the subfield."""
        eta = self.eta
        for c, v in ((0, 0), (1, 1), (2, eta), (3, eta ^ 1)):
            if x == v:
                return c
        return None

    def eval_coeffs(self, coeffs, x: int) -> int:
        """Horner evaluation of field-valued coefficients (low degree first)."""
        acc = 0
        for c in reversed(coeffs):
            acc = self.mul(acc, x) ^ c
        return acc

    def eval_poly(self, u, x: int) -> int:
        if isinstance(u, BinaryPoly):
            return self.eval_coeffs(u.coeffs(), x)
        if isinstance(u, QuartPoly):
            return self.eval_coeffs([self.embed_f4(c) for c in u.coeffs()], x)
        return self.eval_coeffs(list(u), x)


def _int_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@functools.lru_cache(maxsize=None)
def ext_field(k: int) -> ExtField:
    return ExtField(k)


@dataclass(frozen=True)
class ExtFieldElem:
    field: ExtField
    value: int

    def __add__(self, other: ExtFieldElem) -> ExtFieldElem:
        return ExtFieldElem(self.field, self.value ^ other.value)

    __sub__ = __add__

    def __mul__(self, other: ExtFieldElem) -> ExtFieldElem:
        return ExtFieldElem(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other: ExtFieldElem) -> ExtFieldElem:
        return ExtFieldElem(self.field, self.field.div(self.value, other.value))

    def __pow__(self, e: int) -> ExtFieldElem:
        return ext_pow(self, e)

    def __bool__(self) -> bool:
        return self.value != 0

    @property
    def order(self) -> int:
        return self.field.element_order(self.value)

    def __repr__(self) -> str:
        return f"ExtFieldElem(GF(2^{self.field.k}), {self.value:#x})"


def ext_pow(x: ExtFieldElem, e: int) -> ExtFieldElem:
    """x^e; negative exponents allowed for nonzero x."""
    return ExtFieldElem(x.field, x.field.pow(x.value, e))


def ext_eval(u, x: ExtFieldElem) -> ExtFieldElem:
    """Evaluate an F2 or F4 polynomial at a field element."""
    return ExtFieldElem(x.field, x.field.eval_poly(u, x.value))
