"""Polynomials over F2 and F4 and arithmetic in the ring F[X]/(X^n - 1).

F2 polynomials are packed into Python ints: bit ``i`` holds the coefficient of
``X^i``.  An F4 polynomial ``p0(X) + eta*p1(X)`` is stored as the pair of its F2
parts, which makes conjugation and the identification F2^n x F2^n = F4^n free.

F4 scalars are the ints 0..3 read as ``b0 + eta*b1`` (``ETA == 2``,
``ETA_BAR == 3 == 1 + eta``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence, Union

from .errors import NonCoprimeModuli, NonInvertible

NEG_INF = float("-inf")
"""Degree of the zero polynomial."""

ZERO, ONE, ETA, ETA_BAR = 0, 1, 2, 3

# eta^2 = eta + 1
_F4_MUL = (
    (0, 0, 0, 0),
    (0, 1, 2, 3),
    (0, 2, 3, 1),
    (0, 3, 1, 2),
)
_F4_INV = (None, 1, 3, 2)


def f4_mul(x: int, y: int) -> int:
    return _F4_MUL[x][y]


def f4_inv(x: int) -> int:
    if x == 0:
        raise ZeroDivisionError("0 has no inverse in F4")
    return _F4_INV[x]


def f4_conj(x: int) -> int:
    """Frobenius x -> x^2, which swaps eta and eta'."""
    return _F4_MUL[x][x]


# ---------------------------------------------------------------------------
# raw packed-int helpers (hot paths use these directly)


def clmul(a: int, b: int) -> int:
    """Carry-less product of two packed F2 polynomials."""
    if a < b:
        a, b = b, a
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def bdivmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    db = b.bit_length()
    q = 0
    while a.bit_length() >= db:
        shift = a.bit_length() - db
        q ^= 1 << shift
        a ^= b << shift
    return q, a


def cyclic_reduce(a: int, n: int) -> int:
    """Reduce a packed F2 polynomial modulo X^n - 1."""
    mask = (1 << n) - 1
    while a >> n:
        a = (a & mask) ^ (a >> n)
    return a


def rotate(a: int, k: int, n: int) -> int:
    """Multiply by X^k in F2[X]/(X^n - 1), i.e. cyclic right shift of the vector."""
    k %= n
    mask = (1 << n) - 1
    return ((a << k) | (a >> (n - k))) & mask


def bit_reverse_ring(a: int, n: int) -> int:
    """a(X) -> a(X^{-1}) for a reduced packed polynomial of length n."""
    if n == 1:
        return a & 1
    rest = format(a >> 1, f"0{n - 1}b")[::-1]
    return (int(rest, 2) << 1) | (a & 1)


# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class BinaryPoly:
    """Polynomial over F2, packed into an int."""

    bits: int = 0

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError("packed polynomial must be non-negative")

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]) -> BinaryPoly:
        return cls(sum((int(c) & 1) << i for i, c in enumerate(coeffs)))

    @classmethod
    def from_exponents(cls, exps: Iterable[int]) -> BinaryPoly:
        bits = 0
        for e in exps:
            bits ^= 1 << e
        return cls(bits)

    @classmethod
    def x_n_minus_1(cls, n: int) -> BinaryPoly:
        return cls((1 << n) | 1)

    @property
    def degree(self) -> int | float:
        return self.bits.bit_length() - 1 if self.bits else NEG_INF

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def coeffs(self, length: int | None = None) -> list[int]:
        length = self.bits.bit_length() if length is None else length
        return [(self.bits >> i) & 1 for i in range(length)]

    def coeff(self, i: int) -> int:
        return (self.bits >> i) & 1

    def __bool__(self) -> bool:
        return self.bits != 0

    def __add__(self, other):
        if isinstance(other, QuartPoly):
            return QuartPoly(self, BinaryPoly()) + other
        if not isinstance(other, BinaryPoly):
            return NotImplemented
        return BinaryPoly(self.bits ^ other.bits)

    __sub__ = __add__
    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, QuartPoly):
            return QuartPoly(self, BinaryPoly()) * other
        if not isinstance(other, BinaryPoly):
            return NotImplemented
        return BinaryPoly(clmul(self.bits, other.bits))

    def __divmod__(self, other: BinaryPoly) -> tuple[BinaryPoly, BinaryPoly]:
        q, r = bdivmod(self.bits, other.bits)
        return BinaryPoly(q), BinaryPoly(r)

    def __mod__(self, other: BinaryPoly) -> BinaryPoly:
        return divmod(self, other)[1]

    def __floordiv__(self, other: BinaryPoly) -> BinaryPoly:
        return divmod(self, other)[0]

    def __pow__(self, e: int) -> BinaryPoly:
        out = BinaryPoly(1)
        for _ in range(e):
            out = out * self
        return out

    def to_quart(self) -> QuartPoly:
        return QuartPoly(self, BinaryPoly())

    def __str__(self) -> str:
        return format_poly(self.coeffs())

    def __repr__(self) -> str:
        return f"BinaryPoly({self})"


@dataclass(frozen=True, slots=True)
class QuartPoly:
    """Polynomial over F4 written as ``part0 + eta*part1``."""

    part0: BinaryPoly = BinaryPoly()
    part1: BinaryPoly = BinaryPoly()

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]) -> QuartPoly:
        p0 = p1 = 0
        for i, c in enumerate(coeffs):
            p0 |= (c & 1) << i
            p1 |= ((c >> 1) & 1) << i
        return cls(BinaryPoly(p0), BinaryPoly(p1))

    @classmethod
    def constant(cls, c: int) -> QuartPoly:
        return cls.from_coeffs([c])

    @property
    def degree(self) -> int | float:
        bits = self.part0.bits | self.part1.bits
        return bits.bit_length() - 1 if bits else NEG_INF

    @property
    def weight(self) -> int:
        """Number of nonzero F4 coefficients (joint weight of the split pair)."""
        return (self.part0.bits | self.part1.bits).bit_count()

    def coeffs(self, length: int | None = None) -> list[int]:
        if length is None:
            length = (self.part0.bits | self.part1.bits).bit_length()
        a, b = self.part0.bits, self.part1.bits
        return [((a >> i) & 1) | (((b >> i) & 1) << 1) for i in range(length)]

    def coeff(self, i: int) -> int:
        return ((self.part0.bits >> i) & 1) | (((self.part1.bits >> i) & 1) << 1)

    @property
    def is_binary(self) -> bool:
        return not self.part1

    def to_binary(self) -> BinaryPoly:
        if self.part1:
            raise ValueError(f"{self} has coefficients outside F2")
        return self.part0

    def sigma(self) -> QuartPoly:
        # sigma(p0 + eta p1) = p0 + (1 + eta) p1
        return QuartPoly(self.part0 + self.part1, self.part1)

    def monic(self) -> QuartPoly:
        if not self:
            return self
        return self.scale(f4_inv(self.coeff(int(self.degree))))

    def scale(self, c: int) -> QuartPoly:
        p0, p1 = self.part0, self.part1
        if c == 0:
            return QuartPoly()
        if c == 1:
            return self
        if c == ETA:
            # eta (p0 + eta p1) = p1 + eta (p0 + p1)
            return QuartPoly(p1, p0 + p1)
        return QuartPoly(p0 + p1, p0)  # eta' (p0 + eta p1) = (p0 + p1) + eta p0

    def __bool__(self) -> bool:
        return bool(self.part0) or bool(self.part1)

    def __add__(self, other):
        if isinstance(other, BinaryPoly):
            other = other.to_quart()
        if not isinstance(other, QuartPoly):
            return NotImplemented
        return QuartPoly(self.part0 + other.part0, self.part1 + other.part1)

    __sub__ = __add__
    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, BinaryPoly):
            other = other.to_quart()
        if not isinstance(other, QuartPoly):
            return NotImplemented
        a0, a1, b0, b1 = self.part0, self.part1, other.part0, other.part1
        both = a1 * b1
        return QuartPoly(a0 * b0 + both, a0 * b1 + a1 * b0 + both)

    __rmul__ = __mul__

    def __divmod__(self, other) -> tuple[QuartPoly, QuartPoly]:
        if isinstance(other, BinaryPoly):
            other = other.to_quart()
        q, r = _f4_divmod(self.coeffs(), other.coeffs())
        return QuartPoly.from_coeffs(q), QuartPoly.from_coeffs(r)

    def __mod__(self, other) -> QuartPoly:
        return divmod(self, other)[1]

    def __floordiv__(self, other) -> QuartPoly:
        return divmod(self, other)[0]

    def __str__(self) -> str:
        return format_poly(self.coeffs())

    def __repr__(self) -> str:
        return f"QuartPoly({self})"


Poly = Union[BinaryPoly, QuartPoly]


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _f4_divmod(a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = _trim(list(a))
    inv_lead = f4_inv(b[-1])
    q = [0] * max(len(r) - len(b) + 1, 0)
    while len(r) >= len(b):
        shift = len(r) - len(b)
        c = f4_mul(r[-1], inv_lead)
        q[shift] = c
        for i, bi in enumerate(b):
            r[shift + i] ^= f4_mul(c, bi)
        _trim(r)
    return q, r


# ---------------------------------------------------------------------------
# ring operations in F[X]/(X^n - 1)


def ring_reduce(u: Poly, n: int) -> Poly:
    if isinstance(u, BinaryPoly):
        return BinaryPoly(cyclic_reduce(u.bits, n))
    return QuartPoly(ring_reduce(u.part0, n), ring_reduce(u.part1, n))


def ring_mul(u: Poly, v: Poly, n: int) -> Poly:
    """Product in F[X]/(X^n - 1)."""
    return ring_reduce(u * v, n)


def reverse(u: Poly, n: int) -> Poly:
    """u(X^{-1}) in F[X]/(X^n - 1)."""
    if isinstance(u, BinaryPoly):
        return BinaryPoly(bit_reverse_ring(cyclic_reduce(u.bits, n), n))
    return QuartPoly(reverse(u.part0, n), reverse(u.part1, n))


def sigma(u: Poly) -> Poly:
    if isinstance(u, BinaryPoly):
        return u
    return u.sigma()


def f4_join(a: BinaryPoly, b: BinaryPoly) -> QuartPoly:
    """(a, b) -> a + eta*b."""
    return QuartPoly(a, b)


def f4_split(u: QuartPoly) -> tuple[BinaryPoly, BinaryPoly]:
    return u.part0, u.part1


# ---------------------------------------------------------------------------
# gcd, inverses, CRT


def _as_common(u: Poly, v: Poly) -> tuple[Poly, Poly]:
    if type(u) is type(v):
        return u, v
    return _promote(u), _promote(v)


def _monic(u: Poly) -> Poly:
    return u if isinstance(u, BinaryPoly) else u.monic()


def poly_gcd(u: Poly, v: Poly) -> Poly:
    """Monic gcd over F2 (both binary) or F4."""
    u, v = _as_common(u, v)
    if not u and not v:
        raise ValueError("gcd(0, 0) is undefined")
    while v:
        u, v = v, u % v
    return _monic(u)


def ext_gcd(u: Poly, v: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (g, s, t) with s*u + t*v = g and g monic."""
    u, v = _as_common(u, v)
    if not u and not v:
        raise ValueError("gcd(0, 0) is undefined")
    one = QuartPoly(BinaryPoly(1)) if isinstance(u, QuartPoly) else BinaryPoly(1)
    zero = type(u)()
    r0, r1, s0, s1, t0, t1 = u, v, one, zero, zero, one
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if isinstance(r0, QuartPoly):
        c = f4_inv(r0.coeff(int(r0.degree)))
        return r0.scale(c), s0.scale(c), t0.scale(c)
    return r0, s0, t0


def inv_mod(u: Poly, m: Poly) -> Poly:
    """w with u*w = 1 mod m."""
    g, s, _ = ext_gcd(u, m)
    if g.degree != 0:
        raise NonInvertible(f"{u} is not invertible modulo {m}")
    return s % m


def crt_combine(residues: Sequence[tuple[Poly, Poly]]) -> Poly:
    """Unique x of degree < sum(deg m_i) with x = r_i mod m_i."""
    if not residues:
        raise ValueError("no residues given")
    if any(isinstance(p, QuartPoly) for pair in residues for p in pair):
        residues = [(_promote(r), _promote(m)) for r, m in residues]
    x, modulus = residues[0]
    x = x % modulus
    for r, m in residues[1:]:
        if poly_gcd(modulus, m).degree != 0:
            raise NonCoprimeModuli(f"{modulus} and {m} share a factor")
        lift = ((r - x) * inv_mod(modulus % m, m)) % m
        x = (x + modulus * lift) % (modulus * m)
        modulus = modulus * m
    return x


def _promote(u: Poly) -> QuartPoly:
    return u.to_quart() if isinstance(u, BinaryPoly) else u


def product(polys: Iterable[Poly], one: Poly | None = None) -> Poly:
    return reduce(lambda a, b: a * b, polys, one if one is not None else BinaryPoly(1))


# ---------------------------------------------------------------------------
# text formats


def _coeff_str(c: int) -> str:
    return {1: "", 2: "η", 3: "η'"}[c]


def format_poly(coeffs: Sequence[int], var: str = "x") -> str:
    """Human form, highest degree first: x^2+ηx+1."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        if i == 0:
            terms.append({1: "1", 2: "η", 3: "η'"}[c])
        elif i == 1:
            terms.append(f"{_coeff_str(c)}{var}")
        else:
            terms.append(f"{_coeff_str(c)}{var}^{i}")
    return "+".join(terms) if terms else "0"


def to_hex(u: Poly) -> str:
    if isinstance(u, BinaryPoly):
        return f"f2:{u.bits:x}"
    return f"f4:{u.part0.bits:x}:{u.part1.bits:x}"


def from_hex(text: str) -> Poly:
    parts = text.strip().split(":")
    try:
        if parts[0] == "f2" and len(parts) == 2:
            return BinaryPoly(int(parts[1], 16))
        if parts[0] == "f4" and len(parts) == 3:
            return QuartPoly(BinaryPoly(int(parts[1], 16)), BinaryPoly(int(parts[2], 16)))
    except ValueError:
        pass
    raise ValueError(f"not a serialized polynomial: {text!r}")


_TERM = re.compile(r"^(?:(η'|η|1))?(?:x(?:\^(\d+))?)?$")


def parse_poly(text: str) -> Poly:
    """Parse ``x^8+x^5+1``, ``x-1`` or products like ``(x+1)(x^2+ηx+1)``.

    Signs are ignored (characteristic 2).  Serialized ``f2:``/``f4:`` forms are
    accepted too.  ``e`` and ``e'`` may be written for eta and eta'.
    """
    text = text.strip().lower().replace(" ", "").replace("X", "x")
    if text.startswith(("f2:", "f4:")):
        return from_hex(text)
    text = text.replace("e'", "η'").replace("e", "η").replace("*", "")
    if "(" in text:
        factors = re.findall(r"\(([^()]*)\)", text)
        if "".join(f"({f})" for f in factors) != text:
            raise ValueError(f"cannot parse polynomial {text!r}")
        out = product(parse_poly(f) for f in factors)
        return _narrow(out)
    coeffs: dict[int, int] = {}
    for term in re.split(r"[+-]", text):
        if not term:
            continue
        m = _TERM.match(term)
        if not m or (m.group(1) is None and "x" not in term):
            raise ValueError(f"cannot parse term {term!r} in {text!r}")
        c = {None: 1, "1": 1, "η": ETA, "η'": ETA_BAR}[m.group(1)]
        if "x" in term:
            e = int(m.group(2)) if m.group(2) else 1
        else:
            e = 0
        coeffs[e] = coeffs.get(e, 0) ^ c
    size = max(coeffs, default=-1) + 1
    return _narrow(QuartPoly.from_coeffs([coeffs.get(i, 0) for i in range(size)]))


def _narrow(u: Poly) -> Poly:
    if isinstance(u, QuartPoly) and u.is_binary:
        return u.part0
    return u
