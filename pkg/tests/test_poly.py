import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcc.errors import NonCoprimeModuli, NonInvertible
from qcc.poly import (
    ETA,
    ETA_BAR,
    BinaryPoly,
    QuartPoly,
    crt_combine,
    ext_gcd,
    f4_inv,
    f4_mul,
    format_poly,
    from_hex,
    inv_mod,
    parse_poly,
    poly_gcd,
    reverse,
    ring_mul,
    rotate,
    sigma,
    to_hex,
)

# --- naive coefficient-list oracle -------------------------------------------

# F4 = {0, 1, eta, eta'} with eta^2 = eta + 1, via explicit table
F4_TABLE = {
    (2, 2): 3, (2, 3): 1, (3, 3): 2,
}


def naive_f4_mul(x, y):
    if x == 0 or y == 0:
        return 0
    if x == 1:
        return y
    if y == 1:
        return x
    return F4_TABLE[tuple(sorted((x, y)))]


def naive_mul(u, v):
    out = [0] * (len(u) + len(v) - 1 if u and v else 0)
    for i, a in enumerate(u):
        for j, b in enumerate(v):
            out[i + j] ^= naive_f4_mul(a, b)
    return out


def naive_ring_mul(u, v, n):
    out = [0] * n
    for i, c in enumerate(naive_mul(u, v)):
        out[i % n] ^= c
    return out


def trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


binary = st.integers(min_value=0, max_value=(1 << 40) - 1).map(BinaryPoly)
nonzero_binary = st.integers(min_value=1, max_value=(1 << 40) - 1).map(BinaryPoly)
quart = st.lists(st.integers(0, 3), max_size=20).map(QuartPoly.from_coeffs)


def test_f4_field_table():
    for x, y in itertools.product(range(4), repeat=2):
        assert f4_mul(x, y) == naive_f4_mul(x, y)
    for x in range(1, 4):
        assert f4_mul(x, f4_inv(x)) == 1


@given(binary, binary)
def test_binary_mul_matches_convolution(u, v):
    assert trim((u * v).coeffs()) == trim(naive_mul(u.coeffs(), v.coeffs()))


@given(quart, quart)
def test_quart_mul_matches_convolution(u, v):
    assert trim((u * v).coeffs()) == trim(naive_mul(u.coeffs(), v.coeffs()))


@given(binary, nonzero_binary)
def test_binary_divmod(u, v):
    q, r = divmod(u, v)
    assert q * v + r == u
    assert r.degree < v.degree


@given(quart, quart)
def test_quart_divmod(u, v):
    if not v:
        return
    q, r = divmod(u, v)
    assert q * v + r == u
    assert r.degree < v.degree


@settings(max_examples=200)
@given(st.integers(1, 40), binary, binary)
def test_reverse_is_multiplicative(n, u, v):
    assert reverse(ring_mul(u, v, n), n) == ring_mul(reverse(u, n), reverse(v, n), n)


@given(st.integers(1, 30), binary)
def test_reverse_is_involution(n, u):
    assert reverse(reverse(u, n), n) == u % BinaryPoly.x_n_minus_1(n)


@settings(max_examples=100)
@given(st.integers(1, 25), st.data())
def test_coefficient_identity(n, data):
    """Coefficient of X^k in u(X) v(X^-1) is the dot product of u with v shifted by k."""
    u = data.draw(st.integers(0, (1 << n) - 1))
    v = data.draw(st.integers(0, (1 << n) - 1))
    prod = ring_mul(BinaryPoly(u), reverse(BinaryPoly(v), n), n)
    for k in range(n):
        dot = (u & rotate(v, k, n)).bit_count() & 1
        assert prod.coeff(k) == dot


@given(quart, quart)
def test_sigma_is_ring_homomorphism(u, v):
    assert sigma(u * v) == sigma(u) * sigma(v)
    assert sigma(u + v) == sigma(u) + sigma(v)
    assert sigma(sigma(u)) == u


def test_sigma_swaps_eta():
    assert QuartPoly.constant(ETA).sigma() == QuartPoly.constant(ETA_BAR)


@settings(max_examples=200)
@given(nonzero_binary, nonzero_binary)
def test_ext_gcd_bezout(u, v):
    g, s, t = ext_gcd(u, v)
    assert s * u + t * v == g
    assert u % g == BinaryPoly() and v % g == BinaryPoly()
    assert g == poly_gcd(u, v)


@given(quart, quart)
def test_quart_ext_gcd_bezout(u, v):
    if not u and not v:
        return
    g, s, t = ext_gcd(u, v)
    assert s * u + t * v == g
    assert g.coeffs()[-1] == 1


@settings(max_examples=200)
@given(nonzero_binary, st.integers(2, 2**16).map(BinaryPoly))
def test_inv_mod(u, m):
    if m.degree < 1:
        return
    if poly_gcd(u, m) != BinaryPoly(1):
        with pytest.raises(NonInvertible):
            inv_mod(u, m)
        return
    assert (inv_mod(u, m) * u) % m == BinaryPoly(1)


def test_inv_mod_sigma_gtilde_five():
    """sigma(g h) is a unit modulo h for the five-qubit code."""
    h = parse_poly("x^2+e'x+1")
    gt = parse_poly("x+1") * h
    inv = inv_mod(gt.sigma() % h, h)
    assert (inv * gt.sigma()) % h == QuartPoly(BinaryPoly(1))


def test_crt_combine_residues():
    m1, m2, m3 = parse_poly("x+1"), parse_poly("x^2+x+1"), parse_poly("x^3+x+1")
    r = [BinaryPoly(1), parse_poly("x"), parse_poly("x^2+1")]
    x = crt_combine(list(zip(r, [m1, m2, m3])))
    for ri, mi in zip(r, [m1, m2, m3]):
        assert x % mi == ri % mi
    assert x.degree < 6


def test_crt_combine_mixed_fields():
    g = parse_poly("x+1")
    r1, r2 = parse_poly("x^2+ex+1"), parse_poly("x^2+e'x+1")
    a = crt_combine([(BinaryPoly(), g), (QuartPoly.constant(ETA), r1),
                     (QuartPoly.constant(ETA_BAR), r2)])
    assert a.sigma() == a  # the five-qubit CRT element is binary


def test_crt_rejects_common_factor():
    with pytest.raises(NonCoprimeModuli):
        crt_combine([(BinaryPoly(1), parse_poly("x+1")), (BinaryPoly(), parse_poly("x^2+1"))])


@given(binary)
def test_hex_roundtrip_binary(u):
    assert from_hex(to_hex(u)) == u


@given(quart)
def test_hex_roundtrip_quart(u):
    assert from_hex(to_hex(u)) == u


def test_hex_format():
    assert to_hex(parse_poly("x^4+x+1")) == "f2:13"
    assert to_hex(parse_poly("x^2+ex+1")) == "f4:5:2"
    with pytest.raises(ValueError):
        from_hex("f3:11")


@pytest.mark.parametrize("text,expected", [
    ("x-1", "x+1"),
    ("x^8+x^5+x^4+x^3+1", "x^8+x^5+x^4+x^3+1"),
    ("(x+1)(x+1)", "x^2+1"),
    ("x^2+ηx+1", "x^2+ηx+1"),
    ("x^2+e'x+1", "x^2+η'x+1"),
    ("X^2 + X", "x^2+x"),
])
def test_parse_and_format(text, expected):
    u = parse_poly(text)
    assert str(u) == expected
    assert format_poly(u.coeffs()) == expected


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_poly("x^^2")


def test_zero_degree_and_weight():
    assert BinaryPoly().degree == float("-inf")
    assert QuartPoly.from_coeffs([0, 2, 3]).weight == 2
