"""Acceptance criteria, one recorded PASS/FAIL line each.

Tolerances and time limits are the ones the criteria state.  Reference
strings are the published factorisation displays rewritten in plain text
(X - 1 equals x + 1 in characteristic 2).
"""

import itertools
import random
import time

import numpy as np

from _triples import random_cyclic_subspace, random_valid_triple
from qcc.cli import factorisation_string
from qcc.cyclic_code import (
    GeneratingTriple,
    centraliser_from_triple,
    exact_distance,
    span_from_triple,
    validate_triple,
    weight_search_distance,
)
from qcc.decoder import SyndromeOracle, correct
from qcc.fourm import construct, construct_from_cosets, enumerate_codes, transversals
from qcc.poly import BinaryPoly, reverse, ring_mul
from qcc.symplectic import (
    centraliser_bruteforce,
    extract_generating_triple,
    is_css_form,
    is_totally_isotropic,
)
from qcc import weyl_sim

X_PLUS_1 = BinaryPoly(0b11)


def all_errors(n, max_weight):
    for w in range(max_weight + 1):
        for support in itertools.combinations(range(n), w):
            for paulis in itertools.product(((1, 0), (0, 1), (1, 1)), repeat=w):
                a = b = 0
                for i, (x, z) in zip(support, paulis):
                    a |= x << i
                    b |= z << i
                yield BinaryPoly(a), BinaryPoly(b)


def test_factorisation_fidelity(record):
    expected = {
        (17, "f2"): "x^17-1 = (x+1)(x^8+x^7+x^6+x^4+x^2+x+1)(x^8+x^5+x^4+x^3+1)",
        (5, "f2"): "x^5-1 = (x+1)(x^4+x^3+x^2+x+1)",
        (5, "f4"): "x^5-1 = (x+1)(x^2+ηx+1)(x^2+η'x+1)",
    }
    start = time.perf_counter()
    got = {key: factorisation_string(*key) for key in expected}
    elapsed = time.perf_counter() - start
    ok = got == expected and elapsed < 1.0
    record("factorisation fidelity", ok, f"({elapsed:.3f} s)")
    assert ok, got


def test_five_qubit_reproduction(record):
    start = time.perf_counter()
    code = max((construct(1, X_PLUS_1, c) for c in transversals(5, X_PLUS_1)),
               key=lambda c: c.bch_d)
    d = code.exact_distance().d
    P = weyl_sim.stabiliser_projector(code.S)
    trace = np.trace(P).real
    cyclic = weyl_sim.check_cyclic(P)
    kl = weyl_sim.kl_distance(P, max_check=3)
    css = is_css_form(code.S)
    elapsed = time.perf_counter() - start
    ok = (code.k == 1 and code.bch_d == 3 and d == 3 and abs(trace - 2) <= 1e-10
          and cyclic and kl == 3 and not css and elapsed < 10)
    record("[[5,1,3]] reproduction", ok,
           f"k={code.k} bch={code.bch_d} d={d} trace={trace:.12f} cyclic={cyclic} "
           f"kl={kl} css={css} ({elapsed:.2f} s)")
    assert ok


def test_seventeen_one_seven(record):
    start = time.perf_counter()
    code = construct_from_cosets(2, X_PLUS_1, [2, 6])
    exps = code.factors.exponents(code.h_indices)
    res = code.exact_distance()
    elapsed = time.perf_counter() - start
    ok = (exps == {2, 8, 9, 15, 6, 7, 10, 11} and code.bch_d == 7 and res.d == 7
          and res.enumerated == 262_144 and elapsed < 60)
    record("[[17,1,7]] reproduction", ok,
           f"bch={code.bch_d} d={res.d} enumerated={res.enumerated} ({elapsed:.2f} s)")
    assert ok


def test_seventeen_nine_resolution(record, tmp_path):
    start = time.perf_counter()
    results = []
    for i, code in enumerate(c for c in enumerate_codes(2) if c.g.degree == 9):
        res = code.exact_distance(threads=4, checkpoint=tmp_path / f"ck{i}.json")
        oracle = weight_search_distance(code.S, code.centraliser, 4)
        results.append((code, res, oracle))
    elapsed = time.perf_counter() - start
    complete = all(
        code.k == 9 and code.bch_d == 3 and res.enumerated == 4**13 and oracle is not None
        and oracle.d == res.d and res.d >= code.bch_d
        for code, res, oracle in results)
    distances = sorted({res.d for _, res, _ in results})
    ok = complete and elapsed <= 15 * 60
    record("[[17,9,.]] exhaustive distance completes and matches an independent oracle", ok,
           f"k=9 bch=3 d={distances} over {len(results)} codes, "
           f"{results[0][1].enumerated} elements each ({elapsed:.1f} s)")
    # the criterion's expected value; a failure here means the true distance differs
    literal = distances == [3]
    record("[[17,9,.]] true distance equals the expected 3", literal, f"(found {distances})")
    assert ok
    assert literal, f"true distance is {distances}, not 3"


def test_decoder_exhaustiveness(record):
    start = time.perf_counter()
    cases = [(construct_from_cosets(1, X_PLUS_1, [2]), 1),
             (construct_from_cosets(2, X_PLUS_1, [2, 6]), 3)]
    wrong, counts, nonzero = 0, set(), {}
    for code, t in cases:
        nonzero[code.n] = 0
        for a, b in all_errors(code.n, t):
            oracle = SyndromeOracle(a, b, code.n)
            est = correct(code, oracle)
            counts.add((code.n, oracle.queries))
            if (est.a, est.b) != (a, b):
                wrong += 1
            if a or b:
                nonzero[code.n] += 1
    elapsed = time.perf_counter() - start
    ok = wrong == 0 and nonzero == {5: 15, 17: 19_635} and elapsed < 300
    record("decoder corrects every error within the BCH limit", ok,
           f"errors={nonzero} wrong={wrong} ({elapsed:.1f} s)")
    literal = all(q == 4 * n for n, q in counts)
    record("decoder uses 4n oracle queries per decode", literal,
           f"(observed {sorted(counts)})")
    assert ok
    assert literal, f"query counts {sorted(counts)}"


def test_characterisation_equivalence(record):
    start = time.perf_counter()
    rng = random.Random(2024)
    iso_agree = cent_agree = roundtrip = dims = 0
    samples = 0
    for _ in range(200):
        n = rng.choice([3, 5, 7])
        # arbitrary separately cyclic subspace: isotropy by both routes
        S = random_cyclic_subspace(rng, n)
        g, f, h = extract_generating_triple(S)
        iso_agree += bool(validate_triple(GeneratingTriple(n, g, f, h))) == is_totally_isotropic(S)
        dims += S.dim + centraliser_bruteforce(S).dim == 2 * n
        # totally isotropic one, from a valid triple
        t = random_valid_triple(rng, n)
        T = span_from_triple(t)
        cent_agree += centraliser_from_triple(t) == centraliser_bruteforce(T)
        g2, f2, h2 = extract_generating_triple(T)
        roundtrip += span_from_triple(GeneratingTriple(n, g2, f2, h2)) == T
        dims += T.dim + centraliser_bruteforce(T).dim == 2 * n
        samples += 1
    elapsed = time.perf_counter() - start
    ok = (iso_agree == cent_agree == roundtrip == samples and dims == 2 * samples
          and samples >= 200 and elapsed < 60)
    record("characterisation equivalence property suite", ok,
           f"{samples}+{samples} subspaces: isotropy {iso_agree}, centraliser {cent_agree}, "
           f"round-trip {roundtrip}, dimension {dims} ({elapsed:.1f} s)")
    assert ok


def test_fourm_invariants(record):
    start = time.perf_counter()
    failures = []
    codes = enumerate_codes(1) + enumerate_codes(2)
    for code in codes:
        n, g, h, a = code.n, code.g, code.h, code.a
        xn1 = BinaryPoly.x_n_minus_1(n)
        cof = xn1 // g
        ggr = ring_mul(g, reverse(g, n), n)
        d = exact_distance((code.S, code.centraliser)).d
        checks = {
            "g h sigma(h)": g.to_quart() * h * h.sigma() == xn1.to_quart(),
            "sigma(a) = a": a.to_quart().sigma() == a.to_quart(),
            "a^2 = a + 1": (a * a) % cof == (a + BinaryPoly(1)) % cof,
            "g g(X^-1) a": ring_mul(ggr, a, n) == ring_mul(ggr, reverse(a, n), n),
            "d >= bch": d >= code.bch_d,
        }
        failures += [f"{code.label()} {name}" for name, ok in checks.items() if not ok]
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60
    record("4^m+1 construction invariants", ok,
           f"{len(codes)} codes, failures={failures} ({elapsed:.1f} s)")
    assert ok


def test_pseudo_stabiliser_search(record):
    start = time.perf_counter()
    S = weyl_sim.laflamme_subspace()
    res = weyl_sim.search_562(S)
    hits = [c for c in res.found if abs(c.trace - 6) <= 1e-10 and c.distance == 2 and c.cyclic]
    elapsed = time.perf_counter() - start
    literal = res.candidates == 560 and len(hits) >= 1 and elapsed < 120
    record("((5,6,2)) among 3-subsets of the five-qubit characters", literal,
           f"scanned={res.scanned} found={len(hits)} ({elapsed:.2f} s)")

    # supplementary: the same search after adding a shift-invariant logical operator
    ext = weyl_sim.cyclic_logical_extension(S)
    alt = weyl_sim.search_562(ext, cyclic_only=True)
    alt_hits = [c for c in alt.found if abs(c.trace - 6) <= 1e-10 and c.distance == 2 and c.cyclic]
    record("((5,6,2)) cyclic code in the extended character group", bool(alt_hits),
           f"shift-closed subsets scanned={alt.scanned} found={len(alt_hits)}")
    assert alt_hits
    assert literal, "no 3-subset of the five-qubit characters has distance 2"
