import functools
import itertools

import numpy as np
import pytest

from qcc.errors import NotIsotropic
from qcc.fourm import construct_from_cosets
from qcc.poly import BinaryPoly
from qcc.symplectic import SympPair, SympSubspace, is_css_form
from qcc import weyl_sim as W

PAULI_X = np.array([[0, 1], [1, 0]])
PAULI_Z = np.array([[1, 0], [0, -1]])


def kron_weyl(a, b):
    """X^a Z^b on every qubit, tensored with qubit 0 leftmost."""
    factors = [np.linalg.matrix_power(PAULI_X, x) @ np.linalg.matrix_power(PAULI_Z, z)
               for x, z in zip(a, b)]
    return functools.reduce(np.kron, factors)


def rand_vec(rng, n):
    return rng.integers(0, 2, n)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_weyl_op_matches_kronecker(n):
    for a in itertools.product((0, 1), repeat=n):
        for b in itertools.product((0, 1), repeat=n):
            assert np.allclose(W.weyl_op(a, b), kron_weyl(a, b))


def test_weyl_algebra():
    rng = np.random.default_rng(0)
    n = 4
    for _ in range(20):
        a, b, c, d = (rand_vec(rng, n) for _ in range(4))
        A, B = W.weyl_op(a, b), W.weyl_op(c, d)
        assert np.allclose(A @ A.conj().T, np.eye(16))
        assert np.allclose(A @ A, (-1) ** int(a @ b) * np.eye(16))
        sign = (-1) ** int(a @ d + b @ c)
        assert np.allclose(A @ B, sign * B @ A)


def test_shift_conjugation():
    n = 5
    N = W.shift_operator(n)
    assert np.allclose(np.linalg.matrix_power(N, n), np.eye(2**n))
    rng = np.random.default_rng(1)
    for _ in range(20):
        a, b = rand_vec(rng, n), rand_vec(rng, n)
        # N W(a, b) N^dagger = W(Na, Nb) with (Nu)_i = u_(i-1)
        assert np.allclose(N @ W.weyl_op(a, b) @ N.T, W.weyl_op(np.roll(a, 1), np.roll(b, 1)))
        # hence N^dagger W(a, b) N shifts the other way
        assert np.allclose(N.T @ W.weyl_op(a, b) @ N, W.weyl_op(np.roll(a, -1), np.roll(b, -1)))


def test_shift_on_basis_state():
    N = W.shift_operator(3)
    # |100> (qubit 0 set) goes to |010>
    assert N[0b010, 0b100] == 1


@pytest.fixture(scope="module")
def laflamme():
    return W.laflamme_subspace()


def test_five_qubit_projector(laflamme):
    P = W.stabiliser_projector(laflamme)
    assert W.is_projector(P)
    assert abs(np.trace(P) - 2) < 1e-10
    assert W.check_cyclic(P)
    assert W.kl_distance(P, max_check=3) == 3
    for g in W.group_elements(laflamme):
        assert np.allclose(g @ P, P)
    assert np.allclose(W.alpha_sum_projector(laflamme), P)
    assert not is_css_form(laflamme)


@pytest.mark.parametrize("leader", [1, 2])
def test_kl_distance_matches_exact_distance(leader):
    code = construct_from_cosets(1, BinaryPoly(0b11), [leader])
    P = W.stabiliser_projector(code.S)
    assert W.kl_distance(P, max_check=4) == code.exact_distance().d == 3
    assert W.check_cyclic(P)


def test_fourm_five_qubit_is_laflamme(laflamme):
    assert construct_from_cosets(1, BinaryPoly(0b11), [2]).S == laflamme


def test_noncyclic_negative_control():
    S = SympSubspace.span([SympPair([1, 0, 0], [0, 0, 0])], 3)
    P = W.stabiliser_projector(S)
    assert W.is_projector(P) and not W.check_cyclic(P)


def test_non_isotropic_rejected():
    S = SympSubspace.span([SympPair([1, 0], [0, 0]), SympPair([0, 0], [1, 0])], 2)
    with pytest.raises(NotIsotropic):
        W.stabiliser_projector(S)


def test_trivial_group_projector_is_identity():
    P = W.stabiliser_projector(SympSubspace.zero(2))
    assert np.allclose(P, np.eye(4))
    assert W.kl_distance(P) == 1


def test_character_projectors(laflamme):
    chars = W.characters(laflamme)
    assert len(chars) == 16 and chars[0] == (1, 1, 1, 1)
    projs = [W.char_projector(laflamme, c) for c in chars]
    assert np.allclose(sum(projs), np.eye(32))
    for i, j in itertools.combinations(range(16), 2):
        assert np.allclose(projs[i] @ projs[j], 0)
    for P in projs:
        assert W.is_projector(P) and abs(np.trace(P) - 2) < 1e-10


def test_shift_orbits_laflamme(laflamme):
    orbits = W.shift_orbits(laflamme)
    assert sorted(len(o) for o in orbits) == [1, 5, 5, 5]


def test_unions_of_orbits_are_cyclic(laflamme):
    projs = [W.char_projector(laflamme, c) for c in W.characters(laflamme)]
    orbits = W.shift_orbits(laflamme)
    for r in range(1, len(orbits) + 1):
        for combo in itertools.combinations(orbits, r):
            P = sum(projs[i] for o in combo for i in o)
            assert W.check_cyclic(P)
    # a subset that is not a union of orbits is not cyclic
    assert not W.check_cyclic(projs[orbits[1][0]])


def test_literal_three_subset_scan(laflamme):
    res = W.search_562(laflamme)
    assert res.candidates == 560 and res.scanned == 560
    # no sum of three character projectors of the five-qubit group reaches distance 2
    assert res.found == []


def test_extended_group_search(laflamme):
    ext = W.cyclic_logical_extension(laflamme)
    assert ext.dim == 5 and laflamme.issubspace(ext)
    assert W.check_cyclic(W.stabiliser_projector(ext))
    res = W.search_562(ext, cyclic_only=True)
    assert len(res.found) == 2
    for code in res.found:
        assert abs(code.trace - 6) < 1e-10
        assert code.distance == 2 and code.cyclic
        assert W.is_projector(code.projector)


def test_dense_budget():
    with pytest.raises(ValueError):
        W.weyl_op([0] * 13, [0] * 13)
