import random

import pytest

from tensoraction.errors import DomainError
from tensoraction.repcalc import (
    char_product_oracle,
    character_dimension,
    decomposition_character,
    dominant_multiplicities,
    dual_weight,
    tensor_decompose,
    weight_multiplicities,
    weyl_dimension,
)
from tensoraction.rootdata import build_root_system

from oracles import wcf_character

A1 = build_root_system("A", 1)
A2 = build_root_system("A", 2)
B2 = build_root_system("B", 2)
G2 = build_root_system("G", 2)


@pytest.mark.parametrize("k", [0, 1, 2, 7, 40])
def test_sl2_dimension(k):
    assert weyl_dimension(A1, (k,)) == k + 1


def test_known_dimensions():
    assert weyl_dimension(A2, (1, 0)) == 3
    assert weyl_dimension(A2, (0, 1)) == 3
    assert weyl_dimension(A2, (1, 1)) == 8
    assert weyl_dimension(B2, (1, 0)) == 5
    assert weyl_dimension(B2, (0, 1)) == 4
    assert weyl_dimension(build_root_system("C", 2), (1, 0)) == 4
    assert weyl_dimension(G2, (1, 0)) == 7
    assert weyl_dimension(G2, (0, 1)) == 14
    assert weyl_dimension(build_root_system("E", 6), (1, 0, 0, 0, 0, 0)) == 27


def test_non_dominant_rejected():
    with pytest.raises(DomainError):
        weyl_dimension(A2, (-1, 0))
    with pytest.raises(DomainError):
        weight_multiplicities(A1, (-2,))
    with pytest.raises(DomainError):
        tensor_decompose(A2, (1, 0), (0, -1))


def test_sl2_string():
    ch = weight_multiplicities(A1, (4,))
    assert ch == {(4,): 1, (2,): 1, (0,): 1, (-2,): 1, (-4,): 1}


def test_a2_adjoint_zero_weight():
    ch = weight_multiplicities(A2, (1, 1))
    assert ch[(0, 0)] == 2
    assert character_dimension(ch) == 8


def test_a2_natural_weights():
    ch = weight_multiplicities(A2, (1, 0))
    assert ch == {(1, 0): 1, (-1, 1): 1, (0, -1): 1}


@pytest.mark.parametrize("rs,grid", [
    (A2, [(a, b) for a in range(4) for b in range(4)]),
    (B2, [(a, b) for a in range(3) for b in range(3)]),
    (G2, [(a, b) for a in range(3) for b in range(3)]),
])
def test_characters_match_wcf_oracle(rs, grid):
    for lam in grid:
        assert weight_multiplicities(rs, lam) == wcf_character(rs, lam)


@pytest.mark.parametrize("rs,lam", [
    (A1, (17,)), (A2, (3, 5)), (B2, (2, 3)), (G2, (2, 2)),
    (build_root_system("D", 4), (1, 0, 1, 0)),
])
def test_character_sums_to_dimension(rs, lam):
    assert character_dimension(weight_multiplicities(rs, lam)) == weyl_dimension(rs, lam)


def test_tensor_sl2_clebsch_gordan():
    assert tensor_decompose(A1, (1,), (1,)) == {(2,): 1, (0,): 1}
    assert tensor_decompose(A1, (3,), (2,)) == {(5,): 1, (3,): 1, (1,): 1}


def test_tensor_v_vstar_sl3():
    assert tensor_decompose(A2, (1, 0), (0, 1)) == {(1, 1): 1, (0, 0): 1}


def test_tensor_unit():
    assert tensor_decompose(A2, (0, 0), (5, 3)) == {(5, 3): 1}
    assert tensor_decompose(G2, (2, 1), (0, 0)) == {(2, 1): 1}


def test_tensor_symmetry_and_cartan_component():
    rng = random.Random(7)
    for rs, hi in [(A2, 3), (B2, 2), (G2, 2)]:
        for _ in range(6):
            lam = tuple(rng.randint(0, hi) for _ in range(2))
            mu = tuple(rng.randint(0, hi) for _ in range(2))
            dec = tensor_decompose(rs, lam, mu)
            assert dec == tensor_decompose(rs, mu, lam)
            top = tuple(a + b for a, b in zip(lam, mu))
            assert dec[top] == 1


def test_tensor_against_char_product():
    rng = random.Random(11)
    for rs, hi in [(A1, 6), (A2, 3), (B2, 2), (G2, 2)]:
        for _ in range(8):
            lam = tuple(rng.randint(0, hi) for _ in range(rs.rank))
            mu = tuple(rng.randint(0, hi) for _ in range(rs.rank))
            dec = tensor_decompose(rs, lam, mu)
            lhs = decomposition_character(rs, dec)
            rhs = char_product_oracle(
                weight_multiplicities(rs, lam), weight_multiplicities(rs, mu))
            assert lhs == rhs


def test_tensor_dimension_balance():
    for rs, lam, mu in [(A2, (2, 1), (1, 1)), (B2, (1, 2), (2, 0)), (G2, (1, 1), (0, 1))]:
        dec = tensor_decompose(rs, lam, mu)
        total = sum(m * weyl_dimension(rs, nu) for nu, m in dec.items())
        assert total == weyl_dimension(rs, lam) * weyl_dimension(rs, mu)


def test_tensor_duality_mirror():
    for rs, lam, mu in [(A2, (2, 1), (1, 1)), (A2, (3, 0), (0, 2)), (G2, (1, 1), (1, 0))]:
        dec = tensor_decompose(rs, lam, mu)
        dual_dec = tensor_decompose(rs, dual_weight(rs, lam), dual_weight(rs, mu))
        assert dual_dec == {dual_weight(rs, nu): m for nu, m in dec.items()}


def test_char_product_unit_and_example():
    unit = {(0,): 1}
    b = weight_multiplicities(A1, (5,))
    assert char_product_oracle(unit, b) == b
    v = weight_multiplicities(A1, (1,))
    assert char_product_oracle(v, v) == {(2,): 1, (0,): 2, (-2,): 1}


def test_char_product_commutative_random():
    rng = random.Random(3)
    for _ in range(20):
        a = {(rng.randint(-4, 4), rng.randint(-4, 4)): rng.randint(-3, 3)
             for _ in range(rng.randint(1, 6))}
        b = {(rng.randint(-4, 4), rng.randint(-4, 4)): rng.randint(-3, 3)
             for _ in range(rng.randint(1, 6))}
        assert char_product_oracle(a, b) == char_product_oracle(b, a)


def test_dominant_multiplicities_subset_of_character():
    ch = weight_multiplicities(B2, (2, 2))
    dom = dominant_multiplicities(B2, (2, 2))
    for w, m in dom.items():
        assert ch[w] == m
        assert all(c >= 0 for c in w)


def test_dual_weight():
    assert dual_weight(A2, (1, 0)) == (0, 1)
    assert dual_weight(A2, (2, 1)) == (1, 2)
    assert dual_weight(A1, (5,)) == (5,)
    assert dual_weight(B2, (1, 2)) == (1, 2)
