import random
from fractions import Fraction

import pytest

from zamolod.exchange import (
    ExchangeMatrix,
    NotBipartite,
    bipartite_mutate,
    decompose,
    find_symmetrizer,
    infer_bipartition,
    is_recurrent,
    mutate,
    recompose,
)

# the 5x5 bipartite matrix of the B3/G2 double binding, vertices 1,3,4 black
B5 = [
    [0, -1, 0, 0, 1],
    [1, 0, 1, -1, 0],
    [0, -2, 0, 0, 2],
    [0, 3, 0, 0, -3],
    [-1, 0, -1, 1, 0],
]
EPS5 = ("b", "w", "b", "b", "w")


def m5():
    return ExchangeMatrix(B5, EPS5)


def test_json_roundtrip():
    m = m5()
    assert ExchangeMatrix.from_json(m.to_json()) == m


def test_json_rejects_bad_size():
    with pytest.raises(ValueError):
        ExchangeMatrix.from_json({"n": 3, "b": [[0, 1], [-1, 0]], "eps": ["w", "b"]})


def test_mutation_is_an_involution():
    m = m5()
    for k in range(m.n):
        assert mutate(mutate(m, k), k) == m


def test_mutation_four_case_rule_small():
    m = ExchangeMatrix([[0, 1, 0], [-1, 0, 1], [0, -1, 0]], ("w", "b", "w"))
    out = mutate(m, 1)
    assert out.b == ((0, -1, 1), (1, 0, -1), (-1, 1, 0))


def test_bipartite_mutation_order_does_not_matter():
    m = m5()
    blacks = m.vertices("b")
    rng = random.Random(3)
    for _ in range(5):
        order = blacks[:]
        rng.shuffle(order)
        assert bipartite_mutate(m, "b", order) == bipartite_mutate(m, "b")


def test_recurrent_example():
    assert is_recurrent(m5())


def test_nonrecurrent_example():
    # an A3 path with one extra sign flip is not recurrent
    m = ExchangeMatrix([[0, 1, 0], [-1, 0, -1], [0, 1, 0]], ("w", "b", "w"))
    m2 = ExchangeMatrix([[0, 1, 1, 0], [-1, 0, 0, 1], [-1, 0, 0, -1], [0, -1, 1, 0]], ("w", "b", "b", "w"))
    assert is_recurrent(m)
    assert not is_recurrent(m2)


def test_decompose_recompose_roundtrip():
    m = m5()
    dec = decompose(m)
    assert recompose(dec.gamma, dec.delta, m.eps) == m
    assert dec.gamma[3][4] == 3 and dec.gamma[4][3] == 1
    assert dec.delta[3][1] == 3 and dec.delta[1][3] == 1


def test_infer_bipartition():
    m = infer_bipartition(B5)
    assert m.is_bipartite()
    with pytest.raises(NotBipartite):
        infer_bipartition([[0, 1, 1], [-1, 0, 1], [-1, -1, 0]])


def test_symmetrizer_certificate():
    c = find_symmetrizer(m5())
    assert c is not None and min(c) == 1
    for i in range(5):
        for j in range(5):
            assert c[i] * B5[i][j] == -c[j] * B5[j][i]
    bad = ExchangeMatrix([[0, 1], [1, 0]], ("w", "b"))
    assert find_symmetrizer(bad) is None


def test_symmetrizer_values_are_fractions():
    c = find_symmetrizer(ExchangeMatrix([[0, 2], [-1, 0]], ("w", "b")))
    assert c == (Fraction(1), Fraction(2))
