import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pivotlab.errors import EndOfCode, RangeError
from pivotlab.kleeminty import (
    BitString,
    gray_codes,
    gray_pred,
    gray_rank,
    gray_succ,
    gray_unrank,
    increasing,
    km_instance,
    succ_flip_index,
    vertex_coordinates,
)
from pivotlab.lp import basic_solution, classify_basis


def reflected(d):
    """The recursion G_1 = (0, 1), G_{i+1} = (0 G_i, 1 reversed(G_i)) as strings."""
    g = ["0", "1"]
    for _ in range(d - 1):
        g = ["0" + s for s in g] + ["1" + s for s in reversed(g)]
    return g


def bs(s):
    return BitString.parse(s)


def test_gray_examples():
    assert [str(x) for x in gray_codes(2)] == ["00", "01", "11", "10"]
    for d in range(1, 8):
        assert gray_unrank(d, (1 << d) - 1) == BitString.last(d)
        assert gray_rank(BitString.zeros(d)) == 0
    assert gray_succ(bs("010")) == bs("110")


@pytest.mark.parametrize("d", range(1, 11))
def test_gray_matches_recursion(d):
    expected = reflected(d)
    assert [str(x) for x in gray_codes(d)] == expected
    for k, s in enumerate(expected):
        assert gray_rank(bs(s)) == k


def test_gray_rank_range():
    with pytest.raises(RangeError):
        gray_unrank(3, 8)
    with pytest.raises(RangeError):
        gray_unrank(3, -1)


@pytest.mark.parametrize("d", [1, 2, 5, 9, 12])
def test_succ_pred_inverse_exhaustive(d):
    codes = list(gray_codes(d))
    for a, b in zip(codes, codes[1:]):
        assert gray_succ(a) == b and gray_pred(b) == a
        assert a.hamming(b) == 1
        assert a.flip(succ_flip_index(a)) == b
    with pytest.raises(EndOfCode):
        gray_succ(BitString.last(d))
    with pytest.raises(EndOfCode):
        gray_pred(BitString.zeros(d))


@given(st.lists(st.integers(0, 1), min_size=2, max_size=64))
def test_succ_rank_shift(bits):
    x = BitString(tuple(bits))
    if x != BitString.last(len(x)):
        assert gray_rank(gray_succ(x)) == gray_rank(x) + 1


class CountingBits(tuple):
    reads = 0

    def __getitem__(self, i):
        CountingBits.reads += 1
        return tuple.__getitem__(self, i)

    def __iter__(self):
        for v in tuple.__iter__(self):
            CountingBits.reads += 1
            yield v


@pytest.mark.parametrize("d", [8, 32, 128, 512])
def test_rank_and_succ_use_linear_bit_reads(d):
    rng = random.Random(d)
    for _ in range(20):
        x = BitString(CountingBits(rng.randint(0, 1) for _ in range(d)))
        CountingBits.reads = 0
        gray_rank(x)
        assert CountingBits.reads <= d
        CountingBits.reads = 0
        if x != BitString.last(d):
            gray_succ(x)
            assert CountingBits.reads <= 3 * d


def test_vertex_coordinates_example():
    eps = Fraction(1, 4)
    assert vertex_coordinates(bs("00"), eps) == (0, 0)
    assert vertex_coordinates(bs("01"), eps) == (Fraction(1, 4), 1)
    assert vertex_coordinates(bs("11"), eps) == (Fraction(3, 4), 1)
    assert vertex_coordinates(bs("10"), eps) == (1, 0)


@pytest.mark.parametrize("eps", [0, Fraction(1, 2), Fraction(-1, 3), 1])
def test_eps_range(eps):
    with pytest.raises(RangeError):
        km_instance(3, eps)


def test_km_shape():
    km = km_instance(3)
    assert (km.lp.m, km.lp.n) == (6, 9)
    assert km.lp.start == km.basis(BitString.zeros(3))
    for d in range(1, 8):
        assert km_instance(d).objective(BitString.last(d)) == 1


def test_increasing_examples():
    assert increasing(bs("010"), 1)
    assert not increasing(bs("010"), 2)
    assert all(increasing(BitString.zeros(5), i) for i in range(1, 6))
    with pytest.raises(RangeError):
        increasing(bs("010"), 4)


@pytest.mark.parametrize("d", range(1, 13))
def test_objective_order_is_gray_order(d):
    km = km_instance(d)
    verts = [BitString(bits) for bits in itertools.product((0, 1), repeat=d)]
    by_objective = sorted(verts, key=km.objective)
    assert by_objective == list(gray_codes(d))
    objs = [km.objective(v) for v in by_objective]
    assert all(a < b for a, b in zip(objs, objs[1:]))


@pytest.mark.parametrize("d", range(1, 13))
def test_increasing_matches_objective(d):
    km = km_instance(d)
    for bits in itertools.product((0, 1), repeat=d):
        v = BitString(bits)
        o = km.objective(v)
        for i in range(1, d + 1):
            assert increasing(v, i) == (km.objective(v.flip(i)) > o)


@pytest.mark.parametrize("d,eps", [(1, "1/3"), (3, "1/3"), (4, "1/4"), (5, "2/5")])
def test_bases_reproduce_coordinates(d, eps):
    km = km_instance(d, eps)
    for v in gray_codes(d):
        B = km.basis(v)
        x = basic_solution(km.lp, B)
        assert all(t >= 0 for t in x)
        assert x[:d] == km.vertex(v)
        assert km.bits(B) == v
        succ_ok = v != BitString.last(d)
        if succ_ok:
            assert B.adjacent(km.basis(gray_succ(v)))
    assert classify_basis(km.lp, km.basis(BitString.last(d))).kind == "Optimal"


def test_bits_rejects_non_vertex_basis():
    km = km_instance(2)
    from pivotlab.lp import Basis
    with pytest.raises(ValueError):
        km.bits(Basis.of(1, 3, 4, 5))
