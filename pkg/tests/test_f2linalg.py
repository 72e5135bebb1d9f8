import itertools
import random

from hypothesis import given, settings
from hypothesis import strategies as st

from taualg.f2linalg import (BitSpan, F2Matrix, F2Vector, kernel_basis,
                             rank, rref, solve)


def random_matrix(rng, rows, cols):
    return F2Matrix.from_rows(
        [[rng.randint(0, 1) for _ in range(cols)] for _ in range(rows)])


def brute_rank(m):
    """Count of distinct nonzero row-space elements, log2."""
    vecs = {0}
    for r in range(m.rows):
        vecs |= {v ^ m.data[r] for v in vecs}
    n = len(vecs)
    out = 0
    while n > 1:
        n //= 2
        out += 1
    return out


def test_rank_against_brute_force():
    rng = random.Random(7)
    for _ in range(200):
        rows, cols = rng.randint(0, 6), rng.randint(1, 6)
        m = random_matrix(rng, rows, cols)
        assert rank(m) == brute_rank(m)


def test_rref_idempotent_and_pivots():
    rng = random.Random(11)
    for _ in range(100):
        m = random_matrix(rng, rng.randint(1, 7), rng.randint(1, 7))
        r1, piv1, _ = rref(m)
        r2, piv2, _ = rref(r1)
        assert r1.data == r2.data
        assert piv1 == piv2
        assert rank(m) == len(piv1)


def test_kernel_vectors_are_killed_and_complete():
    rng = random.Random(13)
    for _ in range(100):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        m = random_matrix(rng, rows, cols)
        kern = kernel_basis(m)
        assert len(kern) == cols - rank(m)
        for v in kern:
            assert m.mul_vec(v).is_zero()
        # every killed vector lies in the span of the kernel basis
        sp = BitSpan()
        for v in kern:
            sp.add(v.bits)
        for bits in range(1 << cols):
            v = F2Vector(cols, bits)
            if m.mul_vec(v).is_zero():
                assert sp.contains(bits)


def test_solve_roundtrip_and_no_solution():
    rng = random.Random(17)
    solved = missed = 0
    for _ in range(300):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        m = random_matrix(rng, rows, cols)
        b = F2Vector(rows, rng.getrandbits(rows))
        x = solve(m, b)
        if x is None:
            missed += 1
            for bits in range(1 << cols):
                assert m.mul_vec(F2Vector(cols, bits)) != b
        else:
            solved += 1
            assert m.mul_vec(x) == b
    assert solved and missed


@given(st.integers(1, 9), st.integers(1, 9), st.randoms())
@settings(max_examples=60, deadline=None)
def test_rank_nullity(rows, cols, rng):
    m = random_matrix(rng, rows, cols)
    assert rank(m) + len(kernel_basis(m)) == cols


@given(st.integers(1, 8), st.randoms())
@settings(max_examples=40, deadline=None)
def test_rank_transpose_invariant(n, rng):
    m = random_matrix(rng, n, rng.randint(1, 8))
    assert rank(m) == rank(m.transpose())


def test_bitspan_tracks_dimension():
    sp = BitSpan()
    assert sp.dim == 0
    assert sp.add(0b101)
    assert sp.add(0b011)
    assert not sp.add(0b110)  # dependent
    assert sp.dim == 2
    assert sp.contains(0b110) and not sp.contains(0b100)


def test_identity_and_matmul():
    rng = random.Random(23)
    m = random_matrix(rng, 5, 5)
    i5 = F2Matrix.identity(5)
    assert m.matmul(i5).data == m.data
    assert i5.matmul(m).data == m.data
