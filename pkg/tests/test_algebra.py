import random

import pytest

from taualg.algebra import (AlgebraError, BiDegree, InsufficientIndexBound,
                            ParseError, UnknownAlgebra, add, basis,
                            format_element, format_monomial, make_algebra,
                            multiply, normalize, parse_element, scale_tau,
                            tau_degree, tau_free_table, xi_degree)


def test_generator_degrees():
    assert tau_degree(0) == BiDegree(1, 0)
    assert tau_degree(1) == BiDegree(3, 1)
    assert tau_degree(2) == BiDegree(7, 3)
    assert xi_degree(1) == BiDegree(2, 1)
    assert xi_degree(2) == BiDegree(6, 3)


def test_basis_examples():
    a = make_algebra("A")
    assert [format_monomial(m, a) for m in basis(a, BiDegree(1, 0))] == ["t0"]
    assert [format_monomial(m, a) for m in basis(a, BiDegree(0, -1))] == ["t"]
    names = sorted(format_monomial(m, a) for m in basis(a, BiDegree(6, 3)))
    assert names == ["x1^3", "x2"]


def test_relation_normal_form():
    a = make_algebra("A")
    t0 = parse_element("t0", a)
    sq = multiply(t0, t0, a)
    assert format_element(sq, a) == "t*x1"
    t1 = parse_element("t1", a)
    assert format_element(multiply(t1, t1, a), a) == "t*x2"


def test_total_ranks():
    assert sum(tau_free_table(make_algebra("A(1)"), 10).values()) == 8
    assert sum(tau_free_table(make_algebra("A(2)"), 24).values()) == 64
    for n in range(4):
        en = make_algebra(f"E({n})")
        assert sum(tau_free_table(en, 2 ** (n + 2)).values()) == 2 ** (n + 1)
    assert sum(tau_free_table(make_algebra("F"), 20).values()) == 16
    assert sum(tau_free_table(make_algebra("G"), 20).values()) == 32


def test_a0_equals_e0():
    a0 = tau_free_table(make_algebra("A(0)"), 8)
    e0 = tau_free_table(make_algebra("E(0)"), 8)
    assert a0 == e0


def _random_element(p, rng, stem, weight):
    cand = basis(p, BiDegree(stem, weight))
    if not cand:
        return frozenset()
    picks = rng.sample(cand, rng.randint(1, min(3, len(cand))))
    return frozenset(picks)


def test_multiplication_associative_commutative():
    rng = random.Random(5)
    for name in ["A", "A(2)", "E(2)", "F", "G"]:
        p = make_algebra(name)
        for _ in range(30):
            s1, s2, s3 = (rng.randint(0, 5) for _ in range(3))
            ws = [rng.randint(0, s // 2) for s in (s1, s2, s3)]
            x = _random_element(p, rng, s1, ws[0])
            y = _random_element(p, rng, s2, ws[1])
            z = _random_element(p, rng, s3, ws[2])
            assert multiply(x, y, p) == multiply(y, x, p)
            assert (multiply(multiply(x, y, p), z, p)
                    == multiply(x, multiply(y, z, p), p))


def test_normalize_is_idempotent_and_tau_linear():
    a = make_algebra("A")
    m = a.monomial(t0=2, t1=2, x1=1)
    n1 = normalize(m, a)
    for mm in n1:
        assert normalize(mm, a) == frozenset({mm})
    assert scale_tau(n1, 2) == normalize((m[0] + 2, m[1]), a)


def test_quotient_caps():
    a1 = make_algebra("A(1)")
    # x1^2 = 0 in A(1)
    x1 = parse_element("x1", a1)
    assert multiply(x1, x1, a1) == frozenset()


def test_homogeneity_rejected():
    a = make_algebra("A")
    with pytest.raises(AlgebraError):
        parse_element("t0 + x1", a)


def test_parse_format_roundtrip():
    a = make_algebra("A")
    for text in ["t0", "t", "t^3*x1^2", "t1*x1 + t0*x1^2", "x1^3 + x2"]:
        e = parse_element(text, a)
        assert parse_element(format_element(e, a), a) == e


def test_unknown_algebra_and_range_errors():
    with pytest.raises(UnknownAlgebra):
        make_algebra("Zq")
    a = make_algebra("A", stem_max=8)
    with pytest.raises(InsufficientIndexBound):
        basis(a, BiDegree(100, 50))
    with pytest.raises(ParseError):
        parse_element("t0 *", a)


def test_hbp_presentations_exist():
    for name in ["H_BP", "pi_BP", "BPBP"]:
        p = make_algebra(name)
        assert p.generators
    hn = make_algebra("H_BPn", 1)
    assert any(g.name.startswith("t") for g in hn.generators)
