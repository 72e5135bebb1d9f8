import pytest

from taualg.algebra import make_algebra, parse_element
from taualg.hopf import (check_coassociativity, check_welldefined, coproduct,
                        counit, format_tensor, is_algebra_map,
                        tensor_counit_left, tensor_counit_right)


NAMES = ["A(1)", "A(2)", "E(0)", "E(1)", "E(2)", "F", "G"]


def test_coproduct_tau1():
    a = make_algebra("A")
    t1 = parse_element("t1", a)
    assert format_tensor(coproduct(t1, a), a) == "t1|1 + x1|t0 + 1|t1"


def test_coproduct_xi2():
    a = make_algebra("A")
    x2 = parse_element("x2", a)
    assert format_tensor(coproduct(x2, a), a) == "x1^2|x1 + x2|1 + 1|x2"


def test_counit_picks_tau_part():
    a = make_algebra("A")
    assert counit(parse_element("t^2", a), a) == frozenset({2})
    assert counit(parse_element("t0", a), a) == frozenset()


def test_counit_axiom_small():
    a = make_algebra("A")
    for text in ["t0", "t1", "x1*x2", "x2 + x1^3"]:
        e = parse_element(text, a)
        t = coproduct(e, a)
        assert tensor_counit_left(t, a) == e
        assert tensor_counit_right(t, a) == e


def test_coassociativity_small_range():
    for name in NAMES:
        assert check_coassociativity(make_algebra(name), 10) == []
    assert check_coassociativity(make_algebra("A"), 12) == []


def test_quotient_welldefined():
    for name in ["A"] + NAMES:
        assert check_welldefined(make_algebra(name)) == []


def test_algebra_map_small_range():
    for name in ["A", "A(2)", "F", "G"]:
        assert is_algebra_map(make_algebra(name), 8) == []
