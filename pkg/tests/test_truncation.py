import random

import pytest

from taualg.truncation import (Chart, ChartClass, ChartError, Differential,
                               format_chart, motivic_assemble, parse_chart,
                               run_ss, tau_invert, truncate)


def _d3_demo():
    return Chart([ChartClass("a", 3, 1), ChartClass("b", 2, 4)],
                 [Differential(3, "a", "b")])


def test_truncation_region():
    c = _d3_demo()
    t3 = truncate(c, 3)
    assert [cl.id for cl in t3.classes] == ["b"]
    assert t3.differentials == []
    assert truncate(c, 4).classes == []


def test_trivial_truncation_identity():
    c = _d3_demo()
    stab = min((cl.s + cl.f) // 2 for cl in c.classes)
    t = truncate(c, stab)
    assert t.classes == c.classes and t.differentials == c.differentials


def test_truncation_composes():
    rng = random.Random(3)
    for _ in range(50):
        c = _random_chart(rng)
        w1, w2 = rng.randint(-2, 6), rng.randint(-2, 6)
        a = truncate(truncate(c, w1), w2)
        b = truncate(c, max(w1, w2))
        assert a.classes == b.classes and a.differentials == b.differentials


def test_run_ss_demo():
    c = _d3_demo()
    assert run_ss(c) == {}
    assert run_ss(truncate(c, 3)) == {(2, 4): 1}


def test_motivic_demo_row_and_below_line_vanishing():
    m = motivic_assemble(_d3_demo(), 2, 4)
    assert m.entries == {(2, 4, 3): 1}
    assert m.tau_ranks == {(2, 4, 3): 0}
    for (s, f, w) in m.entries:
        assert s + f >= 2 * w


def test_torsion_exponent_law():
    rng = random.Random(41)
    for _ in range(60):
        r = rng.choice([3, 5, 7])
        s, f = rng.randint(1, 10), rng.randint(0, 6)
        c = Chart([ChartClass("a", s, f), ChartClass("b", s - 1, f + r)],
                  [Differential(r, "a", "b")])
        t1, t2 = s + f, s + f + r - 1
        w_min = t1 // 2
        m = motivic_assemble(c, w_min, t2 // 2 + 1)
        survived = sorted(w for (ss, ff, w) in m.entries
                          if (ss, ff) == (s - 1, f + r))
        assert len(survived) == (r - 1) // 2
        assert survived == list(range(t1 // 2 + 1, t2 // 2 + 1))
        # top of the tower has no tau-image, the rest map isomorphically
        for w in survived:
            expect = 1 if w > t1 // 2 + 1 else 0
            assert m.tau_rank(s - 1, f + r, w) == expect


def _random_chart(rng) -> Chart:
    classes = []
    n = rng.randint(2, 9)
    for i in range(n):
        classes.append(ChartClass(f"c{i}", rng.randint(0, 8),
                                  rng.randint(0, 6)))
    used = set()
    diffs = []
    by_bd = {}
    for cl in classes:
        by_bd.setdefault((cl.s, cl.f), []).append(cl)
    for cl in classes:
        if cl.id in used or rng.random() < 0.5:
            continue
        r = rng.choice([2, 3, 4, 5])
        for tgt in by_bd.get((cl.s - 1, cl.f + r), []):
            if tgt.id not in used and tgt.id != cl.id:
                diffs.append(Differential(r, cl.id, tgt.id))
                used.add(cl.id)
                used.add(tgt.id)
                break
    return Chart(classes, diffs)


def test_tau_inversion_round_trip_random():
    rng = random.Random(97)
    for _ in range(60):
        c = _random_chart(rng)
        if not c.classes:
            continue
        w_min = min((cl.s + cl.f) // 2 for cl in c.classes)
        w_max = max((cl.s + cl.f) // 2 for cl in c.classes) + 1
        m = motivic_assemble(c, w_min, w_max)
        assert tau_invert(m, c) == run_ss(c)
        for (s, f, w), rk in m.tau_ranks.items():
            assert rk <= m.dim(s, f, w)
            if w > m.w_min:
                assert rk <= m.dim(s, f, w - 1)


def test_chart_validation_errors():
    with pytest.raises(ChartError):
        Chart([ChartClass("a", 0, 0), ChartClass("a", 1, 0)], [])
    with pytest.raises(ChartError):
        Chart([ChartClass("a", 3, 1), ChartClass("b", 2, 4)],
              [Differential(1, "a", "b")])
    with pytest.raises(ChartError):
        Chart([ChartClass("a", 3, 1), ChartClass("b", 2, 3)],
              [Differential(3, "a", "b")])  # degree rule broken
    with pytest.raises(ChartError):
        parse_chart("class a s=0\n")


def test_same_page_source_target_clash():
    c = Chart([ChartClass("a", 4, 0), ChartClass("b", 3, 2),
               ChartClass("x", 5, -2)],
              [Differential(2, "a", "b"), Differential(2, "x", "a")])
    with pytest.raises(ChartError):
        run_ss(c)


def test_parse_format_roundtrip():
    rng = random.Random(12)
    for _ in range(20):
        c = _random_chart(rng)
        text = format_chart(c)
        c2 = parse_chart(text)
        assert c2.classes == c.classes
        assert c2.differentials == c.differentials
        assert format_chart(c2) == text
    assert format_chart(parse_chart("")) == ""
