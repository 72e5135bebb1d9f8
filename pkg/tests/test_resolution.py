import pytest

from taualg.cobar import cobar_ext
from taualg.resolution import (CheckpointError, GenInfo, RangeExhausted,
                               _checkpoint_body, _stem_weights, ext_chart,
                               ext_dim, ext_dims, load_checkpoint,
                               minimal_resolution, save_checkpoint, tau_type)
from taualg.algebra import make_algebra


def _chart_window_agrees(state, table, stem_max, f_max):
    for s in range(stem_max + 1):
        for f in range(f_max + 1):
            ws = list(_stem_weights(state, s + f))
            win = table.windows.get((s, f))
            if win:
                ws.extend(win)
            for w in (range(min(ws) - 1, max(ws) + 1) if ws else []):
                assert ext_dim(state, s, f, w) == table.dim(s, f, w), \
                    (s, f, w)


def test_e0_closed_form_tower():
    state = minimal_resolution("E(0)", 4, 9)
    for f in range(9):
        assert ext_dim(state, 0, f, 0) == 1
        assert ext_dim(state, 0, f, 1) == 0
        assert tau_type(state, f, 0) == "free"
    for s in range(1, 5):
        for f in range(8):
            for w in range(0, 3):
                assert ext_dim(state, s, f, w) == 0


def test_e2_polynomial_count():
    stem_max, f_max = 12, 6
    state = minimal_resolution("E(2)", stem_max, f_max + 1)
    def count(s, f, w):
        n = 0
        for c in range(f + 1):
            for b in range(f + 1 - c):
                a = f - b - c
                if 2 * b + 6 * c == s and b + 3 * c >= w:
                    n += 1
        return n
    for s in range(stem_max + 1):
        for f in range(f_max + 1):
            for w in range(0, s + 2):
                assert ext_dim(state, s, f, w) == count(s, f, w), (s, f, w)


def test_resolution_d_squared_zero():
    from taualg.resolution import DualGroundRing, _apply_map
    state = minimal_resolution("A(1)", 8, 4)
    ring = DualGroundRing(make_algebra("A(1)"))
    for f in range(2, 5):
        for col in state.maps[f]:
            acc = {}
            for tgt, belt in col.items():
                for mono in belt:
                    img = _apply_map(ring, state.maps[f - 1][tgt], mono)
                    for g2, belt2 in img.items():
                        cur = acc.setdefault(g2, set())
                        cur ^= set(belt2)
            assert all(not v for v in acc.values())


def test_oracle_agreement_small():
    for name in ["E(1)", "A(1)"]:
        state = minimal_resolution(name, 6, 5)
        table = cobar_ext(name, 6, 4)
        _chart_window_agrees(state, table, 6, 4)


def test_range_exhaustion():
    state = minimal_resolution("E(0)", 4, 3)
    with pytest.raises(RangeExhausted):
        ext_dim(state, 0, 3, 0)  # needs the next homological degree
    with pytest.raises(RangeExhausted):
        ext_dims(state, 4, 3)
    with pytest.raises(RangeExhausted):
        ext_dim(state, 40, 1, 0)


def test_checkpoint_roundtrip(tmp_path):
    state = minimal_resolution("A(1)", 8, 5)
    path = str(tmp_path / "ck.txt")
    save_checkpoint(state, path)
    loaded = load_checkpoint(path)
    assert loaded.gens == state.gens
    assert loaded.maps == state.maps
    assert loaded.completed_f == state.completed_f
    p = make_algebra("A(1)")
    assert _checkpoint_body(loaded, p) == _checkpoint_body(state, p)


def test_checkpoint_rejects_tampering(tmp_path):
    state = minimal_resolution("E(1)", 6, 4)
    path = str(tmp_path / "ck.txt")
    save_checkpoint(state, path)
    body = open(path).read()
    open(path, "w").write(body.replace("w=1", "w=2", 1))
    with pytest.raises(CheckpointError):
        load_checkpoint(path)


class _Interrupt(Exception):
    pass


def test_interrupted_run_resumes_byte_identical(tmp_path):
    stem_max, f_max = 8, 6
    straight = str(tmp_path / "straight.txt")
    save_checkpoint(minimal_resolution("A(1)", stem_max, f_max), straight)

    resumed = str(tmp_path / "resumed.txt")

    def save_and_interrupt(st):
        save_checkpoint(st, resumed)
        if st.completed_f == 3:
            raise _Interrupt

    with pytest.raises(_Interrupt):
        minimal_resolution("A(1)", stem_max, f_max,
                           on_degree_complete=save_and_interrupt)
    part = load_checkpoint(resumed)
    assert part.completed_f == 3
    final = minimal_resolution("A(1)", stem_max, f_max, state=part)
    save_checkpoint(final, resumed)
    assert open(resumed).read() == open(straight).read()


def test_chart_rows_sorted_and_typed():
    state = minimal_resolution("A(1)", 8, 5)
    rows = ext_chart(state, 8, 4)
    assert rows == sorted(rows, key=lambda r: (r[0], r[1], -r[2]))
    for s, f, w, tt in rows:
        assert tt == "free" or tt == "?" or tt.startswith("torsion:")
    assert rows[0] == (0, 0, 0, "free")
