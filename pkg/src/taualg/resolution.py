"""Minimal free resolutions of F2[tau] over finite motivic Steenrod
algebras, with tri-graded Ext charts.

The ground ring for a named quotient Hopf algebra B is its F2[tau]-dual
B* (a finite Steenrod algebra): free on the functionals dual to the
tau-free monomials of B, with the product transposed from the
comultiplication.  Ext over B* is what the cobar complex of B computes,
so the two pipelines are independent checks of each other.

Weights here are the cohomological labels of the dual side, where
multiplication by tau raises the label by 1.  Chart weights follow the
homological convention (tau lowers weight): the weight-w slice of the
Hom complex is spanned by generator duals G* with w_G >= w, standing for
tau^(w_G - w) G*.

The resolution is built degreewise.  For each homological degree the
kernel of the previous map is computed per internal bidegree (t,w) with
bit-packed F2 linear algebra, and new free-module generators are added
exactly where the kernel is not yet covered by left multiples (tau
powers included) of the generators already chosen.  Processing order is
homological degree, then internal stem ascending, then weight ascending;
generator choice takes the first uncovered kernel vectors in the
deterministic slice-basis order, so charts reproduce bit-for-bit.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

from .algebra import (Monomial, Presentation, _tau_free_monomials,
                      make_algebra, monomial_sort_key)
from .dual import DualElement, dual_product, mono_degree
from .f2linalg import BitSpan, F2Matrix, F2Vector, kernel_basis
from .f2linalg import rank as f2rank
from .f2linalg import solve

CHECKPOINT_VERSION = 1


class RangeExhausted(RuntimeError):
    pass


class CheckpointError(RuntimeError):
    pass


@dataclass(frozen=True)
class GenInfo:
    """One free-module generator: internal stem t, weight w."""
    t: int
    w: int


# An element of the dual algebra B* is a set of (tau_exponent, exps)
# pairs, exps the exponent vector of a tau-free B-monomial m, the pair
# standing for tau^k * (m dual).  A map column sends a generator of F_f
# to {target generator index -> B* element}.
DElement = FrozenSet[Monomial]
MapColumn = Dict[int, DElement]


@dataclass
class ResolutionState:
    algebra: str  # canonical name, e.g. "A(2)"
    t_max: int
    f_max: int
    gens: List[List[GenInfo]] = field(default_factory=list)
    maps: List[List[MapColumn]] = field(default_factory=list)
    completed_f: int = 0


class DualGroundRing:
    """The dual B* of a finite quotient presentation, computation-ready."""

    def __init__(self, p: Presentation):
        self.p = p
        top = 0
        for i, g in enumerate(p.generators):
            cap = p.cap(i)
            if cap is None:
                raise ValueError(
                    f"{p.name} is not finite; cannot serve as ground ring")
            top += (cap - 1) * g.degree.stem
        self.top_stem = top
        # by_stem[s] = [(exps, weight)] for the dual basis functionals
        self.by_stem: Dict[int, List[Tuple[Tuple[int, ...], int]]] = {}
        for s in range(top + 1):
            self.by_stem[s] = [
                (m, mono_degree(p, m).weight)
                for m in _tau_free_monomials(p, s)]
        self.weight_range: Dict[int, Tuple[int, int]] = {}
        for s, v in self.by_stem.items():
            if v:
                ws = [w for _, w in v]
                self.weight_range[s] = (min(ws), max(ws))
        self._pair_cache: Dict[Tuple, DElement] = {}

    def monomials(self, stem: int):
        return self.by_stem.get(stem, [])

    def _pair(self, a: Tuple[int, ...], b: Tuple[int, ...]) -> DElement:
        """Product of two dual basis functionals, tau powers explicit."""
        key = (a, b)
        hit = self._pair_cache.get(key)
        if hit is not None:
            return hit
        da, db = mono_degree(self.p, a), mono_degree(self.p, b)
        fa = DualElement(da.stem, da.weight, frozenset({a}))
        fb = DualElement(db.stem, db.weight, frozenset({b}))
        prod = dual_product(fa, fb, self.p)
        out = frozenset(
            (prod.weight - mono_degree(self.p, x).weight, x)
            for x in prod.support)
        self._pair_cache[key] = out
        return out

    def mult_mono(self, a: Monomial, b: Monomial) -> DElement:
        """(tau^j a-dual) * (tau^k b-dual); order matters, B* need not be
        commutative."""
        ja, ea = a
        jb, eb = b
        return frozenset((ja + jb + k, x) for k, x in self._pair(ea, eb))


def _slice_basis(ring: DualGroundRing, gens: List[GenInfo], t: int, w: int):
    """Basis of a free module's (t,w) slice: (gen index, tau^k m-dual)."""
    out = []
    for i, g in enumerate(gens):
        for m, wm in ring.monomials(t - g.t):
            k = (w - g.w) - wm
            if k >= 0:
                out.append((i, (k, m)))
    out.sort(key=lambda item: (item[0], monomial_sort_key(item[1])))
    return out


def _elem_to_bits(elem: Dict[int, DElement], index: Dict) -> int:
    bits = 0
    for i, belt in elem.items():
        for mono in belt:
            bits |= 1 << index[(i, mono)]
    return bits


def _bits_to_elem(bits: int, basis) -> Dict[int, DElement]:
    elem: Dict[int, set] = {}
    while bits:
        j = (bits & -bits).bit_length() - 1
        i, mono = basis[j]
        elem.setdefault(i, set()).add(mono)
        bits &= bits - 1
    return {i: frozenset(v) for i, v in elem.items()}


def _apply_map(ring: DualGroundRing, col: MapColumn, bmono: Monomial):
    """Left multiple of a stored map column: d(b*g) = b*d(g)."""
    out: Dict[int, set] = {}
    for tgt, belt in col.items():
        acc = out.setdefault(tgt, set())
        for mono in belt:
            for r in ring.mult_mono(bmono, mono):
                if r in acc:
                    acc.discard(r)
                else:
                    acc.add(r)
    return {i: frozenset(v) for i, v in out.items() if v}


def minimal_resolution(algebra: str, stem_max: int, f_max: int,
                       state: Optional[ResolutionState] = None,
                       on_degree_complete=None) -> ResolutionState:
    """Resolve F2[tau] over the dual of the named finite algebra.

    stem_max bounds the chart stem s = t - f; internal stems run through
    t_max = stem_max + f_max so every chart bidegree with s <= stem_max,
    f <= f_max is certified.  A state restored from a checkpoint is
    extended in place and the continuation is byte-identical to an
    uninterrupted run.
    """
    p = make_algebra(algebra)
    ring = DualGroundRing(p)
    t_max = stem_max + f_max
    if state is None:
        state = ResolutionState(p.name, t_max, f_max,
                                gens=[[GenInfo(0, 0)]], maps=[[]],
                                completed_f=0)
    if state.t_max != t_max or state.f_max != f_max:
        raise CheckpointError("resolution state bounds disagree")
    if state.algebra != p.name:
        raise CheckpointError("resolution state algebra disagrees")

    zero_vec = (0,) * len(p.generators)
    for f in range(state.completed_f + 1, f_max + 1):
        below = state.gens[f - 1]
        below2 = state.gens[f - 2] if f >= 2 else []
        dmap = state.maps[f - 1]  # d_{f-1}: F_{f-1} -> F_{f-2}
        new_gens: List[GenInfo] = []
        new_cols: List[MapColumn] = []
        for t in range(1, t_max + 1):
            bounds = [(g.w + ring.weight_range[t - g.t][0],
                       g.w + ring.weight_range[t - g.t][1])
                      for g in below if t - g.t in ring.weight_range]
            if not bounds:
                continue
            w_lo = min(b[0] for b in bounds)
            w_hi = max(b[1] for b in bounds)
            for w in range(w_lo, w_hi + 1):
                dom = _slice_basis(ring, below, t, w)
                if not dom:
                    continue
                dom_index = {item: j for j, item in enumerate(dom)}
                if f == 1:
                    # kernel of the augmentation: everything at t >= 1
                    kern = [1 << j for j in range(len(dom))]
                else:
                    tgt = _slice_basis(ring, below2, t, w)
                    tgt_index = {item: j for j, item in enumerate(tgt)}
                    rows = [0] * len(tgt)
                    for j, (i, bmono) in enumerate(dom):
                        img = _apply_map(ring, dmap[i], bmono)
                        for gi, belt in img.items():
                            for mono in belt:
                                rows[tgt_index[(gi, mono)]] ^= 1 << j
                    mat = F2Matrix.from_bitrows(rows, len(dom))
                    kern = [v.bits for v in kernel_basis(mat)]
                if not kern:
                    continue
                covered = BitSpan()
                for g, col in zip(new_gens, new_cols):
                    ds, dw = t - g.t, w - g.w
                    for m, wm in ring.monomials(ds):
                        k = dw - wm
                        if k < 0:
                            continue
                        img = _apply_map(ring, col, (k, m))
                        covered.add(_elem_to_bits(img, dom_index))
                for v in kern:
                    if covered.add(v):
                        elem = _bits_to_elem(v, dom)
                        for belt in elem.values():
                            assert (0, zero_vec) not in belt, \
                                "unit entry in minimal resolution"
                        new_gens.append(GenInfo(t, w))
                        new_cols.append(elem)
        state.gens.append(new_gens)
        state.maps.append(new_cols)
        state.completed_f = f
        if on_degree_complete is not None:
            on_degree_complete(state)
    return state


# ---------------------------------------------------------------------------
# Ext dimension table from the Hom complex


def _tau_entry(state: ResolutionState, f: int, src: int, tgt: int) -> bool:
    """Whether d_f(gen src of F_f) has a pure tau-power coefficient at
    gen tgt of F_{f-1} (possible only at equal internal stems)."""
    col = state.maps[f][src]
    belt = col.get(tgt)
    if not belt:
        return False
    g_src = state.gens[f][src]
    g_tgt = state.gens[f - 1][tgt]
    if g_src.t != g_tgt.t:
        return False
    k = g_src.w - g_tgt.w
    if k < 0:
        return False
    for tau, exps in belt:
        if tau == k and not any(exps):
            return True
    return False


def _hom_slice_matrix(state: ResolutionState, t: int, f: int, w: int):
    """Matrix of the Hom-complex differential delta_f at chart-weight
    slice w: rows = F_{f+1} generator duals, cols = F_f generator duals,
    both restricted to internal stem t and generator weight >= w."""
    if f + 1 > state.completed_f:
        return None
    src = [i for i, g in enumerate(state.gens[f])
           if g.t == t and g.w >= w]
    tgt = [i for i, g in enumerate(state.gens[f + 1])
           if g.t == t and g.w >= w]
    rows = [0] * len(tgt)
    for cj, i in enumerate(src):
        for rj, j in enumerate(tgt):
            if _tau_entry(state, f + 1, j, i):
                rows[rj] |= 1 << cj
    return F2Matrix.from_bitrows(rows, len(src))


def _stem_weights(state: ResolutionState, t: int) -> List[int]:
    return [g.w for fl in range(state.completed_f + 1)
            for g in state.gens[fl] if g.t == t]


def ext_dim(state: ResolutionState, s: int, f: int, w: int) -> int:
    """F2-dimension of Ext at one tri-degree (s, f, w).

    Certified only for f <= completed_f - 1: the Hom-complex
    differential out of degree f needs the next map of the resolution.
    """
    if f + 1 > state.completed_f or f < 0 or s < 0:
        raise RangeExhausted(f"(s={s}, f={f}) outside certified range; "
                             f"resolve through f = {f + 1}")
    t = s + f
    if t > state.t_max:
        raise RangeExhausted(f"stem {s} outside certified range")
    ws = _stem_weights(state, t)
    if not ws:
        return 0
    w = max(w, min(ws) - 1)  # dimensions are constant below all gens
    d_out = _hom_slice_matrix(state, t, f, w)
    n = sum(1 for g in state.gens[f] if g.t == t and g.w >= w)
    dim_ker = n if d_out is None else n - f2rank(d_out)
    dim_im = 0
    if f >= 1:
        d_in = _hom_slice_matrix(state, t, f - 1, w)
        dim_im = f2rank(d_in) if d_in is not None else 0
    return dim_ker - dim_im


def ext_dims(state: ResolutionState, stem_max: int, f_max: int
             ) -> Dict[Tuple[int, int, int], int]:
    """(s, f, w) -> F2-dimension of Ext, nonzero entries only, with w
    running over [min gen weight at the stem - 1, max gen weight];
    dimensions are constant below that window and zero above it."""
    if f_max + 1 > state.completed_f:
        raise RangeExhausted(
            f"Ext dimensions certified through f = {state.completed_f - 1}")
    out: Dict[Tuple[int, int, int], int] = {}
    for f in range(f_max + 1):
        for t in sorted({g.t for g in state.gens[f]}):
            s = t - f
            if s < 0 or s > stem_max:
                continue
            ws = _stem_weights(state, t)
            for w in range(min(ws) - 1, max(ws) + 1):
                d = ext_dim(state, s, f, w)
                if d:
                    out[(s, f, w)] = d
    return out


def tau_type(state: ResolutionState, f: int, gi: int) -> str:
    """Best-effort tau-module type of the Ext class of one generator.

    'free': the generator dual is a cocycle and no tau power of it is a
    coboundary in the probed range.  'torsion:k': tau^k kills it, lower
    powers do not.  '?': the dual is not a cocycle (a higher generator's
    differential has a pure tau entry on it), so the generator does not
    name a class by itself.
    """
    g = state.gens[f][gi]
    if f + 1 <= state.completed_f:
        for j in range(len(state.gens[f + 1])):
            if _tau_entry(state, f + 1, j, gi):
                return "?"
    if f == 0:
        return "free"
    ws = _stem_weights(state, g.t)
    for k in range(1, g.w - min(ws) + 2):
        w = g.w - k
        src = [i for i, gg in enumerate(state.gens[f - 1])
               if gg.t == g.t and gg.w >= w]
        tgt = [i for i, gg in enumerate(state.gens[f])
               if gg.t == g.t and gg.w >= w]
        rows = [0] * len(tgt)
        for cj, i in enumerate(src):
            for rj, j in enumerate(tgt):
                if _tau_entry(state, f, j, i):
                    rows[rj] |= 1 << cj
        mat = F2Matrix.from_bitrows(rows, len(src))
        b = 1 << tgt.index(gi)
        if solve(mat, F2Vector(len(tgt), b)) is not None:
            return f"torsion:{k}"
    return "free"


def ext_chart(state: ResolutionState, stem_max: int, f_max: int):
    """Chart rows (s, f, w, tau_type), one per resolution generator.

    Requires the resolution one degree beyond f_max so every tau_type
    entry has seen the next differential.
    """
    if f_max + 1 > state.completed_f:
        raise RangeExhausted(
            f"charts certified through f = {state.completed_f - 1}")
    rows = []
    for f in range(f_max + 1):
        for gi, g in enumerate(state.gens[f]):
            s = g.t - f
            if 0 <= s <= stem_max:
                rows.append((s, f, g.w, tau_type(state, f, gi)))
    rows.sort(key=lambda r: (r[0], r[1], -r[2]))
    return rows


# ---------------------------------------------------------------------------
# Checkpoints


def _format_delement(belt: DElement, p: Presentation) -> str:
    """Text form tau^k*dual(m) joined by +, in monomial order."""
    parts = []
    for tau, exps in sorted(belt, key=monomial_sort_key):
        core = "*".join(
            (g.name if e == 1 else f"{g.name}^{e}")
            for e, g in zip(exps, p.generators) if e) or "1"
        pre = "" if tau == 0 else ("t*" if tau == 1 else f"t^{tau}*")
        parts.append(f"{pre}dual({core})")
    return "+".join(parts)


def _parse_delement(text: str, p: Presentation) -> DElement:
    out = set()
    for part in text.split("+"):
        tau = 0
        if part.startswith("t*"):
            tau, part = 1, part[2:]
        elif part.startswith("t^"):
            head, part = part.split("*", 1)
            tau = int(head[2:])
        if not (part.startswith("dual(") and part.endswith(")")):
            raise CheckpointError(f"bad map entry {text!r}")
        core = part[5:-1]
        exps = [0] * len(p.generators)
        if core != "1":
            for fac in core.split("*"):
                if "^" in fac:
                    name, e = fac.split("^")
                    exps[p.index[name]] += int(e)
                else:
                    exps[p.index[fac]] += 1
        out.add((tau, tuple(exps)))
    return frozenset(out)


def _checkpoint_body(state: ResolutionState, p: Presentation) -> List[str]:
    lines = []
    for f in range(1, state.completed_f + 1):
        lines.append(f"map f={f}")
        for gi, g in enumerate(state.gens[f]):
            lines.append(f"gen {gi} s={g.t} w={g.w}")
        for gi, col in enumerate(state.maps[f]):
            for tgt in sorted(col):
                lines.append(
                    f"entry {tgt} {gi} {_format_delement(col[tgt], p)}")
    return lines


def save_checkpoint(state: ResolutionState, path: str) -> None:
    p = make_algebra(state.algebra)
    body = _checkpoint_body(state, p)
    digest = hashlib.sha256("\n".join(body).encode()).hexdigest()
    header = (f"taualg-resolution v{CHECKPOINT_VERSION} "
              f"algebra={state.algebra} t_max={state.t_max} "
              f"f_max={state.f_max} completed_f={state.completed_f} "
              f"hash={digest}")
    with open(path, "w") as fh:
        fh.write(header + "\n")
        for line in body:
            fh.write(line + "\n")


def load_checkpoint(path: str) -> ResolutionState:
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines or not lines[0].startswith(
            f"taualg-resolution v{CHECKPOINT_VERSION} "):
        raise CheckpointError("not a recognizable checkpoint")
    head = dict(kv.split("=", 1) for kv in lines[0].split()[2:])
    body = lines[1:]
    digest = hashlib.sha256("\n".join(body).encode()).hexdigest()
    if digest != head["hash"]:
        raise CheckpointError("checkpoint content hash mismatch")
    algebra = head["algebra"]
    p = make_algebra(algebra)
    state = ResolutionState(algebra, int(head["t_max"]), int(head["f_max"]),
                            gens=[[GenInfo(0, 0)]], maps=[[]],
                            completed_f=int(head["completed_f"]))
    cur_gens: List[GenInfo] = []
    cur_cols: List[MapColumn] = []
    started = False
    for line in body:
        parts = line.split()
        if parts[0] == "map":
            if started:
                state.gens.append(cur_gens)
                state.maps.append(cur_cols)
            started = True
            cur_gens, cur_cols = [], []
        elif parts[0] == "gen":
            cur_gens.append(GenInfo(int(parts[2][2:]), int(parts[3][2:])))
            cur_cols.append({})
        elif parts[0] == "entry":
            tgt, src = int(parts[1]), int(parts[2])
            cur_cols[src][tgt] = _parse_delement(parts[3], p)
        else:
            raise CheckpointError(f"bad checkpoint line: {line}")
    if started:
        state.gens.append(cur_gens)
        state.maps.append(cur_cols)
    if len(state.gens) != state.completed_f + 1:
        raise CheckpointError("checkpoint truncated")
    return state
