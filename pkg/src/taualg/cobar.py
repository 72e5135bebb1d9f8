"""Reduced cobar complex of a finite quotient Hopf algebra: the
independent Ext oracle.

The reduced cobar complex of the coalgebra B has Omega^f = (B+)^{(x)f},
B+ the positive-stem part, free over F2[tau] on f-tuples of tau-free
monomials.  The differential inserts the reduced coproduct at each slot;
its cohomology is Cotor_B(F2[tau], F2[tau]), the same trigraded groups
the minimal resolution over the dual algebra computes, reached by a
completely different route.

Chart weights are homological: a tuple T of total weight W carries
tau^(W-w) in the weight-w slice, so the slice basis at (t,f,w) is the
tuples with W >= w.  The differential never lowers tuple weight, so all
slice ranks of d_f come from one incremental elimination that inserts
rows in descending source weight.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .algebra import Presentation, _tau_free_monomials, make_algebra
from .dual import mono_degree
from .f2linalg import BitSpan
from .hopf import coproduct_monomial

ExpVec = Tuple[int, ...]
Word = Tuple[ExpVec, ...]


class MemoryGuardrail(RuntimeError):
    """The requested range needs a cobar basis above the configured cap."""


@lru_cache(maxsize=None)
def _reduced_coproduct(p: Presentation, exps: ExpVec):
    """Terms (e, left, right) of the reduced coproduct, both factors of
    positive stem, coefficient tau^e."""
    zero = (0,) * len(exps)
    out = []
    for e, le, re_ in coproduct_monomial((0, exps), p):
        if le != zero and re_ != zero:
            out.append((e, le, re_))
    return tuple(out)


@lru_cache(maxsize=None)
def _stem_monomials(p: Presentation, s: int):
    """Positive-stem tau-free monomials with weights, for s >= 1."""
    return tuple((m, mono_degree(p, m).weight)
                 for m in _tau_free_monomials(p, s))


def _count_words(p: Presentation, t: int, f: int, top: int) -> int:
    @lru_cache(maxsize=None)
    def cnt(tt: int, ff: int) -> int:
        if ff == 0:
            return 1 if tt == 0 else 0
        return sum(len(_stem_monomials(p, s)) * cnt(tt - s, ff - 1)
                   for s in range(1, min(tt, top) + 1))
    return cnt(t, f)


def _words(p: Presentation, t: int, f: int, top: int) -> List[Tuple[Word, int]]:
    """All f-tuples of positive-stem monomials with stems summing to t,
    paired with total weight."""
    if f == 0:
        return [((), 0)] if t == 0 else []
    out = []
    for s in range(1, min(t, top) + 1):
        monos = _stem_monomials(p, s)
        if not monos:
            continue
        for rest, wr in _words(p, t - s, f - 1, top):
            for m, wm in monos:
                out.append(((m,) + rest, wm + wr))
    return out


@dataclass
class CobarTable:
    """Per-tri-degree Ext dimensions from the cobar complex.

    dims holds nonzero entries over each (t,f)'s natural weight window;
    dim() extends to all weights (constant below the window, zero above).
    """
    algebra: str
    stem_max: int
    f_max: int
    dims: Dict[Tuple[int, int, int], int] = field(default_factory=dict)
    windows: Dict[Tuple[int, int], Tuple[int, int]] = field(
        default_factory=dict)

    def dim(self, s: int, f: int, w: int) -> int:
        key = (s, f)
        if key not in self.windows:
            return 0
        lo, hi = self.windows[key]
        if w > hi:
            return 0
        return self.dims.get((s, f, max(w, lo)), 0)


def _slice_ranks(p: Presentation, sources: List[Tuple[Word, int]],
                 target_index: Dict[Word, int]) -> Dict[int, int]:
    """Insert d(row) for each source in descending weight; return the
    elimination rank at each source-weight boundary (rank of every
    weight-(>= w) slice of the differential)."""
    span = BitSpan()
    ranks: Dict[int, int] = {}
    prev_w: Optional[int] = None
    for word, wt in sources:
        if prev_w is not None and wt != prev_w:
            ranks[prev_w] = span.dim
        prev_w = wt
        bits = 0
        for i in range(len(word)):
            for e, le, re_ in _reduced_coproduct(p, word[i]):
                tgt = word[:i] + (le, re_) + word[i + 1:]
                j = target_index.get(tgt)
                if j is None:
                    j = len(target_index)
                    target_index[tgt] = j
                bits ^= 1 << j
        span.add(bits)
    if prev_w is not None:
        ranks[prev_w] = span.dim
    return ranks


def _rank_at(ranks: Dict[int, int], weights_desc: List[int], w: int) -> int:
    """Rank of the weight-(>= w) slice: rank at the smallest recorded
    source weight >= w."""
    best = 0
    for wt in weights_desc:
        if wt >= w:
            best = ranks[wt]
        else:
            break
    return best


def cobar_ext(algebra: str, stem_max: int, f_max: int,
              basis_cap: int = 200000) -> CobarTable:
    """Cotor dimensions per (s, f, w) for s <= stem_max, f <= f_max.

    Raises MemoryGuardrail when any required chain-group basis (through
    homological degree f_max + 1 at internal stem s + f) would exceed
    basis_cap, reporting the largest fully certified stem.
    """
    p = make_algebra(algebra)
    top = 0
    for i, g in enumerate(p.generators):
        cap = p.cap(i)
        if cap is None:
            raise ValueError(f"{p.name} is not finite")
        top += (cap - 1) * g.degree.stem

    t_needed = [(s + f, f) for s in range(stem_max + 1)
                for f in range(f_max + 2)]
    worst = max((_count_words(p, t, f, top) for t, f in t_needed), default=0)
    if worst > basis_cap:
        ok_stem = -1
        for s in range(stem_max + 1):
            if all(_count_words(p, s + f, f, top) <= basis_cap
                   for f in range(f_max + 2)):
                ok_stem = s
            else:
                break
        raise MemoryGuardrail(
            f"cobar basis {worst} exceeds cap {basis_cap}; "
            f"largest fully certified stem is {ok_stem}")

    table = CobarTable(p.name, stem_max, f_max)
    for t in range(0, stem_max + f_max + 1):
        per_f: Dict[int, List[Tuple[Word, int]]] = {}
        for f in range(0, f_max + 1):
            per_f[f] = sorted(_words(p, t, f, top),
                              key=lambda x: (-x[1], x[0]))
        ranks: Dict[int, Dict[int, int]] = {}
        wdesc: Dict[int, List[int]] = {}
        for f in range(0, f_max + 1):
            sources = per_f.get(f, [])
            if not sources:
                ranks[f] = {}
                wdesc[f] = []
                continue
            ranks[f] = _slice_ranks(p, sources, {})
            wdesc[f] = sorted(ranks[f], reverse=True)
        for f in range(0, f_max + 1):
            s = t - f
            if s < 0 or s > stem_max:
                continue
            here = per_f.get(f, [])
            if not here and not (t == 0 and f == 0):
                continue
            ws = [wt for _, wt in here]
            lo = (min(ws) - 1) if ws else 0
            hi = max(ws) if ws else 0
            table.windows[(s, f)] = (lo, hi)
            for w in range(lo, hi + 1):
                cnt = sum(1 for wt in ws if wt >= w)
                d_out = _rank_at(ranks[f], wdesc[f], w)
                d_in = (_rank_at(ranks[f - 1], wdesc[f - 1], w)
                        if f >= 1 else 0)
                dim = cnt - d_out - d_in
                if dim:
                    table.dims[(s, f, w)] = dim
    return table


def cobar_window(algebra: str, stem_max: int, f_max: int,
                 basis_cap: int = 200000) -> Tuple[CobarTable, int]:
    """cobar_ext over the largest stem range fitting under the cap.

    Returns (table, certified_stem_max); certified_stem_max may be less
    than stem_max when the guardrail bites.
    """
    p = make_algebra(algebra)
    top = 0
    for i, g in enumerate(p.generators):
        top += (p.cap(i) - 1) * g.degree.stem
    ok = -1
    for s in range(stem_max + 1):
        if all(_count_words(p, s + f, f, top) <= basis_cap
               for f in range(f_max + 2)):
            ok = s
        else:
            break
    if ok < 0:
        raise MemoryGuardrail(
            f"no stem fits under cobar basis cap {basis_cap}")
    return cobar_ext(algebra, ok, f_max, basis_cap), ok
