"""Weight truncation of classical Adams-Novikov charts into tri-graded
motivic charts.

A classical chart is a list of mod-2 classes at (s,f) plus differentials
d_r: (s,f) -> (s-1, f+r).  The weight-w truncation keeps the classes
with s+f >= 2w (the region on or above the diagonal line); since a
differential raises the total degree s+f by r-1, the kept region is
closed under every differential and truncation drops a differential
exactly when its source is dropped.

Running the truncated spectral sequence for each w in a range and
gluing along the evident inclusions gives the motivic chart: entries
(s,f,w) with dimensions and the rank of the tau-map
E-infinity(w) -> E-infinity(w-1).  A single odd-r differential makes
its target tau-torsion of exponent (r-1)/2; with no differentials every
class carries a full tau-tower down from w = floor((s+f)/2).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .f2linalg import BitSpan, F2Matrix, kernel_basis


class ChartError(ValueError):
    pass


@dataclass(frozen=True)
class ChartClass:
    id: str
    s: int
    f: int


@dataclass(frozen=True)
class Differential:
    r: int
    source: str
    target: str


@dataclass
class Chart:
    classes: List[ChartClass]
    differentials: List[Differential]

    def __post_init__(self):
        seen = {}
        for c in self.classes:
            if c.id in seen:
                raise ChartError(f"duplicate class id {c.id!r}")
            seen[c.id] = c
        for d in self.differentials:
            if d.r < 2:
                raise ChartError(f"differential page {d.r} < 2")
            if d.source not in seen or d.target not in seen:
                raise ChartError(
                    f"differential on unknown id {d.source!r}/{d.target!r}")
            a, b = seen[d.source], seen[d.target]
            if (b.s, b.f) != (a.s - 1, a.f + d.r):
                raise ChartError(
                    f"d{d.r} {d.source}->{d.target} violates "
                    f"(s-1, f+r) degree rule")

    def by_id(self) -> Dict[str, ChartClass]:
        return {c.id: c for c in self.classes}


def truncate(c: Chart, w: int) -> Chart:
    """Remove every class with s+f < 2w and the differentials whose
    source is removed; kept sources always have kept targets."""
    kept = [cl for cl in c.classes if cl.s + cl.f >= 2 * w]
    kept_ids = {cl.id for cl in kept}
    diffs = []
    for d in c.differentials:
        if d.source in kept_ids:
            if d.target not in kept_ids:
                raise ChartError(
                    f"truncation removed target {d.target!r} but kept "
                    f"source {d.source!r}: malformed degrees")
            diffs.append(d)
    return Chart(kept, diffs)


BiDeg = Tuple[int, int]


@dataclass
class _SSResult:
    """Final subspaces of one spectral-sequence run, over fixed per-
    bidegree id orderings: V = surviving cycles, W = boundaries."""
    ids: Dict[BiDeg, List[str]]
    cycles: Dict[BiDeg, List[int]]
    boundaries: Dict[BiDeg, List[int]]

    def dim(self, bd: BiDeg) -> int:
        sp = BitSpan()
        for v in self.boundaries.get(bd, []):
            sp.add(v)
        base = sp.dim
        for v in self.cycles.get(bd, []):
            sp.add(v)
        return sp.dim - base

    def table(self) -> Dict[BiDeg, int]:
        out = {}
        for bd in self.ids:
            d = self.dim(bd)
            if d:
                out[bd] = d
        return out


def _run(c: Chart) -> _SSResult:
    by_id = c.by_id()
    ids: Dict[BiDeg, List[str]] = {}
    for cl in sorted(c.classes, key=lambda x: x.id):
        ids.setdefault((cl.s, cl.f), []).append(cl.id)
    pos = {cid: i for bd in ids for i, cid in enumerate(ids[bd])}
    cycles = {bd: [1 << i for i in range(len(ids[bd]))] for bd in ids}
    boundaries: Dict[BiDeg, List[int]] = {bd: [] for bd in ids}

    pages: Dict[int, List[Differential]] = {}
    for d in c.differentials:
        pages.setdefault(d.r, []).append(d)

    for r in sorted(pages):
        ds = pages[r]
        srcs = {d.source for d in ds}
        tgts = {d.target for d in ds}
        clash = srcs & tgts
        if clash:
            raise ChartError(
                f"page {r}: classes both support and receive a "
                f"differential: {sorted(clash)}")
        # group by source bidegree; all ranks taken with page-start data
        by_src: Dict[BiDeg, List[Differential]] = {}
        for d in ds:
            cl = by_id[d.source]
            by_src.setdefault((cl.s, cl.f), []).append(d)
        new_cycles: Dict[BiDeg, List[int]] = {}
        boundary_adds: Dict[BiDeg, List[int]] = {}
        for sbd, group in by_src.items():
            tbd = (sbd[0] - 1, sbd[1] + r)
            dmat: Dict[int, int] = {}  # source bit -> target vector
            for d in group:
                dmat[pos[d.source]] = dmat.get(pos[d.source], 0) ^ (
                    1 << pos[d.target])

            def apply(v: int) -> int:
                out = 0
                vv = v
                while vv:
                    i = (vv & -vv).bit_length() - 1
                    out ^= dmat.get(i, 0)
                    vv &= vv - 1
                return out

            alive_t = BitSpan()
            for b in boundaries[tbd]:
                alive_t.add(b)
            for v in cycles[tbd]:
                alive_t.add(v)
            for w0 in boundaries[sbd]:
                if apply(w0):
                    raise ChartError(
                        f"page {r}: differential out of a boundary "
                        f"class at {sbd}")
            vs = cycles[sbd]
            imgs = [apply(v) for v in vs]
            for iv in imgs:
                if not alive_t.contains(iv):
                    raise ChartError(
                        f"page {r}: image of a class at {sbd} is not "
                        f"alive at {tbd}")
            # kernel of the induced map to tgt/W_tgt: combinations of
            # the source spanning set whose image falls in the span of
            # the page-start boundaries
            bnds = boundaries[tbd]
            cols = imgs + bnds
            nbits = max((c.bit_length() for c in cols), default=0)
            mat = F2Matrix.from_bitrows(
                [sum(((col >> row) & 1) << j
                     for j, col in enumerate(cols))
                 for row in range(nbits)], len(cols))
            kern = []
            for kv in kernel_basis(mat):
                acc = 0
                for j in range(len(vs)):
                    if (kv.bits >> j) & 1:
                        acc ^= vs[j]
                kern.append(acc)
            new_cycles[sbd] = kern
            boundary_adds.setdefault(tbd, []).extend(imgs)
        for sbd, kern in new_cycles.items():
            cycles[sbd] = kern
        for tbd, imgs in boundary_adds.items():
            boundaries[tbd].extend(imgs)
            # boundaries are cycles: keep V containing W
            cycles[tbd] = cycles[tbd] + imgs
    return _SSResult(ids, cycles, boundaries)


def run_ss(c: Chart) -> Dict[BiDeg, int]:
    """Mod-2 E-infinity dimensions per (s,f)."""
    return _run(c).table()


@dataclass
class MotivicChart:
    w_min: int
    w_max: int
    entries: Dict[Tuple[int, int, int], int] = field(default_factory=dict)
    tau_ranks: Dict[Tuple[int, int, int], int] = field(default_factory=dict)

    def dim(self, s: int, f: int, w: int) -> int:
        return self.entries.get((s, f, w), 0)

    def tau_rank(self, s: int, f: int, w: int) -> int:
        return self.tau_ranks.get((s, f, w), 0)

    def tsv(self) -> str:
        lines = ["s\tf\tw\tdim\ttau_rank"]
        for (s, f, w) in sorted(self.entries):
            lines.append(f"{s}\t{f}\t{w}\t{self.entries[(s, f, w)]}"
                         f"\t{self.tau_ranks.get((s, f, w), 0)}")
        return "\n".join(lines) + "\n"


def motivic_assemble(c: Chart, w_min: int, w_max: int) -> MotivicChart:
    """Per-weight truncated runs glued along the evident inclusions.

    Requires w_min at or below the stabilization point
    min over classes of floor((s+f)/2), so the bottom slice equals the
    untruncated run.
    """
    if c.classes:
        stab = min((cl.s + cl.f) // 2 for cl in c.classes)
        if w_min > stab:
            raise ChartError(
                f"w_min {w_min} above stabilization weight {stab}")
    if w_min > w_max:
        raise ChartError("w_min > w_max")
    runs: Dict[int, _SSResult] = {}
    for w in range(w_min - 1, w_max + 1):
        runs[w] = _run(truncate(c, w))
    out = MotivicChart(w_min, w_max)
    for w in range(w_min, w_max + 1):
        res, below = runs[w], runs[w - 1]
        for bd in res.ids:
            d = res.dim(bd)
            if not d:
                continue
            s, f = bd
            out.entries[(s, f, w)] = d
            # rank of E-inf(w) -> E-inf(w-1): image of surviving cycles
            # modulo the lower run's boundaries.  Id orderings can
            # differ between runs; translate through class ids.
            lower_pos = {cid: i for i, cid in
                         enumerate(below.ids.get(bd, []))}
            sp = BitSpan()
            for v in below.boundaries.get(bd, []):
                sp.add(v)
            base = sp.dim
            upper_ids = res.ids[bd]
            for v in res.cycles[bd]:
                tv = 0
                vv = v
                while vv:
                    i = (vv & -vv).bit_length() - 1
                    tv |= 1 << lower_pos[upper_ids[i]]
                    vv &= vv - 1
                sp.add(tv)
            out.tau_ranks[(s, f, w)] = sp.dim - base
    return out


def tau_invert(m: MotivicChart, c: Chart) -> Dict[BiDeg, int]:
    """The stabilized (w = w_min) slice; equals run_ss of the original
    chart when w_min is at stabilization."""
    out: Dict[BiDeg, int] = {}
    for (s, f, w), d in m.entries.items():
        if w == m.w_min and d:
            out[(s, f)] = d
    return out


# ---------------------------------------------------------------------------
# Text formats


def parse_chart(text: str) -> Chart:
    classes: List[ChartClass] = []
    diffs: List[Differential] = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "class" and len(parts) == 4:
                kv = dict(x.split("=", 1) for x in parts[2:])
                classes.append(ChartClass(parts[1], int(kv["s"]),
                                          int(kv["f"])))
            elif parts[0] == "d" and len(parts) == 4:
                diffs.append(Differential(int(parts[1]), parts[2],
                                          parts[3]))
            else:
                raise ValueError
        except (ValueError, KeyError):
            raise ChartError(f"line {ln}: cannot parse {raw!r}")
    return Chart(classes, diffs)


def format_chart(c: Chart) -> str:
    lines = [f"class {cl.id} s={cl.s} f={cl.f}" for cl in c.classes]
    lines += [f"d {d.r} {d.source} {d.target}" for d in c.differentials]
    return "\n".join(lines) + ("\n" if lines else "")
