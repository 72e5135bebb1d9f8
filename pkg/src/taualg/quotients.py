"""Quotient modules A//B and the cofiber-ladder dimension verification.

A//B is computed by exact bigraded Poincare division of the tau-free rank
table of A by that of B; exactness with a nonnegative quotient witnesses
freeness of A over B in the computed range.  The ladder checks are the
short-exact-sequence dimension identities

    dim A//B'(s,w) = dim A//B''(s,w) + dim A//B''(s - ds, w - dw)

for the three steps of the modular-forms ladder (shifts (6,3), (2,1),
(4,2) with connecting operations P(2,1), Sq2, Sq4) and the three steps of
the connective-K-theory variant (shifts (1,0), (3,1), (2,1) with Sq1, Q1,
Sq2), plus a lowest-degree nonvanishing spot check of each connecting
operation in the target quotient.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .algebra import (BiDegree, Presentation, make_algebra, tau_free_table,
                      _tau_free_monomials)
from .dual import (DualElement, GeneratedSubalgebra, dual_product,
                   mono_degree, named_generator)
from .f2linalg import BitSpan


class DivisionError(ArithmeticError):
    """Poincare division failed: would falsify freeness in range."""


Table = Dict[BiDegree, int]


@dataclass
class QuotientModule:
    name: str
    stem_max: int
    tau_free: Table  # (s,w) -> rank of the free F2[tau]-module

    def dim(self, d: BiDegree) -> int:
        """Full F2-dimension at (s,w): tau-free classes of weight >= w."""
        return sum(c for k, c in self.tau_free.items()
                   if k.stem == d.stem and k.weight >= d.weight)


def poincare_divide(num: Table, den: Table, stem_max: int) -> Table:
    """Solve num = den * q as bigraded generating tables; exact and
    nonnegative or DivisionError."""
    q: Table = {}
    den_pos = {d: c for d, c in den.items() if d.stem > 0}
    for s in range(stem_max + 1):
        # candidate weights at this stem
        weights = {d.weight for d in num if d.stem == s}
        for d1, c1 in den_pos.items():
            for dq in [k for k in q if k.stem == s - d1.stem]:
                weights.add(d1.weight + dq.weight)
        for w in sorted(weights):
            acc = num.get(BiDegree(s, w), 0)
            for d1, c1 in den_pos.items():
                acc -= c1 * q.get(BiDegree(s - d1.stem, w - d1.weight), 0)
            if acc < 0:
                raise DivisionError(
                    f"negative quotient coefficient at ({s},{w})")
            if acc:
                q[BiDegree(s, w)] = acc
    # verify the full convolution in range
    for s in range(stem_max + 1):
        ws = ({d.weight for d in num if d.stem == s}
              | {dq.weight + d1.weight for dq in q for d1 in den
                 if dq.stem + d1.stem == s})
        for w in ws:
            conv = sum(c1 * q.get(BiDegree(s - d1.stem, w - d1.weight), 0)
                       for d1, c1 in den.items())
            if conv != num.get(BiDegree(s, w), 0):
                raise DivisionError(f"non-exact division at ({s},{w})")
    return q


def ambient(stem_max: int) -> Presentation:
    return make_algebra("A", stem_max=stem_max)


def quotient_dims(b: Presentation, stem_max: int) -> QuotientModule:
    """The tau-free rank table of A//B via Poincare division."""
    a = ambient(stem_max)
    num = tau_free_table(a, stem_max)
    den = tau_free_table(b, min(stem_max, _top_stem(b)))
    q = poincare_divide(num, den, stem_max)
    return QuotientModule(f"A//{b.name}", stem_max, q)


def _top_stem(b: Presentation) -> int:
    """Largest stem of a finite presentation's tau-free basis."""
    top = 0
    for i, g in enumerate(b.generators):
        cap = b.cap(i)
        if cap is None:
            return 10 ** 9  # infinite presentation: no intrinsic top
        top += (cap - 1) * g.degree.stem
    return top


def trivial_subalgebra() -> Presentation:
    """B = F2[tau]: A//B is A itself."""
    return Presentation("1", (), ())


def motivic_shift(n: int) -> BiDegree:
    """Classical suspension degree to motivic bidegree: 2k -> (2k,k),
    2k+1 -> (2k+1,k)."""
    return BiDegree(n, n // 2)


@dataclass(frozen=True)
class LadderStep:
    source: str  # name of B' with A//B' the bigger quotient
    target: str  # name of B''
    shift: BiDegree
    operator: str  # connecting operation name


MMF_LADDER = (
    LadderStep("E(2)", "F", BiDegree(6, 3), "P(2,1)"),
    LadderStep("F", "G", BiDegree(2, 1), "Sq2"),
    LadderStep("G", "A(2)", BiDegree(4, 2), "Sq4"),
)

KO_LADDER = (
    LadderStep("1", "E(0)", BiDegree(1, 0), "Sq1"),
    LadderStep("E(0)", "E(1)", BiDegree(3, 1), "Q1"),
    LadderStep("E(1)", "A(1)", BiDegree(2, 1), "Sq2"),
)


def _make(name: str) -> Presentation:
    return trivial_subalgebra() if name == "1" else make_algebra(name)


@dataclass
class LadderReport:
    step: LadderStep
    stem_max: int
    rows: List[Tuple[int, int, int, int, str]]  # (s, w, lhs, rhs, status)
    connecting_nonzero: bool

    @property
    def ok(self) -> bool:
        return (self.connecting_nonzero
                and all(r[4] == "ok" for r in self.rows))

    def tsv(self) -> str:
        lines = ["s\tw\tlhs\trhs\tstatus"]
        for r in self.rows:
            lines.append("\t".join(map(str, r)))
        return "\n".join(lines) + "\n"


def connecting_nonzero(step: LadderStep, stem_max: int) -> bool:
    """Spot check: the injection multiplies by the connecting operation,
    so in the lowest degree its image is the operation's own coset in
    A//B'; verify the operation is not in the right ideal A*(B'+)."""
    a = ambient(max(stem_max, 2 * step.shift.stem + 4))
    op = named_generator(step.operator, a)
    sub = GeneratedSubalgebra(
        a, _subalgebra_generators(step.source, a), op.stem)
    # span of x * q at deg(op), q running over positive-stem subalgebra
    # basis elements, x over the dual monomial basis of A
    monos = _tau_free_monomials(a, op.stem)
    idx = {m: i for i, m in enumerate(monos)}
    span = BitSpan()
    for s_q in range(1, op.stem + 1):
        for bits_q, w_q in sub.elements[s_q]:
            q = sub._from_bits(s_q, w_q, bits_q)
            sx = op.stem - s_q
            for m in _tau_free_monomials(a, sx):
                dm = mono_degree(a, m)
                if dm.weight > op.weight - q.weight:
                    continue
                x = DualElement(dm.stem, op.weight - q.weight,
                                frozenset({m}))
                prod = dual_product(x, q, a)
                b = 0
                for mm in prod.support:
                    b |= 1 << idx[mm]
                if b:
                    span.add(b)
    op_bits = 0
    for mm in op.support:
        op_bits |= 1 << idx[mm]
    return not span.contains(op_bits)


def _subalgebra_generators(name: str, a: Presentation) -> List[DualElement]:
    if name == "1":
        return []
    table = {
        "A(1)": ["Sq1", "Sq2"],
        "A(2)": ["Sq1", "Sq2", "Sq4"],
        "E(0)": ["Q0"],
        "E(1)": ["Q0", "Q1"],
        "E(2)": ["Q0", "Q1", "Q2"],
        "F": ["Q0", "Q1", "Q2", "P(2,1)"],
        "G": ["Q0", "Q2", "P(2,1)", "Sq2"],
    }
    return [named_generator(n, a) for n in table[name]]


def ladder_verify(step: LadderStep, stem_max: int) -> LadderReport:
    """Check the SES dimension identity for one ladder step."""
    src = quotient_dims(_make(step.source), stem_max + step.shift.stem)
    tgt = quotient_dims(_make(step.target), stem_max + step.shift.stem)
    rows = []
    degrees = sorted({d for d in src.tau_free} | {d for d in tgt.tau_free}
                     | {d + step.shift for d in tgt.tau_free},
                     key=lambda d: (d.stem, d.weight))
    for d in degrees:
        if d.stem > stem_max:
            continue
        lhs = src.tau_free.get(d, 0)
        rhs = (tgt.tau_free.get(d, 0)
               + tgt.tau_free.get(d - step.shift, 0))
        rows.append((d.stem, d.weight, lhs, rhs,
                     "ok" if lhs == rhs else "FAIL"))
    return LadderReport(step, stem_max, rows,
                        connecting_nonzero(step, stem_max))


def verify_mmf_ladder(stem_max: int) -> List[LadderReport]:
    """All three steps; together they certify A//A(2)."""
    return [ladder_verify(s, stem_max) for s in MMF_LADDER]


def ko_ladder(stem_max: int) -> List[LadderReport]:
    """The HZ -> ku -> ko variant, certifying A//A(1)."""
    return [ladder_verify(s, stem_max) for s in KO_LADDER]
