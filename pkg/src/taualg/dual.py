"""The Steenrod-algebra side: functionals dual to the monomial basis.

A_{*,star} is free over F2[tau] on its tau-free normal monomials, so its
F2[tau]-dual has the basis of functionals m^ (m tau-free).  A homogeneous
functional of cohomological degree (s,w) is supported on tau-free
monomials m of stem s and weight <= w, the m^-coefficient being the
forced tau power tau^(w - weight(m)).  Products are computed by the
pairing transpose against the comultiplication.

Named generators:
    Sq1      (tau_0)^         Qi       (tau_i)^
    Sq2^n    (xi_1^(2^(n-1)))^
    P(j,0)   (tau_(j-1))^     P(j,i)   (xi_j^(2^(i-1)))^
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Tuple

from .algebra import (AlgebraError, BiDegree, Element, Presentation,
                      _tau_free_monomials, format_monomial)
from .f2linalg import BitSpan
from .hopf import coproduct_monomial

ExpVec = Tuple[int, ...]


@dataclass(frozen=True)
class DualElement:
    """Homogeneous F2[tau]-linear functional in the monomial dual basis.

    support: tau-free monomial exponent vectors m with weight(m) <= weight;
    the coefficient of m^ is tau^(weight - weight(m)).
    """
    stem: int
    weight: int
    support: FrozenSet[ExpVec]

    @property
    def degree(self) -> BiDegree:
        return BiDegree(self.stem, self.weight)

    def is_zero(self) -> bool:
        return not self.support

    def scale_tau(self, k: int = 1) -> "DualElement":
        return DualElement(self.stem, self.weight + k, self.support)


def mono_degree(p: Presentation, exps: ExpVec) -> BiDegree:
    s = sum(e * g.degree.stem for e, g in zip(exps, p.generators))
    w = sum(e * g.degree.weight for e, g in zip(exps, p.generators))
    return BiDegree(s, w)


def dual_monomial(p: Presentation, **exps: int) -> DualElement:
    vec = [0] * len(p.generators)
    for name, e in exps.items():
        vec[p.index[name]] = e
    d = mono_degree(p, tuple(vec))
    return DualElement(d.stem, d.weight, frozenset({tuple(vec)}))


def unit(p: Presentation) -> DualElement:
    return DualElement(0, 0, frozenset({(0,) * len(p.generators)}))


_NAMED_RE = re.compile(r"^(Sq(\d+)|Q(\d+)|P\((\d+),(\d+)\))$")


def named_generator(name: str, p: Presentation) -> DualElement:
    """Resolve a named Steenrod operation to its dual monomial."""
    m = _NAMED_RE.match(name.replace(" ", ""))
    if not m:
        raise AlgebraError(f"unknown operation name {name!r}")
    if m.group(2) is not None:
        k = int(m.group(2))
        if k == 1:
            return dual_monomial(p, t0=1)
        n = k.bit_length() - 1
        if 2 ** n != k or n < 1:
            raise AlgebraError(f"only Sq1 and Sq powers of two: {name}")
        return dual_monomial(p, x1=2 ** (n - 1))
    if m.group(3) is not None:
        i = int(m.group(3))
        return dual_monomial(p, **{f"t{i}": 1})
    j, i = int(m.group(4)), int(m.group(5))
    if j < 1:
        raise AlgebraError(f"P(j,i) needs j >= 1: {name}")
    if i == 0:
        return dual_monomial(p, **{f"t{j - 1}": 1})
    return dual_monomial(p, **{f"x{j}": 2 ** (i - 1)})


def pair(f: DualElement, a: Element, p: Presentation) -> FrozenSet[int]:
    """F2[tau]-bilinear pairing; returns the set of tau-exponents of the
    resulting F2[tau]-scalar."""
    acc: set = set()
    for tau, exps in a:
        if exps in f.support:
            k = tau + (f.weight - mono_degree(p, exps).weight)
            if k in acc:
                acc.discard(k)
            else:
                acc.add(k)
    return frozenset(acc)


def _candidate_monomials(p: Presentation, stem: int,
                         weight: int) -> List[ExpVec]:
    """Tau-free normal monomials with the given stem and weight <= weight."""
    out = []
    for exps in _tau_free_monomials(p, stem):
        if mono_degree(p, exps).weight <= weight:
            out.append(exps)
    return out


def dual_product(f: DualElement, g: DualElement,
                 p: Presentation) -> DualElement:
    """Product dual to the comultiplication:
    <fg, x> = sum <f, x'><g, x''> over D(x) = sum x' (x) x''."""
    s, w = f.stem + g.stem, f.weight + g.weight
    if p.stem_limit is not None and s > p.stem_limit:
        raise AlgebraError(
            f"ambient presentation bound {p.stem_limit} < stem {s}")
    support = set()
    for x in _candidate_monomials(p, s, w):
        count = 0
        for tau, le, re_ in coproduct_monomial((0, x), p):
            if le in f.support and re_ in g.support:
                count ^= 1
        if count:
            support.add(x)
    return DualElement(s, w, frozenset(support))


def format_dual(f: DualElement, p: Presentation) -> str:
    if not f.support:
        return "0"
    from .algebra import monomial_sort_key
    parts = []
    for exps in sorted(f.support, key=lambda e: monomial_sort_key((0, e))):
        k = f.weight - mono_degree(p, exps).weight
        coeff = "" if k == 0 else ("t*" if k == 1 else f"t^{k}*")
        if any(exps):
            parts.append(f"{coeff}dual({format_monomial((0, exps), p)})")
        else:
            parts.append(f"{coeff}dual(1)" if coeff else "dual(1)")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# Generated subalgebras


class GeneratedSubalgebra:
    """F2[tau]-span closure of all products of a generator list.

    Per stem s we keep vectors over the tau-free monomial basis of A at
    that stem, each labelled with the minimal cohomological weight at
    which it occurs; tau-scaling makes it present at every higher weight.
    """

    def __init__(self, p: Presentation, gens: List[DualElement],
                 stem_max: int):
        self.p = p
        self.stem_max = stem_max
        self.mono_index: Dict[int, Dict[ExpVec, int]] = {}
        for s in range(stem_max + 1):
            monos = _tau_free_monomials(p, s)
            self.mono_index[s] = {m: i for i, m in enumerate(monos)}
        # elements[s] = list of (bits, weight)
        self.elements: Dict[int, List[Tuple[int, int]]] = {
            s: [] for s in range(stem_max + 1)}
        self.gens = [g for g in gens if g.stem <= stem_max]
        self._close()

    def _bits(self, f: DualElement) -> int:
        idx = self.mono_index[f.stem]
        bits = 0
        for m in f.support:
            bits |= 1 << idx[m]
        return bits

    def _from_bits(self, s: int, w: int, bits: int) -> DualElement:
        monos = _tau_free_monomials(self.p, s)
        support = frozenset(monos[i] for i in range(len(monos))
                            if (bits >> i) & 1)
        return DualElement(s, w, support)

    def _known(self, s: int, w: int, bits: int) -> bool:
        span = BitSpan()
        for b, bw in self.elements[s]:
            if bw <= w:
                span.add(b)
        return span.contains(bits)

    def _close(self):
        worklist: List[DualElement] = []

        def insert(f: DualElement):
            if f.is_zero() or f.stem > self.stem_max:
                return
            bits = self._bits(f)
            if self._known(f.stem, f.weight, bits):
                return
            self.elements[f.stem].append((bits, f.weight))
            worklist.append(f)

        insert(unit(self.p))
        for g in self.gens:
            insert(g)
        while worklist:
            f = worklist.pop()
            for g in self.gens:
                if f.stem + g.stem <= self.stem_max:
                    insert(dual_product(f, g, self.p))
                    insert(dual_product(g, f, self.p))

    def dim(self, s: int, w: int) -> int:
        span = BitSpan()
        for b, bw in self.elements[s]:
            if bw <= w:
                span.add(b)
        return span.dim

    def dim_table(self) -> Dict[BiDegree, int]:
        """(s,w) -> dimension, at the weights where it changes.

        dim(s, w) for arbitrary w is the entry at the largest tabulated
        weight <= w (0 below all of them).
        """
        table: Dict[BiDegree, int] = {}
        for s in range(self.stem_max + 1):
            prev = 0
            for w in sorted({bw for _, bw in self.elements[s]}):
                d = self.dim(s, w)
                if d > prev:  # drop redundant change points
                    table[BiDegree(s, w)] = d
                    prev = d
        return table


def generated_dims(gens: List[DualElement], stem_max: int,
                   p: Presentation) -> Dict[BiDegree, int]:
    return GeneratedSubalgebra(p, gens, stem_max).dim_table()


def quotient_dual_dims(q: Presentation, stem_max: int) -> Dict[BiDegree, int]:
    """Dimension table of the dual of a quotient presentation, in the
    same (weight-change-point) format as generated_dims."""
    from .algebra import tau_free_table
    tf = tau_free_table(q, stem_max)
    table: Dict[BiDegree, int] = {}
    for s in range(stem_max + 1):
        weights = sorted(d.weight for d in tf if d.stem == s
                         for _ in range(tf[d]))
        for w in sorted(set(weights)):
            table[BiDegree(s, w)] = sum(1 for x in weights if x <= w)
    return table
