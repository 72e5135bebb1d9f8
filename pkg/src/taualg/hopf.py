"""Comultiplication on the dual Steenrod algebra and its quotients.

The coproduct is defined on the generator families by

    D(tau_i) = tau_i (x) 1 + sum_k  xi_{i-k}^{2^k} (x) tau_k
    D(xi_i)  = sum_k  xi_{i-k}^{2^k} (x) xi_k          (xi_0 = 1)

extended multiplicatively and F2[tau]-linearly, with the tau factor
normalized onto the left tensor factor.  In a quotient presentation a
generator family member that is not present maps to zero.
"""

from __future__ import annotations

import re
from typing import Dict, FrozenSet, List, Tuple

from .algebra import (AlgebraError, Element, Monomial, Presentation, ZERO,
                      monomial_sort_key, normalize, format_monomial)

# Tensor term: (tau_exponent, left exponent tuple, right exponent tuple)
TensorTerm = Tuple[int, Tuple[int, ...], Tuple[int, ...]]
TensorElement = FrozenSet[TensorTerm]

T_ZERO: TensorElement = frozenset()


def _xor(acc: set, item) -> None:
    if item in acc:
        acc.discard(item)
    else:
        acc.add(item)


def tensor_unit(p: Presentation) -> TensorElement:
    z = (0,) * len(p.generators)
    return frozenset({(0, z, z)})


def _family(name: str) -> Tuple[str, int]:
    m = re.fullmatch(r"([tx])(\d+)", name)
    if not m:
        raise AlgebraError(f"no coproduct formula for generator {name}")
    return m.group(1), int(m.group(2))


def _mono_of(p: Presentation, family: str, index: int,
             power: int) -> Element:
    """xi_index^power (or tau_index^power) as a normalized element of p,
    zero when the generator was killed by the quotient."""
    if family == "x" and index == 0:
        return frozenset({(0, (0,) * len(p.generators))})  # xi_0 = 1
    name = f"{family}{index}"
    if name not in p.index:
        return ZERO
    vec = [0] * len(p.generators)
    vec[p.index[name]] = power
    return normalize((0, tuple(vec)), p)


def _coproduct_generator(p: Presentation, name: str) -> TensorElement:
    fam, i = _family(name)
    acc: set = set()
    if fam == "t":
        for left in _mono_of(p, "t", i, 1):
            _xor(acc, (left[0], left[1], (0,) * len(p.generators)))
        for k in range(i + 1):
            lefts = _mono_of(p, "x", i - k, 2 ** k)
            rights = _mono_of(p, "t", k, 1)
            for lt, le in lefts:
                for rt, re_ in rights:
                    _xor(acc, (lt + rt, le, re_))
    else:
        for k in range(i + 1):
            lefts = _mono_of(p, "x", i - k, 2 ** k)
            rights = _mono_of(p, "x", k, 1)
            for lt, le in lefts:
                for rt, re_ in rights:
                    _xor(acc, (lt + rt, le, re_))
    return frozenset(acc)


def tensor_multiply(a: TensorElement, b: TensorElement,
                    p: Presentation) -> TensorElement:
    acc: set = set()
    for ta, la, ra in a:
        for tb, lb, rb in b:
            left = normalize((0, tuple(x + y for x, y in zip(la, lb))), p)
            if not left:
                continue
            right = normalize((0, tuple(x + y for x, y in zip(ra, rb))), p)
            if not right:
                continue
            (lt, le), = left
            (rt, re_), = right
            _xor(acc, (ta + tb + lt + rt, le, re_))
    return frozenset(acc)


_COPRODUCT_CACHE: Dict[Tuple[Presentation, Monomial], TensorElement] = {}


def coproduct_monomial(m: Monomial, p: Presentation) -> TensorElement:
    key = (p, m)
    hit = _COPRODUCT_CACHE.get(key)
    if hit is not None:
        return hit
    tau, exps = m
    result = tensor_unit(p)
    for i, e in enumerate(exps):
        if e == 0:
            continue
        dg = _coproduct_generator(p, p.generators[i].name)
        for _ in range(e):
            result = tensor_multiply(result, dg, p)
    if tau:
        result = frozenset({(t + tau, l, r) for t, l, r in result})
    _COPRODUCT_CACHE[key] = result
    return result


def coproduct(a: Element, p: Presentation) -> TensorElement:
    acc: set = set()
    for m in a:
        for term in coproduct_monomial(m, p):
            _xor(acc, term)
    return frozenset(acc)


def counit(a: Element, p: Presentation) -> FrozenSet[int]:
    """F2[tau]-coefficient of an element: the set of tau-exponents of its
    pure tau-power monomials."""
    z = (0,) * len(p.generators)
    return frozenset(t for t, e in a if e == z)


def tensor_counit_left(t: TensorElement, p: Presentation) -> Element:
    """(eps (x) id) applied to a tensor element."""
    z = (0,) * len(p.generators)
    acc: set = set()
    for tau, le, re_ in t:
        if le == z:
            _xor(acc, (tau, re_))
    return frozenset(acc)


def tensor_counit_right(t: TensorElement, p: Presentation) -> Element:
    z = (0,) * len(p.generators)
    acc: set = set()
    for tau, le, re_ in t:
        if re_ == z:
            _xor(acc, (tau, le))
    return frozenset(acc)


# Triple tensors for the coassociativity check.
TripleTerm = Tuple[int, Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]


def _expand_left(t: TensorElement, p: Presentation) -> FrozenSet[TripleTerm]:
    acc: set = set()
    for tau, le, re_ in t:
        for tt, l2, r2 in coproduct_monomial((0, le), p):
            _xor(acc, (tau + tt, l2, r2, re_))
    return frozenset(acc)


def _expand_right(t: TensorElement, p: Presentation) -> FrozenSet[TripleTerm]:
    acc: set = set()
    for tau, le, re_ in t:
        for tt, l2, r2 in coproduct_monomial((0, re_), p):
            _xor(acc, (tau + tt, le, l2, r2))
    return frozenset(acc)


def check_coassociativity(p: Presentation, stem_max: int) -> List[Monomial]:
    """Failures of (D (x) id) D = (id (x) D) D on basis monomials with
    stem <= stem_max; also checks both counit axioms.  Expected empty."""
    from .algebra import basis, BiDegree
    failures = []
    for s in range(stem_max + 1):
        for w in _weights_in_stem(p, s):
            for m in basis(p, BiDegree(s, w)):
                if m[0] != 0:
                    continue  # tau-multiples follow by linearity
                el = frozenset({m})
                d = coproduct(el, p)
                if _expand_left(d, p) != _expand_right(d, p):
                    failures.append(m)
                elif (tensor_counit_left(d, p) != el
                        or tensor_counit_right(d, p) != el):
                    failures.append(m)
    return failures


def _weights_in_stem(p: Presentation, s: int) -> List[int]:
    from .algebra import _tau_free_monomials
    ws = set()
    for exps in _tau_free_monomials(p, s):
        ws.add(sum(e * g.degree.weight for e, g in zip(exps, p.generators)))
    return sorted(ws)


def check_welldefined(p: Presentation, stem_max: int = None) -> List[str]:
    """For each rewrite rule LHS -> RHS verify D(LHS) = D(RHS) in p (x) p.

    A failing rule name list is returned; expected empty for every named
    quotient Hopf algebra.
    """
    failures = []
    for gname, (cap, repl) in p.rules:
        vec = [0] * len(p.generators)
        vec[p.index[gname]] = 1
        dgen = coproduct_monomial((0, tuple(vec)), p)
        lhs = tensor_unit(p)
        for _ in range(cap):
            lhs = tensor_multiply(lhs, dgen, p)
        if repl is None:
            rhs = T_ZERO
        else:
            tp, other = repl
            ovec = [0] * len(p.generators)
            ovec[p.index[other]] = 1
            rhs = frozenset({(t + tp, l, r) for t, l, r in
                             coproduct_monomial((0, tuple(ovec)), p)})
        if lhs != rhs:
            failures.append(gname)
    return failures


def is_algebra_map(p: Presentation, stem_max: int) -> List[Tuple]:
    """Check D(ab) = D(a)D(b) on basis monomial pairs with total stem <=
    stem_max.  Returns failing pairs (expected empty)."""
    from .algebra import basis, BiDegree, multiply
    monos = []
    for s in range(1, stem_max + 1):
        for w in _weights_in_stem(p, s):
            for m in basis(p, BiDegree(s, w)):
                if m[0] == 0:
                    monos.append(m)
    failures = []
    for i, a in enumerate(monos):
        da = coproduct_monomial(a, p)
        sa = p.degree(a).stem
        for b in monos[i:]:
            if sa + p.degree(b).stem > stem_max:
                continue
            ab = multiply(frozenset({a}), frozenset({b}), p)
            if coproduct(ab, p) != tensor_multiply(da,
                                                   coproduct_monomial(b, p),
                                                   p):
                failures.append((a, b))
    return failures


def format_tensor(t: TensorElement, p: Presentation) -> str:
    if not t:
        return "0"

    def key(term):
        tau, le, re_ = term
        return (monomial_sort_key((tau, le)), monomial_sort_key((0, re_)))

    parts = []
    for tau, le, re_ in sorted(t, key=key):
        parts.append(f"{format_monomial((tau, le), p)}"
                     f"|{format_monomial((0, re_), p)}")
    return " + ".join(parts)
