"""Normal-form arithmetic in bigraded commutative algebras over F2[tau].

Covers the dual Steenrod algebra A, its finite quotient Hopf algebras
A(n), E(n), F, G, and the polynomial homology/homotopy rings of the
BP-family objects.  Elements are F2-sums of monomials; tau is a
distinguished exponent of degree (0,-1), never subject to rewriting,
though rewrite rules may produce tau factors.

Generator grammar (also the CLI text syntax):
    t          tau
    t0,t1,...  tau_i, degree (2^(i+1)-1, 2^i-1)
    x1,x2,...  xi_i,  degree (2^(i+1)-2, 2^i-1)
    v1,v2,...  v_i,   degree (2^(i+1)-2, 2^i-1)
    u1,u2,...  t_i (renamed), degree (2^(i+1)-2, 2^i-1)
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Tuple


class AlgebraError(ValueError):
    pass


class UnknownAlgebra(AlgebraError):
    pass


class InsufficientIndexBound(AlgebraError):
    """A degree query needs generators beyond the presentation's bound."""


@dataclass(frozen=True)
class BiDegree:
    stem: int
    weight: int

    def __add__(self, other: "BiDegree") -> "BiDegree":
        return BiDegree(self.stem + other.stem, self.weight + other.weight)

    def __sub__(self, other: "BiDegree") -> "BiDegree":
        return BiDegree(self.stem - other.stem, self.weight - other.weight)

    def __iter__(self):
        yield self.stem
        yield self.weight


def tau_degree(i: int) -> BiDegree:
    return BiDegree(2 ** (i + 1) - 1, 2 ** i - 1)


def xi_degree(i: int) -> BiDegree:
    return BiDegree(2 ** (i + 1) - 2, 2 ** i - 1)


@dataclass(frozen=True)
class Generator:
    name: str
    degree: BiDegree


# A rewrite rule for generator g: g**cap -> replacement, where replacement
# is None (zero) or (tau_power, generator_name) meaning tau^p * other_gen.
Rule = Tuple[int, Optional[Tuple[int, str]]]

# Monomial: (tau_exponent, exponent tuple aligned with Presentation.generators)
Monomial = Tuple[int, Tuple[int, ...]]

Element = FrozenSet[Monomial]

ZERO: Element = frozenset()


def one(p: "Presentation") -> Element:
    return frozenset({(0, (0,) * len(p.generators))})


@dataclass(frozen=True)
class Presentation:
    """A presented bigraded commutative F2[tau]-algebra.

    Immutable after construction; all operations on it are pure.
    """

    name: str
    generators: Tuple[Generator, ...]
    rules: Tuple[Tuple[str, Rule], ...]  # (generator name, rule)
    stem_limit: Optional[int] = None  # None: no enumeration guard needed
    index: Dict[str, int] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        idx = {g.name: i for i, g in enumerate(self.generators)}
        if len(idx) != len(self.generators):
            raise AlgebraError("duplicate generator names")
        object.__setattr__(self, "index", idx)
        for gname, (cap, repl) in self.rules:
            if gname not in idx:
                raise AlgebraError(f"rule on unknown generator {gname}")
            if repl is not None:
                p, other = repl
                if other not in idx:
                    raise AlgebraError(f"rule target {other} missing")
                # lhs deg * cap == rhs deg + p * deg(tau), deg(tau) = (0,-1)
                lhs = self.generators[idx[gname]].degree
                rhs = self.generators[idx[other]].degree
                if (lhs.stem * cap, lhs.weight * cap) != (
                        rhs.stem, rhs.weight - p):
                    raise AlgebraError(f"inhomogeneous rule on {gname}")

    @property
    def rule_map(self) -> Dict[str, Rule]:
        return dict(self.rules)

    def generator_degree(self, name: str) -> BiDegree:
        return self.generators[self.index[name]].degree

    def cap(self, i: int) -> Optional[int]:
        r = self.rule_map.get(self.generators[i].name)
        return None if r is None else r[0]

    def monomial(self, tau: int = 0, **exps: int) -> Monomial:
        vec = [0] * len(self.generators)
        for name, e in exps.items():
            vec[self.index[name]] = e
        return (tau, tuple(vec))

    def degree(self, m: Monomial) -> BiDegree:
        tau, exps = m
        s = sum(e * g.degree.stem for e, g in zip(exps, self.generators))
        w = sum(e * g.degree.weight for e, g in zip(exps, self.generators))
        return BiDegree(s, w - tau)

    def element_degree(self, a: Element) -> Optional[BiDegree]:
        """Common bidegree of a homogeneous element (None for 0)."""
        degs = {self.degree(m) for m in a}
        if not degs:
            return None
        if len(degs) > 1:
            raise AlgebraError("inhomogeneous element")
        return degs.pop()


def normalize(m: Monomial, p: Presentation) -> Element:
    """Fully rewrite a monomial; the result is a single monomial or zero.

    Every allowed rule shape rewrites a power of one generator to zero or
    to tau times another single generator, so normal forms stay monomial.
    """
    tau, exps = m
    exps = list(exps)
    rules = p.rule_map
    changed = True
    while changed:
        changed = False
        for i, g in enumerate(p.generators):
            r = rules.get(g.name)
            if r is None:
                continue
            cap, repl = r
            if exps[i] >= cap:
                if repl is None:
                    return ZERO
                tp, other = repl
                exps[i] -= cap
                tau += tp
                exps[p.index[other]] += 1
                changed = True
    return frozenset({(tau, tuple(exps))})


def multiply(a: Element, b: Element, p: Presentation) -> Element:
    """Product of homogeneous elements, in normal form (char 2)."""
    acc: set = set()
    for ta, ea in a:
        for tb, eb in b:
            prod = (ta + tb, tuple(x + y for x, y in zip(ea, eb)))
            for m in normalize(prod, p):
                if m in acc:
                    acc.discard(m)
                else:
                    acc.add(m)
    return frozenset(acc)


def add(a: Element, b: Element) -> Element:
    return a ^ b


def scale_tau(a: Element, k: int) -> Element:
    return frozenset({(t + k, e) for t, e in a})


def monomial_sort_key(m: Monomial):
    # tau-exponent ascending, then generator exponents in descending lex,
    # so e.g. x1^3 prints before x2 and t1|1 before 1|t1.
    return (m[0],) + tuple(-e for e in m[1])


@lru_cache(maxsize=None)
def _tau_free_monomials(p: Presentation, stem: int):
    """All tau-free normal-form monomials of the given stem, sorted."""
    gens = p.generators
    n = len(gens)
    out = []

    def rec(i: int, remaining: int, acc: List[int]):
        if remaining == 0:
            out.append(tuple(acc + [0] * (n - i)))
            return
        if i == n:
            return
        s = gens[i].degree.stem
        cap = p.cap(i)
        e = 0
        while e * s <= remaining and (cap is None or e < cap):
            rec(i + 1, remaining - e * s, acc + [e])
            if s == 0:
                break  # defensive: no zero-stem generators expected
            e += 1

    rec(0, stem, [])
    return tuple(sorted(out))


def basis(p: Presentation, d: BiDegree) -> List[Monomial]:
    """Normal-form monomials of bidegree exactly d, in monomial order."""
    if p.stem_limit is not None and d.stem > p.stem_limit:
        raise InsufficientIndexBound(
            f"{p.name}: stem {d.stem} beyond bound {p.stem_limit}")
    if d.stem < 0:
        return []
    result = []
    for exps in _tau_free_monomials(p, d.stem):
        w = sum(e * g.degree.weight for e, g in zip(exps, p.generators))
        if w >= d.weight:
            result.append((w - d.weight, exps))
    return sorted(result, key=monomial_sort_key)


def tau_free_table(p: Presentation, stem_max: int) -> Dict[BiDegree, int]:
    """(stem, weight) -> number of tau-free normal monomials."""
    table: Dict[BiDegree, int] = {}
    for s in range(stem_max + 1):
        for exps in _tau_free_monomials(p, s):
            w = sum(e * g.degree.weight for e, g in zip(exps, p.generators))
            d = BiDegree(s, w)
            table[d] = table.get(d, 0) + 1
    return table


def poincare(p: Presentation, stem_max: int):
    """Bigraded F2-dimension table plus tau-free rank table.

    The full dimension at (s,w) counts monomials tau^k * m with m tau-free
    of weight >= w, i.e. the cumulative tail of the tau-free table.
    """
    if stem_max < 0:
        raise AlgebraError("stem_max must be >= 0")
    tf = tau_free_table(p, stem_max)
    dims: Dict[BiDegree, int] = {}
    by_stem: Dict[int, List[int]] = {}
    for d, c in tf.items():
        by_stem.setdefault(d.stem, []).extend([d.weight] * c)
    for s, weights in by_stem.items():
        for w in sorted(set(weights)):
            dims[BiDegree(s, w)] = sum(1 for x in weights if x >= w)
    return dims, tf


def dimension(p: Presentation, d: BiDegree, tf: Optional[Dict] = None) -> int:
    """F2-dimension at a bidegree (counts tau-multiples)."""
    return len(basis(p, d))


# ---------------------------------------------------------------------------
# Named presentations


def _index_bound_for(stem_max: int) -> int:
    """Least N with stem(xi_{N+1}) > stem_max."""
    n = 0
    while 2 ** (n + 2) - 2 <= stem_max:
        n += 1
    return n


def make_algebra(name: str, n: Optional[int] = None,
                 stem_max: int = 32) -> Presentation:
    """Build one of the named presentations.

    name: A, A(n), E(n), F, G, H_BP, H_BPn, pi_BP, BPBP.  For the infinite
    presentations the generator list is cut off at the index bound implied
    by stem_max, and basis() refuses queries beyond that stem.
    """
    key = name.replace(" ", "")
    m = re.fullmatch(r"([AE])\((\d+)\)", key)
    if m:
        key, n = m.group(1) + "(n)", int(m.group(2))

    if key == "A":
        nb = _index_bound_for(stem_max)
        gens = [Generator(f"t{i}", tau_degree(i)) for i in range(nb + 1)]
        gens += [Generator(f"x{i}", xi_degree(i)) for i in range(1, nb + 2)]
        rules = [(f"t{i}", (2, (1, f"x{i + 1}"))) for i in range(nb + 1)]
        return Presentation("A", tuple(gens), tuple(rules), stem_max)

    if key == "A(n)":
        if n is None or n < 0:
            raise UnknownAlgebra("A(n) needs n >= 0")
        gens = [Generator(f"t{i}", tau_degree(i)) for i in range(n + 1)]
        gens += [Generator(f"x{i}", xi_degree(i)) for i in range(1, n + 1)]
        rules: List[Tuple[str, Rule]] = []
        for i in range(n):
            rules.append((f"t{i}", (2, (1, f"x{i + 1}"))))
        rules.append((f"t{n}", (2, None)))
        for i in range(1, n + 1):
            rules.append((f"x{i}", (2 ** (n + 1 - i), None)))
        return Presentation(f"A({n})", tuple(gens), tuple(rules))

    if key == "E(n)":
        if n is None or n < 0:
            raise UnknownAlgebra("E(n) needs n >= 0")
        gens = [Generator(f"t{i}", tau_degree(i)) for i in range(n + 1)]
        rules = [(f"t{i}", (2, None)) for i in range(n + 1)]
        return Presentation(f"E({n})", tuple(gens), tuple(rules))

    if key == "F":
        gens = (Generator("t0", tau_degree(0)), Generator("t1", tau_degree(1)),
                Generator("t2", tau_degree(2)), Generator("x2", xi_degree(2)))
        rules = (("t0", (2, None)), ("t1", (2, (1, "x2"))),
                 ("t2", (2, None)), ("x2", (2, None)))
        return Presentation("F", gens, rules)

    if key == "G":
        gens = (Generator("t0", tau_degree(0)), Generator("t1", tau_degree(1)),
                Generator("t2", tau_degree(2)), Generator("x1", xi_degree(1)),
                Generator("x2", xi_degree(2)))
        rules = (("t0", (2, (1, "x1"))), ("t1", (2, (1, "x2"))),
                 ("t2", (2, None)), ("x1", (2, None)), ("x2", (2, None)))
        return Presentation("G", gens, rules)

    if key == "H_BP":
        nb = _index_bound_for(stem_max)
        gens = [Generator(f"x{i}", xi_degree(i)) for i in range(1, nb + 2)]
        return Presentation("H_BP", tuple(gens), (), stem_max)

    if key == "H_BPn":
        if n is None or n < 0:
            raise UnknownAlgebra("H_BPn needs n >= 0")
        nb = _index_bound_for(stem_max)
        gens = [Generator(f"t{i}", tau_degree(i))
                for i in range(n + 1, nb + 1)]
        gens += [Generator(f"x{i}", xi_degree(i)) for i in range(1, nb + 2)]
        rules = [(f"t{i}", (2, (1, f"x{i + 1}")))
                 for i in range(n + 1, nb + 1)]
        return Presentation(f"H_BP<{n}>", tuple(gens), tuple(rules), stem_max)

    if key == "pi_BP":
        nb = _index_bound_for(stem_max)
        gens = [Generator(f"v{i}", xi_degree(i)) for i in range(1, nb + 2)]
        return Presentation("pi_BP", tuple(gens), (), stem_max)

    if key == "BPBP":
        nb = _index_bound_for(stem_max)
        gens = [Generator(f"v{i}", xi_degree(i)) for i in range(1, nb + 2)]
        gens += [Generator(f"u{i}", xi_degree(i)) for i in range(1, nb + 2)]
        return Presentation("BPBP", tuple(gens), (), stem_max)

    raise UnknownAlgebra(f"unknown algebra name: {name}")


@lru_cache(maxsize=None)
def cached_algebra(name: str, n: Optional[int] = None,
                   stem_max: int = 32) -> Presentation:
    return make_algebra(name, n, stem_max)


# ---------------------------------------------------------------------------
# Element text grammar


class ParseError(AlgebraError):
    pass


_GEN_RE = re.compile(r"^(t|t\d+|x\d+|v\d+|u\d+)(?:\^(\d+))?$")


def parse_element(text: str, p: Presentation) -> Element:
    """Parse `+`-joined monomials of `*`-joined powers g^k."""
    text = text.replace(" ", "")
    if not text or text == "0":
        return ZERO
    acc: set = set()
    for mono_text in text.split("+"):
        tau = 0
        exps = [0] * len(p.generators)
        if mono_text == "1":
            factors = []
        else:
            factors = mono_text.split("*")
        for f in factors:
            if f == "1":
                continue
            m = _GEN_RE.match(f)
            if not m:
                raise ParseError(f"bad factor {f!r}")
            name, power = m.group(1), int(m.group(2) or 1)
            if name == "t":
                tau += power
            else:
                if name not in p.index:
                    raise ParseError(
                        f"generator {name} not in algebra {p.name}")
                exps[p.index[name]] += power
        for mono in normalize((tau, tuple(exps)), p):
            if mono in acc:
                acc.discard(mono)
            else:
                acc.add(mono)
    out = frozenset(acc)
    if len({p.degree(m) for m in out}) > 1:
        raise ParseError(f"inhomogeneous element {text!r}")
    return out


def format_monomial(m: Monomial, p: Presentation) -> str:
    tau, exps = m
    parts = []
    if tau:
        parts.append("t" if tau == 1 else f"t^{tau}")
    for e, g in zip(exps, p.generators):
        if e == 1:
            parts.append(g.name)
        elif e > 1:
            parts.append(f"{g.name}^{e}")
    return "*".join(parts) if parts else "1"


def format_element(a: Element, p: Presentation) -> str:
    if not a:
        return "0"
    monos = sorted(a, key=monomial_sort_key)
    return " + ".join(format_monomial(m, p) for m in monos)
