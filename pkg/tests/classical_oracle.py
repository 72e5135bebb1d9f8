"""Independent classical mod-2 Milnor pairing transpose.

The classical dual Steenrod algebra is F2[xi_1, xi_2, ...] with
deg xi_i = 2^i - 1 and coproduct xi_i -> sum xi_{i-k}^{2^k} (x) xi_k.
Coded from scratch against exponent vectors, sharing nothing with the
package's bigraded machinery.
"""

from functools import lru_cache


def cl_degree(exps):
    return sum(e * (2 ** (i + 1) - 1) for i, e in enumerate(exps))


def cl_monomials(deg, top):
    """Exponent vectors over xi_1..xi_top of the given degree."""
    def rec(i, remaining):
        if i > top:
            if remaining == 0:
                yield ()
            return
        d = 2 ** i - 1
        for e in range(remaining // d + 1):
            for rest in rec(i + 1, remaining - e * d):
                yield (e,) + rest
    return list(rec(1, deg))


@lru_cache(maxsize=None)
def cl_coproduct_gen(i, top):
    """Coproduct of xi_i as a set of exponent-vector pairs."""
    out = set()
    for k in range(i + 1):
        left = [0] * top
        right = [0] * top
        if i - k:
            left[i - k - 1] = 2 ** k
        if k:
            right[k - 1] = 1
        out.add((tuple(left), tuple(right)))
    return frozenset(out)


def _mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


@lru_cache(maxsize=None)
def cl_coproduct(exps):
    """Mod-2 coproduct of a monomial: symmetric-difference convolution."""
    top = len(exps)
    acc = {((0,) * top, (0,) * top)}
    for i, e in enumerate(exps, start=1):
        for _ in range(e):
            nxt = set()
            for l1, r1 in acc:
                for l2, r2 in cl_coproduct_gen(i, top):
                    t = (_mul(l1, l2), _mul(r1, r2))
                    if t in nxt:
                        nxt.discard(t)
                    else:
                        nxt.add(t)
            acc = nxt
    return frozenset(acc)


def cl_dual_product(f_exps, g_exps, top):
    """Product of the duals of two monomials, as a monomial set."""
    deg = cl_degree(f_exps) + cl_degree(g_exps)
    out = set()
    for m in cl_monomials(deg, top):
        count = 0
        for l, r in cl_coproduct(m):
            if l == f_exps and r == g_exps:
                count ^= 1
        if count:
            out.add(m)
    return out


def collapse(exps, p, top):
    """tau=1 specialization on the monomial basis: t_i -> xi_{i+1},
    x_i -> xi_i^2."""
    out = [0] * top
    for e, g in zip(exps, p.generators):
        if not e:
            continue
        fam, idx = g.name[0], int(g.name[1:])
        if fam == "t":
            out[idx] += e
        else:
            out[idx - 1] += 2 * e
    return tuple(out)
