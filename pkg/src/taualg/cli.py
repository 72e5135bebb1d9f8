"""Command-line surface.

Subcommands: basis, mul, comul, dualmul, resolve, truncate, motivic,
ladder.  Exit status 0 on success, 1 on domain errors (unknown algebra,
range exhaustion, failed certification, oracle disagreement), 2 on
usage or parse errors.  All outputs are byte-deterministic.
"""

from __future__ import annotations

import argparse
import os
import sys

from .algebra import (AlgebraError, BiDegree, ParseError, basis,
                      format_element, format_monomial, make_algebra,
                      monomial_sort_key, multiply, parse_element)
from .cobar import MemoryGuardrail, cobar_window
from .dual import dual_product, format_dual, named_generator
from .hopf import coproduct, format_tensor
from .quotients import (DivisionError, KO_LADDER, MMF_LADDER, ladder_verify)
from .resolution import (CheckpointError, RangeExhausted, ext_chart,
                         ext_dims, load_checkpoint, minimal_resolution,
                         save_checkpoint)
from .svg import chart_svg
from .truncation import (ChartError, format_chart, motivic_assemble,
                         parse_chart, run_ss, truncate)


def _algebra_name(raw: str) -> str:
    """Accept both E(1)-style and E1-style spellings."""
    s = raw.strip()
    if len(s) >= 2 and s[0] in "AEae" and s[1:].isdigit():
        return f"{s[0].upper()}({s[1:]})"
    return s


def _make(raw: str, stem_max: int = 32):
    return make_algebra(_algebra_name(raw), stem_max=max(stem_max, 32))


def _emit(text: str, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Subcommands


def cmd_basis(args) -> int:
    p = _make(args.algebra, abs(args.stem))
    for m in sorted(basis(p, BiDegree(args.stem, args.weight)),
                    key=monomial_sort_key):
        print(format_monomial(m, p))
    return 0


def cmd_mul(args) -> int:
    p = _make(args.algebra)
    a = parse_element(args.left, p)
    b = parse_element(args.right, p)
    print(format_element(multiply(a, b, p), p))
    return 0


def cmd_comul(args) -> int:
    p = _make(args.algebra)
    a = parse_element(args.element, p)
    print(format_tensor(coproduct(a, p), p))
    return 0


def cmd_dualmul(args) -> int:
    p = _make(args.algebra)
    f = named_generator(args.left, p)
    g = named_generator(args.right, p)
    print(format_dual(dual_product(f, g, p), p))
    return 0


def _resolution_tsv(rows) -> str:
    lines = ["s\tf\tw\ttau_type"]
    for s, f, w, tt in rows:
        lines.append(f"{s}\t{f}\t{w}\t{tt}")
    return "\n".join(lines) + "\n"


def _oracle_compare(state, table, stem_max: int, f_max: int):
    """First differing tri-degree between the two pipelines, or None."""
    from .resolution import _stem_weights, ext_dim
    for s in range(stem_max + 1):
        for f in range(f_max + 1):
            t = s + f
            ws = list(_stem_weights(state, t))
            win = table.windows.get((s, f))
            if win:
                ws.extend(win)
            if not ws:
                continue
            for w in range(min(ws) - 1, max(ws) + 1):
                a = ext_dim(state, s, f, w)
                b = table.dim(s, f, w)
                if a != b:
                    return (s, f, w, a, b)
    return None


def cmd_resolve(args) -> int:
    name = _algebra_name(args.algebra)
    # one homological degree beyond the chart so every tau_type and
    # every outgoing Hom differential is certified
    f_top = args.max_f + 1
    state = None
    if args.checkpoint and os.path.exists(args.checkpoint):
        state = load_checkpoint(args.checkpoint)
    saver = None
    if args.checkpoint:
        def saver(st):
            save_checkpoint(st, args.checkpoint)
    state = minimal_resolution(name, args.max_stem, f_top, state=state,
                               on_degree_complete=saver)
    rows = ext_chart(state, args.max_stem, args.max_f)
    dims = ext_dims(state, args.max_stem, args.max_f)
    if args.oracle:
        table, cert = cobar_window(name, args.max_stem, args.max_f,
                                   basis_cap=args.oracle_cap)
        diff = _oracle_compare(state, table, cert, args.max_f)
        if diff is not None:
            s, f, w, a, b = diff
            print(f"ORACLE DISAGREEMENT at (s={s}, f={f}, w={w}): "
                  f"resolution {a} != cobar {b}", file=sys.stderr)
            return 1
        print(f"oracle ok through stem {cert}")
    tsv = _resolution_tsv(rows)
    torsion = {(s, f, w): True for s, f, w, tt in rows
               if tt.startswith("torsion")}
    if args.out:
        _emit(tsv, args.out + ".tsv")
        _emit(chart_svg(dims, torsion), args.out + ".svg")
        print(f"wrote {args.out}.tsv and {args.out}.svg")
    else:
        sys.stdout.write(tsv)
    return 0


def cmd_truncate(args) -> int:
    with open(args.input) as fh:
        c = parse_chart(fh.read())
    _emit(format_chart(truncate(c, args.weight)), args.output)
    return 0


def cmd_motivic(args) -> int:
    with open(args.input) as fh:
        c = parse_chart(fh.read())
    m = motivic_assemble(c, args.wmin, args.wmax)
    tsv = m.tsv()
    if args.out:
        _emit(tsv, args.out + ".tsv")
        torsion = {k: True for k, d in m.entries.items()
                   if m.tau_ranks.get(k, 0) < d}
        _emit(chart_svg(m.entries, torsion), args.out + ".svg")
        print(f"wrote {args.out}.tsv and {args.out}.svg")
    else:
        sys.stdout.write(tsv)
    return 0


def cmd_ladder(args) -> int:
    if args.step == "all":
        steps, what = list(MMF_LADDER), "A//A(2)"
    elif args.step == "ko":
        steps, what = list(KO_LADDER), "A//A(1)"
    else:
        steps, what = [MMF_LADDER[int(args.step) - 1]], None
    ok = True
    for step in steps:
        rep = ladder_verify(step, args.max_stem)
        if not rep.ok:
            ok = False
            print(f"FAILED step {step.source} -> {step.target}:",
                  file=sys.stderr)
            for r in rep.rows:
                if r[4] != "ok":
                    sys.stderr.write("\t".join(map(str, r)) + "\n")
            if not rep.connecting_nonzero:
                print(f"  connecting operation {step.operator} vanishes",
                      file=sys.stderr)
        else:
            print(f"step {step.source} -> {step.target}: ok "
                  f"(shift ({step.shift.stem},{step.shift.weight}), "
                  f"operator {step.operator})")
    if not ok:
        return 1
    if what:
        print(f"CERTIFIED {what} through stem {args.max_stem}")
    return 0


# ---------------------------------------------------------------------------
# Argument parsing


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="taualg",
        description="Bigraded F2[tau]-algebra and tri-graded chart tool.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    b = sub.add_parser("basis", help="monomial basis of one bidegree")
    b.add_argument("--algebra", required=True)
    b.add_argument("--stem", type=int, required=True)
    b.add_argument("--weight", type=int, required=True)
    b.set_defaults(fn=cmd_basis)

    m = sub.add_parser("mul", help="product of two elements")
    m.add_argument("--algebra", required=True)
    m.add_argument("left")
    m.add_argument("right")
    m.set_defaults(fn=cmd_mul)

    cm = sub.add_parser("comul", help="comultiplication of an element")
    cm.add_argument("--algebra", required=True)
    cm.add_argument("element")
    cm.set_defaults(fn=cmd_comul)

    dm = sub.add_parser("dualmul",
                        help="product of two named dual generators")
    dm.add_argument("--algebra", default="A")
    dm.add_argument("left")
    dm.add_argument("right")
    dm.set_defaults(fn=cmd_dualmul)

    rs = sub.add_parser(
        "resolve",
        help="minimal resolution and Ext chart",
        description="TSV columns: s (stem), f (filtration), w (weight), "
                    "tau_type (free | torsion:k | ?), one row per "
                    "resolution generator.")
    rs.add_argument("--algebra", required=True)
    rs.add_argument("--max-stem", type=int, required=True)
    rs.add_argument("--max-f", type=int, required=True)
    rs.add_argument("--checkpoint", help="resume/save path")
    rs.add_argument("--oracle", action="store_true",
                    help="verify against the cobar complex")
    rs.add_argument("--oracle-cap", type=int, default=200000,
                    help="cobar basis size guardrail")
    rs.add_argument("--out", help="output prefix for .tsv and .svg")
    rs.set_defaults(fn=cmd_resolve)

    tr = sub.add_parser(
        "truncate", help="weight truncation of a classical chart",
        description="Input/output format: 'class <id> s=<s> f=<f>' and "
                    "'d <r> <source> <target>' lines.")
    tr.add_argument("--input", required=True)
    tr.add_argument("--weight", type=int, required=True)
    tr.add_argument("--output")
    tr.set_defaults(fn=cmd_truncate)

    mo = sub.add_parser(
        "motivic", help="assemble the tri-graded motivic chart",
        description="TSV columns: s, f, w, dim, tau_rank (rank of the "
                    "tau-map into weight w-1).")
    mo.add_argument("--input", required=True)
    mo.add_argument("--wmin", type=int, required=True)
    mo.add_argument("--wmax", type=int, required=True)
    mo.add_argument("--out", help="output prefix for .tsv and .svg")
    mo.set_defaults(fn=cmd_motivic)

    la = sub.add_parser(
        "ladder", help="cofiber-ladder dimension certification",
        description="Report TSV columns: s, w, lhs, rhs, status.")
    la.add_argument("--step", choices=["all", "1", "2", "3", "ko"],
                    default="all")
    la.add_argument("--max-stem", type=int, required=True)
    la.set_defaults(fn=cmd_ladder)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (ParseError, ChartError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (AlgebraError, MemoryGuardrail, RangeExhausted, DivisionError,
            CheckpointError, ValueError, ArithmeticError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
