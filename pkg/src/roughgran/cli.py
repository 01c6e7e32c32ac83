"""Command line front end: ``roughgran <command> [options]``.

Structures are read from a context file given by ``--context`` or the
``ROUGHGRAN_CONTEXT`` environment variable.  Every command prints plain text,
or a JSON document with sorted keys under ``--json``.  Exit status is 0 on
success, 2 on a domain error (bad input structure, unknown element, undefined
operation) and 1 on I/O failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Callable

from . import cover as cv
from . import fuzzy as fz
from . import measures, roughalg, roughnat
from .cipca import build_cipca, certificate
from .context import Context, parse_context, parse_set
from .counting import CountedSequence, count, max_ipc_order
from .relapprox import (
    FAMILY_KINDS, SPACE_KINDS, ApproxSpace, classical, esoteric, generic_granule_approx,
    granule_family, multi_approx, reflexive_approx, tolerance_ops,
)
from .rys import AXIOMS, GranuleSet, check_axiom
from .theories import THEORIES, Instance, canonical_instances, evaluate_all, theory
from .universe import DomainError, ElementSet, Relation, format_ratio

Report = tuple[list[str], dict]

TOLERANCE_OPS = ("lT", "uT", "lstar", "ustar", "bitten_upper")
MULTI_OPS = ("ls", "us", "lw", "uw")
GRANULE_OPS = ("lG", "uG", "l2G", "u1G", "u2G")
COVER_FAMILIES = ("blocks", "nbd", "Fr", "pi", "reduct", "table")


def _ratio(r: Fraction) -> str:
    return format_ratio(r)


def _set(s: ElementSet) -> str:
    return str(s)


def _load(args) -> Context:
    path = args.context or os.environ.get("ROUGHGRAN_CONTEXT")
    if not path:
        raise DomainError("no context file: pass --context or set ROUGHGRAN_CONTEXT")
    return parse_context(path)


def _space_kind(rel: Relation, wanted: str | None) -> str:
    if wanted:
        return wanted
    if rel.is_equivalence():
        return "equivalence"
    if rel.is_tolerance():
        return "tolerance"
    if rel.has("reflexive"):
        return "reflexive"
    if rel.is_partial_equivalence():
        return "partial-equivalence"
    raise DomainError("relation is not reflexive, tolerance or partial equivalence; pass --space")


# approx --------------------------------------------------------------------------------

def cmd_approx(args) -> Report:
    ctx = _load(args)
    X = parse_set(ctx.universe, args.set)
    op = args.op
    sources = sum(bool(s) for s in (args.cover, args.relation, args.granules))
    if sources != 1:
        raise DomainError("give exactly one of --cover, --relation or --granules")
    if args.granules:
        if op not in GRANULE_OPS:
            raise DomainError(f"granule families support {', '.join(GRANULE_OPS)}")
        out = generic_granule_approx(ctx.granule_family(args.granules), X, op)
        source = f"granules {args.granules}"
    elif args.cover:
        cs = ctx.cover(args.cover)
        source = f"cover {args.cover}"
        if op in cv.AUAI_KINDS:
            out = cv.auai(cs, X, op)
        elif op in cv.UPLUS_KINDS:
            out = cv.uplus(cs, X, op)
        elif op in ("l6+", "u6+"):
            out = cv.nbd_pair(cs, X, op)
        elif op in cv.LP_LM_KINDS:
            out = cv.lp_lm(cs, X, op)
        elif op in GRANULE_OPS:
            out = generic_granule_approx(cs.blocks, X, op)
        else:
            raise DomainError(f"unknown cover approximation {op!r}")
    else:
        rels = [ctx.relation(r) for r in args.relation]
        source = "relation " + " ".join(args.relation)
        if op in MULTI_OPS:
            out = multi_approx(ApproxSpace.multiple(rels), X, op)
        else:
            if len(rels) != 1:
                raise DomainError(f"{op} takes a single relation")
            rel = rels[0]
            kind = _space_kind(rel, args.space)
            sp = ApproxSpace.of(rel, kind)
            if op in TOLERANCE_OPS:
                out = tolerance_ops(sp, X, op)
            elif op in ("l", "u"):
                fn = {"equivalence": classical, "partial-equivalence": esoteric,
                      "reflexive": reflexive_approx, "tolerance": reflexive_approx}[kind]
                if kind == "tolerance":
                    sp = ApproxSpace.of(rel, "reflexive")
                out = fn(sp, X, "lower" if op == "l" else "upper")
            elif op in GRANULE_OPS:
                fam = granule_family(sp, args.family or ("classes" if kind == "equivalence" else "T"))
                out = generic_granule_approx(fam, X, op)
            else:
                raise DomainError(f"unknown relation approximation {op!r}")
    return [_set(out)], {"op": op, "source": source, "set": _set(X), "result": _set(out)}


# granules ------------------------------------------------------------------------------

def cmd_granules(args) -> Report:
    ctx = _load(args)
    if bool(args.cover) == bool(args.relation):
        raise DomainError("give exactly one of --cover or --relation")
    if args.relation:
        rel = ctx.relation(args.relation)
        fam_kind = args.family or ("classes" if rel.is_equivalence() else "T")
        if fam_kind not in FAMILY_KINDS:
            raise DomainError(f"relation families are {', '.join(FAMILY_KINDS)}")
        sp = ApproxSpace.of(rel, _space_kind(rel, args.space))
        fam = list(granule_family(sp, fam_kind))
        return [_set(g) for g in fam], {"family": fam_kind, "granules": [_set(g) for g in fam]}
    cs = ctx.cover(args.cover)
    kind = args.family or "table"
    if kind not in COVER_FAMILIES:
        raise DomainError(f"cover families are {', '.join(COVER_FAMILIES)}")
    u = cs.universe
    if kind == "table":
        rows = []
        for x in u:
            rows.append({"element": x, "nbd": _set(cv.nbd(cs, x)), "Fr": _set(cv.friends(cs, x)),
                         "Md": cv.minimal_description(cs, x)})
        lines = [f"{r['element']}  nbd={r['nbd']}  Fr={r['Fr']}  Md={' '.join(r['Md']) or '-'}"
                 for r in rows]
        return lines, {"family": kind, "rows": rows}
    if kind == "blocks":
        fam = list(zip(cs.names, cs.blocks))
    elif kind == "nbd":
        fam = [(x, cv.nbd(cs, x)) for x in u]
    elif kind == "Fr":
        fam = [(x, cv.friends(cs, x)) for x in u]
    elif kind == "pi":
        fam = [(f"P{i + 1}", g) for i, g in enumerate(cv.pi_cover(cs))]
    else:
        red = cv.covering_reduct(cs, iterate=args.iterate_reduct)
        fam = list(zip(red.names, red.blocks))
    lines = [f"{n}  {_set(g)}" for n, g in fam]
    return lines, {"family": kind, "granules": [{"name": n, "set": _set(g)} for n, g in fam]}


# axioms --------------------------------------------------------------------------------

def cmd_axioms(args) -> Report:
    if args.list:
        lines = [f"{t.key:17} {t.kind:20} {t.title}" for t in THEORIES]
        return lines, {"theories": [{"key": t.key, "kind": t.kind, "title": t.title,
                                     "holds": list(t.holds), "fails": list(t.fails)}
                                    for t in THEORIES]}
    if args.suite:
        res = evaluate_all(random_count=args.samples, seed=args.seed)
        lines = [r.describe() for r in res]
        bad = sum(not r.ok for r in res)
        lines.append(f"{len(res) - bad}/{len(res)} claims confirmed")
        return lines, {"claims": [{"theory": r.theory, "axiom": r.axiom, "expected": r.expected,
                                   "ok": r.ok, "detail": r.detail} for r in res],
                       "confirmed": len(res) - bad, "total": len(res)}
    if not args.theory:
        raise DomainError("pass --theory (see --list)")
    th = theory(args.theory)
    if args.cover or args.relation:
        ctx = _load(args)
        if args.cover:
            inst = Instance(args.cover, "cover", ctx.cover(args.cover))
        elif th.kind == "multiple":
            inst = Instance("+".join(args.relation), "multiple",
                            tuple(ctx.relation(r) for r in args.relation))
        else:
            inst = Instance(args.relation[0], th.kind, ctx.relation(args.relation[0]))
        if inst.kind != th.kind:
            raise DomainError(f"theory {th.key} needs a {th.kind} instance")
    else:
        ctx = None
        inst = canonical_instances(th.kind)[0]
    rys, G = th.build(inst)
    if args.granules:
        if ctx is None:
            ctx = _load(args)
        G = GranuleSet.of(rys, [g for g in ctx.granule_family(args.granules) if g])
    axioms = args.axiom or list(th.holds + th.fails)
    for a in axioms:
        if a not in AXIOMS and a not in ("AS", "LU", "LCG", "SRA"):
            raise DomainError(f"unknown axiom {a!r}")
    rows, lines = [], [f"theory {th.key} on {inst.name}"]
    for a in axioms:
        r = check_axiom(rys, G, a)
        expected = "holds" if a in th.holds else "fails" if a in th.fails else "-"
        lines.append(f"{a:6} {r.describe()}")
        rows.append({"axiom": a, "holds": r.holds, "expected": expected,
                     "witness": r.describe() if not r.holds else ""})
    return lines, {"theory": th.key, "instance": inst.name, "axioms": rows}


# count ---------------------------------------------------------------------------------

def cmd_count(args) -> Report:
    ctx = _load(args)
    rel = ctx.relation(args.relation)
    scheme = args.scheme.upper()
    if args.max_order:
        seq = max_ipc_order(ctx.universe, rel)
        scheme = "IPC"
    else:
        if not args.sequence:
            raise DomainError("pass --sequence or --max-order")
        seq = CountedSequence.of(rel, ctx.sequence(args.sequence))
    c = count(seq, scheme)
    text = c.render()
    return [text], {"scheme": scheme, "sequence": seq.names(), "count": text}


# measure -------------------------------------------------------------------------------

def cmd_measure(args) -> Report:
    ctx = _load(args)
    R, Q = ctx.relation(args.R), ctx.relation(args.Q)
    u = ctx.universe
    d = measures.delta(u, R, Q)
    g = measures.gk(u, R, Q)
    c = measures.cons(u, R, Q, args.n)
    gc = measures.gcons(u, R, Q, args.n)
    vec = lambda v: "(" + ", ".join(_ratio(x) for x in v) + ")"
    lines = [f"pos = {_set(measures.pos(u, R, Q))}", f"delta = {_ratio(d)}", f"gk = {vec(g)}",
             f"cons = {_ratio(c)}", f"gcons = {vec(gc)}"]
    doc = {"pos": _set(measures.pos(u, R, Q)), "delta": _ratio(d), "gk": [_ratio(x) for x in g],
           "cons": _ratio(c), "gcons": [_ratio(x) for x in gc], "n": args.n}
    return lines, doc


# roughnat ------------------------------------------------------------------------------

def cmd_roughnat(args) -> Report:
    if args.action == "eval":
        v = roughnat.evaluate(args.expr)
        if v is None:
            raise DomainError(f"{args.expr!r} is undefined")
        text = v.render()
        return [text], {"expr": args.expr, "value": text, "pattern": v.pattern() if v.nu else "0",
                        "count": v.count().render()}
    if args.action == "order":
        x, y = roughnat.RoughNatural.parse(args.x), roughnat.RoughNatural.parse(args.y)
        kind = roughnat.ORDER_ALIASES.get(args.kind, args.kind)
        holds = roughnat.order(x, y, kind)
        return [f"{x.render()} {kind} {y.render()}: {'yes' if holds else 'no'}"], \
            {"x": x.render(), "y": y.render(), "order": kind, "holds": holds}
    res = roughalg.algebra_suite(args.suite, samples=args.samples, exhaustive_len=args.exhaustive_len,
                                 seed=args.seed)
    return roughalg.format_report(res).splitlines(), {
        "suite": args.suite,
        "items": [{"name": r.name, "holds": r.holds, "checked": r.checked,
                   "witness": r.describe() if not r.holds else ""} for r in res]}


# fuzzy ---------------------------------------------------------------------------------

def _points(raw):
    try:
        return [Fraction(p) for p in raw]
    except (ValueError, ZeroDivisionError) as e:
        raise DomainError(f"bad level: {e}") from None


def cmd_fuzzy(args) -> Report:
    ctx = _load(args)
    if args.action == "to-partition":
        f = ctx.fuzzy_set(args.fuzzy)
        cells = fz.construction1(f, _points(args.points) if args.points else None)
        return [_set(c) for c in cells], {"cells": [_set(c) for c in cells]}
    cells = list(ctx.granule_family(args.granules))
    pts = _points(args.points) if args.points else \
        [Fraction(i, len(cells)) for i in range(len(cells) + 1)]
    f = fz.reverse_transform(cells, pts)
    lines = [f"level {_ratio(p)} : {' '.join(A.names())}".rstrip() for p, A in f.levels]
    return lines, {"levels": [{"level": _ratio(p), "set": _set(A)} for p, A in f.levels]}


# cipca ---------------------------------------------------------------------------------

def cmd_cipca(args) -> Report:
    ctx = _load(args)
    cp = build_cipca(ctx.universe, ctx.relation(args.relation))
    cert = certificate(cp)
    k = len(cp.counts)
    dens = Fraction(sum(v is not None for v in cp.table.values()), k * k) if k else Fraction(0)
    lines = [f"classes = {k}", f"density = {_ratio(dens)}", cert.describe()]
    doc = {"classes": k, "density": _ratio(dens), "well_defined": cert.holds,
           "certificate": cert.describe(), "counts": [c.render() for c in cp.counts]}
    if args.table:
        lines.append("counts: " + "; ".join(f"{i}={c.render()}" for i, c in enumerate(cp.counts)))
        for a in range(k):
            lines.append(" ".join("-" if cp.table[a, b] is None else str(cp.table[a, b])
                                  for b in range(k)))
        doc["table"] = [[cp.table[a, b] for b in range(k)] for a in range(k)]
    return lines, doc


# wiring --------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    def globals_(parser, default):
        parser.add_argument("-c", "--context", default=default,
                            help="context file (default: $ROUGHGRAN_CONTEXT)")
        parser.add_argument("--json", action="store_true", default=default or False,
                            help="emit a JSON document")

    # accepted before or after the command; SUPPRESS keeps a later omission
    # from clobbering an earlier value
    common = argparse.ArgumentParser(add_help=False)
    globals_(common, argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="roughgran", description="Rough set granulation toolkit.")
    globals_(p, None)
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("approx", parents=[common], help="approximate a set")
    a.add_argument("--op", required=True)
    a.add_argument("--set", required=True, help='e.g. "{a,b}"')
    a.add_argument("--cover")
    a.add_argument("--relation", action="append", help="repeat for multiple-space operators")
    a.add_argument("--granules", help="a granule family from the context")
    a.add_argument("--space", choices=SPACE_KINDS)
    a.add_argument("--family", choices=FAMILY_KINDS)
    a.set_defaults(func=cmd_approx)

    g = sub.add_parser("granules", parents=[common], help="list a granule family")
    g.add_argument("--relation")
    g.add_argument("--cover")
    g.add_argument("--family", help=f"relation: {'|'.join(FAMILY_KINDS)}; cover: {'|'.join(COVER_FAMILIES)}")
    g.add_argument("--space", choices=SPACE_KINDS)
    g.add_argument("--iterate-reduct", action="store_true", help="repeat reduction to a fixpoint")
    g.set_defaults(func=cmd_granules)

    x = sub.add_parser("axioms", parents=[common], help="check granule axioms")
    x.add_argument("--theory")
    x.add_argument("--relation", action="append")
    x.add_argument("--cover")
    x.add_argument("--granules", help="override the theory's granules with a context family")
    x.add_argument("--axiom", action="append")
    x.add_argument("--list", action="store_true", help="list theories")
    x.add_argument("--suite", action="store_true", help="check every theory's claims")
    x.add_argument("--samples", type=int, default=15)
    x.add_argument("--seed", type=int, default=0)
    x.set_defaults(func=cmd_axioms)

    c = sub.add_parser("count", parents=[common], help="count a sequence")
    c.add_argument("--scheme", default="ipc", type=str.lower, choices=["ipc", "hpc", "hppc", "ippc"])
    c.add_argument("--relation", required=True)
    c.add_argument("--sequence")
    c.add_argument("--max-order", action="store_true", help="count the order with the most resets")
    c.set_defaults(func=cmd_count)

    m = sub.add_parser("measure", parents=[common], help="dependency and consistency degrees")
    m.add_argument("--R", required=True)
    m.add_argument("--Q", required=True)
    m.add_argument("--n", type=int, default=1, help="consistency constant")
    m.set_defaults(func=cmd_measure)

    r = sub.add_parser("roughnat", parents=[common], help="rough natural arithmetic")
    rs = r.add_subparsers(dest="action", required=True)
    e = rs.add_parser("eval", parents=[common])
    e.add_argument("expr")
    o = rs.add_parser("order", parents=[common])
    o.add_argument("x")
    o.add_argument("y")
    o.add_argument("--kind", default="sub")
    s = rs.add_parser("suite", parents=[common])
    s.add_argument("suite", choices=roughalg.SUITES)
    s.add_argument("--samples", type=int, default=2000)
    s.add_argument("--exhaustive-len", type=int, default=4)
    s.add_argument("--seed", type=int, default=0)
    r.set_defaults(func=cmd_roughnat)

    f = sub.add_parser("fuzzy", parents=[common], help="fuzzy chains and partitions")
    fs = f.add_subparsers(dest="action", required=True)
    t = fs.add_parser("to-partition", parents=[common])
    t.add_argument("--fuzzy", required=True)
    t.add_argument("--points", nargs="+")
    b = fs.add_parser("from-partition", parents=[common])
    b.add_argument("--granules", required=True)
    b.add_argument("--points", nargs="+")
    f.set_defaults(func=cmd_fuzzy)

    q = sub.add_parser("cipca", parents=[common], help="permutation quotient by IPC count")
    q.add_argument("--relation", required=True)
    q.add_argument("--table", action="store_true")
    q.set_defaults(func=cmd_cipca)
    return p


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    func: Callable = args.func
    try:
        lines, doc = func(args)
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    if args.json:
        doc = {"command": args.command, **doc}
        out.write(json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    return 0


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(argv))
