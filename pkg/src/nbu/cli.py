"""Command-line front end: ``nbu <command> ...``.

Exit codes: 0 on success, 1 on bad input (unreadable file, parse error,
invalid graph or order), 2 when a verification finds a mismatch.
"""

from __future__ import annotations

import argparse
import gc
import json
import random
import sys

import numpy as np

from .chains import enumerate_chains
from .eigenfunctions import export_basis, unitary_basis, verify_eigenfunction
from .graph import (GraphError, Multigraph, ParseError, bouquet, complete_bipartite,
                    complete_graph, cycle_graph, format_graph, glue, parse_graph,
                    random_multigraph, subdivide, theta_graph)
from .multiplicity import component_terms, core_components, gluing_sites, gm, unitary_spectrum
from .nb_operator import DEFAULT_TOL, DenseCapError
from .oracle import brute_spectrum

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH = 0, 1, 2


class InputError(Exception):
    pass


def _load(path: str) -> Multigraph:
    try:
        if path == "-":
            return parse_graph(sys.stdin.read())
        with open(path) as fh:
            return parse_graph(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except ParseError as exc:
        raise InputError(f"{path}: line {exc.lineno}: {exc}") from None


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _spectrum_json(g: Multigraph, full: bool) -> dict:
    report = unitary_spectrum(g)

    def entry(e):
        d = {"q": e.q, "gm": e.gm}
        if full and e.am is not None:
            d["am"] = e.am
        return d

    out = {"orders": [entry(e) for e in report.orders]}
    if full:
        out["components"] = [
            {"nodes": [g.labels[v] for v in c.nodes], "n": c.n, "m": c.m,
             "circle": c.circle, "orders": [entry(e) for e in c.orders]}
            for c in report.components]
    return out


def cmd_gm(args, out) -> int:
    g = _load(args.file)
    value = gm(g, args.order)
    out.write(_dump({"q": args.order, "gm": value}) + "\n" if args.json else f"gm={value}\n")
    return EXIT_OK


def cmd_spectrum(args, out) -> int:
    g = _load(args.file)
    if args.json:
        out.write(_dump(_spectrum_json(g, args.full)) + "\n")
        return EXIT_OK
    report = unitary_spectrum(g)
    if not report.orders:
        out.write("no unitary eigenvalues\n")
    for e in report.orders:
        am = f" am={e.am}" if e.am is not None else ""
        out.write(f"q={e.q} gm={e.gm}{am}\n")
    return EXIT_OK


def _chain_rows(g: Multigraph, q: int | None) -> list[dict]:
    rows = []
    lab = g.labels
    for comp in core_components(g):
        h = comp.graph
        hl = [lab[v] for v in comp.nodes]
        structure = enumerate_chains(h)
        if structure.is_circle:
            rows.append({"circle": structure.circle, "nodes": sorted(hl)})
            continue
        if q is None or q <= 2:
            for c in structure.chains:
                rows.append({"a": hl[c.endpoint_a], "b": hl[c.endpoint_b],
                             "length": c.length,
                             "interior": [hl[v] for v in c.interior]})
            continue
        for t in component_terms(h, q):
            s = t.component
            rows.append({"n": s.n, "m": s.m, "r": s.r, "value": t.value,
                         "chains": [[hl[c.endpoint_a], hl[c.endpoint_b], c.length]
                                    for c in s.chains]})
    return rows


def cmd_chains(args, out) -> int:
    g = _load(args.file)
    rows = _chain_rows(g, args.order)
    if args.json:
        out.write(_dump(rows) + "\n")
        return EXIT_OK
    for row in rows:
        if "circle" in row:
            out.write(f"circle length={row['circle']} nodes={row['nodes']}\n")
        elif "value" in row:
            out.write(f"S_q n={row['n']} m={row['m']} r={row['r']} value={row['value']}\n")
            for a, b, p in row["chains"]:
                out.write(f"  {a} -> {b} length={p}\n")
        else:
            out.write(f"{row['a']} -> {row['b']} length={row['length']}\n")
    return EXIT_OK


def cmd_eigenbasis(args, out) -> int:
    g = _load(args.file)
    basis = unitary_basis(g, args.order)
    if args.check:
        expected = gm(g, args.order)
        worst = max((verify_eigenfunction(g, v, basis.lam).residual
                     for v in basis.functions), default=0.0)
        rank = int(np.linalg.matrix_rank(basis.matrix())) if len(basis) else 0
        ok = len(basis) == expected and rank == expected and worst <= args.tol
        out.write(f"functions={len(basis)} gm={expected} rank={rank} "
                  f"max_residual={worst:.3e} {'ok' if ok else 'FAILED'}\n")
        return EXIT_OK if ok else EXIT_MISMATCH
    out.write(_dump(export_basis(basis)) + "\n")
    return EXIT_OK


def cmd_sites(args, out) -> int:
    g = _load(args.file)
    if gm(g, args.order) == 0:
        raise InputError(f"order {args.order} has multiplicity 0; no gluing sites")
    sites = sorted(g.labels[v] for v in gluing_sites(g, args.order))
    if args.json:
        out.write(_dump({"q": args.order, "sites": sites}) + "\n")
    else:
        out.write("sites=" + " ".join(map(str, sites)) + "\n")
    return EXIT_OK


def _compare(g: Multigraph, max_order, tol, cap):
    fast = unitary_spectrum(g).as_dict()
    slow = dict(brute_spectrum(g, max_order, tol, cap))
    rows = [(q, fast.get(q, 0), slow.get(q, 0)) for q in sorted(set(fast) | set(slow))]
    return rows, fast == slow


def cmd_verify(args, out) -> int:
    g = _load(args.file)
    rows, same = _compare(g, args.max_order, args.tol, args.cap)
    for q, a, b in rows:
        out.write(f"q={q} algorithm={a} oracle={b} {'ok' if a == b else 'MISMATCH'}\n")
    out.write("match\n" if same else "mismatch\n")
    return EXIT_OK if same else EXIT_MISMATCH


def _label_pairs(text: str, g: Multigraph, h: Multigraph):
    pairs = []
    for item in text.split(","):
        try:
            a, b = (int(x) for x in item.split(":"))
        except ValueError:
            raise InputError(f"bad pair {item!r}, expected a:b") from None
        pairs.append((g.index_of(a), h.index_of(b)))
    return pairs


def cmd_gen(args, out) -> int:
    kind = args.kind
    if kind == "cycle":
        g = cycle_graph(args.n)
    elif kind == "complete":
        g = complete_graph(args.n)
    elif kind == "bipartite":
        g = complete_bipartite(args.a, args.b)
    elif kind == "bouquet":
        g = bouquet(args.k)
    elif kind == "theta":
        try:
            lengths = [int(x) for x in args.lengths.split(",")]
        except ValueError:
            raise InputError("theta lengths must be comma-separated integers") from None
        g = theta_graph(*lengths)
    elif kind == "subdivide":
        g = subdivide(_load(args.file), args.r).graph
    else:
        g1, g2 = _load(args.file1), _load(args.file2)
        g = glue(g1, g2, _label_pairs(args.pairs, g1, g2))
    out.write(format_graph(g))
    return EXIT_OK


def cmd_fuzz(args, out) -> int:
    rng = random.Random(args.seed)
    failures = skipped = 0
    for i in range(args.count):
        g = random_multigraph(rng, args.max_nodes, args.max_edges)
        try:
            _, same = _compare(g, None, args.tol, args.cap)
        except DenseCapError:
            skipped += 1
            continue
        if not same:
            failures += 1
            out.write(f"case {i}: mismatch on edges {list(g.edges)}\n")
    out.write(f"cases={args.count} skipped={skipped} mismatches={failures}\n")
    return EXIT_OK if failures == 0 else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="nbu", description="Unitary eigenvalues of non-backtracking matrices.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file", help="NBG edge list, or - for standard input")
        return sp

    sp = with_file("gm", "multiplicity of one order")
    sp.add_argument("--order", type=_positive, required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_gm)

    sp = with_file("spectrum", "all unitary eigenvalue orders")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--full", action="store_true",
                    help="include algebraic multiplicities and per-component rows")
    sp.set_defaults(func=cmd_spectrum)

    sp = with_file("chains", "chain decomposition, or S_q components with --order")
    sp.add_argument("--order", type=_positive)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_chains)

    sp = with_file("eigenbasis", "explicit eigenfunctions as JSON")
    sp.add_argument("--order", type=_positive, required=True)
    sp.add_argument("--check", action="store_true")
    sp.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL)
    sp.set_defaults(func=cmd_eigenbasis)

    sp = with_file("sites", "nodes usable for non-leaky gluing")
    sp.add_argument("--order", type=_positive, required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_sites)

    sp = with_file("verify", "compare against the dense oracle")
    sp.add_argument("--max-order", type=_positive)
    sp.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL)
    sp.add_argument("--cap", type=_positive)
    sp.set_defaults(func=cmd_verify)

    gen = sub.add_parser("gen", help="write a generated graph as NBG")
    gsub = gen.add_subparsers(dest="kind", required=True)
    gsub.add_parser("cycle").add_argument("n", type=_positive)
    gsub.add_parser("complete").add_argument("n", type=_positive)
    sp = gsub.add_parser("bipartite")
    sp.add_argument("a", type=_positive)
    sp.add_argument("b", type=_positive)
    gsub.add_parser("bouquet").add_argument("k", type=_positive)
    gsub.add_parser("theta").add_argument("lengths", help="e.g. 3,3,3")
    sp = gsub.add_parser("subdivide")
    sp.add_argument("file")
    sp.add_argument("r", type=_positive)
    sp = gsub.add_parser("glue")
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp.add_argument("--pairs", required=True, help="a:b,... node labels")
    gen.set_defaults(func=cmd_gen)

    sp = sub.add_parser("fuzz", help="random graphs checked against the oracle")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=_positive, default=100)
    sp.add_argument("--max-nodes", type=_positive, default=10)
    sp.add_argument("--max-edges", type=_positive, default=16)
    sp.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL)
    sp.add_argument("--cap", type=_positive)
    sp.set_defaults(func=cmd_fuzz)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    # One command builds many small tuples and no reference cycles; the
    # cyclic collector would only add pauses that grow with the graph.
    collecting = gc.isenabled()
    gc.disable()
    try:
        return args.func(args, out)
    except (InputError, GraphError, ValueError) as exc:
        print(f"nbu: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        if collecting:
            gc.enable()


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
