"""Command-line surface for the library: ``sg <command> ...``.

Reports go to stdout, diagnostics to stderr.  Exit codes: 0 for success or
an affirmative verdict, 1 for a negative verdict, 2 for input errors, 3
when a desk-scale limit refuses the instance.  Graph files use the ``sg``
text format; ``-`` (the default) reads from stdin so commands pipe.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import decompose, flows, oracle
from .core import (DeskScaleError, Orientation, SignedGraph,
                   edge_connectivity, format_sg, is_balanced,
                   is_cyclically_k_edge_connected, is_k_unbalanced,
                   min_negative_edges, parse_sg)
from .duality import format_emb, k6_projective_embedding, match_dual, \
    oriented_dual, parse_emb
from .generators import k4_negative_triangle, negsun, petersen, petersen_2neg
from .groups import format_map, parse_group, parse_map
from .structures import k_closure

EXIT_OK = 0
EXIT_NO = 1
EXIT_INPUT = 2
EXIT_SCALE = 3


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_graph(path: str) -> SignedGraph:
    return parse_sg(_read_text(path))


# -- subcommands -------------------------------------------------------------

def _cmd_check(args) -> int:
    g = _load_graph(args.file)
    if args.kind == "balance":
        res = is_balanced(g)
        if res.balanced:
            print("balanced")
            return EXIT_OK
        cyc = " ".join(str(e + 1) for e in sorted(res.negative_cycle))
        print(f"unbalanced negative-cycle {cyc}")
        return EXIT_NO
    if args.kind == "unbalanced":
        mne = min_negative_edges(g, budget=2)
        label = ">2" if mne is None else str(mne)
        two = is_k_unbalanced(g, 2)
        print(f"min-negative-edges {label}")
        print(f"2-unbalanced {'yes' if two else 'no'}")
        return EXIT_OK if two else EXIT_NO
    if args.kind == "connectivity":
        k = edge_connectivity(g)
        print(f"edge-connectivity {k}")
        return EXIT_OK if k >= 3 else EXIT_NO
    if args.kind == "cyclic-connectivity":
        ok = is_cyclically_k_edge_connected(g, 4)
        print(f"cyclically-4-edge-connected {'yes' if ok else 'no'}")
        return EXIT_OK if ok else EXIT_NO
    raise ValueError(f"unknown check {args.kind!r}")


def _cmd_gen(args) -> int:
    name = args.name
    if name == "petersen-ps":
        sys.stdout.write(format_sg(petersen()))
    elif name == "petersen-2neg":
        sys.stdout.write(format_sg(petersen_2neg()))
    elif name == "k4-negtri":
        sys.stdout.write(format_sg(k4_negative_triangle()))
    elif name == "negsun":
        if args.n is None:
            raise ValueError("negsun needs a size argument, e.g. 'sg gen negsun 4'")
        sys.stdout.write(format_sg(negsun(args.n)))
    elif name == "k6-projective":
        sys.stdout.write(format_emb(k6_projective_embedding()))
    else:
        raise ValueError(f"unknown generator {name!r}")
    return EXIT_OK


def _parse_edge_list(text: str, m: int) -> set[int]:
    out = set()
    for tok in text.replace(",", " ").split():
        e = int(tok) - 1
        if not (0 <= e < m):
            raise ValueError(f"edge index {tok} out of range 1..{m}")
        out.add(e)
    return out


def _cmd_closure(args) -> int:
    g = _load_graph(args.file)
    seed = _parse_edge_list(args.seed_edges, g.m)
    res = k_closure(g, seed, args.k)
    print(f"closure {len(res.closure)} of {g.m}")
    print("edges: " + " ".join(str(e + 1) for e in sorted(res.closure)))
    for i, (cyc, w) in enumerate(res.steps, start=1):
        ce = " ".join(str(e + 1) for e in cyc.edges)
        we = " ".join(str(e + 1) for e in sorted(w))
        print(f"step {i}: cycle {ce} absorbed {we}")
    return EXIT_OK if res.closure == frozenset(range(g.m)) else EXIT_NO


def _cmd_decompose(args) -> int:
    g = _load_graph(args.file)
    if args.mode == "tree-2base":
        cert = decompose.decompose_tree_2base(g)
    elif args.mode == "base-sun":
        cert = decompose.decompose_base_sun(g)
    elif args.mode == "general":
        cert = decompose.decompose_general(g)
    else:
        raise ValueError(f"unknown decomposition mode {args.mode!r}")
    sys.stdout.write(decompose.format_certificate(cert))
    return EXIT_OK


def _cmd_connect(args) -> int:
    g = _load_graph(args.file)
    A = parse_group(args.group)
    if args.forbidden is not None:
        fbar = parse_map(_read_text(args.forbidden), A, g.m)
    else:
        fbar = [A.zero] * g.m
    embedding = None
    if args.hint is not None:
        kind, _, path = args.hint.partition(":")
        if kind != "projective" or not path:
            raise ValueError("hint must look like projective:EMBFILE")
        embedding = match_dual(parse_emb(_read_text(path)), g)
    cert = flows.connect(g, A, fbar, embedding=embedding)
    sys.stdout.write(flows.format_avoidance(cert))
    return EXIT_OK if cert.flow is not None else EXIT_NO


def _cmd_oracle(args) -> int:
    g = _load_graph(args.file)
    if args.kind == "a-connected":
        if args.group is None:
            raise ValueError("a-connected needs --group")
        A = parse_group(args.group)
        samples = None if args.samples is None else args.samples
        verdict = oracle.is_A_connected(g, A, samples=samples, seed=args.seed)
        print(f"a-connected {verdict.status} checked {verdict.checked}")
        if verdict.status == "no":
            beta = " ".join(",".join(map(str, b)) for b in verdict.witness_beta)
            print(f"witness-boundary {beta}")
            if verdict.witness_fbar is not None:
                fb = " ".join(",".join(map(str, b)) for b in verdict.witness_fbar)
                print(f"witness-forbidden {fb}")
        return EXIT_OK if verdict.status in ("yes", "sampled-yes") else EXIT_NO
    if args.kind == "nz-flow":
        if args.group is None:
            raise ValueError("nz-flow needs --group")
        A = parse_group(args.group)
        sol = oracle.has_nz_A_flow(g, A)
        if sol is None:
            print("UNSAT")
            return EXIT_NO
        print("flow")
        sys.stdout.write(format_map(sol))
        return EXIT_OK
    if args.kind == "k-flow":
        if args.k is None:
            raise ValueError("k-flow needs --k")
        sol = oracle.has_nz_k_flow(g, args.k)
        if sol is None:
            print("UNSAT")
            return EXIT_NO
        print("flow")
        for e, v in enumerate(sol):
            print(f"{e} {v}")
        return EXIT_OK
    raise ValueError(f"unknown oracle query {args.kind!r}")


def _cmd_dual(args) -> int:
    eg = parse_emb(_read_text(args.embfile))
    res = oriented_dual(eg)
    sys.stdout.write(format_sg(res.graph))
    return EXIT_OK


def _cmd_verify(args) -> int:
    cert_text = _read_text(args.certfile)
    g = _load_graph(args.graphfile)
    head = cert_text.lstrip().split(None, 1)
    if not head:
        raise ValueError("empty certificate file")
    if head[0] == "part":
        cert = decompose.parse_certificate(cert_text)
        ok, why = decompose.verify_partition(g, cert)
        print("OK" if ok else f"FAIL {why}")
        return EXIT_OK if ok else EXIT_NO
    if head[0] == "cert":
        acert = flows.parse_avoidance(cert_text)
        if len(acert.fbar) < g.m:
            acert.fbar.extend([acert.group.zero] * (g.m - len(acert.fbar)))
            if acert.flow is not None:
                acert.flow.extend([acert.group.zero] * (g.m - len(acert.flow)))
        ok = flows.verify_avoidance(g, acert)
        print("OK" if ok else "FAIL")
        return EXIT_OK if ok else EXIT_NO
    raise ValueError(f"unrecognized certificate header {head[0]!r}")


# -- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="sg",
        description="signed-graph flows, decompositions and connectivity")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="structural predicates")
    p.add_argument("kind", choices=["balance", "unbalanced", "connectivity",
                                    "cyclic-connectivity"])
    p.add_argument("file", nargs="?", default="-")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("gen", help="write a named example graph")
    p.add_argument("name", choices=["petersen-ps", "petersen-2neg", "negsun",
                                    "k4-negtri", "k6-projective"])
    p.add_argument("n", nargs="?", type=int, default=None,
                   help="size parameter (negsun only)")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("closure", help="k-closure of a seed edge set")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--seed-edges", required=True,
                   help="1-based edge indices, comma or space separated")
    p.add_argument("file", nargs="?", default="-")
    p.set_defaults(func=_cmd_closure)

    p = sub.add_parser("decompose", help="edge-partition certificates")
    p.add_argument("mode", choices=["tree-2base", "base-sun", "general"])
    p.add_argument("file", nargs="?", default="-")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("connect", help="build an avoidance flow certificate")
    p.add_argument("--group", required=True, help="e.g. Z6 or Z2xZ2xZ2")
    p.add_argument("--forbidden", default=None, metavar="MAPFILE",
                   help="edge map of forbidden values (default all-zero)")
    p.add_argument("--hint", default=None, metavar="projective:EMBFILE",
                   help="route through an embedded primal's oriented dual")
    p.add_argument("file", nargs="?", default="-")
    p.set_defaults(func=_cmd_connect)

    p = sub.add_parser("oracle", help="exhaustive ground-truth queries")
    p.add_argument("kind", choices=["a-connected", "nz-flow", "k-flow"])
    p.add_argument("--group", default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--exact", action="store_true",
                   help="exact enumeration (the default)")
    p.add_argument("--samples", type=int, default=None,
                   help="sampling mode: number of (boundary, map) samples")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("file", nargs="?", default="-")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("dual", help="oriented dual of an embedding")
    p.add_argument("embfile")
    p.set_defaults(func=_cmd_dual)

    p = sub.add_parser("verify", help="re-check a certificate against a graph")
    p.add_argument("certfile")
    p.add_argument("graphfile", nargs="?", default="-")
    p.set_defaults(func=_cmd_verify)
    return top


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    # argparse cannot match a trailing FILE once an earlier positional and
    # options split the positionals into two runs (e.g. 'oracle k-flow
    # --k 5 FILE'); absorb a single leftover argument as the file.
    args, extra = parser.parse_known_args(argv)
    if extra:
        if (len(extra) == 1
                and (extra[0] == "-" or not extra[0].startswith("-"))
                and getattr(args, "file", None) == "-"):
            args.file = extra[0]
        else:
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
    try:
        return args.func(args)
    except DeskScaleError as exc:
        print(f"desk-scale limit: {exc}", file=sys.stderr)
        return EXIT_SCALE
    except (ValueError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
