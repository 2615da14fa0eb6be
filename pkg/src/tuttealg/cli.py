"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage or parse error, 3 resource cap hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .errors import InternalConsistencyError, ResourceError, TutteAlgError
from .exactalg import MultiPoly, parse_rational

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

COMPUTE = ("z", "zhat", "connected", "chromatic", "lambda")
SEQUENCES = ("cn", "zn", "inv", "zna", "ync")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _substitutions(items: Sequence[str] | None) -> dict:
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise argparse.ArgumentTypeError(f"--set expects name=p/q, got {item!r}")
        out[name.strip()] = parse_rational(value)
    return out


def _emit_poly(p: MultiPoly, as_json: bool) -> None:
    if as_json:
        print(json.dumps(p.to_json(), separators=(",", ":")))
    else:
        print(p.to_text())


def _cmd_compute(args) -> int:
    from .graphs import MultiGraph
    from . import tutte

    g = MultiGraph.load(args.graph)
    fn = {
        "z": tutte.z_poly,
        "zhat": tutte.zhat,
        "connected": tutte.connected_poly,
        "chromatic": tutte.chromatic,
        "lambda": tutte.connected_lambda,
    }[args.command]
    p = fn(g)
    subs = _substitutions(args.set)
    if subs:
        p = p.subs(subs)
    _emit_poly(p, args.json)
    return EXIT_OK


def _terms(items: Sequence[str] | None, prefix: str, n: int):
    from .complete import PolySequence, symbolic_sequence

    if not items:
        return symbolic_sequence(prefix, n)
    if len(items) < n:
        raise argparse.ArgumentTypeError(f"--term given {len(items)} times but --n is {n}")
    return PolySequence(tuple(MultiPoly.parse(t) for t in items[:n]), 1, prefix)


def _cmd_seq(args) -> int:
    from . import complete

    n = args.n
    if args.name == "cn":
        seq = complete.cn_linear(n) if args.mode in (None, "linear") else complete.cn_nonlinear(n)
    elif args.name == "zn":
        seq = complete.zn_sequence(n, args.mode or "from_cn")
    elif args.name == "inv":
        seq = complete.inversion_enumerator(n, args.mode or "recursion")
    elif args.name == "zna":
        seq = complete.zn_of_family(_terms(args.term, "a", n), n, args.mode or "partition")
    else:
        seq = complete.yn_of_family(_terms(args.term, "c", n), n, args.mode or "partition")
    subs = _substitutions(args.set)
    if subs:
        seq = seq.subs(subs)
    print(json.dumps(seq.to_text(), separators=(",", ":")))
    return EXIT_OK


def _cmd_family(args) -> int:
    from . import families

    alpha, beta = MultiPoly.parse(args.alpha), MultiPoly.parse(args.beta)
    if args.connected:
        c = families.classic_connected(args.name, args.cap, alpha, beta)
        data = {families.index_key(k): c[k].to_text() for k in c.indices()}
    else:
        data = families.classic_family(args.name, args.cap, alpha, beta).to_json()
    print(json.dumps(data, separators=(",", ":")))
    return EXIT_OK


def _cmd_mobius(args) -> int:
    from .mobius import mu_q1q2_matrix

    m = mu_q1q2_matrix(args.size, MultiPoly.parse(args.q1), MultiPoly.parse(args.q2))
    print(m.dumps())
    return EXIT_OK


def _cmd_blowup(args) -> int:
    from .graphs import MultiGraph, blowup_clique, blowup_independent

    g = MultiGraph.load(args.graph)
    try:
        counts = [int(c) for c in args.counts.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"--counts expects integers, got {args.counts!r}") from None
    h = blowup_clique(g, counts) if args.clique else blowup_independent(g, counts)
    print(h.dumps())
    return EXIT_OK


def _cmd_check(args) -> int:
    from .identities import corpus_from_files, run_suite
    from .report import all_passed

    corpus = corpus_from_files(args.corpus) if args.corpus else None
    reports = run_suite(corpus, args.suite, threads=args.threads, max_n=args.max_n)
    for r in reports:
        print(r.to_line())
    return EXIT_OK if all_passed(reports) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tuttealg", description="Exact multivariate Tutte polynomial toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMPUTE:
        c = sub.add_parser(name, help=f"compute {name} for a graph file")
        c.add_argument("graph", help="graph JSON file")
        c.add_argument("--set", action="append", metavar="NAME=P/Q",
                       help="substitute an exact rational for a variable")
        c.add_argument("--json", action="store_true", help="emit structured JSON")
        c.set_defaults(run=_cmd_compute)

    s = sub.add_parser("seq", help="complete-graph and family sequences")
    s.add_argument("name", choices=SEQUENCES)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--mode", help="recursion or route (per sequence)")
    s.add_argument("--term", action="append", help="sequence entry 1, 2, ... for zna/ync")
    s.add_argument("--set", action="append", metavar="NAME=P/Q")
    s.set_defaults(run=_cmd_seq)

    f = sub.add_parser("family", help="closed-form binomial-type family")
    f.add_argument("name")
    f.add_argument("--cap", type=int, default=4)
    f.add_argument("--alpha", default="1")
    f.add_argument("--beta", default="1")
    f.add_argument("--connected", action="store_true", help="print the connected coefficients")
    f.set_defaults(run=_cmd_family)

    m = sub.add_parser("mobius", help="dump the q1-q2 Möbius matrix of Pi_n")
    m.add_argument("--size", type=int, required=True)
    m.add_argument("--q1", default="q1")
    m.add_argument("--q2", default="q2")
    m.set_defaults(run=_cmd_mobius)

    b = sub.add_parser("blowup", help="independent-set or clique blow-up of a graph")
    b.add_argument("graph")
    b.add_argument("--counts", required=True, help="comma-separated copies per vertex")
    b.add_argument("--clique", action="store_true")
    b.set_defaults(run=_cmd_blowup)

    k = sub.add_parser("check", help="run an identity suite")
    k.add_argument("suite")
    k.add_argument("--max-n", type=int, default=6)
    k.add_argument("--corpus", nargs="+", metavar="FILE")
    k.add_argument("--threads", type=int)
    k.set_defaults(run=_cmd_check)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InternalConsistencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (TutteAlgError, argparse.ArgumentTypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
