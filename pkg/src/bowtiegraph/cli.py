"""Command line front end.

Exit codes: 0 success, 2 configuration not found, 3 precondition or
validation failure (including bad arguments), 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import __version__
from .bowtie import (
    bowtie_vertex_identity,
    build_bowtie,
    check_vertex_bounds,
    component_report,
    triangle_bijection,
    two_path_correspondence,
)
from .certificate import parse_certificate, verify_certificate
from .gen import generate, parse_spec
from .hypergraph import HypergraphError, LinearHypergraph, linear_density, link_reduce, read_hlg, write_hlg
from .oracle import DEFAULT_BUDGET, has_configuration, min_span
from .search import NotFound, find_configuration

EXIT_OK = 0
EXIT_NOT_FOUND = 2
EXIT_PRECONDITION = 3
EXIT_IO = 4


class UsageError(HypergraphError):
    pass


def _fmt(value, machine: bool) -> str:
    if isinstance(value, bool):
        return ("1" if value else "0") if machine else ("yes" if value else "no")
    if isinstance(value, (tuple, list)):
        return ",".join(map(str, value)) if machine else " ".join(map(str, value))
    return str(value)


@dataclass
class RunReport:
    """Everything a command reports; rendered as text or as ``key=value`` records."""

    command: str
    digest: Optional[str] = None
    params: dict = field(default_factory=dict)
    outcome: str = ""
    counts: dict = field(default_factory=dict)
    records: list[str] = field(default_factory=list)
    exit_status: int = EXIT_OK
    timing: Optional[float] = None

    def render(self, machine: bool = False) -> str:
        rows = [("command", self.command)]
        if self.digest:
            rows.append(("input_digest", self.digest))
        rows += [(f"param.{k}", v) for k, v in self.params.items()]
        rows.append(("outcome", self.outcome))
        rows += list(self.counts.items())
        rows.append(("exit_status", self.exit_status))
        if self.timing is not None:
            rows.append(("seconds", f"{self.timing:.3f}"))
        if machine:
            lines = [f"{k}={_fmt(v, True)}" for k, v in rows]
        else:
            width = max(len(k) for k, _ in rows)
            lines = [f"{k:<{width}}  {_fmt(v, False)}" for k, v in rows]
        lines += self.records
        return "\n".join(lines) + "\n"


def _positive_fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _load(path: str) -> LinearHypergraph:
    g = read_hlg(path)
    g.require_valid()
    return g


def cmd_generate(args) -> RunReport:
    spec = parse_spec(args.spec, args.seed)
    g = generate(spec)
    rep = RunReport("generate", g.digest, {"spec": str(spec), "seed": args.seed})
    if args.output:
        write_hlg(g, args.output)
        rep.params["output"] = args.output
    rep.outcome = "written" if args.output else "stdout"
    rep.counts = {"n": g.n, "r": g.r, "t": g.t, "edges": g.m}
    if g.n >= g.r:
        rep.counts["density"] = linear_density(g)
    if not args.output:
        rep.records = g.to_hlg().splitlines()
    return rep


def cmd_stats(args) -> RunReport:
    g = _load(args.input)
    eps = args.epsilon
    rep = RunReport("stats", g.digest, {"epsilon": eps, "k": args.k}, outcome="verdicts")
    c = rep.counts
    c.update(n=g.n, r=g.r, t=g.t, edges=g.m)
    c["density"] = linear_density(g) if g.n >= g.r else "n/a"
    if g.t != 2:
        rep.outcome = "density-only (bow-tie analysis needs t=2)"
        return rep
    b = build_bowtie(g)
    direct, formula = bowtie_vertex_identity(g, b)
    c.update(bowties=b.num_vertices, triangles=len(b.triples), bowtie_edges=b.num_edges)
    c.update(identity_direct=direct, identity_formula=formula, identity_ok=direct == formula)
    tb = triangle_bijection(g, b)
    c.update(u_triangles_within=tb.within, u_triangles_across=tb.across, triangle_bijection_ok=tb.ok)
    tp = two_path_correspondence(g)
    c.update(two_paths_cross=tp.cross_paths, two_paths_total=tp.total_paths, two_path_ok=tp.ok)
    try:
        vb = check_vertex_bounds(g, eps, b)
        c.update(vertex_lower=vb.lower, vertex_upper=vb.upper, vertex_bounds_hold=vb.holds)
    except HypergraphError as exc:
        c["vertex_bounds"] = f"n/a ({exc})"
    if g.n:
        c["bowtie_edges_per_n3"] = Fraction(b.num_edges, g.n ** 3)
    cr = component_report(b, eps, args.k)
    c.update(cr.summary())
    rep.records = cr.records()
    return rep


def cmd_find(args) -> RunReport:
    g = _load(args.input)
    if args.k > g.m:
        raise UsageError(f"k={args.k} exceeds e(G)={g.m}")
    res = find_configuration(g, args.k, epsilon=args.epsilon)
    rep = RunReport("find", g.digest, {"k": args.k, "seed": args.seed})
    if isinstance(res, NotFound):
        rep.outcome = "not-found"
        rep.exit_status = EXIT_NOT_FOUND
        rep.counts = {"reason": res.reason, **res.report.summary()}
        rep.records = res.report.records()
        return rep
    text = res.to_text(g.digest)
    rep.outcome = "configuration"
    rep.counts = {"branch": res.branch, "edges": res.edges, "spanned": g.span(res.edges),
                  "bound": res.bound, "parts": len(res.parts())}
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        rep.params["output"] = args.output
    else:
        rep.records = ["certificate:"] + text.splitlines()
    return rep


def cmd_oracle(args) -> RunReport:
    g = _load(args.input)
    rep = RunReport("oracle", g.digest, {"k": args.k, "budget": args.budget})
    if args.s is not None:
        chk = has_configuration(g, args.s, args.k, budget=args.budget)
        res = chk.oracle
        rep.params["s"] = args.s
        rep.counts["has_configuration"] = chk.verdict.value
    else:
        res = min_span(g, args.k, budget=args.budget)
    rep.outcome = "exhaustive" if res.exhaustive else "inconclusive"
    rep.counts.update(min_span=res.min_span, witness=res.witness, examined=res.examined,
                      exhaustive=res.exhaustive)
    text = res.certificate(g.digest).to_text()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        rep.records = ["certificate:"] + text.splitlines()
    return rep


def cmd_verify(args) -> RunReport:
    g = _load(args.input)
    with open(args.certificate) as fh:
        cert = parse_certificate(fh.read())
    res = verify_certificate(g, cert)
    rep = RunReport("verify", g.digest, {"certificate": args.certificate})
    rep.outcome = "pass" if res.ok else "fail"
    rep.exit_status = EXIT_OK if res.ok else EXIT_PRECONDITION
    rep.counts = {"k": cert.k, "span": res.span if res.span is not None else "n/a",
                  "bound": cert.bound, "target": res.target, "meets_target": res.meets_target}
    rep.records = [f"problem: {p}" for p in res.problems]
    return rep


def cmd_reduce(args) -> RunReport:
    g = _load(args.input)
    v, link = link_reduce(g)
    link.require_valid()
    before, after = linear_density(g), linear_density(link)
    write_hlg(link, args.output)
    rep = RunReport("reduce", g.digest, {"output": args.output}, outcome="written")
    rep.counts = {"vertex": v, "degree": len(g.incidence[v]), "density_before": before,
                  "density_after": after, "nondecreasing": after >= before,
                  "n": link.n, "r": link.r, "t": link.t, "edges": link.m}
    return rep


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PRECONDITION, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bowtiegraph", description="Bow-tie graph analysis of linear hypergraphs.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, inp=True):
        if inp:
            sp.add_argument("--input", "-i", required=True, help="HLG v1 instance file")
        sp.add_argument("--machine", action="store_true", help="emit key=value records")
        sp.add_argument("--timing", action="store_true", help="include wall-clock seconds")

    sp = sub.add_parser("generate", help="write a generated instance")
    sp.add_argument("spec", help="generator spec, e.g. 'random-greedy(n=100, r=3, m=300)'")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--output", "-o")
    common(sp, inp=False)
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("stats", help="counting identities and component census")
    sp.add_argument("--epsilon", type=_positive_fraction, default=Fraction(1, 4))
    sp.add_argument("--k", type=int, default=3)
    common(sp)
    sp.set_defaults(func=cmd_stats)

    sp = sub.add_parser("find", help="search for k edges spanning at most (r-2)k+3 vertices")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0, help="recorded only; the search is deterministic")
    sp.add_argument("--epsilon", type=_positive_fraction, default=None)
    sp.add_argument("--output", "-o", help="certificate path (default: print)")
    common(sp)
    sp.set_defaults(func=cmd_find)

    sp = sub.add_parser("oracle", help="exhaustive minimum span over k-subsets")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--s", type=int, default=None, help="also decide whether span <= s is possible")
    sp.add_argument("--output", "-o", help="witness certificate path (default: print)")
    common(sp)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("verify", help="recount a certificate against an instance")
    sp.add_argument("--certificate", "-c", required=True)
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("reduce", help="pass to the link of a maximum-degree vertex")
    sp.add_argument("--output", "-o", required=True)
    common(sp)
    sp.set_defaults(func=cmd_reduce)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        rep = args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except HypergraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    if args.timing:
        rep.timing = time.perf_counter() - start
    sys.stdout.write(rep.render(args.machine))
    return rep.exit_status


if __name__ == "__main__":
    sys.exit(main())
