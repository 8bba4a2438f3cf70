"""Text format for configuration certificates and a recount-only verifier.

Nothing here depends on the search code: a certificate is checked against the
raw edge list of the instance it names.

Layout::

    <k> <spanned> <bound>
    digest <sha256 of the instance's canonical HLG text>
    edges <id> <id> ...
    dense <id> <id> ...                      (zero or more lines)
    start <id> <id> ...                      (optional)
    step <i>: b=(<e>,<f>) new_edge=<f> new_vertices=<v>,<v>,...
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .hypergraph import HypergraphError, LinearHypergraph


class CertificateError(HypergraphError):
    pass


@dataclass(frozen=True)
class Step:
    index: int
    bowtie: tuple[int, int]
    new_edge: int
    new_vertices: tuple[int, ...]

    def line(self) -> str:
        e, f = self.bowtie
        nv = ",".join(map(str, self.new_vertices))
        return f"step {self.index}: b=({e},{f}) new_edge={self.new_edge} new_vertices={nv}"


@dataclass(frozen=True)
class Certificate:
    k: int
    spanned: int
    bound: int
    edges: tuple[int, ...]
    digest: Optional[str] = None
    dense_parts: tuple[tuple[int, ...], ...] = ()
    start: tuple[int, ...] = ()
    steps: tuple[Step, ...] = ()

    def to_text(self) -> str:
        lines = [f"{self.k} {self.spanned} {self.bound}"]
        if self.digest:
            lines.append(f"digest {self.digest}")
        lines.append("edges " + " ".join(map(str, self.edges)))
        lines.extend("dense " + " ".join(map(str, p)) for p in self.dense_parts)
        if self.start:
            lines.append("start " + " ".join(map(str, self.start)))
        lines.extend(s.line() for s in self.steps)
        return "\n".join(lines) + "\n"


_STEP = re.compile(r"step (\d+): b=\((\d+),(\d+)\) new_edge=(\d+) new_vertices=([\d,]*)$")


def parse_certificate(text: str) -> Certificate:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise CertificateError("empty certificate")
    try:
        k, spanned, bound = map(int, lines[0].split())
    except ValueError:
        raise CertificateError("line 1: expected header 'k spanned bound'") from None
    digest = None
    edges: Optional[tuple[int, ...]] = None
    dense, start, steps = [], (), []
    for lineno, ln in enumerate(lines[1:], start=2):
        head, _, rest = ln.partition(" ")
        try:
            if head == "digest":
                digest = rest.strip()
            elif head == "edges":
                edges = tuple(int(x) for x in rest.split())
            elif head == "dense":
                dense.append(tuple(int(x) for x in rest.split()))
            elif head == "start":
                start = tuple(int(x) for x in rest.split())
            elif head == "step":
                mt = _STEP.match(ln)
                if not mt:
                    raise ValueError(ln)
                i, e, f, new, nv = mt.groups()
                steps.append(Step(int(i), (int(e), int(f)), int(new),
                                  tuple(int(x) for x in nv.split(",") if x)))
            else:
                raise ValueError(ln)
        except ValueError:
            raise CertificateError(f"line {lineno}: cannot parse {ln!r}") from None
    if edges is None:
        raise CertificateError("missing 'edges' line")
    return Certificate(k, spanned, bound, edges, digest, tuple(dense), start, tuple(steps))


@dataclass
class Verification:
    ok: bool = True
    span: Optional[int] = None
    target: Optional[int] = None
    problems: list[str] = field(default_factory=list)

    @property
    def meets_target(self) -> bool:
        return self.span is not None and self.target is not None and self.span <= self.target

    def fail(self, why: str) -> None:
        self.ok = False
        self.problems.append(why)


def verify_certificate(g: LinearHypergraph, cert: Certificate) -> Verification:
    """Recount a certificate against ``g``.

    Passes when the digest matches, the edge ids are ``k`` distinct valid ids,
    the recounted span equals the declared one and does not exceed the bound,
    and any provenance replays to exactly the declared edge set.
    ``target`` is (r-t)k+t+1, reported separately as ``meets_target``.
    """
    res = Verification(target=(g.r - g.t) * cert.k + g.t + 1)
    if cert.digest is not None and cert.digest != g.digest:
        res.fail("instance digest mismatch")
    if len(cert.edges) != cert.k or len(set(cert.edges)) != cert.k:
        res.fail(f"expected {cert.k} distinct edge ids, got {list(cert.edges)}")
    if any(not 0 <= i < g.m for i in cert.edges):
        res.fail("edge id out of range")
        return res
    covered = set()
    for i in cert.edges:
        covered.update(g.edges[i])
    res.span = len(covered)
    if res.span != cert.spanned:
        res.fail(f"declared span {cert.spanned} but edges cover {res.span} vertices")
    if res.span > cert.bound:
        res.fail(f"span {res.span} exceeds bound {cert.bound}")
    if cert.dense_parts or cert.start or cert.steps:
        _replay(g, cert, res)
    return res


def _replay(g: LinearHypergraph, cert: Certificate, res: Verification) -> None:
    used: list[int] = []
    for part in cert.dense_parts:
        used.extend(part)
    grown = list(cert.start)
    seen_vertices = set()
    for i in used + grown:
        if not 0 <= i < g.m:
            res.fail(f"provenance edge id {i} out of range")
            return
    for i in grown:
        seen_vertices.update(g.edges[i])
    for st in cert.steps:
        e, f = st.bowtie
        if not (0 <= e < g.m and 0 <= f < g.m and 0 <= st.new_edge < g.m):
            res.fail(f"step {st.index}: edge id out of range")
            return
        if len(set(g.edges[e]) & set(g.edges[f])) != 1:
            res.fail(f"step {st.index}: ({e},{f}) is not a bow-tie")
        if st.new_edge not in (e, f) or st.new_edge in grown:
            res.fail(f"step {st.index}: new edge {st.new_edge} is not fresh in b=({e},{f})")
        other = f if st.new_edge == e else e
        if other not in grown:
            res.fail(f"step {st.index}: anchor edge {other} not yet grown")
        fresh = tuple(sorted(set(g.edges[st.new_edge]) - seen_vertices))
        if fresh != tuple(sorted(st.new_vertices)):
            res.fail(f"step {st.index}: new vertices {list(st.new_vertices)} != recount {list(fresh)}")
        grown.append(st.new_edge)
        seen_vertices.update(g.edges[st.new_edge])
    replayed = used + grown
    if len(replayed) != len(set(replayed)):
        res.fail("provenance parts are not edge-disjoint")
    if sorted(replayed) != sorted(cert.edges):
        res.fail("provenance does not replay to the declared edge set")
