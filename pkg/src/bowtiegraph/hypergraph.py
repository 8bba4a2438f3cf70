"""t-linear r-uniform hypergraphs: validation, densities, underlying graph, link reduction.

Vertices are dense integer ids ``0..n-1``. Edges are stored as sorted tuples and
are addressed by their index in the edge list (the edge id).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Optional


class HypergraphError(ValueError):
    """Base class for errors raised by this package."""


class InvalidInstanceError(HypergraphError):
    pass


class PreconditionError(HypergraphError):
    pass


class UnsupportedError(HypergraphError):
    pass


class HLGParseError(HypergraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    kind: str = "ok"
    pair: Optional[tuple[int, int]] = None
    shared: Optional[int] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class LinearHypergraph:
    """An r-uniform hypergraph in which distinct edges share at most ``t - 1`` vertices.

    The constructor only canonicalises (each edge becomes a sorted tuple); it does
    not enforce linearity. Use :func:`validate` for a verdict, or
    :meth:`require_valid` to raise on the first violation.
    """

    n: int
    r: int
    edges: tuple[tuple[int, ...], ...]
    t: int = 2

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(sorted(e)) for e in self.edges))

    @classmethod
    def from_edges(cls, n: int, r: int, edges: Iterable[Iterable[int]], t: int = 2,
                   check: bool = True) -> "LinearHypergraph":
        g = cls(n=n, r=r, edges=tuple(tuple(e) for e in edges), t=t)
        if check:
            g.require_valid()
        return g

    @property
    def m(self) -> int:
        """Number of edges, e(G)."""
        return len(self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Vertex -> sorted tuple of incident edge ids."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def edge_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(e) for e in self.edges)

    def degrees(self) -> list[int]:
        return [len(x) for x in self.incidence]

    def span(self, edge_ids: Iterable[int]) -> int:
        """Number of distinct vertices covered by the given edges."""
        covered: set[int] = set()
        for i in edge_ids:
            covered.update(self.edges[i])
        return len(covered)

    @cached_property
    def validation(self) -> ValidationReport:
        return validate(self)

    def require_valid(self) -> "LinearHypergraph":
        rep = self.validation
        if not rep.ok:
            raise InvalidInstanceError(rep.detail)
        return self

    def to_hlg(self) -> str:
        lines = [f"{self.n} {self.r} {self.t} {self.m}"]
        lines.extend(" ".join(map(str, e)) for e in self.edges)
        return "\n".join(lines) + "\n"

    @cached_property
    def digest(self) -> str:
        """SHA-256 of the canonical HLG v1 serialisation."""
        return hashlib.sha256(self.to_hlg().encode()).hexdigest()


def _structural_violation(g: LinearHypergraph) -> Optional[ValidationReport]:
    if g.r < 2:
        return ValidationReport(False, "parameters", detail=f"uniformity r={g.r} must be >= 2")
    if g.t < 2:
        return ValidationReport(False, "parameters", detail=f"linearity t={g.t} must be >= 2")
    if g.n < 0:
        return ValidationReport(False, "parameters", detail=f"vertex count n={g.n} is negative")
    for i, e in enumerate(g.edges):
        if len(e) != g.r or len(set(e)) != g.r:
            return ValidationReport(False, "edge", pair=(i, i),
                                    detail=f"edge {i} {e} does not have {g.r} distinct vertices")
        if e[0] < 0 or e[-1] >= g.n:
            return ValidationReport(False, "edge", pair=(i, i),
                                    detail=f"edge {i} {e} has a vertex outside 0..{g.n - 1}")
    return None


def _overlap_report(g: LinearHypergraph, i: int, j: int) -> ValidationReport:
    shared = len(set(g.edges[i]) & set(g.edges[j]))
    kind = "duplicate" if g.edges[i] == g.edges[j] else "overlap"
    return ValidationReport(False, kind, pair=(i, j), shared=shared,
                            detail=f"edges {i} and {j} share {shared} vertices (limit {g.t - 1})")


def validate(g: LinearHypergraph, method: str = "index") -> ValidationReport:
    """Check every invariant of ``g`` and report the first violation found.

    ``method="index"`` hashes every t-subset of every edge, so the first edge
    pair reported is the earliest (by the later edge id) sharing >= t vertices.
    ``method="pairwise"`` is the plain O(e(G)^2 r) scan and reports the
    lexicographically first offending pair.
    """
    bad = _structural_violation(g)
    if bad is not None:
        return bad
    if method == "pairwise":
        sets = [set(e) for e in g.edges]
        for i, j in combinations(range(g.m), 2):
            if len(sets[i] & sets[j]) >= g.t:
                return _overlap_report(g, i, j)
        return ValidationReport(True)
    if method != "index":
        raise ValueError(f"unknown validation method {method!r}")
    owner: dict[tuple[int, ...], int] = {}
    for j, e in enumerate(g.edges):
        for sub in combinations(e, g.t):
            i = owner.setdefault(sub, j)
            if i != j:
                return _overlap_report(g, i, j)
    return ValidationReport(True)


def t_density(n: int, r: int, t: int, m: int) -> Fraction:
    """e(G) * C(r,t) / C(n,t) as an exact rational."""
    if n < r or r < t:
        raise InvalidInstanceError(f"density needs n >= r >= t, got n={n} r={r} t={t}")
    return Fraction(m * comb(r, t), comb(n, t))


def linear_density(g: LinearHypergraph) -> Fraction:
    """The t-linear density of ``g``; for ``t == 2`` this is the linear density."""
    return t_density(g.n, g.r, g.t, g.m)


@dataclass(frozen=True)
class UnderlyingGraph:
    """Graph on the vertices of G with each r-edge replaced by a clique K_r."""

    n: int
    adjacency: tuple[frozenset[int], ...]
    cover: dict[tuple[int, int], int] = field(repr=False)

    @property
    def num_edges(self) -> int:
        return len(self.cover)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def covering_edge(self, u: int, v: int) -> int:
        return self.cover[(u, v) if u < v else (v, u)]


def require_linear(g: LinearHypergraph) -> None:
    if g.t != 2:
        raise UnsupportedError(f"operation requires a linear (t=2) hypergraph, got t={g.t}")
    g.require_valid()


def underlying_graph(g: LinearHypergraph) -> UnderlyingGraph:
    require_linear(g)
    adj: list[set[int]] = [set() for _ in range(g.n)]
    cover: dict[tuple[int, int], int] = {}
    for i, e in enumerate(g.edges):
        for u, v in combinations(e, 2):
            # linearity makes the covering edge unique
            assert (u, v) not in cover
            cover[(u, v)] = i
            adj[u].add(v)
            adj[v].add(u)
    return UnderlyingGraph(g.n, tuple(frozenset(a) for a in adj), cover)


def across_triangles(g: LinearHypergraph) -> tuple[int, list[tuple[int, int, int]]]:
    """Enumerate triangles of U(G); return the within count and the across triangles.

    A triangle is *within* when one edge of G contains all three of its
    vertices and *across* when its sides lie in three distinct edges. For a
    linear G these are the only two possibilities. Across triangles are
    returned as sorted vertex triples.
    """
    u = underlying_graph(g)
    within = 0
    across = []
    for (a, b), eab in u.cover.items():
        for c in u.adjacency[a] & u.adjacency[b]:
            if c <= b:
                continue
            eac = u.cover[(a, c)]
            ebc = u.cover[(b, c)]
            if eab == eac == ebc:
                within += 1
            else:
                assert len({eab, eac, ebc}) == 3
                across.append((a, b, c))
    across.sort()
    return within, across


def count_triangles_U(g: LinearHypergraph) -> tuple[int, int]:
    """Triangle counts of U(G) as ``(within, across)``."""
    within, across = across_triangles(g)
    return within, len(across)


def link_reduce(g: LinearHypergraph) -> tuple[int, LinearHypergraph]:
    """Pass to the link of a maximum-degree vertex.

    Returns ``(v, link)`` where ``link`` is the (t-1)-linear (r-1)-graph on the
    remaining ``n-1`` vertices (ids above ``v`` shift down by one). Ties for the
    maximum degree go to the smallest vertex id.
    """
    if g.t < 3:
        raise UnsupportedError("link reduction needs t >= 3; t = 2 is the base case")
    g.require_valid()
    if g.m == 0:
        raise PreconditionError("link reduction of an edgeless hypergraph")
    degs = g.degrees()
    v = max(range(g.n), key=lambda x: (degs[x], -x))
    link_edges = [tuple(w - (w > v) for w in g.edges[i] if w != v) for i in g.incidence[v]]
    link = LinearHypergraph(n=g.n - 1, r=g.r - 1, edges=tuple(link_edges), t=g.t - 1)
    return v, link


def parse_hlg(text: str) -> LinearHypergraph:
    """Parse the HLG v1 text format. Structural problems raise with a line number."""
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise HLGParseError(1, "empty input; expected header 'n r t m'")

    def ints(lineno: int, raw: str) -> list[int]:
        try:
            return [int(tok) for tok in raw.split()]
        except ValueError:
            raise HLGParseError(lineno, f"non-integer token in {raw.strip()!r}") from None

    header = ints(1, lines[0])
    if len(header) != 4:
        raise HLGParseError(1, f"header must have 4 fields 'n r t m', got {len(header)}")
    n, r, t, m = header
    if n < 0 or r < 2 or t < 2 or m < 0:
        raise HLGParseError(1, f"bad header values n={n} r={r} t={t} m={m}")
    if len(lines) - 1 != m:
        raise HLGParseError(len(lines), f"header declares {m} edges, found {len(lines) - 1} lines")
    edges = []
    for lineno, raw in enumerate(lines[1:], start=2):
        e = ints(lineno, raw)
        if len(e) != r:
            raise HLGParseError(lineno, f"expected {r} vertex ids, got {len(e)}")
        if len(set(e)) != r:
            raise HLGParseError(lineno, "repeated vertex id within an edge")
        if min(e) < 0 or max(e) >= n:
            raise HLGParseError(lineno, f"vertex id out of range 0..{n - 1}")
        edges.append(tuple(e))
    return LinearHypergraph(n=n, r=r, edges=tuple(edges), t=t)


def read_hlg(path) -> LinearHypergraph:
    with open(path) as fh:
        return parse_hlg(fh.read())


def write_hlg(g: LinearHypergraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(g.to_hlg())

