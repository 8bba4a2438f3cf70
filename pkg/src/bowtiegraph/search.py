"""Finding sparse configurations from the structure of the bow-tie graph.

Three pieces:

* :func:`grow_configuration` grows k edges inside one component of B(G),
  adding one new edge and at most r-2 new vertices per step;
* :func:`dense_component_config` takes all of G(C) for a dense component C,
  which spans at most (r-2)u vertices;
* :func:`find_configuration` combines them, eliminating used edges between
  rounds, into k edges spanning at most (r-2)k+3 vertices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Union

from .bowtie import BowtieGraph, ComponentReport, build_bowtie, component_report
from .certificate import Certificate, Step
from .hypergraph import LinearHypergraph, PreconditionError, linear_density, require_linear


class InsufficientComponentError(PreconditionError):
    pass


class InvariantViolation(RuntimeError):
    """A bound guaranteed by construction failed; indicates a bug or a false bound."""


@dataclass(frozen=True)
class Configuration:
    """k edges of G together with their recounted span and the bound they certify."""

    k: int
    edges: tuple[int, ...]
    spanned: int
    bound: int
    start: tuple[int, ...] = ()
    steps: tuple[Step, ...] = ()
    dense_parts: tuple[tuple[int, ...], ...] = ()
    branch: str = "grow"

    def __post_init__(self):
        if len(set(self.edges)) != len(self.edges) or len(self.edges) != self.k:
            raise InvariantViolation(f"configuration needs {self.k} distinct edges, got {self.edges}")
        if self.spanned > self.bound:
            raise InvariantViolation(f"span {self.spanned} exceeds claimed bound {self.bound}")

    def replay(self) -> tuple[int, ...]:
        """Edge set rebuilt from the provenance alone."""
        out = [e for part in self.dense_parts for e in part]
        out.extend(self.start)
        out.extend(s.new_edge for s in self.steps)
        return tuple(sorted(out))

    def parts(self) -> list[tuple[int, ...]]:
        grown = tuple(self.start) + tuple(s.new_edge for s in self.steps)
        return list(self.dense_parts) + ([grown] if grown else [])

    def certificate(self, digest: Optional[str] = None) -> Certificate:
        return Certificate(self.k, self.spanned, self.bound, self.edges, digest,
                           self.dense_parts, self.start, self.steps)

    def to_text(self, digest: Optional[str] = None) -> str:
        return self.certificate(digest).to_text()


@dataclass
class NotFound:
    k: int
    reason: str
    report: ComponentReport
    partial: tuple[tuple[int, ...], ...] = ()


def edges_of_component(b: BowtieGraph, c: int) -> frozenset[int]:
    if not 0 <= c < b.num_components:
        raise PreconditionError(f"unknown component id {c}")
    return b.component_edges(c)


@dataclass
class GrowthState:
    """C_i (bow-tie ids), the edges of G(C_i), and the BFS queue over C_i.

    C_i is kept closed: it holds every bow-tie of the component whose two
    edges are both already included, so a frontier bow-tie always brings in
    exactly one new edge.
    """

    b: BowtieGraph
    component: int
    members: set[int]
    included: list[int]
    covered: set[int]
    queue: deque = field(default_factory=deque)
    i: int = 1
    steps: list[Step] = field(default_factory=list)

    @classmethod
    def from_triangle(cls, b: BowtieGraph, c: int) -> "GrowthState":
        tri = b.triples[b.component_triples[c][0]]
        members = set(b.triple_bowties(tri))
        covered = set()
        for e in tri:
            covered.update(b.graph.edges[e])
        st = cls(b, c, members, list(tri), covered, deque(sorted(members)))
        st.check()
        return st

    def check(self) -> None:
        r = self.b.graph.r
        if len(self.included) != self.i + 2:
            raise InvariantViolation(f"step {self.i}: {len(self.included)} edges, expected {self.i + 2}")
        if len(self.covered) > (r - 2) * (self.i + 2) + 3:
            raise InvariantViolation(f"step {self.i}: span {len(self.covered)} over running bound")

    def _next_frontier(self) -> Optional[int]:
        adj = self.b.adjacency
        while self.queue:
            for nbr in adj[self.queue[0]]:
                if nbr not in self.members:
                    return nbr
            self.queue.popleft()
        return None

    def advance(self) -> None:
        b, g = self.b, self.b.graph
        nxt = self._next_frontier()
        if nxt is None:
            raise InvariantViolation(f"component {self.component} exhausted at {len(self.included)} edges")
        bt = b.bowties[nxt]
        inc = set(self.included)
        # closure of C_i means exactly one side is new
        old, new = (bt.e, bt.f) if bt.e in inc else (bt.f, bt.e)
        assert old in inc and new not in inc
        fresh = tuple(v for v in g.edges[new] if v not in self.covered)
        absorbed = []
        for x in g.edges[new]:
            for h in g.incidence[x]:
                if h in inc:
                    key = (h, new) if h < new else (new, h)
                    bid = b.index.get(key)
                    if bid is not None and b.labels[bid] == self.component:
                        absorbed.append(bid)
        self.members.update(absorbed)
        self.queue.extend(sorted(absorbed))
        self.included.append(new)
        self.covered.update(g.edges[new])
        self.i += 1
        self.steps.append(Step(self.i, (old, new), new, fresh))
        self.check()


def grow_configuration(b: BowtieGraph, c: int, k: int) -> Configuration:
    """Grow k edges inside component ``c`` spanning at most (r-2)k+3 vertices.

    For ``k >= 3`` growth starts at the lexicographically smallest generating
    triple of the component and walks B(G) breadth-first, smallest bow-tie id
    first. ``k = 1`` returns the smallest edge of G(C); ``k = 2`` the smallest
    bow-tie of C.
    """
    g = b.graph
    comp_edges = edges_of_component(b, c)
    if k < 1:
        raise PreconditionError(f"k must be positive, got {k}")
    if len(comp_edges) < k:
        raise InsufficientComponentError(
            f"component {c} has {len(comp_edges)} edges in G(C), need {k}")
    bound = (g.r - 2) * k + 3
    if k == 1:
        edges: tuple[int, ...] = (min(comp_edges),)
        start, steps = edges, ()
    elif k == 2:
        bt = b.bowties[b.components[c][0]]
        edges = start = bt.pair
        steps = ()
    else:
        if not b.component_triples[c]:
            raise InvariantViolation(f"component {c} has {len(comp_edges)} edges but no triangle")
        st = GrowthState.from_triangle(b, c)
        while len(st.included) < k:
            st.advance()
        edges = tuple(st.included)
        start, steps = edges[:3], tuple(st.steps)
    return Configuration(k=k, edges=tuple(sorted(edges)), spanned=g.span(edges), bound=bound,
                         start=tuple(start), steps=steps)


def dense_component_config(b: BowtieGraph, c: int) -> Configuration:
    """All u edges of G(C) for a dense component C; they span at most (r-2)u vertices."""
    if not b.is_dense(c):
        raise PreconditionError(
            f"component {c} has average degree {b.average_degree(c)}, not above 12r = {12 * b.graph.r}")
    edges = tuple(sorted(edges_of_component(b, c)))
    u = len(edges)
    spanned = b.graph.span(edges)
    bound = (b.graph.r - 2) * u
    if spanned > bound:
        raise InvariantViolation(f"dense component {c}: span {spanned} > (r-2)u = {bound}")
    return Configuration(k=u, edges=edges, spanned=spanned, bound=bound, dense_parts=(edges,),
                         branch="dense")


def _pick(b: BowtieGraph, candidates: list[int]) -> int:
    """Most G-edges first, ties to the smallest component id."""
    return max(candidates, key=lambda c: (len(b.component_edges(c)), -c))


def _combine(g: LinearHypergraph, k: int, parts: list[Configuration], tail: Configuration,
             branch: str) -> Configuration:
    used: set[int] = set()
    for p in parts + [tail]:
        if not used.isdisjoint(p.edges):
            raise InvariantViolation("pipeline parts overlap")
        used.update(p.edges)
    edges = tuple(sorted(used))
    bound = (g.r - 2) * k + 3
    spanned = g.span(edges)
    if spanned > bound:
        raise InvariantViolation(f"combined span {spanned} > {bound}")
    return Configuration(k=k, edges=edges, spanned=spanned, bound=bound, start=tail.start,
                         steps=tail.steps, dense_parts=tuple(p.edges for p in parts),
                         branch=branch)


def find_configuration(g: LinearHypergraph, k: int, epsilon=None,
                       b: Optional[BowtieGraph] = None) -> Union[Configuration, NotFound]:
    """Search G for k edges spanning at most (r-2)k+3 vertices.

    Order of attempts:

    1. a component of B(G) with at least k^2 bow-ties (so G(C) has more than
       k edges): grow k edges in it;
    2. dense components, largest first: take all of G(C_i) while the running
       total stays below k, deleting every bow-tie that uses a taken edge
       before the next round; the first component that reaches the budget
       contributes only the k-u edges still needed, by growth;
    3. if no dense component remains, any component of the reduced graph
       holding at least k-u edges finishes the job by growth.

    Otherwise a :class:`NotFound` carrying the component census is returned.
    ``epsilon`` only feeds the census thresholds (default: d_lin(G)).
    """
    require_linear(g)
    if k < 1 or k > g.m:
        raise PreconditionError(f"k={k} must satisfy 1 <= k <= e(G)={g.m}")
    if b is None:
        b = build_bowtie(g)
    if epsilon is None:
        epsilon = linear_density(g) if g.n >= g.r else Fraction(0)

    def not_found(reason: str, parts=()) -> NotFound:
        return NotFound(k, reason, component_report(b, epsilon, k), tuple(p.edges for p in parts))

    if k == 1:
        return Configuration(k=1, edges=(0,), spanned=g.r, bound=g.r + 1, start=(0,), branch="single")

    if k >= 3:
        large = [c for c in range(b.num_components) if b.component_size(c) >= k * k]
        if large:
            return replace(grow_configuration(b, min(large), k), branch="large")

    parts: list[Configuration] = []
    u = 0
    cur = b
    while k >= 3:
        dense = [c for c in range(cur.num_components) if cur.is_dense(c)]
        if not dense:
            break
        c = _pick(cur, dense)
        if u + len(cur.component_edges(c)) >= k:
            tail = grow_configuration(cur, c, k - u)
            return _combine(g, k, parts, tail, "dense")
        part = dense_component_config(cur, c)
        parts.append(part)
        u += part.k
        cur = cur.without_edges(part.edges)

    need = k - u
    cands = [c for c in range(cur.num_components) if len(cur.component_edges(c)) >= need]
    if cands:
        tail = grow_configuration(cur, _pick(cur, cands), need)
        return _combine(g, k, parts, tail, "dense+grow" if parts else "grow")
    return not_found(f"no component of B(G) supplies the {need} remaining edges", parts)

