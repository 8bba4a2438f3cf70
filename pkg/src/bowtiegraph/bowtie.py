"""The bow-tie graph B(G) of a linear hypergraph and the counting identities around it."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, NamedTuple, Optional

from .hypergraph import (
    LinearHypergraph,
    PreconditionError,
    across_triangles,
    linear_density,
    require_linear,
    underlying_graph,
)


class UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))
        self.rank = [0] * size

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        self.parent[y] = x
        if self.rank[x] == self.rank[y]:
            self.rank[x] += 1


class Bowtie(NamedTuple):
    """Two edges ``e < f`` of G meeting in exactly one vertex, ``center``."""

    e: int
    f: int
    center: int

    @property
    def pair(self) -> tuple[int, int]:
        return (self.e, self.f)


@dataclass(frozen=True, eq=False)
class BowtieGraph:
    """B(G): vertices are bow-ties, edges come in triangles generated by edge triples.

    Bow-tie ids are positions in ``bowties`` (sorted by edge pair). Component
    ids are assigned in order of each component's smallest bow-tie id. The
    structure is immutable; :meth:`without_edges` returns the induced subgraph
    on bow-ties avoiding a set of G-edges.
    """

    graph: LinearHypergraph
    bowties: tuple[Bowtie, ...]
    triples: tuple[tuple[int, int, int], ...]
    index: dict[tuple[int, int], int] = field(repr=False)
    adjacency: tuple[tuple[int, ...], ...] = field(repr=False)
    labels: tuple[int, ...] = field(repr=False)
    components: tuple[tuple[int, ...], ...] = field(repr=False)
    component_triples: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def num_vertices(self) -> int:
        return len(self.bowties)

    @property
    def num_edges(self) -> int:
        return 3 * len(self.triples)

    @property
    def num_components(self) -> int:
        return len(self.components)

    def triple_bowties(self, triple: tuple[int, int, int]) -> tuple[int, int, int]:
        e, f, h = triple
        return self.index[(e, f)], self.index[(e, h)], self.index[(f, h)]

    def component_size(self, c: int) -> int:
        return len(self.components[c])

    def component_edge_count(self, c: int) -> int:
        return 3 * len(self.component_triples[c])

    def average_degree(self, c: int) -> Fraction:
        return Fraction(2 * self.component_edge_count(c), self.component_size(c))

    def is_dense(self, c: int) -> bool:
        return self.average_degree(c) > 12 * self.graph.r

    def component_edges(self, c: int) -> frozenset[int]:
        """G(C): every G-edge belonging to some bow-tie of component ``c``."""
        out: set[int] = set()
        for b in self.components[c]:
            out.update(self.bowties[b].pair)
        return frozenset(out)

    def without_edges(self, removed: Iterable[int]) -> "BowtieGraph":
        dead = set(removed)
        keep = [b for b in self.bowties if b[0] not in dead and b[1] not in dead]
        triples = [tr for tr in self.triples if dead.isdisjoint(tr)]
        return _assemble(self.graph, keep, triples)


def _assemble(g: LinearHypergraph, bowties: list[Bowtie], triples: list[tuple[int, int, int]]) -> BowtieGraph:
    bowties = sorted(bowties)
    triples = sorted(triples)
    index = {(b[0], b[1]): i for i, b in enumerate(bowties)}
    if len(index) != len(bowties):
        raise AssertionError("an edge pair meets in two vertices; G is not linear")
    nb: list[list[int]] = [[] for _ in bowties]
    uf = UnionFind(len(bowties))
    for e, f, h in triples:
        a, b, c = index[(e, f)], index[(e, h)], index[(f, h)]
        nb[a] += (b, c)
        nb[b] += (a, c)
        nb[c] += (a, b)
        uf.union(a, b)
        uf.union(a, c)
    adjacency = []
    for lst in nb:
        # two bow-ties sharing a B(G)-edge pin down the whole triple
        if len(set(lst)) != len(lst):
            raise AssertionError("a B(G)-edge was generated by two triples")
        lst.sort()
        adjacency.append(tuple(lst))

    root_label: dict[int, int] = {}
    labels = [root_label.setdefault(uf.find(i), len(root_label)) for i in range(len(bowties))]
    members: list[list[int]] = [[] for _ in root_label]
    for i, lab in enumerate(labels):
        members[lab].append(i)
    comp_triples: list[list[int]] = [[] for _ in root_label]
    for ti, (e, f, _) in enumerate(triples):
        comp_triples[labels[index[(e, f)]]].append(ti)

    return BowtieGraph(
        graph=g,
        bowties=tuple(bowties),
        triples=tuple(triples),
        index=index,
        adjacency=tuple(adjacency),
        labels=tuple(labels),
        components=tuple(tuple(x) for x in members),
        component_triples=tuple(tuple(x) for x in comp_triples),
    )


def enumerate_bowties(g: LinearHypergraph) -> list[Bowtie]:
    """All pairs of edges meeting in exactly one vertex, sorted by edge pair."""
    require_linear(g)
    out = [Bowtie(e, f, c) for c, inc in enumerate(g.incidence) for e, f in combinations(inc, 2)]
    out.sort()
    return out


def _pair_cover(g: LinearHypergraph) -> dict[tuple[int, int], int]:
    return {pair: i for i, e in enumerate(g.edges) for pair in combinations(e, 2)}


def build_bowtie(g: LinearHypergraph) -> BowtieGraph:
    """Construct B(G) for a valid linear hypergraph.

    Generating triples ``e < f < h`` are found from the bow-tie ``(e, f)`` with
    centre ``c``: for each ``x`` in ``e - {c}`` and ``y`` in ``f - {c}`` the
    pair ``{x, y}`` lies in at most one edge ``h``. Linearity forces ``h`` to
    avoid ``c``, so the three centres are distinct and ``e & f & h`` is empty.
    """
    bowties = enumerate_bowties(g)
    cover = _pair_cover(g)
    edges = g.edges
    triples = []
    for e, f, c in bowties:
        xs = [x for x in edges[e] if x != c]
        for y in edges[f]:
            if y == c:
                continue
            for x in xs:
                h = cover.get((x, y) if x < y else (y, x))
                if h is not None and h > f:
                    triples.append((e, f, h))
    return _assemble(g, bowties, triples)


def naive_triples(g: LinearHypergraph) -> list[tuple[int, int, int]]:
    """Generating triples by checking every 3-subset of edges (test oracle)."""
    sets = g.edge_sets
    out = []
    for e, f, h in combinations(range(g.m), 3):
        if (len(sets[e] & sets[f]) == 1 and len(sets[e] & sets[h]) == 1
                and len(sets[f] & sets[h]) == 1 and not (sets[e] & sets[f] & sets[h])):
            out.append((e, f, h))
    return out


def bowtie_vertex_identity(g: LinearHypergraph, b: Optional[BowtieGraph] = None) -> tuple[int, int]:
    """(v(B(G)) counted directly, sum over vertices of C(deg, 2))."""
    if b is None:
        b = build_bowtie(g)
    return b.num_vertices, sum(comb(d, 2) for d in g.degrees())


@dataclass(frozen=True)
class VertexBounds:
    lower: Fraction
    count: int
    upper: Fraction

    @property
    def lower_ok(self) -> bool:
        return self.lower <= self.count

    @property
    def upper_ok(self) -> bool:
        return self.count <= self.upper

    @property
    def holds(self) -> bool:
        return self.lower_ok and self.upper_ok


def check_vertex_bounds(g: LinearHypergraph, epsilon, b: Optional[BowtieGraph] = None) -> VertexBounds:
    """Evaluate (eps/2r)^2 n^3 <= v(B(G)) <= n^3 / r^2 exactly.

    Requires d_lin(G) >= eps and n >= 2r/eps; violations raise
    :class:`PreconditionError`. The verdict is reported, not asserted.
    """
    eps = Fraction(epsilon)
    if eps <= 0:
        raise PreconditionError(f"epsilon must be positive, got {eps}")
    n, r = g.n, g.r
    d = linear_density(g)
    if d < eps:
        raise PreconditionError(f"hypothesis d_lin(G) >= epsilon fails: {d} < {eps}")
    if n < 2 * r / eps:
        raise PreconditionError(f"hypothesis n >= 2r/epsilon fails: {n} < {2 * r / eps}")
    count = b.num_vertices if b is not None else len(enumerate_bowties(g))
    return VertexBounds(lower=(eps / (2 * r)) ** 2 * n ** 3, count=count, upper=Fraction(n ** 3, r * r))


@dataclass(frozen=True)
class TwoPathVerdict:
    bowties: int
    per_bowtie: int
    exact_per_bowtie: bool
    distinct: bool
    cross_paths: int
    total_paths: int

    @property
    def ok(self) -> bool:
        return self.exact_per_bowtie and self.distinct and self.cross_paths <= self.total_paths


def two_path_correspondence(g: LinearHypergraph) -> TwoPathVerdict:
    """Map each bow-tie to the two-edge paths of U(G) through its centre.

    A path ``x - c - y`` is keyed by its middle vertex and its endpoint pair.
    Each bow-tie should give exactly (r-1)^2 such paths, and no path should
    come from two bow-ties.
    """
    u = underlying_graph(g)
    want = (g.r - 1) ** 2
    seen: set[tuple[int, int, int]] = set()
    exact = distinct = True
    bowties = enumerate_bowties(g)
    for bt in bowties:
        c = bt.center
        paths = set()
        for x in g.edges[bt.e]:
            if x == c:
                continue
            for y in g.edges[bt.f]:
                if y == c or x == y:
                    continue
                if u.has_edge(x, c) and u.has_edge(c, y):
                    paths.add((c, min(x, y), max(x, y)))
        if len(paths) != want:
            exact = False
        if not seen.isdisjoint(paths):
            distinct = False
        seen |= paths
    total = sum(comb(len(a), 2) for a in u.adjacency)
    return TwoPathVerdict(len(bowties), want, exact, distinct, len(seen), total)


@dataclass(frozen=True)
class TriangleBijection:
    within: int
    across: int
    triples: int
    bijective: bool

    @property
    def ok(self) -> bool:
        return self.bijective and self.across == self.triples


def triangle_bijection(g: LinearHypergraph, b: Optional[BowtieGraph] = None) -> TriangleBijection:
    """Match across-triangles of U(G) with generating triples of B(G).

    The triple ``{e, f, h}`` corresponds to the vertex triangle formed by its
    three pairwise intersection points.
    """
    if b is None:
        b = build_bowtie(g)
    within, across = across_triangles(g)
    sets = g.edge_sets
    images = set()
    for e, f, h in b.triples:
        (x,) = sets[e] & sets[f]
        (y,) = sets[e] & sets[h]
        (z,) = sets[f] & sets[h]
        images.add(tuple(sorted((x, y, z))))
    bijective = len(images) == len(b.triples) and images == set(across)
    return TriangleBijection(within, len(across), len(b.triples), bijective)


@dataclass(frozen=True)
class ComponentStats:
    id: int
    vertices: int
    edges: int
    avg_degree: Fraction
    dense: bool
    g_edges: int


@dataclass(frozen=True)
class ComponentReport:
    """Component census of B(G) plus the two branches of the large/dense dichotomy.

    ``hypothesis_ok`` records only whether d_lin(G) >= epsilon; the asymptotic
    requirements on r and n have no explicit constants and are not checked.
    """

    r: int
    n: int
    epsilon: Fraction
    k: int
    density: Fraction
    components: tuple[ComponentStats, ...]

    @property
    def max_size(self) -> int:
        return max((c.vertices for c in self.components), default=0)

    @property
    def dense_count(self) -> int:
        return sum(c.dense for c in self.components)

    @property
    def large_threshold(self) -> int:
        return self.k * self.k

    @property
    def dense_threshold(self) -> Fraction:
        return (self.epsilon / (2 * self.r * self.k * self.k)) ** 2 * self.n ** 3

    @property
    def hypothesis_ok(self) -> bool:
        return self.density >= self.epsilon

    @property
    def large_branch(self) -> bool:
        return self.max_size >= self.large_threshold

    @property
    def dense_branch(self) -> bool:
        return self.dense_count >= self.dense_threshold

    def records(self) -> list[str]:
        """One line per component: id, vertices, edges, avg-degree num/den, dense flag."""
        return [
            f"component {c.id} {c.vertices} {c.edges} {c.avg_degree.numerator} "
            f"{c.avg_degree.denominator} {int(c.dense)}"
            for c in self.components
        ]

    def summary(self) -> dict:
        return {
            "components": len(self.components),
            "max_component": self.max_size,
            "dense_components": self.dense_count,
            "large_threshold": self.large_threshold,
            "dense_threshold": self.dense_threshold,
            "hypothesis_density": self.hypothesis_ok,
            "large_branch": self.large_branch,
            "dense_branch": self.dense_branch,
        }


def component_report(b: BowtieGraph, epsilon, k: int) -> ComponentReport:
    g = b.graph
    stats = []
    for c in range(b.num_components):
        stats.append(ComponentStats(
            id=c,
            vertices=b.component_size(c),
            edges=b.component_edge_count(c),
            avg_degree=b.average_degree(c),
            dense=b.is_dense(c),
            g_edges=len(b.component_edges(c)),
        ))
    density = linear_density(g) if g.n >= g.r else Fraction(0)
    return ComponentReport(r=g.r, n=g.n, epsilon=Fraction(epsilon), k=k, density=density,
                           components=tuple(stats))
