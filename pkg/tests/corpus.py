"""Seeded instance families shared by the unit and acceptance tests."""

import random
from functools import lru_cache
from itertools import combinations

from bowtiegraph.gen import complete_sts, fano, generate, random_greedy, sunflower
from bowtiegraph.hypergraph import LinearHypergraph


@lru_cache(maxsize=None)
def random_corpus(count: int = 100, seed: int = 20240601) -> tuple[LinearHypergraph, ...]:
    """Random-greedy instances with n <= 300, r in {3,4,5}, average degree 2..10."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        r = (3, 4, 5)[i % 3]
        n = rng.randint(20, 300)
        avg_deg = rng.uniform(2, 10)
        m = max(1, round(avg_deg * n / r))
        out.append(random_greedy(n, r, m=m, seed=seed + i))
    return tuple(out)


def structured_corpus() -> list[LinearHypergraph]:
    out = [fano()] + [complete_sts(n) for n in (9, 13, 15)]
    out += [sunflower(m) for m in range(2, 11)]
    out += [sunflower(4, r=5), generate("union(fano, fano)"), generate("affine(5)"),
            generate("projective(3)")]
    return out


@lru_cache(maxsize=None)
def small_corpus(count: int = 40, seed: int = 77) -> tuple[LinearHypergraph, ...]:
    """Instances with at most 14 edges, cheap enough for the exhaustive oracle."""
    rng = random.Random(seed)
    out = [fano(), complete_sts(9), sunflower(5), sunflower(3, r=4)]
    for i in range(count):
        r = rng.choice((3, 3, 4))
        n = rng.randint(r + 3, 18)
        out.append(random_greedy(n, r, m=rng.randint(3, 14), seed=seed * 1000 + i))
    return tuple(g for g in out if g.m <= 14)


def dense_sweep(count: int = 50, seed: int = 11) -> list[LinearHypergraph]:
    """Random line subsets of PG(2, 11), kept with probability 0.62..0.85.

    Each bow-tie of PG(2, q) has degree 2q^2 in B(G); keeping a fraction p of
    the lines leaves about 2q^2 p, which clears 12r = 144 for q = 11, p > 0.6.
    """
    rng = random.Random(seed)
    return [generate(f"thin(projective(11), keep={rng.uniform(0.62, 0.85):.3f})", seed=seed + i)
            for i in range(count)]


def t3_corpus(count: int = 20, seed: int = 5) -> list[LinearHypergraph]:
    rng = random.Random(seed)
    out = []
    for i in range(count):
        r = (3, 4, 5)[i % 3]
        n = rng.randint(r + 4, 30)
        out.append(random_greedy(n, r, t=3, m=rng.randint(5, 60), seed=seed * 100 + i))
    return out


def brute_span_min(g: LinearHypergraph, k: int) -> int:
    return min(len(set().union(*(g.edges[i] for i in sub))) for sub in combinations(range(g.m), k))


def brute_u_triangles(g: LinearHypergraph) -> tuple[int, int]:
    """Classify every vertex triple of U(G) without the pair-cover map."""
    sets = [set(e) for e in g.edges]
    adj = [set() for _ in range(g.n)]
    for e in g.edges:
        for u, v in combinations(e, 2):
            adj[u].add(v)
            adj[v].add(u)
    within = across = 0
    for a, b, c in combinations(range(g.n), 3):
        if b in adj[a] and c in adj[a] and c in adj[b]:
            if any({a, b, c} <= s for s in sets):
                within += 1
            else:
                across += 1
    return within, across


def brute_bowtie_pairs(g: LinearHypergraph) -> list[tuple[int, int]]:
    sets = [set(e) for e in g.edges]
    return [(i, j) for i, j in combinations(range(g.m), 2) if len(sets[i] & sets[j]) == 1]

