"""Exhaustive minimum-span search over k-subsets of edges."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .certificate import Certificate
from .hypergraph import LinearHypergraph, PreconditionError

DEFAULT_BUDGET = 10 ** 7


class InfeasibleError(PreconditionError):
    pass


@dataclass(frozen=True)
class OracleResult:
    k: int
    min_span: int
    witness: tuple[int, ...]
    examined: int
    exhaustive: bool

    def certificate(self, digest: Optional[str] = None) -> Certificate:
        return Certificate(self.k, self.min_span, self.min_span, self.witness, digest)


def min_span(g: LinearHypergraph, k: int, budget: int = DEFAULT_BUDGET,
             stop_at: Optional[int] = None) -> OracleResult:
    """Smallest number of vertices spanned by any k edges of ``g``.

    Depth-first over k-subsets in lexicographic order of edge ids, keeping a
    vertex multiset so adding or removing an edge costs O(r). A partial subset
    whose span already reaches the best complete span is pruned, since spans
    never shrink as edges are added. ``examined`` counts complete subsets;
    the search stops before evaluating subset ``budget + 1`` (result then
    flagged non-exhaustive) or, if ``stop_at`` is given, as soon as a subset spanning
    at most ``stop_at`` vertices turns up.
    """
    m = g.m
    if k < 1:
        raise PreconditionError(f"k must be positive, got {k}")
    if budget < 1:
        raise PreconditionError(f"budget must be positive, got {budget}")
    if k > m:
        raise InfeasibleError(f"k={k} exceeds e(G)={m}")
    edges = g.edges
    count = [0] * g.n
    best = [k * g.r + 1, ()]
    chosen: list[int] = []
    examined = 0
    span = 0

    class _Stop(Exception):
        pass

    def rec(first: int) -> None:
        nonlocal examined, span
        depth = len(chosen)
        if depth == k:
            if examined >= budget:
                raise _Stop
            examined += 1
            if span < best[0]:
                best[0], best[1] = span, tuple(chosen)
                if stop_at is not None and span <= stop_at:
                    raise _Stop
            return
        for i in range(first, m - (k - depth) + 1):
            for v in edges[i]:
                if count[v] == 0:
                    span += 1
                count[v] += 1
            if span < best[0]:
                chosen.append(i)
                rec(i + 1)
                chosen.pop()
            for v in edges[i]:
                count[v] -= 1
                if count[v] == 0:
                    span -= 1

    complete = True
    try:
        rec(0)
    except _Stop:
        complete = False
    return OracleResult(k, best[0], best[1], examined, complete)


class Verdict(str, enum.Enum):
    YES = "yes"
    NO = "no"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ConfigurationCheck:
    verdict: Verdict
    s: int
    k: int
    witness: tuple[int, ...]
    oracle: OracleResult


def has_configuration(g: LinearHypergraph, s: int, k: int,
                      budget: int = DEFAULT_BUDGET) -> ConfigurationCheck:
    """Does ``g`` contain k edges spanning at most s vertices?

    A budget-truncated search that found nothing small enough is
    ``INCONCLUSIVE``, never ``NO``.
    """
    res = min_span(g, k, budget=budget, stop_at=s)
    if res.min_span <= s:
        return ConfigurationCheck(Verdict.YES, s, k, res.witness, res)
    if res.exhaustive:
        return ConfigurationCheck(Verdict.NO, s, k, (), res)
    return ConfigurationCheck(Verdict.INCONCLUSIVE, s, k, (), res)
