"""Instance generators: small designs, sunflowers, planes and seeded random-greedy packings.

Specs are written as short expressions, e.g.::

    fano
    sunflower(5)
    sunflower(4, r=5)
    complete-sts(13)
    random-greedy(n=100, r=3, m=300)
    random-greedy(n=60, r=4, density=1/2, t=2)
    projective(11)
    thin(projective(11), keep=0.8)
    union(fano, fano)

Every generator is a pure function of the spec and the seed.
"""

from __future__ import annotations

import hashlib
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import ceil, comb
from typing import Optional, Union

from .hypergraph import HypergraphError, LinearHypergraph

DEFAULT_CAP_FACTOR = 50

# complete Steiner triple systems; orders 13 and 15 are cyclic developments
STS_TABLES: dict[int, tuple[tuple[int, int, int], ...]] = {
    7: ((0, 1, 3), (1, 2, 4), (2, 3, 5), (3, 4, 6), (0, 4, 5), (1, 5, 6), (0, 2, 6)),
    9: ((0, 1, 2), (0, 3, 6), (0, 4, 8), (0, 5, 7), (1, 3, 8), (1, 4, 7), (1, 5, 6), (2, 3, 7),
        (2, 4, 6), (2, 5, 8), (3, 4, 5), (6, 7, 8)),
    13: ((0, 1, 4), (0, 2, 7), (0, 3, 12), (0, 5, 11), (0, 6, 8), (0, 9, 10), (1, 2, 5), (1, 3, 8),
         (1, 6, 12), (1, 7, 9), (1, 10, 11), (2, 3, 6), (2, 4, 9), (2, 8, 10), (2, 11, 12),
         (3, 4, 7), (3, 5, 10), (3, 9, 11), (4, 5, 8), (4, 6, 11), (4, 10, 12), (5, 6, 9),
         (5, 7, 12), (6, 7, 10), (7, 8, 11), (8, 9, 12)),
    15: ((0, 1, 4), (0, 2, 8), (0, 3, 14), (0, 5, 10), (0, 6, 13), (0, 7, 9), (0, 11, 12),
         (1, 2, 5), (1, 3, 9), (1, 6, 11), (1, 7, 14), (1, 8, 10), (1, 12, 13), (2, 3, 6),
         (2, 4, 10), (2, 7, 12), (2, 9, 11), (2, 13, 14), (3, 4, 7), (3, 5, 11), (3, 8, 13),
         (3, 10, 12), (4, 5, 8), (4, 6, 12), (4, 9, 14), (4, 11, 13), (5, 6, 9), (5, 7, 13),
         (5, 12, 14), (6, 7, 10), (6, 8, 14), (7, 8, 11), (8, 9, 12), (9, 10, 13), (10, 11, 14)),
}


class AdmissibilityError(HypergraphError):
    pass


class SpecError(HypergraphError):
    pass


Arg = Union[int, Fraction, float, "GenSpec"]


@dataclass(frozen=True)
class GenSpec:
    kind: str
    args: tuple = ()
    kwargs: tuple[tuple[str, Arg], ...] = ()
    seed: int = 0

    def kw(self, name: str, default=None):
        return dict(self.kwargs).get(name, default)

    def with_seed(self, seed: int) -> "GenSpec":
        return GenSpec(self.kind, self.args, self.kwargs, seed)

    def __str__(self) -> str:
        parts = [str(a) for a in self.args] + [f"{k}={v}" for k, v in self.kwargs]
        return f"{self.kind}({', '.join(parts)})" if parts else self.kind


_TOKEN = re.compile(r"\s*(?:([A-Za-z][\w-]*)|(\d+(?:/\d+|\.\d*)?)|(.))")


def parse_spec(text: str, seed: int = 0) -> GenSpec:
    """Parse a spec expression (see module docstring)."""
    tokens = []
    for name, num, punct in _TOKEN.findall(text.strip()):
        tokens.append(("name", name) if name else ("num", num) if num else ("p", punct))
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take(kind=None, value=None):
        nonlocal pos
        tok = peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise SpecError(f"bad generator spec {text!r} near token {pos}")
        pos += 1
        return tok[1]

    def number(raw: str):
        if "/" in raw:
            return Fraction(raw)
        if "." in raw:
            return float(raw)
        return int(raw)

    def expr() -> GenSpec:
        kind = take("name")
        args, kwargs = [], []
        if peek() == ("p", "("):
            take()
            while peek() != ("p", ")"):
                tok = peek()
                if tok[0] == "name" and pos + 1 < len(tokens) and tokens[pos + 1] == ("p", "="):
                    key = take()
                    take("p", "=")
                    kwargs.append((key, number(take("num"))))
                elif tok[0] == "num":
                    args.append(number(take()))
                else:
                    args.append(expr())
                if peek() == ("p", ","):
                    take()
                    if peek() == ("p", ")"):
                        raise SpecError(f"dangling comma in generator spec {text!r}")
                elif peek() != ("p", ")"):
                    raise SpecError(f"expected ',' or ')' in generator spec {text!r}")
            take("p", ")")
        return GenSpec(kind, tuple(args), tuple(kwargs), seed)

    spec = expr()
    if pos != len(tokens):
        raise SpecError(f"trailing input in generator spec {text!r}")
    return spec


def _child_seed(seed: int, index: int) -> int:
    h = hashlib.sha256(f"{seed}:{index}".encode()).digest()
    return int.from_bytes(h[:8], "big")


def fano() -> LinearHypergraph:
    return complete_sts(7)


def complete_sts(n: int) -> LinearHypergraph:
    if n not in STS_TABLES:
        raise AdmissibilityError(
            f"no stored Steiner triple system of order {n}; available: {sorted(STS_TABLES)}")
    return LinearHypergraph(n=n, r=3, edges=STS_TABLES[n])


def sunflower(m: int, r: int = 3) -> LinearHypergraph:
    """m edges through vertex 0, otherwise disjoint."""
    edges = [(0,) + tuple(range(1 + i * (r - 1), 1 + (i + 1) * (r - 1))) for i in range(m)]
    return LinearHypergraph(n=1 + m * (r - 1), r=r, edges=tuple(edges))


def _require_prime(q: int) -> None:
    if q < 2 or any(q % p == 0 for p in range(2, int(q ** 0.5) + 1)):
        raise AdmissibilityError(f"plane order {q} must be prime")


def projective_plane(q: int) -> LinearHypergraph:
    """PG(2, q) for prime q: q^2+q+1 points, lines of size q+1, any two lines meet."""
    _require_prime(q)
    pts = [v for v in product(range(q), repeat=3)
           if any(v) and v[next(i for i in range(3) if v[i])] == 1]
    pts.sort()
    lines = []
    for L in pts:
        lines.append(tuple(i for i, p in enumerate(pts)
                           if (p[0] * L[0] + p[1] * L[1] + p[2] * L[2]) % q == 0))
    return LinearHypergraph(n=len(pts), r=q + 1, edges=tuple(lines))


def affine_plane(q: int) -> LinearHypergraph:
    """AG(2, q) for prime q: q^2 points, q^2+q lines of size q."""
    _require_prime(q)
    lines = [tuple(x * q + (a * x + c) % q for x in range(q)) for a in range(q) for c in range(q)]
    lines += [tuple(x * q + y for y in range(q)) for x in range(q)]
    return LinearHypergraph(n=q * q, r=q, edges=tuple(lines))


def greedy_target(n: int, r: int, t: int = 2, m: Optional[int] = None, density=None) -> int:
    if (m is None) == (density is None):
        raise SpecError("random-greedy needs exactly one of m= or density=")
    if m is not None:
        return int(m)
    return ceil(Fraction(density) * comb(n, t) / comb(r, t))


def random_greedy(n: int, r: int, *, m: Optional[int] = None, density=None, t: int = 2,
                  seed: int = 0, cap: Optional[int] = None) -> LinearHypergraph:
    """Greedy random t-linear packing.

    Draws r-sets with ``random.Random(seed).sample(range(n), r)`` and keeps a
    draw unless it shares t vertices with an accepted edge. Stops at the target
    edge count or after ``cap`` draws (default 50x target), whichever is first;
    the result may fall short of the target.
    """
    if not 2 <= t <= r <= n:
        raise SpecError(f"random-greedy needs 2 <= t <= r <= n, got t={t} r={r} n={n}")
    target = greedy_target(n, r, t, m, density)
    if cap is None:
        cap = DEFAULT_CAP_FACTOR * max(target, 1)
    rng = random.Random(seed)
    taken: set[tuple[int, ...]] = set()
    edges = []
    for _ in range(cap):
        if len(edges) >= target:
            break
        e = tuple(sorted(rng.sample(range(n), r)))
        subs = list(combinations(e, t))
        if taken.isdisjoint(subs):
            taken.update(subs)
            edges.append(e)
    return LinearHypergraph(n=n, r=r, edges=tuple(edges), t=t)


def thin(g: LinearHypergraph, keep, seed: int = 0) -> LinearHypergraph:
    """Keep each edge independently with probability ``keep``."""
    rng = random.Random(seed)
    p = float(keep)
    edges = tuple(e for e in g.edges if rng.random() < p)
    return LinearHypergraph(n=g.n, r=g.r, edges=edges, t=g.t)


def disjoint_union(parts: list[LinearHypergraph]) -> LinearHypergraph:
    if not parts:
        raise SpecError("union of nothing")
    r, t = parts[0].r, parts[0].t
    if any(p.r != r or p.t != t for p in parts):
        raise SpecError("union parts must share r and t")
    edges, offset = [], 0
    for p in parts:
        edges.extend(tuple(v + offset for v in e) for e in p.edges)
        offset += p.n
    return LinearHypergraph(n=offset, r=r, edges=tuple(edges), t=t)


def generate(spec: Union[GenSpec, str], seed: Optional[int] = None) -> LinearHypergraph:
    if isinstance(spec, str):
        spec = parse_spec(spec, seed or 0)
    elif seed is not None:
        spec = spec.with_seed(seed)
    kind, a = spec.kind, spec.args
    if kind == "fano":
        g = fano()
    elif kind == "sunflower":
        g = sunflower(int(a[0]), int(spec.kw("r", 3)))
    elif kind in ("complete-sts", "sts"):
        g = complete_sts(int(a[0]))
    elif kind == "projective":
        g = projective_plane(int(a[0]))
    elif kind == "affine":
        g = affine_plane(int(a[0]))
    elif kind == "random-greedy":
        cap = spec.kw("cap")
        n = spec.kw("n", a[0] if a else None)
        r = spec.kw("r", a[1] if len(a) > 1 else 3)
        if n is None:
            raise SpecError("random-greedy needs n")
        g = random_greedy(int(n), int(r), m=spec.kw("m"),
                          density=spec.kw("density"), t=int(spec.kw("t", 2)), seed=spec.seed,
                          cap=None if cap is None else int(cap))
    elif kind == "thin":
        base = generate(a[0].with_seed(_child_seed(spec.seed, 0)))
        g = thin(base, spec.kw("keep", 0.5), seed=spec.seed)
    elif kind == "union":
        g = disjoint_union([generate(p.with_seed(_child_seed(spec.seed, i))) for i, p in enumerate(a)])
    else:
        raise SpecError(f"unknown generator kind {kind!r}")
    return g.require_valid()
