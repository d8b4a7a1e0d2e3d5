"""Random inputs for property checks: paths, monomials, raw sums, graphs."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .algebra import Monomial
from .graph import Graph, Path


def random_path(g: Graph, rng: random.Random, max_len: int, src: Optional[str] = None,
                length: Optional[int] = None) -> Optional[Path]:
    """A path built backwards from its source, so that two legs can share one.
    Stops early when the current range receives nothing."""
    v = src if src is not None else rng.choice(g.vertices)
    n = rng.randint(0, max_len) if length is None else length
    edges: list[str] = []
    cur = v
    for _ in range(n):
        emit = g.emitters[cur]
        if not emit:
            break
        e = rng.choice(emit)
        edges.append(e)
        cur = g.edge[e].range
    if length is not None and len(edges) != length:
        return None
    edges.reverse()
    return Path(cur, v, tuple(edges))


def random_monomial(g: Graph, rng: random.Random, max_len: int = 3, deg: Optional[int] = None) -> Monomial:
    for _ in range(200):
        v = rng.choice(g.vertices)
        if deg is None:
            a = random_path(g, rng, max_len, v)
            b = random_path(g, rng, max_len, v)
        else:
            lb = rng.randint(max(0, -deg), max(max(0, -deg), max_len - max(deg, 0)))
            a = random_path(g, rng, 0, v, length=lb + deg)
            b = random_path(g, rng, 0, v, length=lb)
        if a is not None and b is not None:
            return a, b
    raise ValueError(f"no monomial of degree {deg} found")


def random_raw(g: Graph, rng: random.Random, terms: int = 3, max_len: int = 3,
               deg: Optional[int] = None) -> dict[Monomial, Fraction]:
    out: dict[Monomial, Fraction] = {}
    for _ in range(rng.randint(1, terms)):
        m = random_monomial(g, rng, max_len, deg)
        out[m] = out.get(m, 0) + Fraction(rng.randint(-3, 3) or 1, rng.randint(1, 2))
    return {m: c for m, c in out.items() if c}


def random_graph(rng: random.Random, max_vertices: int = 6, max_edges: int = 10, no_sources: bool = False) -> Graph:
    n = rng.randint(1, max_vertices)
    verts = [f"v{i}" for i in range(n)]
    edges = []
    if no_sources:
        for i, v in enumerate(verts):
            edges.append((f"e{i}", v, rng.choice(verts)))
    for i in range(len(edges), rng.randint(len(edges), max(len(edges), max_edges))):
        edges.append((f"e{i}", rng.choice(verts), rng.choice(verts)))
    return Graph.from_edges(verts, edges)
