"""Brute-force references for path lengths and property (Y).

These walk the graph directly and share no code with the length-profile
engine, so they can be used to cross-check it.
"""

from __future__ import annotations

from typing import Iterator, Optional, Union

from .graph import Graph, LadderGraph, ladder_instantiate
from .lasso import InfinitePath, LassoPath, SpinePath, canonical_lasso, infinite_path_from, vertex_at
from .lengths import ExhaustedProof, property_y_witness


def brute_lengths(g: Graph, v: str, upto: int) -> list[bool]:
    """out[m] says whether some path of length m has source v."""
    out = [True]
    frontier = {v}
    for _ in range(upto):
        frontier = {g.edge[e].range for u in frontier for e in g.emitters[u]}
        out.append(bool(frontier))
    return out


def brute_member(g: Graph, v: str, m: int) -> bool:
    return brute_lengths(g, v, m)[m]


def enumerate_lassos(g: Graph, max_len: int) -> Iterator[LassoPath]:
    """Every lasso whose first vertex repeat happens within ``max_len`` edges,
    once per canonical form."""
    seen = set()

    def walk(v0: str, edges: list[str], pos: dict[str, int], cur: str):
        if len(edges) >= max_len:
            return
        for e in g.receivers[cur]:
            nxt = g.edge[e].source
            edges.append(e)
            if nxt in pos:
                i = pos[nxt]
                x = canonical_lasso(g, tuple(edges[:i]), tuple(edges[i:]))
                if x not in seen:
                    seen.add(x)
                    yield x
            else:
                pos[nxt] = len(edges)
                yield from walk(v0, edges, pos, nxt)
                del pos[nxt]
            edges.pop()

    for v in g.vertices:
        yield from walk(v, [], {v: 0}, v)


def brute_property_y_at(g: Union[Graph, LadderGraph], x: InfinitePath, k: int, n_max: int,
                        host: Optional[Graph] = None, allow_empty_prefix: bool = False) -> Optional[int]:
    """Least n <= n_max with a path of length n + k from s(x_{<=n}), or None."""
    h = host if host is not None else g
    for n in range(0 if allow_empty_prefix else 1, n_max + 1):
        if brute_member(h, vertex_at(g, x, n), n + k):
            return n
    return None


def oracle_property_y(g: Union[Graph, LadderGraph], k_max: int, max_len: int = 4, truncate: Optional[int] = None,
                      x: Optional[InfinitePath] = None, allow_empty_prefix: bool = False) -> dict:
    """Compare the engine's property (Y) answers with brute force.

    Finite graphs: every lasso up to ``max_len`` (or just ``x``), n searched
    up to |prefix| + |cycle|. Ladders: the spine path (or ``x``) inside the
    truncation at depth ``truncate``, n searched up to that depth.
    """
    rows = []
    if isinstance(g, LadderGraph):
        depth = truncate or (len(g.table) + abs(g.offset) + 2 * k_max + 12)
        host = ladder_instantiate(g, depth)
        points = [x] if x is not None else [infinite_path_from(g, "v0")]
        limit = lambda p: depth - len(p.head) - p.stage  # noqa: E731
    else:
        host = g
        points = [x] if x is not None else list(enumerate_lassos(g, max_len))
        limit = lambda p: len(p.prefix) + len(p.cycle)  # noqa: E731
    for p in points:
        for k in range(1, k_max + 1):
            n = brute_property_y_at(g, p, k, limit(p), host, allow_empty_prefix)
            found = property_y_witness(g, p, k, allow_empty_prefix)
            engine = not isinstance(found, ExhaustedProof)
            rows.append({"x": p.to_text(), "k": k, "brute": n is not None, "engine": engine,
                         "agree": (n is not None) == engine})
    return {"checks": rows, "count": len(rows), "agree": all(r["agree"] for r in rows)}
