"""Finitely presented infinite paths.

``LassoPath`` is an eventually periodic path u c c c ... on a finite graph.
``SpinePath`` is a finite head followed by the spine tail s_{j+1} s_{j+2} ...
of a ladder graph. Both are kept in canonical form, so ``==`` decides
equality of the infinite paths they denote.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import InvalidLasso, LpaError, NotComposable, UnknownId
from .graph import Graph, LadderGraph, Path


def _primitive_root(cycle: tuple[str, ...]) -> tuple[str, ...]:
    n = len(cycle)
    for d in range(1, n + 1):
        if n % d == 0 and cycle[:d] * (n // d) == cycle:
            return cycle[:d]
    return cycle


@dataclass(frozen=True)
class LassoPath:
    rng: str
    prefix: tuple[str, ...]
    cycle: tuple[str, ...]

    def edge_at(self, i: int) -> str:
        """x_{i+1} (0-based position i)."""
        p = len(self.prefix)
        return self.prefix[i] if i < p else self.cycle[(i - p) % len(self.cycle)]

    def first_edges(self, n: int) -> tuple[str, ...]:
        return tuple(self.edge_at(i) for i in range(n))

    def to_text(self) -> str:
        head = " ".join(self.prefix) if self.prefix else self.rng
        return f"{head};{' '.join(self.cycle)}"

    def to_json(self) -> dict:
        return {"kind": "lasso", "range": self.rng, "prefix": list(self.prefix), "cycle": list(self.cycle)}


@dataclass(frozen=True)
class SpinePath:
    rng: str
    head: tuple[str, ...]
    stage: int

    def edge_at(self, i: int) -> str:
        h = len(self.head)
        return self.head[i] if i < h else f"s{self.stage + 1 + i - h}"

    def first_edges(self, n: int) -> tuple[str, ...]:
        return tuple(self.edge_at(i) for i in range(n))

    def to_text(self) -> str:
        return f"{' '.join(self.head)};spine" if self.head else "spine" if self.stage == 0 else f"v{self.stage};spine"

    def to_json(self) -> dict:
        return {"kind": "spine", "head": list(self.head), "stage": self.stage}


InfinitePath = Union[LassoPath, SpinePath]
AnyGraph = Union[Graph, LadderGraph]


def _ends(g: AnyGraph, eid: str) -> tuple[str, str]:
    return g.edge_ends(eid)


def make_lasso(g: Graph, prefix: tuple[str, ...], cycle: tuple[str, ...], start: str | None = None) -> LassoPath:
    """Validate and canonicalize ``prefix . cycle^infinity``.

    ``start`` names the range vertex when the prefix is empty; it must equal
    r(cycle).
    """
    if not cycle:
        raise InvalidLasso("cycle must contain at least one edge")
    try:
        c = g.path(cycle)
        u = g.path(prefix) if prefix else None
    except (NotComposable, UnknownId) as exc:
        raise InvalidLasso(str(exc)) from None
    if c.src != c.rng:
        raise InvalidLasso(f"cycle is not closed: r = {c.rng}, s = {c.src}")
    if u is not None and u.src != c.rng:
        raise InvalidLasso(f"prefix ends at {u.src} but the cycle starts at {c.rng}")
    if u is None and start is not None and start != c.rng:
        raise InvalidLasso(f"empty prefix at {start} but the cycle starts at {c.rng}")
    return canonical_lasso(g, tuple(prefix), tuple(cycle))


def canonical_lasso(g: AnyGraph, prefix: tuple[str, ...], cycle: tuple[str, ...]) -> LassoPath:
    """Primitive cycle, then absorb any common tail of prefix and cycle."""
    cycle = _primitive_root(cycle)
    while prefix and prefix[-1] == cycle[-1]:
        cycle = (cycle[-1],) + cycle[:-1]
        prefix = prefix[:-1]
    rng = _ends(g, prefix[0])[0] if prefix else _ends(g, cycle[0])[0]
    return LassoPath(rng, prefix, cycle)


def canonical_spine(g: LadderGraph, head: tuple[str, ...], stage: int) -> SpinePath:
    if head:
        try:
            p = g.path(head)
        except (NotComposable, UnknownId) as exc:
            raise InvalidLasso(str(exc)) from None
        if p.src != f"v{stage}":
            raise InvalidLasso(f"head ends at {p.src}, not at v{stage}")
    while head and head[-1] == f"s{stage}":
        head = head[:-1]
        stage -= 1
    rng = _ends(g, head[0])[0] if head else f"v{stage}"
    return SpinePath(rng, head, stage)


def vertex_at(g: AnyGraph, x: InfinitePath, n: int) -> str:
    """s(x_{<=n}); for n = 0 this is r(x)."""
    if n == 0:
        return x.rng
    return _ends(g, x.edge_at(n - 1))[1]


def shift(g: AnyGraph, x: InfinitePath, n: int) -> InfinitePath:
    """sigma^n x."""
    if isinstance(x, SpinePath):
        h = len(x.head)
        if n <= h:
            return canonical_spine(g, x.head[n:], x.stage)
        return canonical_spine(g, (), x.stage + n - h)
    p = len(x.prefix)
    if n <= p:
        return canonical_lasso(g, x.prefix[n:], x.cycle)
    r = (n - p) % len(x.cycle)
    return canonical_lasso(g, (), x.cycle[r:] + x.cycle[:r])


def prepend(g: AnyGraph, beta: Path, x: InfinitePath) -> InfinitePath:
    """beta . x (requires s(beta) = r(x))."""
    if beta.src != x.rng:
        raise NotComposable(f"s(beta) = {beta.src} but r(x) = {x.rng}")
    if isinstance(x, SpinePath):
        return canonical_spine(g, beta.edges + x.head, x.stage)
    return canonical_lasso(g, beta.edges + x.prefix, x.cycle)


def infinite_path_from(g: LadderGraph, v: str) -> SpinePath:
    """Every ladder vertex receives exactly one edge, so the infinite path
    with range v is unique."""
    j, i = g.vertex_stage(v)
    head = tuple(f"c{j}_{t}" for t in range(i, 0, -1))
    return canonical_spine(g, head, j)


def parse_infinite_path(text: str, g: AnyGraph) -> InfinitePath:
    """Parse ``"prefix;cycle"`` (finite graphs) or ``"spine"`` /
    ``"head;spine"`` (ladders). A one-token prefix naming a vertex is the
    empty prefix at that vertex."""
    text = text.strip()
    if isinstance(g, LadderGraph):
        if text == "spine":
            return SpinePath("v0", (), 0)
        if ";" not in text:
            raise InvalidLasso("ladder paths are written 'spine' or 'head;spine'")
        head, tail = (part.split() for part in text.split(";", 1))
        if tail != ["spine"]:
            raise InvalidLasso("ladder paths must end in the spine")
        if not head:
            return SpinePath("v0", (), 0)
        if len(head) == 1:
            try:
                j, i = g.vertex_stage(head[0])
            except UnknownId:
                pass
            else:
                if i:
                    raise InvalidLasso("a spine tail starts at a spine vertex")
                return canonical_spine(g, (), j)
        try:
            src = g.path(head).src
        except (NotComposable, UnknownId) as exc:
            raise InvalidLasso(str(exc)) from None
        j, i = g.vertex_stage(src)
        if i:
            raise InvalidLasso(f"head ends at branch vertex {src}")
        return canonical_spine(g, tuple(head), j)
    if ";" not in text:
        raise InvalidLasso("lasso syntax is 'prefix;cycle'")
    head_text, cycle_text = text.split(";", 1)
    head = head_text.split()
    cycle = tuple(cycle_text.split())
    start = None
    if len(head) == 1 and head[0] in g.vertex_set:
        start = head[0]
        head = []
    try:
        return make_lasso(g, tuple(head), cycle, start)
    except UnknownId as exc:
        raise InvalidLasso(str(exc)) from None


def infinite_path_from_json(obj: dict, g: AnyGraph) -> InfinitePath:
    if obj.get("kind") == "spine":
        if not isinstance(g, LadderGraph):
            raise LpaError("spine paths need a ladder graph")
        return canonical_spine(g, tuple(obj.get("head", ())), int(obj.get("stage", 0)))
    if not isinstance(g, Graph):
        raise LpaError("lasso paths need a finite graph")
    return make_lasso(g, tuple(obj.get("prefix", ())), tuple(obj["cycle"]), obj.get("range"))
