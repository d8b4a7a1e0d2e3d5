"""Directed graphs, finite paths and the ladder family of infinite graphs.

Edges carry a range r(e) and a source s(e); a path alpha_1 ... alpha_n is
composable when s(alpha_i) = r(alpha_{i+1}), so it is read range-to-source.
A vertex is a *source* when it receives no edge (r^{-1}(v) empty).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Union

import networkx as nx

from .errors import (
    DanglingEndpoint,
    DuplicateId,
    GraphSyntaxError,
    NotComposable,
    OmegaEdgesUnsupported,
    UnknownId,
)

OMEGA = "omega"

Multiplicity = Union[int, str]


class Edge(NamedTuple):
    id: str
    range: str
    source: str
    mult: Multiplicity = 1


class Path(NamedTuple):
    """A finite path. Vertex paths have ``edges == ()`` and ``rng == src``."""

    rng: str
    src: str
    edges: tuple[str, ...] = ()

    def __len__(self) -> int:  # type: ignore[override]
        return len(self.edges)

    @property
    def is_vertex(self) -> bool:
        return not self.edges


def vertex_path(v: str) -> Path:
    return Path(v, v, ())


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    enumeration: tuple[str, ...]

    # -- lookup tables -------------------------------------------------
    @cached_property
    def edge(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def index(self) -> dict[str, int]:
        """Position of each edge in the enumeration e_1, e_2, ... (0-based)."""
        return {eid: i for i, eid in enumerate(self.enumeration)}

    @cached_property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.vertices)

    @cached_property
    def vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def receivers(self) -> dict[str, tuple[str, ...]]:
        """r^{-1}(v), in enumeration order."""
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for eid in self.enumeration:
            out[self.edge[eid].range].append(eid)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def emitters(self) -> dict[str, tuple[str, ...]]:
        """s^{-1}(v), in enumeration order."""
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for eid in self.enumeration:
            out[self.edge[eid].source].append(eid)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def has_omega(self) -> bool:
        return any(e.mult == OMEGA for e in self.edges)

    @cached_property
    def special_edge(self) -> dict[str, str]:
        """Special edge of every regular vertex: its earliest received edge."""
        out = {}
        for v, es in self.receivers.items():
            if es and not any(self.edge[e].mult == OMEGA for e in es):
                out[v] = es[0]
        return out

    def is_regular(self, v: str) -> bool:
        return v in self.special_edge

    @cached_property
    def _scratch(self) -> dict:
        # per-graph memo tables used by the algebra engine
        return {}

    # -- paths ---------------------------------------------------------
    def require_finite_algebra(self) -> None:
        if self.has_omega:
            raise OmegaEdgesUnsupported("graph has omega-multiplicity edges; no algebra elements can be built")

    def vertex_path(self, v: str) -> Path:
        if v not in self.vertex_set:
            raise UnknownId(f"unknown vertex {v!r}")
        return Path(v, v, ())

    def path(self, edges: Iterable[str]) -> Path:
        """Build a nonempty path from edge ids, checking composability."""
        edges = tuple(edges)
        if not edges:
            raise NotComposable("empty edge list; use vertex_path")
        for eid in edges:
            if eid not in self.edge:
                raise UnknownId(f"unknown edge {eid!r}")
        for a, b in zip(edges, edges[1:]):
            if self.edge[a].source != self.edge[b].range:
                raise NotComposable(f"s({a}) = {self.edge[a].source} but r({b}) = {self.edge[b].range}")
        return Path(self.edge[edges[0]].range, self.edge[edges[-1]].source, edges)

    def concat(self, p: Path, q: Path) -> Path:
        if p.src != q.rng:
            raise NotComposable(f"cannot compose: s = {p.src}, r = {q.rng}")
        return Path(p.rng, q.src, p.edges + q.edges)

    def edge_ends(self, eid: str) -> tuple[str, str]:
        """(range, source) of an edge."""
        try:
            e = self.edge[eid]
        except KeyError:
            raise UnknownId(f"unknown edge {eid!r}") from None
        return e.range, e.source

    def path_key(self, p: Path) -> tuple:
        idx = self.index
        return (len(p.edges), tuple(idx[e] for e in p.edges), self.vertex_index[p.rng])

    def step_digraph(self) -> nx.DiGraph:
        """D: u -> w iff some edge has r(e) = u and s(e) = w."""
        d = nx.DiGraph()
        d.add_nodes_from(self.vertices)
        for e in self.edges:
            d.add_edge(e.range, e.source)
        return d

    def to_json(self) -> dict:
        return {
            "kind": "finite",
            "vertices": list(self.vertices),
            "edges": [{"id": e.id, "range": e.range, "source": e.source, "mult": e.mult} for e in self.edges],
            "enumeration": list(self.enumeration),
        }

    @classmethod
    def from_edges(cls, vertices, edges, enumeration=None) -> "Graph":
        """Shorthand: ``edges`` is an iterable of ``(id, range, source)`` or
        ``(id, range, source, mult)`` tuples."""
        raw = {
            "kind": "finite",
            "vertices": list(vertices),
            "edges": [dict(zip(("id", "range", "source", "mult"), e)) for e in edges],
        }
        if enumeration is not None:
            raw["enumeration"] = list(enumeration)
        return validate_graph(raw)


def validate_graph(raw: dict) -> Graph:
    """Validate a finite-graph description (the JSON object form).

    Integer multiplicities m > 1 expand into parallel edges ``id#1 .. id#m``;
    ``"omega"`` is kept as a single flagged edge.
    """
    if raw.get("kind", "finite") != "finite":
        raise GraphSyntaxError(f"expected kind 'finite', got {raw.get('kind')!r}")
    unknown = set(raw) - {"kind", "vertices", "edges", "enumeration"}
    if "vertices" not in raw or unknown:
        raise GraphSyntaxError(f"finite graph needs 'vertices'; unexpected keys {sorted(unknown)}")
    vertices = [str(v) for v in raw.get("vertices", [])]
    seen: set[str] = set()
    for v in vertices:
        if v in seen:
            raise DuplicateId(f"duplicate vertex id {v!r}")
        seen.add(v)
    vset = set(vertices)

    edges: list[Edge] = []
    expansion: dict[str, list[str]] = {}
    for spec in raw.get("edges", []):
        try:
            eid, r, s = str(spec["id"]), str(spec["range"]), str(spec["source"])
        except KeyError as exc:
            raise GraphSyntaxError(f"edge entry missing field {exc.args[0]!r}") from None
        mult = spec.get("mult", 1)
        if eid in seen:
            raise DuplicateId(f"duplicate id {eid!r}")
        seen.add(eid)
        for end in (r, s):
            if end not in vset:
                raise DanglingEndpoint(f"edge {eid!r} names unknown vertex {end!r}")
        if mult == OMEGA:
            edges.append(Edge(eid, r, s, OMEGA))
            expansion[eid] = [eid]
        elif isinstance(mult, int) and not isinstance(mult, bool) and mult >= 1:
            if mult == 1:
                edges.append(Edge(eid, r, s, 1))
                expansion[eid] = [eid]
            else:
                ids = [f"{eid}#{i}" for i in range(1, mult + 1)]
                for sub in ids:
                    if sub in seen:
                        raise DuplicateId(f"expanded id {sub!r} collides")
                    seen.add(sub)
                    edges.append(Edge(sub, r, s, 1))
                expansion[eid] = ids
        else:
            raise GraphSyntaxError(f"edge {eid!r}: multiplicity must be a positive integer or 'omega'")

    if "enumeration" in raw and raw["enumeration"] is not None:
        order: list[str] = []
        for eid in raw["enumeration"]:
            eid = str(eid)
            if eid in expansion:
                order.extend(expansion[eid])
            elif any(eid == e.id for e in edges):
                order.append(eid)
            else:
                raise UnknownId(f"enumeration names unknown edge {eid!r}")
        if sorted(order) != sorted(e.id for e in edges):
            raise GraphSyntaxError("enumeration must be a permutation of the edge ids")
    else:
        order = [e.id for e in edges]
    return Graph(tuple(vertices), tuple(edges), tuple(order))


# ---------------------------------------------------------------------------
# structural predicates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StructuralReport:
    row_finite: bool
    sources: frozenset[str]
    emitters_empty: frozenset[str]
    scc: tuple[tuple[str, ...], ...]
    enumeration: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "row_finite": self.row_finite,
            "sources": sorted(self.sources),
            "emitters_empty": sorted(self.emitters_empty),
            "scc": [list(c) for c in self.scc],
            "enumeration": list(self.enumeration),
        }


def structural_report(g: Graph) -> StructuralReport:
    row_finite = not any(e.mult == OMEGA for e in g.edges)
    sources = frozenset(v for v, es in g.receivers.items() if not es)
    empty = frozenset(v for v, es in g.emitters.items() if not es)
    order = g.vertex_index
    comps = [tuple(sorted(c, key=order.__getitem__)) for c in nx.strongly_connected_components(g.step_digraph())]
    comps.sort(key=lambda c: order[c[0]])
    return StructuralReport(row_finite, sources, empty, tuple(comps), g.enumeration)


def enumerate_paths(g: Graph, k: int, J: int, v: str | None = None) -> list[Path]:
    """E^k_J (or E^k_J v): length-k paths using only e_1 .. e_J.

    For k = 0 this is the vertex set E^0_J = {s(e_j) : j <= J}.
    """
    if k < 0 or J < 0:
        raise ValueError("k and J must be nonnegative")
    g.require_finite_algebra()
    allowed = g.enumeration[:J]
    if k == 0:
        verts: list[str] = []
        for eid in allowed:
            s = g.edge[eid].source
            if s not in verts:
                verts.append(s)
        if v is not None:
            return [vertex_path(v)] if v in verts else []
        return [vertex_path(u) for u in verts]

    by_range: dict[str, list[str]] = {}
    for eid in allowed:
        by_range.setdefault(g.edge[eid].range, []).append(eid)

    out: list[Path] = []

    def extend(prefix: tuple[str, ...]) -> None:
        if len(prefix) == k:
            src = g.edge[prefix[-1]].source
            if v is None or src == v:
                out.append(Path(g.edge[prefix[0]].range, src, prefix))
            return
        for eid in by_range.get(g.edge[prefix[-1]].source, ()):
            extend(prefix + (eid,))

    for eid in allowed:
        extend((eid,))
    return out


# ---------------------------------------------------------------------------
# ladder graphs
# ---------------------------------------------------------------------------

_SPINE_V = re.compile(r"^v(\d+)$")
_BRANCH_V = re.compile(r"^u(\d+)_(\d+)$")
_SPINE_E = re.compile(r"^s(\d+)$")
_BRANCH_E = re.compile(r"^c(\d+)_(\d+)$")


@dataclass(frozen=True)
class LadderGraph:
    """Spine v_0 <- v_1 <- v_2 ... with a branch of length b_j hanging off v_j.

    b_j = table[j] for j < len(table), else max(0, slope * j + offset).
    Vertex ids: ``v{j}``, ``u{j}_{i}``; edge ids: ``s{j}`` (r = v_{j-1},
    s = v_j) and ``c{j}_{i}`` (s = u_{j,i-1}, r = u_{j,i}, u_{j,0} = v_j).
    """

    table: tuple[int, ...] = ()
    slope: int = 0
    offset: int = 0

    def __post_init__(self):
        if any(b < 0 for b in self.table) or self.slope < 0:
            raise GraphSyntaxError("ladder table entries and slope must be nonnegative")

    def branch_length(self, j: int) -> int:
        if j < len(self.table):
            return self.table[j]
        return max(0, self.slope * j + self.offset)

    # ids ---------------------------------------------------------------
    def vertex_stage(self, v: str) -> tuple[int, int]:
        """(j, i) with i = 0 on the spine."""
        m = _SPINE_V.match(v)
        if m:
            return int(m.group(1)), 0
        m = _BRANCH_V.match(v)
        if m:
            j, i = int(m.group(1)), int(m.group(2))
            if 1 <= i <= self.branch_length(j):
                return j, i
        raise UnknownId(f"{v!r} is not a vertex of this ladder")

    @staticmethod
    def vertex_name(j: int, i: int = 0) -> str:
        return f"v{j}" if i == 0 else f"u{j}_{i}"

    def edge_ends(self, eid: str) -> tuple[str, str]:
        """(range, source) of a ladder edge."""
        m = _SPINE_E.match(eid)
        if m and int(m.group(1)) >= 1:
            j = int(m.group(1))
            return f"v{j - 1}", f"v{j}"
        m = _BRANCH_E.match(eid)
        if m:
            j, i = int(m.group(1)), int(m.group(2))
            if 1 <= i <= self.branch_length(j):
                return self.vertex_name(j, i), self.vertex_name(j, i - 1)
        raise UnknownId(f"{eid!r} is not an edge of this ladder")

    def path(self, edges: Iterable[str]) -> Path:
        edges = tuple(edges)
        if not edges:
            raise NotComposable("empty edge list")
        ends = [self.edge_ends(e) for e in edges]
        for (a, (_, sa)), (b, (rb, _)) in zip(zip(edges, ends), zip(edges[1:], ends[1:])):
            if sa != rb:
                raise NotComposable(f"s({a}) = {sa} but r({b}) = {rb}")
        return Path(ends[0][0], ends[-1][1], edges)

    # closed-form length sets ---------------------------------------------
    @cached_property
    def excess_horizon(self) -> int | None:
        """A stage beyond which b_j - j never exceeds its running maximum,
        or None when b_j - j is unbounded (slope >= 2)."""
        if self.slope >= 2:
            return None
        return len(self.table) + abs(self.offset) + 2

    def max_excess(self, j: int) -> int:
        """M_j = max_{i <= j} (b_i - i)."""
        return max(self.branch_length(i) - i for i in range(j + 1))

    @cached_property
    def sup_excess(self) -> int | None:
        """sup_j (b_j - j); None means infinite."""
        h = self.excess_horizon
        return None if h is None else self.max_excess(h)

    def member(self, v: str, m: int) -> bool:
        """Is there a path of length m with source v?

        L(v_j) = [0, j + M_j] and L(u_{j,i}) = [0, b_j - i].
        """
        j, i = self.vertex_stage(v)
        if m < 0:
            return False
        if i == 0:
            return m <= j + self.max_excess(j)
        return m <= self.branch_length(j) - i

    def to_json(self) -> dict:
        return {"kind": "ladder", "table": list(self.table), "slope": self.slope, "offset": self.offset}


def ladder_instantiate(preset: LadderGraph, N: int) -> Graph:
    """Finite subgraph on stages j <= N: spine through v_N plus the branches
    at v_0 .. v_N. Note that v_N receives no edge in the truncation."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    vertices = [f"v{j}" for j in range(N + 1)]
    edges = []
    for j in range(1, N + 1):
        edges.append({"id": f"s{j}", "range": f"v{j - 1}", "source": f"v{j}"})
    for j in range(N + 1):
        b = preset.branch_length(j)
        for i in range(1, b + 1):
            vertices.append(f"u{j}_{i}")
            edges.append({"id": f"c{j}_{i}", "range": LadderGraph.vertex_name(j, i),
                          "source": LadderGraph.vertex_name(j, i - 1)})
    return validate_graph({"kind": "finite", "vertices": vertices, "edges": edges})


def parse_ladder(raw: dict) -> LadderGraph:
    unknown = set(raw) - {"kind", "table", "slope", "offset"}
    if unknown:
        raise GraphSyntaxError(f"unexpected ladder keys {sorted(unknown)}")
    try:
        table = tuple(int(b) for b in raw.get("table", []))
        return LadderGraph(table, int(raw.get("slope", 0)), int(raw.get("offset", 0)))
    except (TypeError, ValueError) as exc:
        raise GraphSyntaxError(f"bad ladder description: {exc}") from None


def graph_from_json(raw: dict) -> Union[Graph, LadderGraph]:
    if not isinstance(raw, dict):
        raise GraphSyntaxError("graph description must be a JSON object")
    kind = raw.get("kind", "finite")
    if kind == "ladder":
        return parse_ladder(raw)
    if kind == "finite":
        return validate_graph(raw)
    raise GraphSyntaxError(f"unknown graph kind {kind!r}")
