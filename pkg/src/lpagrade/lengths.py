"""Length sets L(v) = {l : some path beta has s(beta) = v and |beta| = l},
property (Y) and the strong-grading verdict for graph algebras.

For a finite graph the indicator vectors w_l(v) = [l in L(v)] obey
w_{l+1}(v) = OR_{s(e)=v} w_l(r(e)) with w_0 = 1, so the sequence (w_l) is
eventually periodic and every L(v) is described by a finite table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import Callable, Hashable, Iterable, Optional, Union

import networkx as nx

from .errors import InvalidLasso, NoInfinitePath
from .graph import Graph, LadderGraph, Path, structural_report, vertex_path
from .lasso import InfinitePath, LassoPath, SpinePath, canonical_lasso, vertex_at

AnyGraph = Union[Graph, LadderGraph]


# ---------------------------------------------------------------------------
# length profiles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LengthProfile:
    vertices: tuple[str, ...]
    table: tuple[int, ...]  # bitmask over vertex positions, one per l < p + c
    preperiod: int
    period: int

    def fold(self, m: int) -> int:
        p, c = self.preperiod, self.period
        return m if m < p + c else p + (m - p) % c

    def member(self, v: str, m: int) -> bool:
        if m < 0:
            return False
        return bool(self.table[self.fold(m)] >> self.vertices.index(v) & 1)

    def lengths(self, v: str, upto: int) -> list[int]:
        return [m for m in range(upto + 1) if self.member(v, m)]


def length_profiles(g: Graph) -> LengthProfile:
    """Eventually periodic profile with minimal (preperiod, period).

    Multiplicities, including omega, do not affect which lengths occur.
    """
    cached = g._scratch.get("profile")
    if cached is not None:
        return cached
    pos = g.vertex_index
    n = len(g.vertices)
    # in-edges of the recurrence: w_{l+1}(v) |= w_l(r(e)) for s(e) = v
    feeds = [[pos[g.edge[e].range] for e in g.emitters[v]] for v in g.vertices]
    w = (1 << n) - 1
    seen = {w: 0}
    table = [w]
    while True:
        nxt = 0
        for i, srcs in enumerate(feeds):
            if any(w >> j & 1 for j in srcs):
                nxt |= 1 << i
        if nxt in seen:
            p = seen[nxt]
            prof = LengthProfile(tuple(g.vertices), tuple(table), p, len(table) - p)
            g._scratch["profile"] = prof
            return prof
        seen[nxt] = len(table)
        table.append(nxt)
        w = nxt


def path_of_length(g: Graph, v: str, length: int) -> Optional[Path]:
    """Lexicographically least (by enumeration) path with source v and the
    given length, or None."""
    g.vertex_path(v)
    if length == 0:
        return vertex_path(v)
    if not length_profiles(g).member(v, length):
        return None
    # layers[j]: ranges of paths of length j with source v
    layers = [{v}]
    for _ in range(length - 1):
        layers.append({g.edge[e].range for u in layers[-1] for e in g.emitters[u]})
    edges: list[str] = []
    candidates: Iterable[str] = g.enumeration
    for i in range(length):
        need = layers[length - 1 - i]
        eid = next(e for e in candidates if g.edge[e].source in need)
        edges.append(eid)
        candidates = g.receivers[g.edge[eid].source]
    return g.path(edges)


def _ladder_path_of_length(g: LadderGraph, v: str, m: int) -> Optional[Path]:
    if not g.member(v, m):
        return None
    if m == 0:
        return vertex_path(v)
    j, i = g.vertex_stage(v)
    if i:
        return g.path(tuple(f"c{j}_{t}" for t in range(i + m, i, -1)))
    # branch at v_t reached after walking down the spine from v_j; nearest branch first
    for t in range(j, -1, -1):
        down = j - t
        if down <= m <= down + g.branch_length(t):
            up = m - down
            return g.path(tuple(f"c{t}_{q}" for q in range(up, 0, -1)) + tuple(f"s{q}" for q in range(t + 1, j + 1)))
    return None


# ---------------------------------------------------------------------------
# property (Y)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PropertyYWitness:
    """Initial segment of length n and a path beta with |beta| = n + k."""

    n: int
    beta: Path
    k: int


@dataclass(frozen=True)
class ExhaustedProof:
    k: int
    bound: int
    path: InfinitePath
    exact: bool = True


@dataclass
class PropertyYVerdict:
    holds: bool
    graph: AnyGraph
    k: Optional[int] = None
    witness: Optional[InfinitePath] = None
    bound: Optional[int] = None
    allow_empty_prefix: bool = False
    criterion: str = ""
    checked_k: tuple[int, ...] = ()

    def to_json(self) -> dict:
        out = {"holds": self.holds, "criterion": self.criterion, "allow_empty_prefix": self.allow_empty_prefix}
        if self.checked_k:
            out["checked_k"] = list(self.checked_k)
        if not self.holds:
            out.update(k=self.k, bound=self.bound, witness=self.witness.to_json())
        return out

    def certificate(self) -> dict:
        if self.holds:
            raise ValueError("only failures carry a certificate")
        return {
            "type": "property_y_failure",
            "graph": self.graph.to_json(),
            "k": self.k,
            "witness": self.witness.to_json(),
            "bound": self.bound,
            "allow_empty_prefix": self.allow_empty_prefix,
        }


def find_bad_lasso(
    starts: Iterable[Hashable],
    successors: Callable[[Hashable], Iterable[Hashable]],
    bad: Callable[[Hashable], bool],
    include_start: bool,
) -> Optional[tuple[list, int]]:
    """Search a finite state graph for an infinite walk that, from position 1
    on (position 0 too when ``include_start``), visits only bad states.

    Returns ``(states, loop_at)``: the walk is ``states[:loop_at]`` followed by
    ``states[loop_at:]`` repeated forever. None when no such walk exists.
    """
    starts = list(starts)
    graph = nx.DiGraph()
    stack = list(starts)
    seen = set(stack)
    while stack:
        s = stack.pop()
        graph.add_node(s)
        for t in successors(s):
            graph.add_edge(s, t)
            if t not in seen:
                seen.add(t)
                stack.append(t)
    alive = {s for s in graph if bad(s)}
    # prune bad states without a bad successor until stable
    changed = True
    while changed:
        changed = False
        for s in list(alive):
            if not any(t in alive for t in graph.successors(s)):
                alive.discard(s)
                changed = True
    for s in starts:
        if include_start:
            first = s if s in alive else None
            walk = []
        else:
            first = next((t for t in graph.successors(s) if t in alive), None)
            walk = [s]
        if first is None:
            continue
        pos: dict = {}
        cur = first
        while cur not in pos:
            pos[cur] = len(walk)
            walk.append(cur)
            cur = next(t for t in graph.successors(cur) if t in alive)
        return walk, pos[cur]
    return None


def _state_walk_to_lasso(g: Graph, walk: list, loop_at: int) -> LassoPath:
    verts = [v for _, v in walk] + [walk[loop_at][1]]
    edges = []
    for u, w in zip(verts, verts[1:]):
        edges.append(next(e for e in g.receivers[u] if g.edge[e].source == w))
    return canonical_lasso(g, tuple(edges[:loop_at]), tuple(edges[loop_at:]))


def finite_certificate_bound(prof: LengthProfile, n_vertices: int, x: Optional[LassoPath] = None) -> int:
    base = (prof.preperiod + prof.period) * n_vertices + 1
    if x is None:
        return base
    tail = max(len(x.prefix), prof.preperiod) + lcm(prof.period, len(x.cycle))
    return max(base, tail * max(1, n_vertices) + 1)


def _decide_finite(g: Graph, allow_empty_prefix: bool) -> PropertyYVerdict:
    prof = length_profiles(g)
    d = g.step_digraph()
    ks = tuple(range(1, prof.preperiod + prof.period + 1))
    for k in ks:
        def successors(state, _d=d):
            j, v = state
            return [(prof.fold(j + 1), w) for w in _d.successors(v)]

        def bad(state, _k=k):
            j, v = state
            return not prof.member(v, prof.fold(j + _k))

        found = find_bad_lasso(((0, v) for v in g.vertices), successors, bad, allow_empty_prefix)
        if found is not None:
            x = _state_walk_to_lasso(g, *found)
            return PropertyYVerdict(
                False, g, k, x, finite_certificate_bound(prof, len(g.vertices), x),
                allow_empty_prefix, "product search over (folded length, vertex)", ks,
            )
    return PropertyYVerdict(True, g, allow_empty_prefix=allow_empty_prefix,
                            criterion="product search over (folded length, vertex)", checked_k=ks)


def _decide_ladder(g: LadderGraph, allow_empty_prefix: bool) -> PropertyYVerdict:
    sup = g.sup_excess
    if sup is None:
        return PropertyYVerdict(True, g, allow_empty_prefix=allow_empty_prefix,
                                criterion=f"sup_j (b_j - j) is infinite (slope {g.slope} >= 2)")
    k = sup + 1
    spine = SpinePath("v0", (), 0)
    return PropertyYVerdict(False, g, k, spine, g.excess_horizon + 1, allow_empty_prefix,
                            f"sup_j (b_j - j) = {sup} is finite (slope {g.slope} <= 1)")


def decide_property_y(g: AnyGraph, allow_empty_prefix: bool = False) -> PropertyYVerdict:
    if isinstance(g, LadderGraph):
        return _decide_ladder(g, allow_empty_prefix)
    return _decide_finite(g, allow_empty_prefix)


def has_infinite_path(g: Graph) -> bool:
    d = g.step_digraph()
    return any(len(c) > 1 or d.has_edge(next(iter(c)), next(iter(c))) for c in nx.strongly_connected_components(d))


def property_y_witness(
    g: AnyGraph, x: InfinitePath, k: int, allow_empty_prefix: bool = False
) -> Union[PropertyYWitness, ExhaustedProof]:
    """Find an initial segment x_{<=n} and beta with s(beta) = s(x_{<=n}) and
    |beta| = n + k, or prove none exists."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    first = 0 if allow_empty_prefix else 1
    if k == 0:
        return PropertyYWitness(first, _segment(g, x, first), 0)

    if isinstance(g, LadderGraph):
        if not isinstance(x, SpinePath):
            raise InvalidLasso("ladder paths must be spine paths")
        member, extract = g.member, lambda v, m: _ladder_path_of_length(g, v, m)
        horizon = g.excess_horizon
        bound = None if horizon is None else len(x.head) + horizon + 1
    else:
        if not has_infinite_path(g):
            raise NoInfinitePath("graph has no cycle, hence no infinite path")
        if not isinstance(x, LassoPath):
            raise InvalidLasso("finite graphs take lasso paths")
        prof = length_profiles(g)
        member, extract = prof.member, lambda v, m: path_of_length(g, v, m)
        bound = finite_certificate_bound(prof, len(g.vertices), x)

    n = first
    while bound is None or n <= bound:
        v = vertex_at(g, x, n)
        if member(v, n + k):
            return PropertyYWitness(n, extract(v, n + k), k)
        n += 1
    return ExhaustedProof(k, bound, x)


def _segment(g: AnyGraph, x: InfinitePath, n: int) -> Path:
    return g.path(x.first_edges(n)) if n else vertex_path(x.rng)


def verify_property_y_failure(g: AnyGraph, k: int, x: InfinitePath, bound: int, allow_empty_prefix: bool = False) -> bool:
    """Re-check a failure certificate: no admissible n up to ``bound`` and the
    bound covers every n."""
    first = 0 if allow_empty_prefix else 1
    if k < 1:
        return False
    if isinstance(g, LadderGraph):
        if not isinstance(x, SpinePath) or g.excess_horizon is None:
            return False
        if bound < len(x.head) + g.excess_horizon + 1:
            return False
        member = g.member
    else:
        if not isinstance(x, LassoPath):
            return False
        prof = length_profiles(g)
        if bound < finite_certificate_bound(prof, len(g.vertices), x):
            return False
        member = prof.member
    return not any(member(vertex_at(g, x, n), n + k) for n in range(first, bound + 1))


# ---------------------------------------------------------------------------
# strong grading verdict
# ---------------------------------------------------------------------------


@dataclass
class StronglyGradedReport:
    strongly_graded: bool
    row_finite: bool
    sources: tuple[str, ...]
    property_y: PropertyYVerdict
    explanation: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "strongly_graded": self.strongly_graded,
            "leavitt_path_algebra_strongly_graded": self.strongly_graded,
            "graph_cstar_algebra_strongly_graded": self.strongly_graded,
            "cstar_conclusion": "theorem-derived",
            "clauses": {
                "row_finite": self.row_finite,
                "no_sources": not self.sources,
                "sources": list(self.sources),
                "property_y": self.property_y.to_json(),
            },
            "explanation": list(self.explanation),
        }


def decide_strongly_graded(g: AnyGraph, allow_empty_prefix: bool = False) -> StronglyGradedReport:
    """Strongly Z-graded iff row-finite, no sources and property (Y); the same
    verdict holds for L_C(E) and for C*(E)."""
    if isinstance(g, LadderGraph):
        row_finite, sources = True, ()
        notes = ["ladder graph: every vertex receives exactly one edge (row-finite, no sources)"]
    else:
        rep = structural_report(g)
        row_finite = rep.row_finite
        sources = tuple(v for v in g.vertices if v in rep.sources)
        notes = []
        if not row_finite:
            omega_targets = sorted({e.range for e in g.edges if e.mult == "omega"})
            notes.append(f"not row-finite: infinitely many edges into {', '.join(omega_targets)}")
        else:
            notes.append("row-finite")
        notes.append(f"sources: {', '.join(sources)}" if sources else "no sources")
    y = decide_property_y(g, allow_empty_prefix)
    if y.holds:
        notes.append(f"property (Y) holds ({y.criterion})")
    else:
        notes.append(f"property (Y) fails at k={y.k} along {y.witness.to_text()} ({y.criterion})")
    verdict = row_finite and not sources and y.holds
    notes.append(
        f"Leavitt path algebra is {'strongly' if verdict else 'not strongly'} Z-graded; "
        f"graph C*-algebra likewise (theorem-derived, not computed)"
    )
    return StronglyGradedReport(verdict, row_finite, sources, y, notes)
