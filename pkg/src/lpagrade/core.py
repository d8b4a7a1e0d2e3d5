"""Finite-dimensional pieces of the core L(E)_0.

G_{k,J}(v) = span{[alpha|beta] : alpha, beta in E^k_J v} is a full matrix
algebra, G_{k,J} is the direct sum over v in E^0_J, and
F_{k,J} = span of the G_{l,J} with l <= k is a finite-dimensional *-subalgebra.
Every degree-zero element sits in some F_{k,J} (enlarged by vertex
projections p_w for vertices w that are not the source of any edge).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Union

from .algebra import LpaElement, Monomial, degree, normal_form, star
from .errors import NotDegreeZero
from .graph import Graph, Path, enumerate_paths
from .linalg import Span


@dataclass
class MatrixUnitSystem:
    graph: Graph
    k: int
    J: int
    v: str
    index: list[Path]
    units: dict[tuple[int, int], LpaElement]
    failures: list[str] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.index)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        from .syntax import format_leg

        return {
            "k": self.k,
            "J": self.J,
            "vertex": self.v,
            "size": self.size,
            "index": [format_leg(p) for p in self.index],
            "relations_hold": self.ok,
            "failures": self.failures,
        }


def matrix_units(g: Graph, k: int, J: int, v: str, check: bool = True) -> MatrixUnitSystem:
    """Units m_{ab} = [a|b] for a, b in E^k_J v, optionally with a full check of
    m_{ab} m_{cd} = delta_{bc} m_{ad} and idempotence/nonvanishing of m_{aa}."""
    idx = enumerate_paths(g, k, J, v)
    units = {(i, j): LpaElement.monomial(g, a, b) for i, a in enumerate(idx) for j, b in enumerate(idx)}
    mus = MatrixUnitSystem(g, k, J, v, idx, units)
    if check:
        mus.failures = check_matrix_units(mus)
    return mus


def check_matrix_units(mus: MatrixUnitSystem) -> list[str]:
    d = mus.size
    zero = LpaElement.zero(mus.graph)
    bad = []
    for i in range(d):
        u = mus.units[(i, i)]
        if not u or u * u != u:
            bad.append(f"m_{i}{i} is not a nonzero idempotent")
    for (i, j), x in mus.units.items():
        for (p, q), y in mus.units.items():
            want = mus.units[(i, q)] if j == p else zero
            if x * y != want:
                bad.append(f"m_{i}{j} m_{p}{q} != {'m_%d%d' % (i, q) if j == p else '0'}")
    return bad


# ---------------------------------------------------------------------------
# the subalgebras F_{k,J}
# ---------------------------------------------------------------------------


def core_vertices(g: Graph, J: int) -> list[str]:
    """E^0_J = {s(e_j) : j <= J}."""
    return [p.rng for p in enumerate_paths(g, 0, J)]


def component_monomials(g: Graph, k: int, J: int, v: str) -> list[Monomial]:
    idx = enumerate_paths(g, k, J, v)
    return [(a, b) for a in idx for b in idx]


def spanning_monomials(g: Graph, k: int, J: int, extra: tuple[str, ...] = ()) -> list[Monomial]:
    out = []
    for l in range(k + 1):
        for v in core_vertices(g, J):
            out.extend(component_monomials(g, l, J, v))
    for w in extra:
        p = g.vertex_path(w)
        if (p, p) not in out:
            out.append((p, p))
    return out


@dataclass
class FdSpan:
    graph: Graph
    k: int
    J: int
    extra: tuple[str, ...]
    span: Span
    basis_monomials: list[Monomial]

    @property
    def dimension(self) -> int:
        return len(self.span)

    def basis(self) -> list[LpaElement]:
        return [LpaElement(self.graph, b, normalized=True) for b in self.span.basis]

    def contains(self, x: LpaElement) -> bool:
        return self.span.contains(x.terms)


def fd_span(g: Graph, k: int, J: int, extra: tuple[str, ...] = ()) -> FdSpan:
    key = ("fd", k, J, tuple(extra))
    hit = g._scratch.get(key)
    if hit is not None:
        return hit
    span = Span()
    kept = []
    for m in spanning_monomials(g, k, J, extra):
        if span.add(normal_form(g, {m: 1})):
            kept.append(m)
    out = FdSpan(g, k, J, tuple(extra), span, kept)
    g._scratch[key] = out
    return out


def fd_dimension(g: Graph, k: int, J: int) -> int:
    return fd_span(g, k, J).dimension


# ---------------------------------------------------------------------------
# embedding degree-zero elements
# ---------------------------------------------------------------------------


@dataclass
class FdEmbedding:
    graph: Graph
    element: LpaElement
    k: int
    J: int
    extra_vertices: tuple[str, ...]
    dimension: int
    basis: list[LpaElement]
    coordinates: list[Fraction]
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "element": str(self.element),
            "k": self.k,
            "J": self.J,
            "W": list(self.extra_vertices),
            "dimension": self.dimension,
            "basis": [str(b) for b in self.basis],
            "coordinates": [str(c) for c in self.coordinates],
            "notes": list(self.notes),
        }

    def certificate(self) -> dict:
        return {"type": "fd_embedding", "graph": self.graph.to_json(), **self.to_json()}


def embed_in_fd(g: Graph, a: Union[LpaElement, Mapping[Monomial, Fraction]]) -> FdEmbedding:
    """Locate a degree-zero element inside F_{k,J} + span{p_w : w in W}.

    k and J are read off the support as given (a raw sum keeps the monomials
    the caller wrote): k is the longest leg, J the least cutoff covering every
    edge used. W holds the vertices w with [w|w] in the support but w not in
    E^0_J.
    """
    raw = a.terms if isinstance(a, LpaElement) else {m: Fraction(c) for m, c in a.items() if c}
    if any(degree(m) != 0 for m in raw):
        raise NotDegreeZero("element has support outside degree 0")
    k = max((len(m[0].edges) for m in raw), default=0)
    used = {e for m in raw for leg in m for e in leg.edges}
    J = max((g.index[e] + 1 for e in used), default=0)
    e0 = set(core_vertices(g, J))
    W = tuple(sorted({m[0].rng for m in raw if m[0].is_vertex and m[0].rng not in e0}, key=g.vertex_index.__getitem__))
    fds = fd_span(g, k, J, W)
    elem = LpaElement(g, raw)
    coords = fds.span.coordinates(elem.terms)
    if coords is None:  # pragma: no cover - excluded by construction
        raise AssertionError("element not in the constructed span")
    notes = ["J chosen to cover every edge in the support"]
    if W:
        notes.append("span enlarged by p_w for vertices emitting no edge within the cutoff")
    return FdEmbedding(g, elem, k, J, W, fds.dimension, fds.basis(), coords, tuple(notes))


def span_is_closed(g: Graph, basis: list[LpaElement], contains, samples: Optional[int] = None,
                   rng: Optional[random.Random] = None) -> bool:
    """Products and stars of basis elements stay in the span (all pairs, or a
    random sample of ``samples`` pairs)."""
    n = len(basis)
    if samples is None or n * n <= samples:
        pairs = [(i, j) for i in range(n) for j in range(n)]
    else:
        rng = rng or random.Random(0)
        pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(samples)]
    if not all(contains(star(b)) for b in basis):
        return False
    return all(contains(basis[i] * basis[j]) for i, j in pairs)


def verify_embedding(emb: FdEmbedding, samples: Optional[int] = 400, seed: int = 0) -> bool:
    """Recompute the span independently of the stored basis and check the
    stored data against it."""
    g = emb.graph
    fds = fd_span(g, emb.k, emb.J, emb.extra_vertices)
    if fds.dimension != emb.dimension or len(emb.basis) != emb.dimension:
        return False
    own = Span()
    for b in emb.basis:
        if not fds.contains(b) or not own.add(b.terms):
            return False
    total = LpaElement.zero(g)
    for c, b in zip(emb.coordinates, emb.basis):
        total = total + b * c
    if total != emb.element:
        return False
    return span_is_closed(g, emb.basis, lambda x: own.contains(x.terms), samples, random.Random(seed))


# ---------------------------------------------------------------------------
# closure report
# ---------------------------------------------------------------------------


def verify_closure(g: Graph, k: int, J: int, samples: int = 200, seed: int = 0) -> dict:
    """Sampled checks of G_{k',J}(v) G_{l',J}(w) and G_{l',J}(w) G_{k',J}(v)
    inside G_{k',J}(v) for l' < k' <= k, vanishing of cross-vertex products in
    equal degree, and star-closure of F_{k,J}."""
    rng = random.Random(seed)
    verts = core_vertices(g, J)
    comp_cache: dict = {}

    def comp(l, v):
        if (l, v) not in comp_cache:
            span = Span()
            monos = component_monomials(g, l, J, v)
            for m in monos:
                span.add(normal_form(g, {m: 1}))
            comp_cache[(l, v)] = (monos, span)
        return comp_cache[(l, v)]

    failures: list[str] = []
    absorbed = ortho = 0
    if verts and k >= 1:
        for _ in range(samples):
            kk = rng.randint(1, k)
            ll = rng.randint(0, kk - 1)
            v, w = rng.choice(verts), rng.choice(verts)
            big, span = comp(kk, v)
            small, _ = comp(ll, w)
            if not big or not small:
                continue
            x = LpaElement(g, {rng.choice(big): 1})
            y = LpaElement(g, {rng.choice(small): 1})
            for prod in (x * y, y * x):
                absorbed += 1
                if not span.contains(prod.terms):
                    failures.append(f"G_{kk}({v}) G_{ll}({w}) product {prod} escapes G_{kk}({v})")
    if len(verts) >= 2:
        for _ in range(samples):
            kk = rng.randint(0, k)
            v, w = rng.sample(verts, 2)
            a, _ = comp(kk, v)
            b, _ = comp(kk, w)
            if not a or not b:
                continue
            ortho += 1
            if LpaElement(g, {rng.choice(a): 1}) * LpaElement(g, {rng.choice(b): 1}):
                failures.append(f"G_{kk}({v}) G_{kk}({w}) != 0")
    fds = fd_span(g, k, J)
    starred = 0
    for b in fds.basis():
        starred += 1
        if not fds.contains(star(b)):
            failures.append(f"star({b}) leaves F_{k},{J}")
    return {
        "k": k,
        "J": J,
        "absorption_checks": absorbed,
        "orthogonality_checks": ortho,
        "star_checks": starred,
        "failures": failures,
        "ok": not failures,
    }

