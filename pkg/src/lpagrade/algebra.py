"""Exact Leavitt path algebra L_Q(E) of a finite graph.

Elements are finite Q-linear combinations of monomials [alpha|beta] = alpha beta^*
(s(alpha) = s(beta)) kept in normal form: no monomial whose two legs end in
the same special edge f survives, because

    (a'f)(b'f)^* = a' b'^* - sum_{g in r^{-1}(r(f)), g != f} (a'g)(b'g)^*

is applied until nothing reducible remains.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

from .errors import GraphMismatch, SourceMismatch
from .graph import Graph, Path, vertex_path

Monomial = tuple[Path, Path]
Scalar = Union[int, Fraction]


def degree(m: Monomial) -> int:
    return len(m[0].edges) - len(m[1].edges)


def make_monomial(g: Graph, alpha: Path, beta: Path) -> Monomial:
    if alpha.src != beta.src:
        raise SourceMismatch(f"s(alpha) = {alpha.src} differs from s(beta) = {beta.src}")
    return (alpha, beta)


def monomial_key(g: Graph, m: Monomial) -> tuple:
    a, b = g.path_key(m[0]), g.path_key(m[1])
    return (a[0] + b[0], a, b)


def _extends(p: Path, q: Path) -> bool:
    """Is p an initial segment of q?"""
    return p.rng == q.rng and q.edges[: len(p.edges)] == p.edges


def mono_mul(g: Graph, m1: Monomial, m2: Monomial) -> Optional[Monomial]:
    """(alpha beta^*)(gamma delta^*) as a single monomial, or None for zero."""
    alpha, beta = m1
    gamma, delta = m2
    if _extends(beta, gamma):
        rest = gamma.edges[len(beta.edges):]
        return (Path(alpha.rng, gamma.src, alpha.edges + rest), delta)
    if _extends(gamma, beta):
        rest = beta.edges[len(gamma.edges):]
        return (alpha, Path(delta.rng, beta.src, delta.edges + rest))
    return None


def reducible(g: Graph, m: Monomial) -> bool:
    a, b = m[0].edges, m[1].edges
    if not a or not b or a[-1] != b[-1]:
        return False
    f = a[-1]
    return g.special_edge.get(g.edge[f].range) == f


def reduce_step(g: Graph, m: Monomial) -> list[tuple[Monomial, int]]:
    """One application of the collapse rule to a reducible monomial."""
    alpha, beta = m
    f = alpha.edges[-1]
    w = g.edge[f].range
    a_edges, b_edges = alpha.edges[:-1], beta.edges[:-1]
    a0 = Path(alpha.rng, w, a_edges) if a_edges else vertex_path(w)
    b0 = Path(beta.rng, w, b_edges) if b_edges else vertex_path(w)
    out = [((a0, b0), 1)]
    for e in g.receivers[w]:
        if e == f:
            continue
        s = g.edge[e].source
        out.append(((Path(a0.rng, s, a_edges + (e,)), Path(b0.rng, s, b_edges + (e,))), -1))
    return out


def monomial_nf(g: Graph, m: Monomial) -> dict[Monomial, Fraction]:
    cache = g._scratch.setdefault("nf", {})
    hit = cache.get(m)
    if hit is not None:
        return hit
    if not reducible(g, m):
        out = {m: Fraction(1)}
    else:
        out = {}
        for m2, c in reduce_step(g, m):
            for m3, c3 in monomial_nf(g, m2).items():
                val = out.get(m3, 0) + c * c3
                if val:
                    out[m3] = val
                else:
                    out.pop(m3, None)
    cache[m] = out
    return out


def reduction_measure(g: Graph, terms: Mapping[Monomial, Fraction]) -> tuple[int, ...]:
    """Leg-length sums of the reducible monomials, sorted descending; it drops
    in lexicographic (multiset) order at every reduction step."""
    return tuple(sorted((len(a.edges) + len(b.edges) for (a, b) in terms if reducible(g, (a, b))), reverse=True))


def normal_form(
    g: Graph,
    raw: Mapping[Monomial, Scalar],
    rng: Optional[random.Random] = None,
    trace: Optional[list] = None,
) -> dict[Monomial, Fraction]:
    """Reduce a raw linear combination to normal form.

    With ``rng`` the reducible monomial to rewrite next is drawn at random,
    one step at a time; ``trace`` then collects the reduction measure after
    every step. Without either, cached per-monomial normal forms are summed.
    """
    g.require_finite_algebra()
    if rng is None and trace is None:
        out: dict[Monomial, Fraction] = {}
        for m, c in raw.items():
            if not c:
                continue
            for m2, c2 in monomial_nf(g, m).items():
                val = out.get(m2, 0) + c * c2
                if val:
                    out[m2] = val
                else:
                    out.pop(m2, None)
        return out

    terms = {m: Fraction(c) for m, c in raw.items() if c}
    if trace is not None:
        trace.append(reduction_measure(g, terms))
    while True:
        red = [m for m in terms if reducible(g, m)]
        if not red:
            return terms
        m = rng.choice(red) if rng is not None else min(red, key=lambda t: monomial_key(g, t))
        c = terms.pop(m)
        for m2, c2 in reduce_step(g, m):
            val = terms.get(m2, 0) + c * c2
            if val:
                terms[m2] = val
            else:
                terms.pop(m2, None)
        if trace is not None:
            trace.append(reduction_measure(g, terms))


def _same_graph(a: Graph, b: Graph) -> None:
    if a is not b and a != b:
        raise GraphMismatch("elements live on different graphs")


class LpaElement:
    """An element of L_Q(E) in normal form, bound to its graph."""

    __slots__ = ("graph", "terms")

    def __init__(self, graph: Graph, terms: Optional[Mapping[Monomial, Scalar]] = None, *, normalized: bool = False):
        graph.require_finite_algebra()
        self.graph = graph
        if normalized:
            self.terms = {m: Fraction(c) for m, c in (terms or {}).items() if c}
        else:
            self.terms = normal_form(graph, terms or {})

    @classmethod
    def monomial(cls, g: Graph, alpha: Path, beta: Path, coeff: Scalar = 1) -> "LpaElement":
        return cls(g, {make_monomial(g, alpha, beta): coeff})

    @classmethod
    def vertex(cls, g: Graph, v: str) -> "LpaElement":
        p = g.vertex_path(v)
        return cls(g, {(p, p): 1})

    @classmethod
    def zero(cls, g: Graph) -> "LpaElement":
        return cls(g, {}, normalized=True)

    # arithmetic --------------------------------------------------------
    def _combine(self, other: "LpaElement", sign: int) -> "LpaElement":
        _same_graph(self.graph, other.graph)
        out = dict(self.terms)
        for m, c in other.terms.items():
            val = out.get(m, 0) + sign * c
            if val:
                out[m] = val
            else:
                out.pop(m, None)
        return LpaElement(self.graph, out, normalized=True)

    def __add__(self, other):
        if not isinstance(other, LpaElement):
            return NotImplemented
        return self._combine(other, 1)

    def __sub__(self, other):
        if not isinstance(other, LpaElement):
            return NotImplemented
        return self._combine(other, -1)

    def __neg__(self):
        return LpaElement(self.graph, {m: -c for m, c in self.terms.items()}, normalized=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LpaElement(self.graph, {m: c * other for m, c in self.terms.items()}, normalized=True)
        if not isinstance(other, LpaElement):
            return NotImplemented
        _same_graph(self.graph, other.graph)
        g = self.graph
        raw: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(g, m1, m2)
                if m is not None:
                    raw[m] = raw.get(m, 0) + c1 * c2
        return LpaElement(g, raw)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, LpaElement):
            return equals(self, other)
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __bool__(self) -> bool:
        return bool(self.terms)

    # structure ---------------------------------------------------------
    def star(self) -> "LpaElement":
        return star(self)

    def components(self) -> dict[int, "LpaElement"]:
        return grade_decompose(self)

    def degrees(self) -> set[int]:
        return {degree(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        g = self.graph
        return sorted(self.terms.items(), key=lambda t: monomial_key(g, t[0]))

    def __str__(self) -> str:
        from .syntax import format_element

        return format_element(self)

    def __repr__(self) -> str:
        return f"LpaElement({self})"


def star(x: LpaElement) -> LpaElement:
    """(alpha beta^*)^* = beta alpha^*; coefficients are rational, so fixed."""
    return LpaElement(x.graph, {(b, a): c for (a, b), c in x.terms.items()}, normalized=True)


def grade_decompose(x: LpaElement) -> dict[int, LpaElement]:
    parts: dict[int, dict] = {}
    for m, c in x.terms.items():
        parts.setdefault(degree(m), {})[m] = c
    return {n: LpaElement(x.graph, t, normalized=True) for n, t in sorted(parts.items())}


def equals(x: LpaElement, y: LpaElement) -> bool:
    _same_graph(x.graph, y.graph)
    return x.terms == y.terms


def element_sum(g: Graph, items: Iterable[LpaElement]) -> LpaElement:
    out = LpaElement.zero(g)
    for it in items:
        out = out + it
    return out
