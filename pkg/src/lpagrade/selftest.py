"""A quick, seeded invariant suite used by ``lpagrade selftest``."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .algebra import LpaElement, degree, mono_mul, normal_form, star
from .core import embed_in_fd, fd_dimension, matrix_units, verify_embedding
from .graph import Graph, LadderGraph, enumerate_paths, ladder_instantiate
from .groupoid import steinberg_product_check
from .lengths import decide_property_y, length_profiles
from .sampling import random_graph, random_monomial, random_raw
from .syntax import parse_element
from .witness import NEG_POS, POS_NEG, factor_local_unit, verify_factorization


def standard_graphs() -> dict[str, Graph]:
    return {
        "LOOP": Graph.from_edges(["v"], [("e", "v", "v")]),
        "L2": Graph.from_edges(["v"], [("e", "v", "v"), ("f", "v", "v")]),
        "C2": Graph.from_edges(["a", "b"], [("e1", "a", "b"), ("e2", "b", "a")]),
        "CHAIN": Graph.from_edges(["v", "w"], [("e", "v", "w")]),
        "LADDER4": ladder_instantiate(LadderGraph((), 2, 0), 4),
    }


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}: {self.detail}"


def _roundtrip(graphs, rng) -> str:
    n = 0
    for g in graphs.values():
        for _ in range(20):
            x = LpaElement(g, random_raw(g, rng))
            assert parse_element(str(x), g) == x, f"round trip failed for {x}"
            n += 1
    return f"{n} elements"


def _confluence(graphs, rng) -> str:
    n = 0
    for g in graphs.values():
        for _ in range(20):
            raw = random_raw(g, rng)
            a = normal_form(g, raw, rng=random.Random(rng.random()))
            b = normal_form(g, raw, rng=random.Random(rng.random()))
            assert a == b == normal_form(g, raw), f"orders disagree on {raw}"
            n += 1
    return f"{n} elements"


def _graded(graphs, rng) -> str:
    n = 0
    for g in graphs.values():
        for _ in range(20):
            d1, d2 = rng.randint(-2, 2), rng.randint(-2, 2)
            try:
                x = LpaElement(g, random_raw(g, rng, deg=d1))
                y = LpaElement(g, random_raw(g, rng, deg=d2))
            except ValueError:
                continue
            p = x * y
            assert not p or p.degrees() == {d1 + d2}
            assert not x or star(x).degrees() == {-d1}
            n += 1
    return f"{n} pairs"


def _matrix_units(graphs, rng) -> str:
    n = 0
    for name in ("L2", "C2"):
        g = graphs[name]
        for k in range(3):
            for J in range(1, len(g.edges) + 1):
                for v in g.vertices:
                    if 0 < len(enumerate_paths(g, k, J, v)) <= 4:
                        assert matrix_units(g, k, J, v).ok, f"{name} k={k} J={J} v={v}"
                        n += 1
    return f"{n} systems"


def _dimensions(graphs, rng) -> str:
    assert [fd_dimension(graphs["LOOP"], k, 1) for k in range(6)] == [1] * 6
    assert fd_dimension(graphs["L2"], 1, 2) == 4
    return "LOOP and L2 reference values"


def _embeddings(graphs, rng) -> str:
    n = 0
    for g in graphs.values():
        for _ in range(5):
            emb = embed_in_fd(g, random_raw(g, rng, deg=0, max_len=2))
            assert verify_embedding(emb, samples=50), f"embedding failed on {emb.element}"
            n += 1
    return f"{n} embeddings"


def _lengths(graphs, rng) -> str:
    n = 0
    for _ in range(20):
        g = random_graph(rng, 4, 6)
        prof = length_profiles(g)
        reach = {v: {0} for v in g.vertices}
        frontier = {v: {v} for v in g.vertices}
        for m in range(1, prof.preperiod + 2 * prof.period + 1):
            frontier = {v: {g.edge[e].range for u in frontier[v] for e in g.emitters[u]} for v in g.vertices}
            for v in g.vertices:
                assert prof.member(v, m) == bool(frontier[v]), f"length {m} at {v}"
        assert decide_property_y(g).holds
        n += 1
    return f"{n} random graphs"


def _steinberg(graphs, rng) -> str:
    n = 0
    for name in ("LOOP", "L2", "C2"):
        g = graphs[name]
        for _ in range(100):
            m1, m2 = random_monomial(g, rng), random_monomial(g, rng)
            assert steinberg_product_check(g, m1, m2), f"{m1} {m2}"
            r = mono_mul(g, m1, m2)
            assert r is None or degree(r) == degree(m1) + degree(m2)
            n += 1
    return f"{n} pairs"


def _witnesses(graphs, rng) -> str:
    n = 0
    for g in (graphs["LOOP"], graphs["L2"]):
        for k in (1, 2):
            for d in (POS_NEG, NEG_POS):
                w = factor_local_unit(g, g.vertices[0], k, d, 5)
                assert verify_factorization(w)
                n += 1
    lad = LadderGraph((), 2, 0)
    for v in ("v0", "v1", "u1_1"):
        for d in (POS_NEG, NEG_POS):
            assert verify_factorization(factor_local_unit(lad, v, 2, d, 10))
            n += 1
    return f"{n} witnesses"


CHECKS: list[tuple[str, Callable]] = [
    ("normal-form round trip", _roundtrip),
    ("confluence", _confluence),
    ("graded ring laws", _graded),
    ("matrix units", _matrix_units),
    ("core dimensions", _dimensions),
    ("finite-dimensional embeddings", _embeddings),
    ("length profiles and property (Y)", _lengths),
    ("monomial/bisection products", _steinberg),
    ("unit factorizations", _witnesses),
]


def run_selftest(seed: int = 0) -> list[CheckResult]:
    graphs = standard_graphs()
    out = []
    for name, fn in CHECKS:
        rng = random.Random(f"{seed}:{name}")
        try:
            out.append(CheckResult(name, True, fn(graphs, rng)))
        except AssertionError as exc:
            out.append(CheckResult(name, False, str(exc) or "assertion failed"))
    return out
