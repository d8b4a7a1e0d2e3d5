import json

import pytest
from hypothesis import given, settings, strategies as st

from lpagrade.errors import DanglingEndpoint, DuplicateId, GraphSyntaxError, NotComposable, OmegaEdgesUnsupported, UnknownId
from lpagrade.graph import (
    Graph,
    LadderGraph,
    enumerate_paths,
    graph_from_json,
    ladder_instantiate,
    structural_report,
    validate_graph,
)
from lpagrade.sampling import random_graph

from oracles import brute_paths


def test_validate_loop():
    g = validate_graph({"vertices": ["v"], "edges": [{"id": "e", "range": "v", "source": "v"}]})
    assert len(g.vertices) == 1 and len(g.edges) == 1
    assert g.enumeration == ("e",)


def test_dangling_endpoint():
    with pytest.raises(DanglingEndpoint):
        validate_graph({"vertices": ["v"], "edges": [{"id": "f", "range": "z", "source": "v"}]})


def test_duplicate_edge_ids():
    raw = {"vertices": ["v"], "edges": [{"id": "e", "range": "v", "source": "v"}] * 2}
    with pytest.raises(DuplicateId):
        validate_graph(raw)


def test_vertex_edge_namespace_shared():
    with pytest.raises(DuplicateId):
        validate_graph({"vertices": ["v", "e"], "edges": [{"id": "e", "range": "v", "source": "v"}]})


def test_empty_graph_is_legal():
    g = validate_graph({"vertices": [], "edges": []})
    assert g.vertices == () and structural_report(g).scc == ()


def test_unknown_keys_rejected():
    for raw in ({"ladder": {"slope": 1}}, {"vertices": [], "edge": []}, {"kind": "ladder", "slope": 1, "tabel": []}):
        with pytest.raises(GraphSyntaxError):
            graph_from_json(raw)


def test_enumeration_must_be_permutation():
    raw = {"vertices": ["v"], "edges": [{"id": "e", "range": "v", "source": "v"}, {"id": "f", "range": "v", "source": "v"}]}
    assert validate_graph({**raw, "enumeration": ["f", "e"]}).enumeration == ("f", "e")
    with pytest.raises(GraphSyntaxError):
        validate_graph({**raw, "enumeration": ["e"]})
    with pytest.raises(UnknownId):
        validate_graph({**raw, "enumeration": ["e", "g"]})


def test_multiplicity_expands():
    g = validate_graph({"vertices": ["v"], "edges": [{"id": "e", "range": "v", "source": "v", "mult": 3}]})
    assert [e.id for e in g.edges] == ["e#1", "e#2", "e#3"]


def test_structural_reports(loop, chain):
    rep = structural_report(loop)
    assert rep.row_finite and not rep.sources
    assert structural_report(chain).sources == {"w"}
    omega = validate_graph({"vertices": ["v", "w"], "edges": [{"id": "e", "range": "v", "source": "w", "mult": "omega"}]})
    assert not structural_report(omega).row_finite


def test_omega_rejected_by_algebra():
    omega = validate_graph({"vertices": ["v"], "edges": [{"id": "e", "range": "v", "source": "v", "mult": "omega"}]})
    with pytest.raises(OmegaEdgesUnsupported):
        enumerate_paths(omega, 1, 1)


def test_path_composability(loop, c2):
    assert loop.path(["e", "e"]).src == "v"
    with pytest.raises(NotComposable):
        c2.path(["e1", "e1"])
    p = c2.path(["e1", "e2"])
    assert (p.rng, p.src, len(p)) == ("a", "a", 2)


def test_enumerate_paths_examples(loop, l2):
    assert [p.edges for p in enumerate_paths(loop, 2, 1, "v")] == [("e", "e")]
    assert sorted(p.edges for p in enumerate_paths(l2, 2, 2, "v")) == [("e", "e"), ("e", "f"), ("f", "e"), ("f", "f")]
    assert [p.edges for p in enumerate_paths(l2, 1, 1, "v")] == [("e",)]


def test_enumerate_paths_against_brute_force():
    import random

    rng = random.Random(3)
    for _ in range(40):
        g = random_graph(rng, 4, 6)
        for J in range(len(g.edges) + 1):
            allowed = set(g.enumeration[:J])
            for v in g.vertices:
                for k in range(1, 4):
                    want = sorted(p for p in brute_paths(g, v, k) if set(p) <= allowed)
                    got = sorted(p.edges for p in enumerate_paths(g, k, J, v))
                    assert got == want


def test_ladder_instantiate_examples():
    g = ladder_instantiate(LadderGraph((), 1, 0), 2)
    assert set(g.vertices) == {"v0", "v1", "v2", "u1_1", "u2_1", "u2_2"}
    assert {e.id for e in g.edges} == {"s1", "s2", "c1_1", "c2_1", "c2_2"}
    g0 = ladder_instantiate(LadderGraph((0,), 1, 0), 0)
    assert g0.vertices == ("v0",) and g0.edges == ()
    g2 = ladder_instantiate(LadderGraph((), 2, 0), 2)
    assert len([e for e in g2.edges if e.id.startswith("c2_")]) == 4


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 4), max_size=4), st.integers(0, 3), st.integers(-3, 3), st.integers(0, 6))
def test_ladder_truncation_shape(table, slope, offset, N):
    preset = LadderGraph(tuple(table), slope, offset)
    g = ladder_instantiate(preset, N)
    rep = structural_report(g)
    assert rep.row_finite
    # the infinite ladder has no sources; a truncation loses exactly the edge into v_N
    assert rep.sources == ({"v%d" % N} if N >= 0 else set())
    for j in range(N + 1):
        assert sum(1 for e in g.edges if e.id.startswith(f"c{j}_")) == preset.branch_length(j)
    for e in g.edges:
        assert preset.edge_ends(e.id) == (e.range, e.source)


def test_ladder_branch_formula():
    lad = LadderGraph((3, 0), 2, -1)
    assert [lad.branch_length(j) for j in range(5)] == [3, 0, 3, 5, 7]
    assert LadderGraph((), 0, -2).branch_length(5) == 0


def test_graph_json_round_trip(l2, ladder2):
    assert graph_from_json(json.loads(json.dumps(l2.to_json()))) == l2
    assert graph_from_json(ladder2.to_json()) == ladder2
    with pytest.raises(GraphSyntaxError):
        graph_from_json({"kind": "mystery"})


def test_scc_partition():
    import random

    rng = random.Random(5)
    for _ in range(30):
        g = random_graph(rng)
        rep = structural_report(g)
        flat = [v for comp in rep.scc for v in comp]
        assert sorted(flat) == sorted(g.vertices)
        received = {e.range for e in g.edges}
        assert not (rep.sources & received)
        emitted = {e.source for e in g.edges}
        assert rep.emitters_empty == set(g.vertices) - emitted


def test_from_edges_shorthand():
    g = Graph.from_edges(["a"], [("x", "a", "a", 2)])
    assert len(g.edges) == 2
