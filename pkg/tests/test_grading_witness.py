import random

import pytest

from lpagrade.algebra import LpaElement
from lpagrade.errors import InvalidInput, IrregularVertexOnExpansion
from lpagrade.graph import LadderGraph, ladder_instantiate
from lpagrade.lengths import decide_strongly_graded, length_profiles
from lpagrade.sampling import random_graph, random_raw
from lpagrade.syntax import parse_element
from lpagrade.witness import (
    NEG_POS,
    POS_NEG,
    FactorizationWitness,
    NotFoundUpTo,
    expand_unit,
    factor_homogeneous,
    factor_local_unit,
    verify_factorization,
)


def pairs_text(w):
    return [[str(x), str(y)] for x, y in w.pairs]


def test_loop_neg_pos(loop):
    w = factor_local_unit(loop, "v", 1, NEG_POS, 3)
    assert pairs_text(w) == [["[v|e]", "[e|v]"]] and w.level == 0
    assert verify_factorization(w)


def test_chain_irregular(chain):
    with pytest.raises(IrregularVertexOnExpansion):
        factor_local_unit(chain, "w", 1, POS_NEG, 3)


def test_ladder_level_one():
    w = factor_local_unit(LadderGraph((), 2, 0), "v0", 1, NEG_POS, 5)
    assert w.level == 1
    # the single level-1 path into v0 is s1; beta must be a length-2 path from v1
    ((x, y),) = w.pairs
    assert str(x) == "[s1|c1_2 c1_1]"


def test_factor_homogeneous_examples(loop, chain):
    x = parse_element("[e|v]", loop)
    assert pairs_text(factor_homogeneous(loop, x, (1, 0), 3)) == [["[e|v]", "[v|v]"]]
    assert pairs_text(factor_homogeneous(loop, x, (2, -1), 3)) == [["[e e|v]", "[v|e]"]]
    out = factor_homogeneous(chain, parse_element("[e|w]", chain), (2, -1), 3)
    assert isinstance(out, NotFoundUpTo)
    with pytest.raises(InvalidInput):
        factor_homogeneous(loop, x, (1, 1), 3)
    with pytest.raises(InvalidInput):
        factor_homogeneous(loop, parse_element("[e|v] + [v|v]", loop), (1, 0), 3)


def test_verify_rejects_tampering(loop):
    w = factor_local_unit(loop, "v", 1, NEG_POS, 3)
    (x, y), = w.pairs
    doubled = FactorizationWitness(loop, w.target, w.split, [(x * 2, y)], w.level)
    assert not verify_factorization(doubled)
    empty = FactorizationWitness(loop, w.target, w.split, [], 0)
    assert not verify_factorization(empty)
    wrong_degree = FactorizationWitness(loop, w.target, (1, -1), w.pairs, 0)
    assert not verify_factorization(wrong_degree)


def test_expand_unit(l2):
    assert len(expand_unit(l2, "v", 3)) == 8


def test_bad_arguments(loop):
    with pytest.raises(InvalidInput):
        factor_local_unit(loop, "v", 0, NEG_POS, 3)
    with pytest.raises(InvalidInput):
        factor_local_unit(loop, "v", 1, "sideways", 3)


def test_verdict_consistency():
    """Strongly graded finite graphs admit both unit factorizations within
    2 (p + c) |V| levels; a source blocks the (+k, -k) direction."""
    rng = random.Random(17)
    seen_true = seen_false = 0
    for _ in range(60):
        g = random_graph(rng, 4, 6, no_sources=rng.random() < 0.6)
        rep = decide_strongly_graded(g)
        prof = length_profiles(g)
        cap = 2 * (prof.preperiod + prof.period) * len(g.vertices)
        if rep.strongly_graded:
            seen_true += 1
            for v in g.vertices:
                for k in (1, 2, 3):
                    for d in (POS_NEG, NEG_POS):
                        w = factor_local_unit(g, v, k, d, cap)
                        assert isinstance(w, FactorizationWitness), (g, v, k, d)
                        assert verify_factorization(w)
        else:
            seen_false += 1
            for w in rep.sources:
                with pytest.raises(IrregularVertexOnExpansion):
                    factor_local_unit(g, w, 1, POS_NEG, cap)
    assert seen_true and seen_false


@pytest.mark.parametrize("name", ["loop", "l2", "c2"])
def test_homogeneous_factorizations_verify(name, request):
    g = request.getfixturevalue(name)
    rng = random.Random(name)
    for _ in range(40):
        d = rng.randint(-2, 2)
        x = LpaElement(g, random_raw(g, rng, 3, 3, deg=d))
        if not x:
            continue
        a = rng.randint(-3, 3)
        w = factor_homogeneous(g, x, (a, d - a), 8)
        assert isinstance(w, FactorizationWitness) and verify_factorization(w)


def test_truncation_top_vertex_is_a_source():
    g = ladder_instantiate(LadderGraph((), 2, 0), 3)
    with pytest.raises(IrregularVertexOnExpansion):
        factor_local_unit(g, "v3", 1, POS_NEG, 3)
    # working in the ladder itself, the same vertex factors
    assert verify_factorization(factor_local_unit(LadderGraph((), 2, 0), "v3", 1, POS_NEG, 3))


def test_json_shape(loop):
    j = factor_local_unit(loop, "v", 2, POS_NEG, 3).to_json()
    assert set(j) == {"target", "split", "pairs", "level"}
    assert j["split"] == [2, -2] and j["pairs"] == [["[e e|v]", "[v|e e]"]]
