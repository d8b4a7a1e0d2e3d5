import json

import pytest

from lpagrade.cli import main
from lpagrade.errors import GraphSyntaxError
from lpagrade.graph import LadderGraph
from lpagrade.syntax import parse_graph

LOOP = {"vertices": ["v"], "edges": [{"id": "e", "range": "v", "source": "v"}]}
L2 = {"vertices": ["v"], "edges": [{"id": "e", "range": "v", "source": "v"}, {"id": "f", "range": "v", "source": "v"}]}
CHAIN = {"vertices": ["v", "w"], "edges": [{"id": "e", "range": "v", "source": "w"}]}
LADDER1 = {"kind": "ladder", "table": [], "slope": 1, "offset": 0}
LADDER2 = {"kind": "ladder", "table": [], "slope": 2, "offset": 0}


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, obj in (("loop", LOOP), ("l2", L2), ("chain", CHAIN), ("lad1", LADDER1), ("lad2", LADDER2)):
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(obj))
        out[name] = str(p)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_graph_forms(files):
    assert parse_graph(files["loop"]).vertices == ("v",)
    assert isinstance(parse_graph(json.dumps(LADDER2)), LadderGraph)
    with pytest.raises(GraphSyntaxError) as exc:
        parse_graph('{"vertices": [}')
    assert exc.value.line == 1 and exc.value.column is not None


def test_analyze(files, capsys):
    code, out, _ = run(capsys, "analyze", "--graph", files["loop"], "--json")
    assert code == 0 and json.loads(out)["strongly_graded"] is True
    rep = json.loads(run(capsys, "analyze", "--graph", files["chain"], "--json")[1])
    assert rep["strongly_graded"] is False and rep["clauses"]["sources"] == ["w"]
    rep = json.loads(run(capsys, "analyze", "--graph", files["lad1"], "--json")[1])
    assert rep["strongly_graded"] is False and rep["clauses"]["property_y"]["k"] == 1
    code, out, _ = run(capsys, "analyze", "--graph", files["lad2"])
    assert out.startswith("strongly_graded: true")


def test_nf_mul_star_grade(files, capsys):
    assert run(capsys, "nf", "--graph", files["l2"], "--expr", "[e|e]")[1].strip() == "[v|v] - [f|f]"
    assert run(capsys, "mul", "--graph", files["loop"], "--lhs", "[v|e]", "--rhs", "[e|v]")[1].strip() == "[v|v]"
    assert run(capsys, "star", "--graph", files["l2"], "--expr", "2*[e|f] - [v|v]")[1].strip() == "-[v|v] + 2*[f|e]"
    out = json.loads(run(capsys, "grade", "--graph", files["loop"], "--expr", "[e|v] + 3*[v|e]", "--json")[1])
    assert out["components"] == {"-1": "3*[v|e]", "1": "[e|v]"}


def test_factor_unit(files, capsys):
    code, out, _ = run(capsys, "factor-unit", "--graph", files["loop"], "--vertex", "v", "--degree", "1",
                       "--direction", "neg-pos", "--max-level", "3", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["pairs"] == [["[v|e]", "[e|v]"]] and rep["type"] == "factorization"
    code, _, err = run(capsys, "factor-unit", "--graph", files["chain"], "--vertex", "w", "--degree", "1",
                       "--direction", "pos-neg")
    assert code == 1 and "IrregularVertexOnExpansion" in err


def test_factor_homog(files, capsys):
    rep = json.loads(run(capsys, "factor-homog", "--graph", files["loop"], "--expr", "[e|v]", "--degree", "2", "--json")[1])
    assert rep["found"] and rep["pairs"] == [["[e e|v]", "[v|e]"]]
    rep = json.loads(run(capsys, "factor-homog", "--graph", files["chain"], "--expr", "[e|w]", "--degree", "2", "--json")[1])
    assert rep["found"] is False


def test_core_commands(files, capsys):
    rep = json.loads(run(capsys, "core-embed", "--graph", files["l2"], "--expr", "[e|f]", "--json")[1])
    assert (rep["k"], rep["J"], rep["dimension"], rep["closure_verified"]) == (1, 2, 4, True)
    assert run(capsys, "fd-dim", "--graph", files["l2"], "-k", "1", "-J", "2")[1].strip() == "4"
    rep = json.loads(run(capsys, "matrix-units", "--graph", files["l2"], "-k", "2", "-J", "2", "--vertex", "v", "--json")[1])
    assert rep["size"] == 4 and rep["relations_hold"]
    code, _, err = run(capsys, "core-embed", "--graph", files["l2"], "--expr", "[e|v]")
    assert code == 1 and "NotDegreeZero" in err


def test_property_y_and_groupoid(files, capsys):
    rep = json.loads(run(capsys, "property-y", "--graph", files["lad1"], "--json")[1])
    assert rep["holds"] is False and rep["certificate"]["type"] == "property_y_failure"
    rep = json.loads(run(capsys, "property-y", "--graph", files["lad2"], "--x", "spine", "-k", "2", "--json")[1])
    assert rep["n"] == 2 and rep["beta"] == "c2_4 c2_3 c2_2 c2_1"
    rep = json.loads(run(capsys, "groupoid-factor", "--graph", files["loop"], "--x", "v;e", "--degree", "1", "--json")[1])
    assert rep["neg_pos"][0]["k"] == -1
    rep = json.loads(run(capsys, "groupoid-factor", "--graph", files["lad1"], "--x", "spine", "--degree", "1", "--json")[1])
    assert rep["neg_pos"]["exhausted"] is True
    code, _, err = run(capsys, "groupoid-factor", "--graph", files["chain"], "--x", "v;e", "--degree", "1")
    assert code == 1


def test_oracle_y(files, capsys):
    rep = json.loads(run(capsys, "oracle-y", "--graph", files["lad1"], "-k", "3", "--json")[1])
    assert rep["agree"] and rep["count"] == 3
    rep = json.loads(run(capsys, "oracle-y", "--graph", files["l2"], "--json")[1])
    assert rep["agree"]


def test_truncate(files, capsys):
    code, out, _ = run(capsys, "analyze", "--graph", files["lad2"], "--truncate", "3")
    assert code == 0 and "sources: v3" in out
    code, _, err = run(capsys, "nf", "--graph", files["loop"], "--expr", "[v|v]", "--truncate", "3")
    assert code == 1


def test_usage_errors(files, capsys):
    assert run(capsys, "nf", "--graph", files["loop"])[0] == 2
    assert run(capsys, "nf", "--graph", files["loop"], "--expr", "[v|v]", "--bogus")[0] == 2
    code, _, err = run(capsys, "explode")
    assert code == 2 and "analyze" in err
    assert run(capsys, "factor-unit", "--graph", files["loop"], "--vertex", "v", "--degree", "1", "--direction", "up")[0] == 2


def test_domain_errors(files, capsys):
    assert run(capsys, "nf", "--graph", files["loop"], "--expr", "[e|f]")[0] == 1
    assert run(capsys, "nf", "--graph", "{bad", "--expr", "[v|v]")[0] == 1
    code, out, _ = run(capsys, "nf", "--graph", files["loop"], "--expr", "[e|f]", "--json")
    assert json.loads(out)["error"] == "UnknownId"


def test_deterministic(files, capsys):
    argv = ["selftest", "--seed", "3", "--json"]
    a = run(capsys, *argv)
    b = run(capsys, *argv)
    assert a == b and a[0] == 0
    argv = ["core-embed", "--graph", files["l2"], "--expr", "[e f|f e] - [e|e]", "--json"]
    assert run(capsys, *argv) == run(capsys, *argv)


def test_selftest_verify(files, capsys, tmp_path):
    certs = []
    for argv in (["property-y", "--graph", files["lad1"], "--json"],
                 ["factor-unit", "--graph", files["lad2"], "--vertex", "u2_3", "--degree", "2", "--direction", "neg-pos", "--json"],
                 ["core-embed", "--graph", files["l2"], "--expr", "[e|f] + [v|v]", "--json"]):
        p = tmp_path / f"cert{len(certs)}.json"
        p.write_text(run(capsys, *argv)[1])
        certs.append(str(p))
    code, out, _ = run(capsys, "selftest", "--verify", *certs)
    assert code == 0 and out.count("PASS") == 3
    bad = tmp_path / "bad.json"
    data = json.loads(open(certs[1]).read())
    data["pairs"][0][1] = "0"
    bad.write_text(json.dumps(data))
    code, out, _ = run(capsys, "selftest", "--verify", str(bad))
    assert code == 1 and "FAIL" in out
    junk = tmp_path / "junk.json"
    junk.write_text("not json")
    assert run(capsys, "selftest", "--verify", str(junk))[0] == 1
