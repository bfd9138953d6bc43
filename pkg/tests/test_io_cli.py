import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import connected_graphs, random_connected
from qisplit.cli import main
from qisplit.constructions import orient, path_graph, petersen_graph, subdivide, vertex_split
from qisplit.graph_core import EdgeWeighting, Graph, GraphError, girth
from qisplit.io import (
    Instance,
    certificate_from_dict,
    certificate_to_dict,
    dumps,
    instance_from_dict,
    instance_to_dict,
    load_instance,
    outcome_from_dict,
    outcome_to_dict,
    read_edge_list,
    report_from_dict,
    report_to_dict,
    split_from_instance,
    split_to_instance,
)
from qisplit.qi_verify import check_quasi_isometry
from qisplit.weight_solver import solve_bruteforce, solve_lp
from qisplit.witness import refute_weighting


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(dumps(obj) if isinstance(obj, dict) else obj)
    return p


# ---------------------------------------------------------------------------
# serialization


@given(connected_graphs(max_n=10), st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_instance_round_trip(g, seed):
    rng = random.Random(seed)
    w = EdgeWeighting.from_values(g, [rng.choice(["0.5", "1/3", "2", "1.000001"]) for _ in g.edges])
    o = orient(g, "random", seed=seed)
    split = vertex_split(g, o)
    inst = split_to_instance(split, Instance(g, w, o, metadata={"seed": seed}), {"k": 1})
    text = dumps(instance_to_dict(inst))
    back = load_instance(text)
    assert back == inst
    assert dumps(instance_to_dict(back)) == text
    assert split_from_instance(back) == split


def test_edge_order_in_file_is_free():
    d = {"graph": {"n": 3, "edges": [[2, 1], [0, 1]]}, "weights": ["5", "7"], "orientation": [2, 0]}
    inst = instance_from_dict(d)
    assert inst.graph.edges == ((0, 1), (1, 2))
    assert inst.weights.weight(1, 2) == 5 and inst.weights.weight(0, 1) == 7
    assert inst.orientation.arcs == ((0, 1), (2, 1))


def test_malformed_instances():
    with pytest.raises(GraphError):
        load_instance("{not json")
    with pytest.raises(GraphError):
        load_instance('{"graph": {"n": 2}}')
    with pytest.raises(GraphError):
        load_instance('{"graph": {"n": 2, "edges": [[0, 1]]}, "weights": ["1", "2"]}')
    with pytest.raises(GraphError):
        load_instance('{"graph": {"n": 2, "edges": [[0, 1]]}, "weights": ["-1"]}')
    with pytest.raises(GraphError):
        load_instance('{"graph": {"n": 2, "edges": [[0, 1]]}, "map": [0, 0]}')


def test_tampered_split_instance_is_rejected():
    h = path_graph(3)
    inst = split_to_instance(vertex_split(h, orient(h)), Instance(h), {})
    d = instance_to_dict(inst)
    d["map"][0] = 2
    with pytest.raises(GraphError):
        split_from_instance(instance_from_dict(d))


def test_result_round_trips():
    h = path_graph(9)
    s = vertex_split(h, orient(h))
    w = EdgeWeighting.unit(h)
    cert = refute_weighting(s, w, 2).certificate
    assert certificate_from_dict(json.loads(json.dumps(certificate_to_dict(cert)))) == cert
    for report in (
        check_quasi_isometry(s.projection, 1, 2, None, w),
        check_quasi_isometry(s.projection, 2, 1),
        check_quasi_isometry(s.projection, "1.5", "0.25"),
    ):
        d = json.loads(json.dumps(report_to_dict(report)))
        assert report_from_dict(d) == report
    e = path_graph(2)
    se = vertex_split(e, orient(e))
    for outcome in (solve_bruteforce(se, 1), solve_bruteforce(se, 0), solve_lp(se, 0), solve_lp(se, 2)):
        d = json.loads(json.dumps(outcome_to_dict(outcome)))
        assert outcome_from_dict(d, e) == outcome
        assert dumps(outcome_to_dict(outcome_from_dict(d, e))) == dumps(outcome_to_dict(outcome))


def test_read_edge_list():
    inst = read_edge_list("c petersen-ish\np edge 3 2\ne 1 2\ne 2 3\n")
    assert inst.graph == path_graph(3) and inst.weights is None
    inst = read_edge_list("# plain\n0 1 1.5\n1 2 2\n")
    assert inst.weights.values == (Fraction(3, 2), 2)
    with pytest.raises(GraphError):
        read_edge_list("0 1 1\n1 2\n")
    with pytest.raises(GraphError):
        read_edge_list("e 1 2\n")
    with pytest.raises(GraphError):
        read_edge_list("0 x\n")


# ---------------------------------------------------------------------------
# CLI


def test_gen_commands(capsys):
    code, d, _ = run(capsys, "gen", "cycle", "--n", 5)
    assert code == 0 and d["graph"]["n"] == 5 and d["metadata"]["girth"] == "5"
    code, d, _ = run(capsys, "gen", "mycielski", "--iterations", 2)
    assert d["graph"]["n"] == 11 and d["metadata"]["chromatic_greedy"] >= 4
    code, d, _ = run(capsys, "gen", "cage", "--name", "heawood")
    assert d["metadata"]["girth"] == "6"
    args = ("gen", "random-girth", "--n", 200, "--p", 0.03, "--girth", 6, "--seed", 7)
    code, d1, _ = run(capsys, *args)
    code, d2, _ = run(capsys, *args)
    assert d1 == d2 and int(d1["metadata"]["girth"]) >= 6
    g = instance_from_dict(d1).graph
    assert girth(g) >= 6
    code, d, err = run(capsys, "gen", "random-girth", "--n", 20, "--p", 0.1, "--girth", 5)
    assert code == 2 and "seed" in err


def test_transformations(capsys, tmp_path):
    _, d, _ = run(capsys, "gen", "path", "--n", 2)
    f = write(tmp_path, "k2.json", d)
    code, d, err = run(capsys, "split", f)
    assert code == 2 and "--orient" in err
    code, d, _ = run(capsys, "split", f, "--orient", "low-to-high")
    assert code == 0 and d["graph"] == {"n": 4, "edges": [[0, 1], [1, 2], [2, 3]]}
    code, d, _ = run(capsys, "attach", f, "--base", 3, "--stride", 2)
    assert d["graph"]["n"] == 10
    _, d, _ = run(capsys, "gen", "cycle", "--n", 3)
    tri = write(tmp_path, "tri.json", d)
    _, d, _ = run(capsys, "subdivide", tri, "--t", 2)
    assert d["graph"]["n"] == 6 and len(d["graph"]["edges"]) == 6
    code, _, err = run(capsys, "split", tri, "--orient", "random")
    assert code == 2 and "seed" in err


def test_verify_command_on_doubling_map(capsys, tmp_path):
    inst = {
        "graph": {"n": 4, "edges": [[0, 1], [1, 2], [2, 3]]},
        "map": [0, 2, 4, 6],
        "target": {"graph": {"n": 7, "edges": [[i, i + 1] for i in range(6)]}},
    }
    f = write(tmp_path, "dbl.json", inst)
    code, d, _ = run(capsys, "verify", f, "--L", 2, "--C", 1)
    assert code == 0 and d["verdict"] is True
    code, d, _ = run(capsys, "verify", f, "--L", 1, "--C", 2)
    assert code == 1 and d["upper_violation"]["pair"] == [0, 3]
    code, d, _ = run(capsys, "verify", f, "--L", 2, "--C", 0)
    assert code == 1 and d["surjectivity_radius"] == "1"
    _, d, _ = run(capsys, "gen", "cycle", "--n", 5)
    c5 = write(tmp_path, "c5.json", d)
    code, _, err = run(capsys, "verify", c5, "--L", 1, "--C", 0)
    assert code == 2 and "map" in err


def test_split_refute_and_solve_pipeline(capsys, tmp_path):
    _, d, _ = run(capsys, "gen", "path", "--n", 9)
    p9 = write(tmp_path, "p9.json", d)
    _, d, _ = run(capsys, "split", p9, "--orient", "low-to-high")
    s = write(tmp_path, "split.json", d)
    code, d, _ = run(capsys, "verify", s, "--L", 2, "--C", 1)
    assert code == 0
    code, d, _ = run(capsys, "refute", s, "--C", 2)
    assert code == 0 and d["case"] == "light_directed" and (d["d_G"], d["d_Hw"]) == ("16", "8")
    # doubling every edge matches the split distances exactly
    code, d, _ = run(capsys, "refute", s, "--C", 2, "--weights", "2")
    assert code == 1 and d["result"] == "none"
    code, d, _ = run(capsys, "refute", s, "--C", 2, "--weights", "3")
    assert code == 0 and d["inequality"] == "d_G < d_Hw - C"

    _, d, _ = run(capsys, "gen", "path", "--n", 2)
    k2 = write(tmp_path, "k2.json", d)
    _, d, _ = run(capsys, "split", k2, "--orient", "low-to-high")
    sk2 = write(tmp_path, "sk2.json", d)
    code, d, _ = run(capsys, "refute", sk2, "--C", 5)
    assert code == 1 and d["result"] == "none"
    code, d, _ = run(capsys, "solve-weights", sk2, "--C", 0, "--mode", "grid", "--grid", "1,2")
    assert code == 1 and d["status"] == "UNSAT" and d["basis"] == "grid-exhaustive"
    code, d, _ = run(capsys, "solve-weights", sk2, "--C", 2, "--mode", "grid", "--grid", "1,2")
    assert code == 0 and d["weights"] == ["1"]
    code, d, _ = run(capsys, "solve-weights", sk2, "--C", 1, "--mode", "lp")
    assert code == 0 and d["status"] == "SAT"
    code, _, _ = run(capsys, "refute", sk2, "--C", 1, "--weights", d["weights"][0])
    assert code == 1
    code, _, err = run(capsys, "refute", k2, "--C", 1)
    assert code == 2


def test_orient_and_weights_commands(capsys, tmp_path):
    _, d, _ = run(capsys, "gen", "cycle", "--n", 6)
    c6 = write(tmp_path, "c6.json", d)
    _, d, _ = run(capsys, "orient", c6, "--mode", "bipartite")
    o = write(tmp_path, "o.json", d)
    _, d, _ = run(capsys, "split", o)
    assert d["metadata"]["orient"] == "given"
    s = write(tmp_path, "s.json", d)
    _, d, _ = run(capsys, "weights", s, "--values", "1.5", "--on-target")
    assert d["target"]["weights"] == ["1.5"] * 6
    sw = write(tmp_path, "sw.json", d)
    code, d, _ = run(capsys, "refute", sw, "--C", 1)
    assert code in (0, 1)
    code, _, err = run(capsys, "weights", c6, "--values", "1,2")
    assert code == 2
    code, _, err = run(capsys, "weights", c6, "--values", "1", "--on-target")
    assert code == 2


def test_stats_and_convert(capsys, tmp_path):
    lines = "\n".join(f"{u} {v}" for u, v in petersen_graph().edges)
    f = write(tmp_path, "petersen.txt", lines)
    code, d, _ = run(capsys, "stats", f)
    assert code == 0
    assert (d["girth"], d["chromatic_exact"], d["diameter"]) == ("5", 3, "2")
    assert d["degrees"]["histogram"] == {"3": 10}
    code, d, _ = run(capsys, "convert", f)
    assert instance_from_dict(d).graph == petersen_graph()
    code, d, _ = run(capsys, "stats", f, "--chromatic-limit", 5)
    assert d["chromatic_exact"] is None
    code, _, err = run(capsys, "stats", tmp_path / "missing.json")
    assert code == 2


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["refute", "--C", "-1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_subdivided_split_pipeline(capsys, tmp_path):
    _, d, _ = run(capsys, "gen", "cycle", "--n", 5)
    c5 = write(tmp_path, "c5.json", d)
    _, d, _ = run(capsys, "subdivide", c5, "--t", 2)
    sub = write(tmp_path, "sub.json", d)
    _, d, _ = run(capsys, "split", sub, "--orient", "random", "--seed", 1)
    assert d["graph"]["n"] == 15 and d["metadata"]["split_vertices"] == [0, 1, 2, 3, 4]
    sp = write(tmp_path, "sp.json", d)
    code, d, _ = run(capsys, "verify", sp, "--L", "1.5", "--C", 1)
    assert code == 0
    _, d, _ = run(capsys, "split", sub, "--orient", "random", "--seed", 1, "--all-vertices")
    assert d["graph"]["n"] == 20
