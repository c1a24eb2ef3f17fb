import json
from pathlib import Path

import pytest

import systems
from paralts import formats
from paralts.cli import run
from paralts.plts import PointedPlts

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def s(name):
    return str(SAMPLES / name)


def call(capsys, *argv):
    code = run([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_build_then_compare(tmp_path, capsys):
    t1, t2 = tmp_path / "t1.json", tmp_path / "t2.json"
    assert call(capsys, "build", s("two_qubit_sequential.qc"), "--out", t1)[0] == 0
    assert call(capsys, "build", s("two_qubit_parallel.qc"), "--out", t2)[0] == 0
    code, out, _ = call(capsys, "compare", t1, t2)
    assert code == 0
    assert out == "right more effective: (0.6,0.7) dominates (0.4,0.9)\n"


def test_compare_accepts_circuits_directly(capsys):
    assert call(capsys, "compare", s("five_step.qc"), s("seven_step.qc"))[1] == \
        "left more effective: (0.6,0.7) dominates (0,1)\n"
    assert call(capsys, "compare", s("five_step.qc"), s("five_step.qc"))[1] == "equal: (0.6,0.7)\n"


def test_compare_json(capsys):
    out = call(capsys, "compare", s("measure_early.qc"), s("measure_late.qc"), "--format", "json")[1]
    doc = json.loads(out)
    assert doc["verdict"] == "second"
    assert doc["left"]["pos"] == pytest.approx(0.58) and doc["right"]["neg"] == pytest.approx(0.7)


def test_compare_incomparable(tmp_path, capsys):
    a = PointedPlts.from_edges([("x", "a", "y", 0.5, 0.5)], initial="x")
    b = PointedPlts.from_edges([("x", "a", "y", 0.6, 0.6)], initial="x")
    (tmp_path / "a.json").write_text(formats.dumps(a))
    (tmp_path / "b.json").write_text(formats.dumps(b))
    out = call(capsys, "compare", tmp_path / "a.json", tmp_path / "b.json")[1]
    assert out == "incomparable: (0.5,0.5) vs (0.6,0.6)\n"


def test_build_formats(capsys):
    out = call(capsys, "build", s("two_qubit_parallel.qc"), "--format", "text")[1]
    assert out == "initial s1\n(s1, H_0 ⊗ H_1, s2) (1,0)\n(s2, CX_{0,1}, s3) (0.6,0.7)\n"
    assert call(capsys, "build", s("two_qubit_parallel.qc"), "--format", "dot")[1].startswith("digraph")
    doc = json.loads(call(capsys, "build", s("two_qubit_sequential.qc"), "--model", "literal")[1])
    assert [(t["pos"], t["neg"]) for t in doc["transitions"]] == [(1, 1), (1, 1), (0.6, 0.9)]


def test_bisim(capsys):
    assert call(capsys, "bisim", s("loops_left.json"), s("loops_right.json"), "--states", "w1", "v1")[1] \
        == "bisimilar: true\n"
    out = call(capsys, "bisim", s("loops_left.json"), s("loops_right.json"))[1]
    assert out == "w1 v1\nw2 v2\nw3 v2\n"


def test_bisim_on_weight_mismatch(capsys):
    # w1 -a-> w2 carries (0.5, 0.3), which v1 cannot match exactly
    assert call(capsys, "bisim", s("bisim_left.json"), s("bisim_right.json"), "--states", "w1", "v1")[1] \
        == "bisimilar: false\n"


def test_sim(capsys):
    assert call(capsys, "sim", s("simeg_left.json"), s("simeg_right.json"), "--states", "w1", "v1")[1] \
        == "similar: true\n"
    out = call(capsys, "sim", s("simeg_left.json"), s("simeg_right.json"), "--format", "json")[1]
    assert ["w1", "v1"] in json.loads(out)["relation"]
    code, out, _ = call(capsys, "sim", s("simeg_left.json"), s("simeg_right.json"),
                        "--states", "w1", "v1", "--mode", "negative", "--format", "json")
    assert json.loads(out) == {"similar": True}


def test_sim_unknown_state_is_a_domain_error(capsys):
    code, _, err = call(capsys, "sim", s("simeg_left.json"), s("simeg_right.json"), "--states", "zz", "v1")
    assert code == 1 and "unknown state" in err


def test_traces(capsys):
    out = call(capsys, "traces", s("m1.json"), "--start", "w1", "--depth", "3")[1]
    assert out.splitlines() == ["<[a], 0.7, 0.2>", "<[a, b], 0.3, 0.5>",
                                "<[a, b, c], 0.2, 0.5>", "<[a, b, d], 0.3, 0.8>"]
    out = call(capsys, "traces", s("m1.json"), "--start", "w1", "--depth", "3", "--maximal")[1]
    assert out == "<[a, b, d], 0.3, 0.8>\n"


def test_traces_depth_defaults_to_chain_length(tmp_path, capsys):
    path = tmp_path / "chain.json"
    assert call(capsys, "build", s("two_qubit_sequential.qc"), "--out", path)[0] == 0
    out = call(capsys, "traces", path, "--maximal", "--format", "json")[1]
    (trace,) = json.loads(out)
    assert trace["labels"] == ["H_0", "I_0 ⊗ H_1", "CX_{0,1}"]


def test_traces_needs_depth_on_cycles(capsys):
    code, _, err = call(capsys, "traces", s("m1.json"), "--start", "w1")
    assert code == 1 and "--depth" in err
    assert call(capsys, "traces", s("m1.json"))[0] == 1


def test_classify(capsys):
    out = call(capsys, "classify", s("m2.json"))[1]
    assert out.splitlines()[:2] == ["(v1, a, v2) (0.9,0.1): consistent", "(v2, b, v3) (0.5,0.2): vague"]
    assert call(capsys, "classify", "--weights", "0.8", "0.4")[1] == "inconsistent\n"
    assert call(capsys, "classify", "--weights", "2", "0")[0] == 1
    assert call(capsys, "classify")[0] == 2


def test_morphism(capsys):
    code, out, _ = call(capsys, "morphism", s("m1.json"), s("m2.json"), "--map", "w1=v1", "w2=v2", "w3=v3", "w4=v4")
    assert code == 0
    assert out.splitlines()[0] == "morphism: false"
    assert any("(w3, d, w4)" in line for line in out.splitlines())


def test_morphism_on_subsystem(tmp_path, capsys):
    (tmp_path / "sub.json").write_text(formats.dumps(systems.m1_without_w4()))
    out = call(capsys, "morphism", tmp_path / "sub.json", s("m2.json"), "--map", "w1=v1", "w2=v2", "w3=v3")[1]
    assert out == "morphism: true\n"


def test_pointed_morphism(capsys):
    args = ("morphism", s("product_right.json"), s("product_left.json"), "--map", "i2=i1", "v=w")
    assert call(capsys, *args, "--labels", "b=a")[1] == "morphism: true\n"
    out = call(capsys, "morphism", s("product_left.json"), s("product_right.json"),
               "--map", "i1=i2", "w=v", "--labels", "a=b")[1]
    assert "not dominated" in out
    out = call(capsys, *args, "--pointed")[1]
    assert out.startswith("morphism: false\n") and "idle" in out


def test_op_product(capsys):
    out = call(capsys, "op", "product", s("product_left.json"), s("product_right.json"), "--format", "text")[1]
    assert out.splitlines() == [
        "initial (i1,i2)",
        "((i1,i2), (a,b), (w,v)) (0.4,0.2)",
        "((i1,i2), (a,⊥), (w,i2)) (0.7,0.2)",
        "((i1,i2), (⊥,b), (i1,v)) (0.4,0.2)",
        "((i1,v), (a,⊥), (w,v)) (0.7,0.2)",
        "((w,i2), (⊥,b), (w,v)) (0.4,0.2)",
    ]


@pytest.mark.parametrize("argv, edges", [
    (["interleave", "product_left.json", "product_right.json"], 4),
    (["sync", "product_left.json", "product_right.json"], 1),
    (["sum", "product_left.json", "product_right.json"], 2),
    (["restrict", "simeg_left.json", "--keep", "a"], 2),
    (["relabel", "simeg_left.json", "--map", "a=x", "b=x", "c=y"], 4),
    (["prefix", "product_left.json", "--label", "z", "--pos", "0.5", "--neg", "0.1"], 2),
    (["approx", "product_left.json", "--v", "0.5", "--target", "both"], 1),
    (["purge", "simeg_left.json", "--p", "0.3"], 2),
    (["reach", "simeg_left.json"], 4),
])
def test_ops(capsys, argv, edges):
    name, *rest = argv
    rest = [s(a) if a.endswith(".json") else a for a in rest]
    code, out, _ = call(capsys, "op", name, *rest)
    assert code == 0
    assert len(json.loads(out)["transitions"]) == edges


def test_op_results_in_detail(capsys):
    doc = json.loads(call(capsys, "op", "approx", s("product_left.json"), "--v", "0.5", "--target", "both")[1])
    assert (doc["transitions"][0]["pos"], doc["transitions"][0]["neg"]) == (1, 0.7)
    doc = json.loads(call(capsys, "op", "prefix", s("product_left.json"), "--label", "z")[1])
    assert doc["initial"] == "new0"


@pytest.mark.parametrize("argv", [
    ["product", "product_left.json"],
    ["prefix", "product_left.json"],
    ["relabel", "simeg_left.json", "--map", "a"],
])
def test_op_usage_errors(capsys, argv):
    name, *rest = argv
    rest = [s(a) if a.endswith(".json") else a for a in rest]
    assert call(capsys, "op", name, *rest)[0] == 2


@pytest.mark.parametrize("argv", [
    ["restrict", "simeg_left.json", "--keep", "zz"],
    ["relabel", "simeg_left.json", "--map", "a=x"],
    ["approx", "simeg_left.json", "--v", "3"],
    ["purge", "simeg_left.json", "--p", "-1"],
    ["prefix", "simeg_left.json", "--label", "⊥"],
])
def test_op_domain_errors(capsys, argv):
    name, *rest = argv
    rest = [s(a) if a.endswith(".json") else a for a in rest]
    assert call(capsys, "op", name, *rest)[0] == 1


def test_validate(tmp_path, capsys):
    assert call(capsys, "validate", s("m1.json")) == (0, "ok\n", "")
    doc = json.loads((SAMPLES / "m1.json").read_text())
    doc["transitions"].append(dict(doc["transitions"][0], pos=0.1))
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, _, err = call(capsys, "validate", bad)
    assert code == 1
    assert "uniqueness" in err and "at most one transition per label" in err


def test_parse_and_io_errors(tmp_path, capsys):
    broken = tmp_path / "broken.json"
    broken.write_text('{"states": [}')
    code, _, err = call(capsys, "validate", broken)
    assert code == 2 and "line 1, column" in err
    bad_circuit = tmp_path / "bad.qc"
    bad_circuit.write_text("qubits 2\nH 0\nHADAMARD 1\n")
    code, _, err = call(capsys, "build", bad_circuit)
    assert code == 2 and "line 3, column 1" in err
    assert call(capsys, "validate", tmp_path / "missing.json")[0] == 2
    assert call(capsys, "bogus")[0] == 2
    assert call(capsys, "sim", s("m1.json"))[0] == 2


def test_build_domain_error(tmp_path, capsys):
    c = tmp_path / "c.qc"
    c.write_text("tmax * 50\ntmin * 70\nH 0\n")
    code, _, err = call(capsys, "build", c)
    assert code == 1 and "tau_min" in err


def test_export_dot(capsys):
    out = call(capsys, "export-dot", s("product_left.json"))[1]
    assert '"i1" [shape=doublecircle];' in out


def test_epsilon_override(monkeypatch, capsys):
    assert call(capsys, "classify", "--weights", "0.5", "0.49")[1] == "vague\n"
    monkeypatch.setenv("PLTS_EPSILON", "0.05")
    assert call(capsys, "classify", "--weights", "0.5", "0.49")[1] == "consistent\n"
    monkeypatch.setenv("PLTS_EPSILON", "nonsense")
    assert call(capsys, "classify", "--weights", "0.5", "0.49")[0] == 1


def test_out_writes_only_the_declared_path(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert call(capsys, "build", s("two_qubit_parallel.qc"), "--out", "t.json") == (0, "", "")
    assert sorted(p.name for p in tmp_path.iterdir()) == ["t.json"]


def test_repeated_runs_are_identical(capsys):
    argv = ["op", "product", s("product_left.json"), s("product_right.json")]
    first = call(capsys, *argv)
    assert all(call(capsys, *argv) == first for _ in range(3))
