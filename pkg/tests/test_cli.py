import io
import json
import os
import subprocess
import sys

import numpy as np
import pytest

from qtl import cli, quantale, suite

GOLDENS = os.path.join(os.path.dirname(__file__), "goldens")


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def golden(name):
    with open(os.path.join(GOLDENS, name), encoding="utf-8") as fh:
        return fh.read()


@pytest.mark.parametrize("sel", ["proper", "maximal"])
def test_topology_goldens(sel):
    code, text = run("topology", "gen:powerset:2", "--class", sel, "--format", "json")
    assert code == 0
    assert text == golden(f"topology_powerset2_{sel}.json")


def test_topology_golden_via_console_script():
    proc = subprocess.run([sys.executable, "-m", "qtl.cli", "topology", "gen:powerset:2",
                           "--class", "proper", "--format", "json"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == golden("topology_powerset2_proper.json")


def test_topology_report_values():
    _, text = run("topology", "gen:powerset:2", "--class", "proper")
    r = json.loads(text)
    assert (r["T0"], r["T1"], r["sober"], r["quasi_compact"], r["connected"], r["spectral"],
            r["hkp"]) == (True, False, True, True, True, True, False)
    _, text = run("topology", "gen:powerset:2", "--class", "maximal")
    assert json.loads(text)["strong_disconnection"] == {"I": "down(a)", "J": "down(b)",
                                                         "idempotent": "a"}
    _, text = run("topology", "gen:zn:12", "--class", "prime")
    r = json.loads(text)
    assert r["sober"] and r["spectral"]


def test_report_round_trip_and_stable():
    _, a = run("topology", "gen:zn:12", "--class", "proper", "--seed", "5")
    _, b = run("topology", "gen:zn:12", "--class", "proper", "--seed", "5")
    assert a == b
    r = json.loads(a)
    assert json.loads(json.dumps(r, indent=2)) == r and r["seed"] == 5


def test_text_format():
    code, text = run("topology", "gen:powerset:2", "--class", "maximal", "--format", "text")
    assert code == 0 and "T1: true" in text and "idempotent: a" in text


def test_validate(tmp_path):
    assert run("validate", "gen:zn:12")[0] == 0
    path = tmp_path / "z.json"
    path.write_text(quantale.to_json(quantale.gen_zn(12)))
    assert run("validate", str(path))[0] == 0
    data = quantale.to_dict(quantale.gen_chain(4))
    data["mul"][2][2] = 1
    data["mul"][1][2] = data["mul"][2][1] = 0
    path.write_text(json.dumps(data))
    code, text = run("validate", str(path))
    report = json.loads(text)
    assert code == 1 and report["axiom"] == "associativity" and len(report["witness"]) == 3
    path.write_text("{not json")
    assert run("validate", str(path))[0] == 2
    assert run("validate", str(tmp_path / "missing.json"))[0] == 2
    assert run("validate", "gen:nope:3")[0] == 2


def test_validate_non_lattice(tmp_path):
    path = tmp_path / "v.json"
    path.write_text(json.dumps({"elements": ["0", "a", "b"], "leq": [[0, 1], [0, 2]],
                                "mul": [[0, 0, 0], [0, 1, 0], [0, 0, 2]]}))
    assert run("validate", str(path))[0] == 1


def test_ideals_command():
    code, text = run("ideals", "gen:zn:12", "--class", "maximal")
    r = json.loads(text)
    assert code == 0
    assert sorted(i["ideal"] for i in r["ideals"]) == ["down(2)", "down(3)"]
    assert r["jacobson_radical"] == "down(6)"
    _, text = run("ideals", "gen:powerset:2", "--class", "strongly_irreducible")
    assert sorted(i["ideal"] for i in json.loads(text)["ideals"]) == ["down(a)", "down(b)"]
    _, text = run("ideals", "gen:chain:1", "--class", "proper")
    r = json.loads(text)
    assert r["ideals"] == [] and r["jacobson_radical"] is None
    assert run("ideals", "gen:zn:12", "--class", "bogus")[0] == 2


def test_dot():
    code, text = run("dot", "gen:chain:3", "--kind", "hasse")
    assert code == 0 and text.count("->") == 2 and text.count("label=") == 3
    _, text = run("dot", "gen:powerset:2", "--kind", "specialization", "--spectrum", "proper")
    assert "p0 -> p1;" in text and "p0 -> p2;" in text and text.count("->") == 2
    _, text = run("dot", "gen:chain:1", "--kind", "specialization", "--spectrum", "proper")
    assert "->" not in text and "label" not in text
    assert run("dot", "gen:chain:3", "--kind", "specialization")[0] == 2
    assert run("dot", "gen:chain:3")[1] == run("dot", "gen:chain:3")[1]


def test_usage_errors_exit_two():
    with pytest.raises(SystemExit) as err:
        cli.main(["topology"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        cli.main(["nonsense"])
    assert err.value.code == 2


def test_suite_passes_at_three():
    code, text = run("suite", "--max-size", "3")
    r = json.loads(text)
    assert code == 0 and r["failures"] == 0 and r["counterexample"] is None
    assert r["quantales"] == 4


def test_suite_output_is_deterministic_and_parallel_safe():
    _, serial = run("suite", "--max-size", "3", "--records")
    _, pooled = run("suite", "--max-size", "3", "--records", "--jobs", "2")
    assert serial == pooled


def test_suite_size_cap():
    assert run("suite", "--max-size", "9")[0] == 2


def test_suite_mutant_hook():
    def corrupt(Q):
        if Q.n < 3:
            return None
        table = np.array(Q.mul_table)
        table[1, 2] = Q.bottom  # breaks commutativity (and more)
        return table

    suite.register_mutation_hook(corrupt)
    try:
        code, text = run("suite", "--max-size", "3")
    finally:
        suite.clear_mutation_hooks()
    r = json.loads(text)
    assert code == 1
    bad = r["counterexample"]
    assert bad["theorem"] == "axioms" and "violated" in bad["detail"]
    assert bad["quantale"]["name"] == bad["instance"]
