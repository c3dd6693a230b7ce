from __future__ import annotations

import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from mahlerkit.cli import run
from mahlerkit.cli.main import schema, validate
from mahlerkit.errors import SchemaError

GOLDEN = Path(__file__).parent / "golden" / "matryoshka_tree.json"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv)
    return code, (json.loads(out) if out else None), (json.loads(err) if err else None)


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


# -- success paths, each output checked against its schema ----------------------

@pytest.mark.parametrize("argv,schema_name", [
    (["eval", "tm", "--at", "1/2"], "eval-result"),
    (["eval", "tm", "--at", "1/3", "--derivative", "2"], "eval-result"),
    (["eval", "fibonacci", "--at", "1/5"], "eval-result"),
    (["eval", "hecke-split"], "eval-results"),
    (["cobham", "fibonacci"], "cobham-result"),
    (["matrix", "classify", "T3"], "classify-result"),
    (["indep", "points", "1/2", "1/3", "1/6"], "indep-result"),
    (["plan", "matryoshka-request"], "plan-tree"),
    (["verify-gauge", "fibonacci-gauge"], "gauge-result"),
    (["hm", "decide", "hecke-split"], "hm-decision"),
])
def test_outputs_match_schema(argv, schema_name):
    code, doc, _ = call_json(*argv)
    assert code == 0
    validate(doc, schema_name)
    # round trip: the emitted text is exactly the canonical dump of the parsed document
    assert call(*argv)[1] == json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def test_eval_value():
    code, doc, _ = call_json("eval", "tm", "--at", "1/2", "--prec", "140")
    assert code == 0
    assert doc["value"]["mid"].startswith("0.82490806728021519556672273651691056617")


def test_cobham_fibonacci_text():
    code, doc, _ = call_json("cobham", "fibonacci")
    assert code == 0 and doc["T"] == [[1, 1], [1, 0]] and doc["A"] == [["1", "1"], ["z0", "0"]]
    code, out, _ = call("--format", "text", "cobham", "fibonacci")
    assert code == 0 and "z0" in out


def test_classify_verdicts():
    assert call_json("matrix", "classify", "T4")[1]["reason"] == "ρ = 1"
    assert call_json("matrix", "classify", "T5")[1]["reason"] == "root-of-unity eigenvalue"
    assert call_json("matrix", "classify", "2I")[1]["verdict"] == "InM"


def test_indep_witness():
    code, doc, _ = call_json("indep", "points", "1/2", "1/3", "1/6")
    assert code == 0 and doc["witness"] == [1, 1, -1]


def test_golden_plan_is_byte_exact():
    code, out, _ = call("plan", "matryoshka-request")
    assert code == 0
    assert out.encode() == GOLDEN.read_bytes()


def test_hunt_request(tmp_path):
    req = {"values": [{"hecke": {"omega": {"a": 0, "b": 1, "c": 1, "d": 2}}, "at": "1/2"},
                      {"hecke": {"omega": {"a": 0, "b": 1, "c": 1, "d": 2}}, "at": "-1/2"},
                      {"hecke": {"omega": {"a": 0, "b": 2, "c": 1, "d": 2}}, "at": "1/4"}],
           "D": 1, "H": 10, "p": 700}
    code, doc, _ = call_json("hunt", write(tmp_path, "h.json", req))
    assert code == 0 and doc["verdict"] == "Found"
    assert doc["polynomial"] == "x1 + x2 - 2*x3"
    validate(doc, "hunt-result")


def test_plan_discharge_skip_all():
    code, out, _ = call("--format", "text", "plan", "matryoshka-request", "--discharge", "--skip", "*")
    assert code == 0 and "\nInconclusive: every leaf was skipped\n" in out


def test_fixtures_listing():
    code, doc, _ = call_json("fixtures")
    assert code == 0 and "tm" in {r["name"] for r in doc["fixtures"]}


# -- exit codes -------------------------------------------------------------------

def test_exit_domain_on_bad_rational():
    code, _, err = call_json("eval", "tm", "--at", "1/ 2")
    assert code == 2 and err["exit_code"] == 2


def test_exit_domain_on_point_outside_disk():
    assert call("eval", "tm", "--at", "3/2")[0] == 2


def test_exit_domain_on_schema_violation_reports_pointer(tmp_path):
    bad = {"items": [{"label": "x", "fixture": "tm", "point": 7}]}
    code, _, err = call_json("plan", write(tmp_path, "bad.json", bad))
    assert code == 2 and err["path"] == "/items/0/point"


def test_exit_domain_on_malformed_json(tmp_path):
    code, _, err = call_json("plan", write(tmp_path, "broken.json", "{not json"))
    assert code == 2 and err["path"] == "/"


def test_exit_domain_on_unknown_fixture_and_usage():
    assert call("eval", "nothing-here", "--at", "1/2")[0] == 2
    assert call("no-such-command")[0] == 2


def test_exit_precision(tmp_path):
    req = {"values": [{"fixture": "tm", "at": "1/2"}, {"fixture": "pf", "at": "1/2"}], "D": 3, "H": 10000, "p": 64}
    code, _, err = call_json("hunt", write(tmp_path, "low.json", req))
    assert code == 3 and err["exit_code"] == 3


def test_exit_verification_mismatch(tmp_path):
    from mahlerkit.fixtures.registry import load_json

    data = load_json("fibonacci-gauge")
    data["certificate"]["B"] = [["1", "0"], ["0", "1"]]
    code, doc, _ = call_json("verify-gauge", write(tmp_path, "gauge.json", data))
    assert code == 1


def test_schema_error_carries_path():
    with pytest.raises(SchemaError) as info:
        validate({"T": [[1, "x"]]}, "matrix")
    assert info.value.path == "/T/0/1"
    assert schema("error")["title"] == "error"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "mahlerkit", "indep", "points", "2", "4"],
                         capture_output=True, text=True, timeout=60)
    assert res.returncode == 0 and json.loads(res.stdout)["verdict"] == "Dependent"
