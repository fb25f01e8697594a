import json
import subprocess
import sys

import jsonschema
import pytest

from factororder.cli import run

WORD = {"type": "array", "items": {"type": "integer", "minimum": 1}}

EMBEDDING_SCHEMA = {
    "type": "object",
    "required": ["pattern", "host", "positions"],
    "properties": {"pattern": WORD, "host": WORD, "positions": {"type": "array", "items": {"type": "integer", "minimum": 1}}},
    "additionalProperties": False,
}
SHIFT_CLASS_SCHEMA = {
    "type": "object",
    "required": ["representative", "members"],
    "properties": {"representative": WORD, "members": {"type": "array", "items": WORD}},
    "additionalProperties": False,
}
CERTIFICATE_SCHEMA = {
    "type": "object",
    "required": ["equivalent", "levels_compared", "witness"],
    "properties": {
        "equivalent": {"type": "boolean"},
        "levels_compared": {"type": "integer", "minimum": 0},
        "witness": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["m", "monomial", "coef_u", "coef_v"],
                    "properties": {
                        "m": {"type": "integer"},
                        "monomial": {"type": "array", "items": {"type": "integer"}, "minItems": 3, "maxItems": 3},
                        "coef_u": {"type": "string"},
                        "coef_v": {"type": "string"},
                    },
                },
            ]
        },
    },
    "additionalProperties": False,
}
TRIPOLY_SCHEMA = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}, "minItems": 4, "maxItems": 4}}
REPORT_SCHEMA = {
    "type": "object",
    "required": ["relation", "universe", "class_count", "classes"],
    "properties": {
        "relation": {"enum": ["shift", "strong_wilf"]},
        "universe": {"type": "string"},
        "class_count": {"type": "integer"},
        "classes": {"type": "array", "items": {"type": "array", "items": WORD}},
    },
}


def ok(argv):
    code, out, err = run(argv.split())
    assert code == 0, err
    return out


def test_eta():
    assert ok("eta 154 16563") == "2\n"


def test_eta_json():
    assert json.loads(ok("eta 154 16563 --output json"))["eta"] == 2


def test_embeddings_json_schema():
    data = json.loads(ok("embeddings 154 16563 --output json"))
    jsonschema.validate(data, EMBEDDING_SCHEMA)
    assert data["positions"] == [1, 2]
    assert ok("embeddings 11 212") == "1 2\n"


def test_swe_json():
    data = json.loads(ok("swe 234156 256143 --output json"))
    jsonschema.validate(data, CERTIFICATE_SCHEMA)
    assert data["equivalent"] is True


def test_swe_negative_verdict_exit_zero():
    code, out, _ = run(["swe", "132", "312", "--output", "json"])
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, CERTIFICATE_SCHEMA)
    assert data["equivalent"] is False and data["witness"] is not None


def test_wilf():
    data = json.loads(ok("wilf 132 312 --y-cap 10 --output json"))
    assert data["equal_up_to_y_cap"] is False
    assert data["witness"]["monomial"] == [4, 9, 0]
    assert "differ" in ok("wilf 132 312 --y-cap 10")
    assert json.loads(ok("wilf 3122 2213 --output json"))["equal_up_to_y_cap"] is True


def test_classes_s5():
    out = ok("classes --permutations 5 --relation shift")
    assert out.rstrip().endswith("classes: 21")


def test_classes_json_and_csv():
    data = json.loads(ok("classes --permutations 4 --relation strong_wilf --output json"))
    jsonschema.validate(data, REPORT_SCHEMA)
    assert data["class_count"] == 5
    csv_out = ok("classes --sum 4 --relation shift --output csv --compact")
    assert csv_out.splitlines()[0] == "representative,size,members"


def test_classes_sequence():
    assert ok("classes --sequence 5 --relation shift") == "1,1,2,5,21\n"


def test_search_small_sum_empty():
    out = ok("search --sum 10")
    assert "split classes: 0" in out and "pairs: 0" in out


def test_search_permutations_6():
    out = ok("search --permutations 6 --compact")
    assert "split classes: 3" in out
    assert "pair: 235164 245163" in out
    data = json.loads(ok("search --permutations 6 --output json"))
    for pair in data["pairs"]:
        jsonschema.validate(pair["strong_wilf"], CERTIFICATE_SCHEMA)


def test_shift_commands():
    assert ok("shifts 132").splitlines() == ["h=1 k=-1 -> 3,2,1", "h=2 k=1 -> 1,2,3"]
    jsonschema.validate(json.loads(ok("shift-class 213 --output json")), SHIFT_CLASS_SCHEMA)
    assert ok("shift-class 213 --compact").splitlines() == ["213", "312", "size: 2"]


def test_cluster_command():
    out = ok("cluster 3122 1,3,6 --compact")
    assert out.splitlines() == ["313223122", "length: 9 sum: 19 marks: 3"]


def test_mlevel_and_series_json():
    dp = json.loads(ok("mlevel 3122 2 --output json"))
    enum = json.loads(ok("mlevel 3122 2 --method enum --output json"))
    jsonschema.validate(dp["terms"], TRIPOLY_SCHEMA)
    assert dp == enum == {"y_cap": 16, "terms": [[5, 12, 2, 1], [6, 13, 2, 1], [7, 14, 2, 1]]}
    a = json.loads(ok("series 3122 --y-cap 10 --output json"))
    b = json.loads(ok("series 3122 --y-cap 10 --method brute --output json"))
    jsonschema.validate(a["terms"], TRIPOLY_SCHEMA)
    assert a == b
    assert json.loads(ok("mlevel 3122 1 --dump-automaton"))["states"][0] == [3, 1, 2, 2]


def test_render_outputs(tmp_path):
    assert ok("render 1") == "#\n1\n"
    svg = ok("render 241625 --output svg")
    assert svg.count("<rect") == 20
    target = tmp_path / "d.svg"
    assert ok(f"render 241625 --format svg --out {target}") == ""
    assert target.read_text().count("<rect") == 20


@pytest.mark.parametrize(
    "argv",
    [
        "frobnicate",
        "eta 0 12",
        "eta 1,x 12",
        "classes --permutations 7",
        "search --sum 15",
        "classes --permutations 3 --relation nope",
        "cluster 3122 1,5",
        "eta 12",
        "mlevel 3122 0",
    ],
)
def test_usage_errors_exit_2(argv):
    code, out, err = run(argv.split())
    assert code == 2
    assert out == ""
    assert len(err.strip().splitlines()) == 1 and err.startswith("factororder: error:")


def test_jobs_do_not_change_output():
    a = ok("classes --sum 11 --relation strong_wilf --output json --jobs 1")
    b = ok("classes --sum 11 --relation strong_wilf --output json --jobs 4")
    assert a == b


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "factororder", "eta", "154", "16563"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "2\n"
