import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from kuga_satake.cli import run


def call(argv):
    out, err = [], []
    code = run(argv, out=out.append, err=err.append)
    return code, "\n".join(out), "\n".join(err)


def schema(name):
    text = resources.files("kuga_satake").joinpath(f"schemas/{name}.schema.json").read_text()
    return json.loads(text)


def call_json(argv, schema_name):
    code, out, err = call(["--json"] + argv)
    assert code == 0, err
    doc = json.loads(out)
    jsonschema.validate(doc, schema(schema_name))
    return doc


def test_classify_u3():
    doc = call_json(["classify", "--form", "U^3"], "classify")
    assert doc["case"] == "EVEN_SQUARE" and doc["torus_bound"] == 2 and doc["delta"] == -1
    code, text, _ = call(["classify", "--form", "U^3"])
    assert code == 0 and "EVEN_SQUARE" in text and "torus_bound: 2" in text


def test_json_flag_after_subcommand():
    code, out, _ = call(["classify", "--form", "U^3", "--json"])
    assert json.loads(out)["case"] == "EVEN_SQUARE"


def test_classify_with_oracle_and_hint():
    doc = call_json(["classify", "--form", "diag:1,2,3,5", "--oracle", "--quaternion", "nonsplit"], "classify")
    assert doc["oracle"]["checked"] is True
    assert doc["selected_r"] == 2


def test_classify_direct_n_delta():
    doc = call_json(["classify", "--n", "21", "--delta", "7"], "classify")
    assert doc["case"] == "ODD" and doc["torus_bound"] == 512


def test_classify_inline_json_and_file(tmp_path):
    gram = {"n": 2, "gram": [[0, 1], [1, 0]]}
    jsonschema.validate(gram, schema("gram_input"))
    f = tmp_path / "form.json"
    f.write_text(json.dumps({"n": 3, "gram": [["1/2", 0, 0], [0, -3, 0], [0, 0, 5]]}))
    doc = call_json(["classify", "--form", str(f)], "classify")
    assert doc["n"] == 3 and doc["delta"] == -30
    code, _, err = call(["classify", "--form", json.dumps(gram)])
    assert code == 2 and "n must be >= 3" in err


def test_classify_sum_form():
    doc = call_json(["classify", "--form", "sum:U+diag:1,-1,2"], "classify")
    assert doc["n"] == 5 and doc["signature"] == [3, 2]


def test_batch(tmp_path):
    f = tmp_path / "batch.txt"
    f.write_text("U^3\ndiag:1,1,1,-1\n\ndiag:-1,-1,-1\n")
    doc = call_json(["classify", "--batch", str(f)], "classify")
    assert [d["case"] for d in doc] == ["EVEN_SQUARE", "EVEN_NONSQUARE", "ODD"]


def test_exit_codes():
    assert call(["classify", "--form", "garbage"])[0] == 1
    assert call(["classify", "--form", '{"gram": [[1, 1], [1, 1]]}'])[0] == 2
    assert call(["classify", "--form", "{not json"])[0] == 1
    assert call(["nonsense"])[0] == 1
    assert call(["roots", "--series", "D", "--rank", "2"])[0] == 2
    assert call(["lift", "--matrix", "[[1,2],[2,4]]", "--target", "1,1"])[0] == 2
    assert call(["hodge", "factor", "(0,1),(1,0)", "(0,1),(1,0)"])[0] == 2


def test_oracle_mismatch_exit_code(monkeypatch):
    from kuga_satake import ksclassify
    from kuga_satake.clifford import CenterReport

    def broken(d, max_n=None):
        return CenterReport(d.n, 2, (), split=False)

    monkeypatch.setattr(ksclassify, "even_center", broken)
    code, _, err = call(["classify", "--form", "U^3", "--oracle"])
    assert code == 3 and "internal error" in err


def test_lift():
    doc = call_json(["lift", "--matrix", "[[2]]", "--target", "1"], "lift")
    assert doc == {"x": ["1/2"], "N": 2, "level_bound": 2}
    doc = call_json(["lift", "--matrix", "[[1,1],[0,2]]", "--target", "0,1"], "lift")
    assert doc["x"] == ["-1/2", "1/2"]


def test_roots():
    doc = call_json(["roots", "--series", "D", "--rank", "5"], "roots")
    assert doc["special_vertex"] == 1
    assert all(s["two_weights"] for s in doc["spectra"])
    assert [e["value"] for e in doc["spectra"][0]["spectrum"]] == ["-1/2", "1/2"]
    doc = call_json(["roots", "--series", "D", "--rank", "3", "--nu", "1,1,0"], "roots")
    assert doc["special_vertex"] is None and "pairs to 2" in doc["special_vertex_error"]
    doc = call_json(["roots", "--series", "B", "--rank", "3"], "roots")
    assert len(doc["spectra"]) == 1 and doc["spectra"][0]["dim"] == 8


def test_hodge_commands():
    doc = call_json(["hodge", "tensor", "(0,1),(1,0)", "(0,1),(1,0)"], "hodge")
    assert doc["dim"] == 4 and doc["weight"] == "2"
    doc = call_json(["hodge", "dual", "(1,-1),(0,0):19,(-1,1)"], "hodge")
    assert doc["k3_type"] is True
    doc = call_json(["hodge", "twist", "(0,0)", "--by", "1/2"], "hodge")
    assert doc["entries"] == [{"p": "-1/2", "q": "-1/2", "mult": 1}]
    doc = call_json(["hodge", "factor", "(1/2,1/2)", "(1/2,-1/2),(-1/2,1/2)"], "hodge_factor")
    assert doc == {"index": 1, "constants": ["1/2"]}


def test_clifford_commands():
    doc = call_json(["clifford", "center", "--form", "diag:1,1"], "clifford_center")
    assert doc["dim"] == 2 and doc["split"] is False and doc["square"] == "-1"
    doc = call_json(["clifford", "center", "--form", "U"], "clifford_center")
    assert doc["split"] is True
    doc = call_json(["clifford", "mult", "--form", "diag:1,-1", "--a", "e{1,2}", "--b", "e{1,2}"], "clifford_mult")
    assert doc["product"]["terms"] == [{"indices": [], "coef": "1"}]
    doc = call_json(["clifford", "mult", "--form", "diag:1,1", "--a", "e{2}", "--b", "2*e{1} - 1/2"], "clifford_mult")
    assert doc["product"]["terms"] == [{"indices": [2], "coef": "-1/2"}, {"indices": [1, 2], "coef": "-2"}]
    doc = call_json(["clifford", "dims", "--n", "6"], "clifford_dims")
    assert (doc["dim_C"], doc["dim_Cplus"]) == (64, 32)


def test_preset():
    doc = call_json(["preset", "hyperkahler", "--b2", "23", "--polarized"], "preset")
    assert doc["report"]["case"] == "EVEN_NONSQUARE" and doc["n"] == 22
    doc = call_json(["preset", "hyperkahler", "--b2", "22"], "preset")
    assert doc["sign_indeterminate"] is True and doc["report"] is None


@pytest.mark.parametrize("argv", [
    ["classify", "--form", "U^3", "--oracle"],
    ["roots", "--series", "B", "--rank", "4"],
    ["--json", "preset", "hyperkahler", "--b2", "8"],
])
def test_deterministic_output(argv):
    assert call(argv) == call(argv)


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "kuga_satake.cli", "lift", "--matrix", "[[2]]", "--target", "1"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and "N = 2" in proc.stdout
