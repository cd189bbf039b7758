import json
from importlib import resources

import jsonschema
import pytest

from greedytheta.cli import main


def load_schema(name):
    text = resources.files("greedytheta").joinpath("schemas", name).read_text()
    return json.loads(text)


def run(capsys, *args):
    code = main(list(args))
    return code, capsys.readouterr().out


def test_calibrate_json_is_valid_and_deterministic(capsys):
    code, first = run(capsys, "calibrate")
    assert code == 0
    data = json.loads(first)
    jsonschema.validate(data, load_schema("calibration.schema.json"))
    assert data["chosen"] == "sign=+1,NewOnLeft"
    assert run(capsys, "calibrate")[1] == first


def test_forced_wrong_convention_lists_exchange_failures(capsys):
    code, out = run(capsys, "calibrate", "--convention", "+1,NewOnRight")
    assert code == 1
    data = json.loads(out)
    jsonschema.validate(data, load_schema("calibration.schema.json"))
    assert any(f.startswith("exchange check") for f in data["failures"])


def test_verify_report_schema(capsys):
    code, out = run(capsys, "verify", "Expansion", "--r", "2", "--max-n", "7")
    assert code == 0
    jsonschema.validate(json.loads(out), load_schema("verify-report.schema.json"))


def test_verify_failure_exit_code(capsys):
    code, out = run(capsys, "verify", "Recursions", "--max-n", "3", "--max-m", "3")
    assert code == 1
    data = json.loads(out)
    jsonschema.validate(data, load_schema("verify-report.schema.json"))
    assert all(c["pass"] for c in data["checks"] if c["identity"].startswith("corrected"))


def test_usage_errors_exit_64(capsys):
    assert main(["verify", "Nonsense"]) == 64
    assert main(["lines", "--r", "2", "--n", "40"]) == 64
    assert main(["verify", "BijectionNeg", "--r", "3", "--max-n", "6"]) == 64
    assert main(["expand", "--r", "2", "--n", "4", "--convention", "sideways"]) == 64


def test_expand_and_pairs(capsys):
    code, out = run(capsys, "expand", "--r", "2", "--n", "5")
    assert code == 0 and json.loads(out)["matches_exchange_recursion"]
    code, out = run(capsys, "pairs", "--r", "2", "--ell", "3", "--h", "2")
    assert json.loads(out)["count"] == 13


def test_lines_with_q_point(capsys):
    code, out = run(capsys, "lines", "--r", "2", "--ell", "12", "--h", "11", "--a", "5", "--b", "5",
                    "--q-point", "1/4,3/8")
    rows = json.loads(out)["lines"]
    assert code == 0 and len(rows) == 3
    assert any(r["realized"] and r["angular_momentum"] == "-1/2" for r in rows)


def test_render_lambda_example(capsys, tmp_path):
    out = tmp_path / "pair.svg"
    code = main(["render", "DyckPair", "--r", "3", "--ell", "21", "--h", "8", "--s1", "18,20,21",
                 "--s2", "1,2,3,4,5,6", "--apply-lambda", "--out", str(out)])
    svg = out.read_text()
    assert code == 0
    assert svg.count('class="s1"') == 3
    for i in (17, 18, 21):
        assert f'class="s1" id="eta{i}"' in svg
    assert svg.count('class="arc"') == 6


def test_render_line_and_empty_pair(capsys):
    code, svg = run(capsys, "render", "Line", "--r", "2", "--ell", "12", "--h", "11",
                    "--a", "5", "--b", "5")
    assert code == 0 and svg.count('class="bend"') == 3
    code, svg = run(capsys, "render", "DyckPair", "--r", "2", "--ell", "3", "--h", "2")
    assert code == 0 and 'class="s' not in svg and "arc" not in svg
    assert run(capsys, "render", "Diagram", "--r", "2")[1].count('class="wall"') == 11


def test_render_bad_selector(capsys):
    assert main(["render", "DyckPair", "--r", "2", "--ell", "3", "--h", "2", "--s1", "9"]) == 1
    assert main(["render", "Line", "--r", "2", "--ell", "3", "--h", "2", "--a", "0", "--b", "0",
                 "--index", "5"]) == 1
