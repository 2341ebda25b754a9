import json
import subprocess
import sys

import pytest

from corpus import MUTATION_SOURCE, MUTATION_TARGET, FIFTH_TRIANGLE, PROJECTIVE_PLANE
from fanolab.cli import COMMANDS, main
from fanolab.laurent import LaurentPolynomial
from fanolab.periods import period_sequence


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def poly(vertices):
    return json.dumps({"vertices": [list(v) for v in vertices]})


def test_content(capsys):
    assert run(capsys, "content", poly(PROJECTIVE_PLANE)) == (0, {"k": 3, "basket": []})


def test_monodromy(capsys):
    code, doc = run(capsys, "monodromy", poly(MUTATION_SOURCE))
    assert code == 0
    alpha = [row[0] for row in doc["matrix"]]
    assert dict(zip(doc["basis"], alpha)) == {"α": "1", "β": "-1", "a1^1": "0", "a2^1": "-1"}


def test_degree_and_validate(capsys):
    code, doc = run(capsys, "degree", poly(MUTATION_SOURCE))
    assert code == 0 and doc["agree"]
    assert run(capsys, "validate", poly(PROJECTIVE_PLANE))[1]["valid"]


def test_mutate(capsys):
    code, doc = run(capsys, "mutate", poly(MUTATION_SOURCE), "--u=0,1", "--F=-1,0")
    assert code == 0
    assert sorted(map(tuple, doc["raw"]["vertices"])) == sorted(MUTATION_TARGET)


def test_guess_op_from_file(tmp_path, capsys):
    f = LaurentPolynomial.monomials((1, 0), (0, 1), (-1, -1))
    path = tmp_path / "period.json"
    path.write_text(json.dumps({"coefficients": [str(c) for c in period_sequence(f, 40)]}))
    code, doc = run(capsys, "guess-op", str(path), "--max-order", "2", "--max-degree", "3")
    assert code == 0
    assert doc["operator"]["coeffs"] == [["0", "0", "0", "-54"], ["0", "0", "0", "-81"], ["1", "0", "0", "-27"]]


def test_period_then_apply(capsys):
    f = json.dumps(LaurentPolynomial.monomials((1, 0), (0, 1), (-1, -1)).to_json())
    code, doc = run(capsys, "period", f, "-N", "12")
    assert code == 0 and doc["coefficients"][6] == "90"
    op = json.dumps({"order": 2, "coeffs": [["0", "0", "0", "-54"], ["0", "0", "0", "-81"], ["1", "0", "0", "-27"]]})
    code, res = run(capsys, "apply-op", op, json.dumps(doc))
    assert code == 0 and res["vanishes"]


def test_normal_form_is_fixed_point(capsys):
    _, once = run(capsys, "normal-form", poly(MUTATION_TARGET))
    _, twice = run(capsys, "normal-form", json.dumps(once))
    assert once == twice


def test_exit_codes(capsys):
    assert run(capsys, "content", poly([(0, 2), (2, 0), (-2, -2)]))[0] == 2
    code, doc = run(capsys, "predict", poly(FIFTH_TRIANGLE))
    assert code == 3 and doc["error"] == "OUT_OF_SCOPE_BASKET" and doc["extrapolated_degree"] == 17
    assert run(capsys, "content", "not json")[0] == 2
    assert main(["bogus"]) == 64
    assert "usage" in capsys.readouterr().err


def test_pretty_output(capsys):
    main(["--pretty", "content", poly(PROJECTIVE_PLANE)])
    assert "\n  " in capsys.readouterr().out


@pytest.mark.parametrize("name", sorted(COMMANDS))
def test_every_subcommand_has_help(name, capsys):
    assert main([name, "--help"]) == 0


def test_module_entry_point_reads_stdin():
    proc = subprocess.run(
        [sys.executable, "-m", "fanolab", "content", "-"],
        input=poly(MUTATION_SOURCE), capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["k"] == 9
