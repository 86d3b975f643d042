import json
import subprocess
import sys

import pytest

from nart.catalog import catalog_names, load_catalog
from nart.cli import main
from nart.errors import UnknownEntry
from nart.report import Report


@pytest.fixture
def a2_file(tmp_path):
    path = tmp_path / "a2.json"
    path.write_text(json.dumps(load_catalog("a2").algebra.to_json()), encoding="utf-8")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_knit_lists_three(capsys, a2_file):
    code, out, _ = run(capsys, "knit", "--algebra", a2_file, "--format", "json")
    assert code == 0
    assert len(json.loads(out)["extra"]["indecomposables"]) == 3


def test_verify_theorem_a_pass(capsys, a2_file):
    code, out, _ = run(capsys, "verify-theorem-a", "--algebra", a2_file, "--n", "1", "--subcat", "all")
    assert code == 0
    assert "verdict: pass" in out


def test_verify_theorem_a_unverifiable(capsys, a2_file):
    code, out, _ = run(capsys, "verify-theorem-a", "--algebra", a2_file, "--n", "2", "--subcat", "all", "--format", "json")
    assert code == 2
    rep = json.loads(out)
    assert rep["verdict"] == "unverifiable"
    assert rep["checks"][0]["witness"]["kind"] == "ext-nonvanishing"


def test_check_ct_fail(capsys):
    code, out, _ = run(capsys, "check-ct", "--catalog", "a2", "--subcat", "0,2")
    assert code == 1
    assert "missing-member" in out


@pytest.mark.parametrize("command", ["nass", "defect", "index", "k0", "verify-k0-iso", "orthogonality", "search-ct"])
def test_commands_pass_on_hit(capsys, command):
    code, out, _ = run(capsys, command, "--catalog", "nakayama-m4-l3", "--subcat", "0,1,2,3,6,8", "--format", "json")
    assert code == 0, out
    assert json.loads(out)["verdict"] == "pass"


def test_search_uses_suggested_n(capsys):
    code, out, _ = run(capsys, "search-ct", "--catalog", "nakayama-m3-l2", "--format", "json")
    assert code == 0
    assert json.loads(out)["extra"]["found"] == [[0, 1, 2, 4]]


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "knit", "--catalog", "nope")[0] == 2
    assert run(capsys, "knit")[0] == 2
    assert run(capsys, "knit", "--algebra", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"quiver": {"vertices": ["1"], "arrows": [{"name": "x", "from": "1", "to": "1"}]}}', encoding="utf-8")
    code, _, err = run(capsys, "knit", "--algebra", str(bad))
    assert code == 2 and "InfiniteDimensional" in err
    assert run(capsys, "check-ct", "--catalog", "a2", "--subcat", "0,x")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_incomplete_knit_is_unverifiable(capsys):
    assert run(capsys, "knit", "--catalog", "a3", "--cap", "2")[0] == 2
    assert run(capsys, "verify-theorem-a", "--catalog", "a3", "--cap", "2")[0] == 2


def test_json_round_trip(capsys):
    _, out, _ = run(capsys, "verify-k0-iso", "--catalog", "a3", "--format", "json", "--seed", "3")
    data = json.loads(out)
    assert Report.from_json(data).to_json() == data
    assert set(data) >= {"verdict", "basis_order", "relation_matrix", "invariant_factors", "checks"}
    for c in data["checks"]:
        assert set(c) == {"name", "pass", "witness"}


def test_seed_determinism(capsys):
    a = run(capsys, "verify-k0-iso", "--catalog", "nakayama-m5-l2", "--format", "json", "--seed", "9")[1]
    b = run(capsys, "verify-k0-iso", "--catalog", "nakayama-m5-l2", "--format", "json", "--seed", "9")[1]
    assert a == b


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog", "--format", "json")
    assert code == 0
    assert set(json.loads(out)["extra"]["entries"]) == set(catalog_names())


def test_load_catalog_examples():
    assert load_catalog("a2").algebra.dimension == 3
    assert load_catalog("a3").algebra.dimension == 6
    e = load_catalog("nakayama-m4-l2")
    assert e.algebra.dimension == 7 and len(e.algebra.relations) == 2
    with pytest.raises(UnknownEntry):
        load_catalog("b7")
    with pytest.raises(KeyError):
        load_catalog("")


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "nart.cli", "check-ct", "--catalog", "a2"], capture_output=True, text=True)
    assert out.returncode == 0 and "verdict: pass" in out.stdout
