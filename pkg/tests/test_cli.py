import json
import subprocess
import sys

import pytest

from coevent.cli import main
from coevent.scenario import bundled_path


def path(name):
    return str(bundled_path(name))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_inspect(capsys):
    code, out, _ = run(capsys, "inspect", path("example3"))
    assert code == 0
    assert "labels: x, y" in out
    assert "Phi = 0.405 (81/200)" in out


def test_match_render_ascii(capsys):
    code, out, _ = run(capsys, "match", path("example5"), "--render", "M", "--ascii")
    assert code == 0
    assert "x1=0.600 (3/5)" in out
    assert "x1  . @ @ . # . @ @ @ ." in out
    assert "⊗" not in out


def test_bayes_table(capsys):
    code, out, _ = run(capsys, "bayes", path("example4"))
    assert code == 0
    assert "Phi(M) prior = 0.300 (3/10)" in out
    assert "0.312 (39/125)" in out


@pytest.mark.parametrize("variant", ["bra", "ket", "braket"])
def test_bayes_json(capsys, variant):
    code, out, _ = run(capsys, "bayes", path("example3"), "--variant", variant, "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["variant"] == variant
    assert doc["phi_post"] == {"decimal": "0.867", "exact": "13/15"}


def test_precision_flag(capsys):
    _, out, _ = run(capsys, "bayes", path("example3"), "--format", "json", "--precision", "1")
    assert json.loads(out)["phi_post"]["decimal"] == "0.9"


def test_undefined_posterior_exit_code(capsys):
    code, out, _ = run(capsys, "bayes", path("example2"), "--format", "json")
    assert code == 3
    doc = json.loads(out)
    assert doc["error"] == "UndefinedPosterior"
    assert doc["phi_prior"]["exact"] == "0"
    code, out, _ = run(capsys, "bayes", path("example2"), "--variant", "braket")
    assert code == 3
    code, _, _ = run(capsys, "iterate", path("example2"))
    assert code == 3


def test_iterate(capsys):
    code, out, _ = run(capsys, "iterate", path("example5"), "--max-iter", "50", "--format", "json")
    assert code == 0
    it = json.loads(out)["iteration"]
    assert it["steps"][-1]["n"] == 50
    assert it["steps"][-1]["certainty"]["decimal"] == "0.600"
    assert it["limit"]["x_max"] == ["x1", "x7", "x10"]


def test_iterate_trace_and_eps(capsys):
    code, out, _ = run(
        capsys, "iterate", path("example3"), "--trace", "--eps", "1e-6",
        "--trace-limit", "5", "--format", "json",
    )
    it = json.loads(out)["iteration"]
    assert code == 0
    assert it["converged"] is True
    assert len(it["steps"]) == 5


def test_schema_errors_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"atoms": 2}', encoding="utf-8")
    code, _, err = run(capsys, "bayes", str(bad))
    assert code == 2
    assert "SchemaError" in err
    code, _, err = run(capsys, "inspect", str(tmp_path / "missing.json"))
    assert code == 2


def test_validation_error_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(
        json.dumps({"atoms": 2, "labels": ["a"], "hypotheses": {"a": [5]}, "reality": {"a": []}}),
        encoding="utf-8",
    )
    code, _, err = run(capsys, "match", str(bad))
    assert code == 2
    assert "hypotheses.a" in err


def test_bad_flags_exit_2(capsys):
    for argv in (["iterate", path("example3"), "--eps", "0"], ["bayes", path("example3"), "--precision", "0"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2


def test_console_script_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "coevent.cli", "bayes", path("example1")],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert "Phi(M) post = 1.000" in proc.stdout
