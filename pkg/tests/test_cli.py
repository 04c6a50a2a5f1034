from __future__ import annotations

import json
import os
import subprocess
import sys

import pytest

from procat.cli import main

FIX = "fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_ok(capsys):
    assert run(capsys, "check", f"{FIX}/basic.sig") == (0, "OK: 3 objects, 4 boxes, 2 terms\n", "")


@pytest.mark.parametrize("file, where, kind", [
    ("bad_compose.sig", "3:12", "TypeMismatch"),
    ("unknown_object.sig", "2:14", "UnknownObject"),
])
def test_check_errors_are_positioned(capsys, file, where, kind):
    code, out, err = run(capsys, "check", f"{FIX}/{file}")
    assert code == 2 and out == ""
    assert err.startswith(f"{FIX}/{file}:{where}: {kind}: ")


def test_type_error_lists_both_wire_lists(capsys):
    _, _, err = run(capsys, "check", f"{FIX}/bad_compose.sig")
    assert err.rstrip().endswith("[expected [B+]; actual [A+]]")


def test_missing_file(capsys):
    code, _, err = run(capsys, "check", f"{FIX}/nope.sig")
    assert code == 2 and "IOError" in err


def test_normalize_snake(capsys):
    code, out, _ = run(capsys, "normalize", f"{FIX}/compact.sig", "--term", "snake")
    assert code == 0
    assert out == "[A+] -> [A+]\nwires:\n  in0 -> out0 : A+\ntrace: snake\n  snake (0, 1, 1, 1)\n"


def test_normalize_dot_keeps_trace_as_comments(capsys):
    _, out, _ = run(capsys, "normalize", f"{FIX}/compact.sig", "--term", "circle", "--format", "dot")
    assert out.startswith("digraph")
    assert "//trace: loop-extract" in out


def test_render_raw_shows_cups_and_caps(capsys):
    _, raw, _ = run(capsys, "render", f"{FIX}/compact.sig", "--term", "teleport", "--raw")
    _, nf, _ = run(capsys, "render", f"{FIX}/compact.sig", "--term", "teleport")
    assert "cup" in raw and "cap" in raw
    assert "cup" not in nf


def test_eval_outputs(capsys):
    code, out, _ = run(capsys, "eval", f"{FIX}/compact.sig", "--term", "cupA",
                       "--backend", "mat-c", "--bindings", f"{FIX}/compact_c.json")
    assert code == 0 and out.split() == ["[1+0i]", "[0+0i]", "[0+0i]", "[1+0i]"]
    _, out, _ = run(capsys, "eval", f"{FIX}/compact.sig", "--term", "circle",
                    "--bindings", f"{FIX}/compact_n.json")
    assert out == "[3]\n"
    _, out, _ = run(capsys, "eval", f"{FIX}/cartesian.sig", "--term", "copy_then_swap",
                    "--bindings", f"{FIX}/cartesian_set.json")
    assert out == "0 -> (0,0)\n1 -> (1,1)\n"


def test_eval_backend_mismatch_blames_bindings(capsys):
    code, _, err = run(capsys, "eval", f"{FIX}/compact.sig", "--term", "cupA",
                       "--backend", "mat-b", "--bindings", f"{FIX}/compact_c.json")
    assert code == 2
    assert err.startswith(f"{FIX}/compact_c.json:0:0: UnsupportedInBackend:")


def test_bad_bindings_report_json_path(capsys, tmp_path):
    p = tmp_path / "b.json"
    p.write_text(json.dumps({"backend": "mat-c", "objects": {"A": -1}}))
    code, _, err = run(capsys, "eval", f"{FIX}/compact.sig", "--term", "cupA", "--bindings", str(p))
    assert code == 2 and "$.objects.A" in err and err.startswith(str(p))


def test_unknown_term(capsys):
    code, _, err = run(capsys, "eval", f"{FIX}/compact.sig", "--term", "zzz",
                       "--bindings", f"{FIX}/compact_c.json")
    assert code == 2 and "UnknownTerm" in err


@pytest.mark.parametrize("terms, code, verdict", [
    ("abc,a_bc", 0, "equal"),
    ("named,plain", 0, "equal"),
    ("endo,dag_e", 1, "inequal"),
])
def test_equal_verdicts(capsys, terms, code, verdict):
    got, out, _ = run(capsys, "equal", f"{FIX}/compact.sig", "--terms", terms)
    assert got == code and out == f"structural: {verdict}\n"


def test_equal_semantic(capsys):
    code, out, _ = run(capsys, "equal", f"{FIX}/compact.sig", "--terms", "named,plain",
                       "--semantic", "--bindings", f"{FIX}/compact_c.json")
    assert code == 0 and out.splitlines()[1] == "semantic (mat-c): equal"


def test_equal_type_mismatch_is_an_error(capsys):
    code, _, err = run(capsys, "equal", f"{FIX}/compact.sig", "--terms", "plain,dag_f")
    assert code == 2 and "TypeMismatch" in err


def test_equal_needs_two_names(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["equal", f"{FIX}/compact.sig", "--terms", "abc"])
    assert exc.value.code == 2


def test_laws_report_lines(capsys):
    code, out, _ = run(capsys, "laws", "--suite", "category", "--backend", "mat-n", "--samples", "4")
    lines = out.splitlines()
    assert code == 0
    assert lines[:-1] == ["LAW category.identity PASS samples=4",
                          "LAW category.associativity PASS samples=4"]
    assert lines[-1] == "2/2 laws passed"


def test_laws_rejects_unknown_backend(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["laws", "--backend", "mat-q"])
    assert exc.value.code == 2


def test_laws_report_is_seed_deterministic(capsys):
    args = ["laws", "--suite", "compact", "--seed", "9", "--samples", "6"]
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b


@pytest.mark.parametrize("name", ["teleport", "no-cloning", "no-cloning-rel",
                                  "scalar-commute", "classical-bit"])
def test_demos_exit_zero(capsys, name):
    code, out, _ = run(capsys, "demo", name)
    assert code == 0 and out.strip()


def test_module_entry_point():
    env = dict(os.environ, PROCAT_DISABLE_JIT="1")
    proc = subprocess.run([sys.executable, "-m", "procat", "check", f"{FIX}/basic.sig"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 0 and proc.stdout.startswith("OK:")
