import json
import subprocess
import sys

import pytest

from grpdtest import cli


def run(*argv):
    return cli.main(list(argv))


def structured(capsys, *argv):
    code = run(*argv, "--format", "structured")
    return code, json.loads(capsys.readouterr().out)


@pytest.mark.parametrize("argv,code", [
    (["check", "hierarchy", "--input", "corpus:e"], 1),
    (["homology", "--input", "corpus:BG2"], 0),
    (["check", "interval", "--input", "corpus:istar_delta1"], 0),
    (["check", "aspherical", "--input", "corpus:BG2"], 1),
    (["check", "aspherical", "--input", "corpus:delta2", "--localizer", "winf"], 0),
    (["w1", "--input", "corpus:J"], 0),
    (["validate", "--input", "corpus:meet3"], 0),
    (["check", "thomason", "--count", "5", "--seed", "1"], 0),
])
def test_exit_codes(capsys, argv, code):
    assert run(*argv) == code
    capsys.readouterr()


def test_report_schema(capsys):
    code, report = structured(capsys, "homology", "--input", "corpus:BG2")
    assert code == 0 and report["exit_code"] == 0
    assert report["schema"] == "grpdtest.report/1"
    assert report["inputs"][0]["sha256"]
    assert "elapsed_s" in report["timings"]
    assert report["results"][0]["text"].startswith("H0=Z, H1=Z/2")


def test_unknown_exit_code(tmp_path, capsys):
    zigzag = tmp_path / "zigzag.json"
    zigzag.write_text(json.dumps({"kind": "category", "body": {
        "objects": ["a", "b", "c", "d"],
        "morphisms": {"ab": ["a", "b"], "cb": ["c", "b"], "cd": ["c", "d"]}, "compose": []}}))
    code, report = structured(capsys, "check", "aspherical", "--input", str(zigzag), "--localizer", "winf",
                              "--cap", "1")
    assert code == 2 and report["status"] == "Unknown"
    code, _ = structured(capsys, "check", "aspherical", "--input", str(zigzag), "--localizer", "winf")
    assert code == 0


def test_size_exceeded_is_exit_2(capsys):
    code, report = structured(capsys, "transpose", "--input", "corpus:terminal_delta1", "--target", "delta2",
                              "--cap", "2")
    assert code == 2 and report["status"] == "Unknown"


def test_parse_error_is_exit_3(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "category",\n"body": {"objects": ["a"], "morphisms": {}, "compose": [["x"]]}}')
    code, report = structured(capsys, "validate", "--input", str(bad))
    assert code == 3 and report["status"] == "error"
    assert "ParseError" in report["error"] and "line 2" in report["error"]


def test_missing_input_and_bad_flags(capsys):
    assert run("homology") == 3
    assert run("homology", "--localizer", "w7") == 3
    assert run("check", "aspherical", "--input", "corpus:nope") == 3
    capsys.readouterr()


def test_output_file_and_text_format(tmp_path, capsys):
    out = tmp_path / "r.txt"
    assert run("homology", "--input", "corpus:BG3", "--format", "text", "--output", str(out)) == 0
    assert out.read_text().startswith("homology: Yes (exit 0)")
    assert "Z/3" in out.read_text()


def test_corpus_listing(capsys):
    assert run("corpus") == 0
    assert "delta1xdelta1" in capsys.readouterr().out.split()


def test_determinism_modulo_timings():
    cfg = cli.RunConfig("check hierarchy", ["corpus:delta1"])
    first, _ = cli.dispatch(cfg)
    second, _ = cli.dispatch(cfg)
    assert json.dumps(cli.strip_timings(first), sort_keys=True, default=str) == \
        json.dumps(cli.strip_timings(second), sort_keys=True, default=str)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "grpdtest", "pi1", "--input", "corpus:BG3", "--format", "text"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "Z/3" in proc.stdout
