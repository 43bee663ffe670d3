import json
import subprocess
import sys

import pytest

from tstructkit import cli
from tstructkit.faults import FAULT_NAMES

A2 = "demos/quivers/a2.json"


def run_cli(*argv):
    proc = subprocess.run([sys.executable, "-m", "tstructkit.cli", *argv],
                          capture_output=True, text=True, cwd="/root/pkg")
    return proc.returncode, proc.stdout, proc.stderr


def test_verify_quiver_passes():
    code, out, _ = run_cli("verify", "--backend", f"quiver:{A2}",
                           "--window", "0:1")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1].startswith("OK")
    assert lines[:-1] and all(line.startswith("PASS ") for line in lines[:-1])


def test_verify_p1_and_dedekind_pass():
    code, out, _ = run_cli("verify", "--backend", "p1", "--window", "0:1",
                           "--points", "2", "--degrees=-1:1")
    assert code == 0 and "FAIL" not in out
    code, out, _ = run_cli("verify", "--backend", "dedekind", "--primes", "2",
                           "--window", "0:0")
    assert code == 0 and "FAIL" not in out


@pytest.mark.parametrize("fault", FAULT_NAMES)
def test_every_fault_turns_verify_red(fault):
    code, out, _ = run_cli("verify", "--backend", f"quiver:{A2}",
                           "--window", "0:1", "--mutate", fault)
    assert code == 1, (fault, out)
    assert "FAIL" in out


def test_usage_errors_exit_2():
    assert run_cli("verify", "--backend", "nonsense")[0] == 2
    assert run_cli("verify", "--backend", f"quiver:{A2}", "--window", "1:")[0] == 2
    assert run_cli("verify", "--backend", "quiver:/does/not/exist.json")[0] == 2
    assert run_cli("frobnicate")[0] == 2
    code, _, err = run_cli("verify", "--backend", f"quiver:{A2}",
                           "--window", "oops")
    assert code == 2 and "error" in err


def test_enumerate_json_shape():
    code, out, _ = run_cli("enumerate", "--backend", f"quiver:{A2}",
                           "--window", "0:1", "--format", "json")
    assert code == 0
    rows = json.loads(out)["records"]
    assert rows and all(set(r) >= {"backend", "window", "form", "parameters",
                                   "checks", "is_aisle"} for r in rows)


def test_enumerate_dedekind_counts():
    code, out, _ = run_cli("enumerate", "--backend", "dedekind", "--primes", "2",
                           "--window", "0:0", "--format", "json")
    assert code == 0
    rows = json.loads(out)["records"]
    assert sum(not r["degenerate"] for r in rows) == 3
    assert sum(r["degenerate"] for r in rows) == 2


def test_enumerate_table_and_csv_run():
    for fmt in ("table", "csv"):
        code, out, _ = run_cli("enumerate", "--backend", f"quiver:{A2}",
                               "--window", "0:1", "--format", fmt)
        assert code == 0 and out


def test_output_is_deterministic_across_jobs():
    baseline = None
    for jobs in ("1", "8", "1", "8"):
        code, out, _ = run_cli("enumerate", "--backend", f"quiver:{A2}",
                               "--window", "0:1", "--format", "json",
                               "--jobs", jobs)
        assert code == 0
        if baseline is None:
            baseline = out
        assert out == baseline


def test_classify_verdicts(tmp_path):
    seq = {"lo": 0, "hi": 1, "entries": [[1, 2], [0, 1, 2]],
           "below": [], "above": [0, 1, 2]}
    path = tmp_path / "seq.json"
    path.write_text(json.dumps(seq))
    code, out, _ = run_cli("classify", "--backend", f"quiver:{A2}", str(path))
    assert code == 0
    verdict = json.loads(out)
    assert verdict["valid_narrow_sequence"] and verdict["is_aisle"]

    bad = {"lo": 0, "hi": 1, "entries": [[0, 1], [0, 1]],
           "below": [], "above": [0, 1, 2]}
    path.write_text(json.dumps(bad))
    code, out, _ = run_cli("classify", "--backend", f"quiver:{A2}", str(path))
    assert code == 0
    verdict = json.loads(out)
    assert not verdict["valid_narrow_sequence"] and verdict["violations"]


def test_classify_p1(tmp_path):
    data = {"entries": {"0": {"tag": "zero"}, "1": {"tag": "tor", "points": [0]},
                        "2": {"tag": "all"}}}
    path = tmp_path / "p1.json"
    path.write_text(json.dumps(data))
    code, out, _ = run_cli("classify", "--backend", "p1", str(path))
    assert code == 0
    verdict = json.loads(out)
    assert verdict["form"]["form"] == "I" and verdict["is_aisle"]


def test_classify_dedekind(tmp_path):
    data = {"entries": {"0": "mod", "1": {"support": [2]}, "2": "zero"}}
    path = tmp_path / "dd.json"
    path.write_text(json.dumps(data))
    code, out, _ = run_cli("classify", "--backend", "dedekind", "--primes",
                           "2,3", str(path))
    assert code == 0
    verdict = json.loads(out)
    assert verdict["is_aisle"] and verdict["form"]["pivot"] == 1


def test_classify_garbage_input_exits_2(tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    assert run_cli("classify", "--backend", f"quiver:{A2}", str(path))[0] == 2
    path.write_text(json.dumps({"wrong": "shape"}))
    assert run_cli("classify", "--backend", f"quiver:{A2}", str(path))[0] == 2


def test_enumerate_callable_in_process():
    import io
    args = cli.build_parser().parse_args(
        ["enumerate", "--backend", "dedekind", "--primes", "2",
         "--window", "0:0", "--format", "json"])
    out = io.StringIO()
    assert cli.cmd_enumerate(args, out=out) == 0
    rows = json.loads(out.getvalue())["records"]
    assert len(rows) == 5
