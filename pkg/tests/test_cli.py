from __future__ import annotations

import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from signed_quivers.cli import SEED_ENV, run

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"
GOLDEN = Path(__file__).resolve().parent / "golden"

# (golden name, argv); paths are relative to the repository root
GOLDEN_CASES = [
    ("classify_b3", ["classify", "data/quivers/b3.quiver"]),
    ("double_b2", ["double", "data/quivers/b2.quiver"]),
    ("roots_b2", ["roots", "data/quivers/b2.quiver", "--height", "4"]),
    ("fold_b2", ["fold", "data/quivers/b2.quiver", "--verify", "--height", "4"]),
    ("fold_d3_twisted", ["fold", "data/quivers/d3_twisted.quiver", "--verify", "--height", "12"]),
    ("dims_b3", ["dims", "data/quivers/b3.quiver", "--height", "10"]),
    ("dims_c3", ["dims", "data/quivers/c3.quiver", "--height", "10"]),
    ("dims_c2_affine_records", ["dims", "data/quivers/c2_affine.quiver", "--height", "8", "--format", "records"]),
    ("dims_b3_rel_plus", ["dims", "data/quivers/b3_rel_plus.quiver", "--height", "6"]),
    ("dims_o_plus", ["dims", "data/quivers/o_plus.quiver", "--height", "4"]),
    ("check_d3_twisted", ["check-symmetric", "data/reps/d3_twisted_v2.rep"]),
    ("solve_c2_affine", ["check-symmetric", "data/reps/c2_affine_v1.rep", "--solve-form"]),
    ("decompose_d3_twisted", ["decompose", "data/reps/d3_twisted_v2.rep", "--symmetric", "--seed", "3"]),
    ("presentation_3_0_pm", ["oracle-presentation", "--jordan", "3,0", "--signs", "+,-"]),
]


def call(argv, env_seed=None):
    out = io.StringIO()
    old = os.environ.pop(SEED_ENV, None)
    if env_seed is not None:
        os.environ[SEED_ENV] = str(env_seed)
    cwd = os.getcwd()
    os.chdir(ROOT)
    try:
        code = run(argv, out)
    finally:
        os.chdir(cwd)
        os.environ.pop(SEED_ENV, None)
        if old is not None:
            os.environ[SEED_ENV] = old
    return code, out.getvalue()


# -- spec examples -------------------------------------------------------------------------------
def test_classify_b3():
    code, out = call(["classify", "data/quivers/b3.quiver"])
    assert code == 0 and out.strip() == "B_3 (finite)"


def test_fold_verify_d3_twisted():
    code, out = call(["fold", "data/quivers/d3_twisted.quiver", "--verify", "--height", "12"])
    assert code == 0
    assert "bar images of unfolded roots" in out and "folded roots" in out
    assert out.rstrip().endswith("folding lemma: verified")


def test_presentation_minus_minus_not_found():
    code, out = call(["oracle-presentation", "--jordan", "2,0", "--signs", "-,-"])
    assert code == 1 and "NotFound" in out


# -- exit codes ----------------------------------------------------------------------------------
@pytest.mark.parametrize("argv,code", [
    (["validate", "data/quivers/b3.quiver"], 0),
    (["validate", "data/quivers/broken.quiver"], 1),
    (["check-symmetric", "data/reps/c2_affine_v1.rep", "--solve-form"], 1),
    (["check-symmetric", "data/reps/c2_affine_v1.rep"], 2),
    (["fold", "data/quivers/o_plus.quiver"], 1),
    (["classify", "data/quivers/missing.quiver"], 2),
    (["classify", "data/quivers/broken.quiver"], 2),
    (["roots", "data/quivers/b2.quiver", "--height", "0"], 2),
    (["roots", "data/quivers/b2.quiver"], 2),
    (["oracle-presentation", "--jordan", "x", "--signs", "+,+"], 2),
    (["frobnicate"], 2),
    ([], 2),
])
def test_exit_codes(argv, code):
    assert call(argv)[0] == code


def test_help_exits_zero():
    assert call(["--help"])[0] == 0
    assert call(["dims", "--help"])[0] == 0


def test_negative_verdicts_name_the_failure(tmp_path):
    code, out = call(["validate", "data/quivers/broken.quiver"])
    assert code == 1 and "at a:" in out
    text = (DATA / "reps" / "d3_twisted_v2.rep").read_text()
    text = text.replace("../quivers/", str(DATA / "quivers") + "/")
    lines = [("form 1 [2 x 2] 1 0 0 1" if x.startswith("form 1 ") else x) for x in text.splitlines()]
    bad = tmp_path / "bad.rep"
    bad.write_text("\n".join(lines) + "\n")
    code, out = call(["check-symmetric", str(bad)])
    assert code == 1 and out.strip() == "not symmetric: arrow a1"


def test_inline_error_line_numbers(tmp_path):
    bad = tmp_path / "bad.quiver"
    bad.write_text("vertex 1\nvertex 2\narrow a 1 2\n")
    code, _ = call(["classify", str(bad)])
    assert code == 2


def test_roots_on_graph_file(tmp_path):
    g = tmp_path / "a3.graph"
    g.write_text("edge 1 2\nedge 2 3\n")
    code, out = call(["roots", str(g), "--height", "3"])
    assert code == 0 and "6 positive roots" in out


# -- records ------------------------------------------------------------------------------------
def test_records_are_json_lines():
    code, out = call(["dims", "data/quivers/b2.quiver", "--height", "10", "--format", "records"])
    assert code == 0
    recs = [json.loads(x) for x in out.splitlines()]
    dims = [r for r in recs if r["record"] == "dim"]
    assert [r["vector"] for r in dims] == ["(0,1,0)", "(1,0,1)", "(1,1,1)", "(1,2,1)"]
    assert [r["kind"] for r in dims] == ["Split", "Hyperbolic", "Split", "Hyperbolic"]


def test_format_flag_either_side():
    a = call(["--format", "records", "classify", "data/quivers/b3.quiver"])
    b = call(["classify", "data/quivers/b3.quiver", "--format", "records"])
    assert a == b and json.loads(a[1])["family"] == "B_3"


def test_oracle_cross_check():
    code, out = call(["dims", "data/quivers/b2.quiver", "--height", "4", "--oracle", "--box", "1,1,1"])
    assert code == 0 and "oracle: agrees" in out


# -- determinism ----------------------------------------------------------------------------------
def test_seed_printed_and_env_default():
    _, out = call(["decompose", "data/reps/d3_twisted_v2.rep"])
    assert out.splitlines()[0] == "seed: 0"
    _, out = call(["decompose", "data/reps/d3_twisted_v2.rep"], env_seed=11)
    assert out.splitlines()[0] == "seed: 11"
    _, out = call(["decompose", "data/reps/d3_twisted_v2.rep", "--seed", "4"], env_seed=11)
    assert out.splitlines()[0] == "seed: 4"
    assert call(["decompose", "data/reps/d3_twisted_v2.rep"], env_seed="x")[0] == 2


@pytest.mark.parametrize("name,argv", GOLDEN_CASES)
def test_byte_identical_reruns(name, argv):
    assert call(argv) == call(argv)


@pytest.mark.parametrize("name,argv", GOLDEN_CASES)
def test_golden_outputs(name, argv):
    code, out = call(argv)
    expected = (GOLDEN / f"{name}.txt").read_text()
    assert f"exit={code}\n{out}" == expected


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "signed_quivers.cli", "classify", "data/quivers/c3.quiver"],
                         cwd=ROOT, capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "C_3 (finite)"


if __name__ == "__main__":
    # regenerate golden files: python tests/test_cli.py
    GOLDEN.mkdir(exist_ok=True)
    for name, argv in GOLDEN_CASES:
        code, out = call(argv)
        (GOLDEN / f"{name}.txt").write_text(f"exit={code}\n{out}")
