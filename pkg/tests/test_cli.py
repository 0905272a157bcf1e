import io as stdio
import json
import math
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from cartanball import io
from cartanball.cli import CliConfig, main
from cartanball.generate import KINDS
from cartanball.group import identity

GOLDEN = Path(__file__).parent / "golden"
EXAMPLE = str(GOLDEN / "example_3x3.json")


def run(*argv, stdin=""):
    out, err = stdio.StringIO(), stdio.StringIO()
    code = main(list(argv), stdin=stdio.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def close(a, b, tol=1e-12):
    """Structural equality with numeric leaves compared to ``tol``."""
    if isinstance(a, dict):
        return isinstance(b, dict) and a.keys() == b.keys() and all(close(a[k], b[k], tol) for k in a)
    if isinstance(a, list):
        return isinstance(b, list) and len(a) == len(b) and all(close(x, y, tol) for x, y in zip(a, b))
    if isinstance(a, bool) or isinstance(b, bool) or isinstance(a, str) or a is None:
        return a == b
    return math.isclose(a, b, rel_tol=tol, abs_tol=tol)


@pytest.mark.parametrize(
    "argv, golden",
    [
        (["fixpoints", EXAMPLE], "example_3x3.fixpoints.json"),
        (["classify", EXAMPLE], "example_3x3.classify.json"),
        (["spectrum", EXAMPLE], "example_3x3.spectrum.json"),
        (["--seed", "7", "gen", "normal", "3", "2"], "gen_normal_3_2_seed7.json"),
    ],
)
def test_golden(argv, golden):
    code, out, _ = run(*argv)
    assert code == 0
    assert close(json.loads(out), json.loads((GOLDEN / golden).read_text()))


def test_fixpoints_worked_example():
    code, out, _ = run("fixpoints", EXAMPLE)
    rep = json.loads(out)
    assert code == 0 and rep["count"] == 2 and rep["k"] == 1
    assert [p["F"]["data"] for p in rep["points"]] == [[[1.0, 0.0], [0.0, 0.0]], [[-1.0, 0.0], [0.0, 0.0]]]


def test_fixpoints_unitary_and_non_normal():
    _, gen, _ = run("gen", "unitary", "3", "2")
    code, out, _ = run("fixpoints", "-", stdin=gen)
    rep = json.loads(out)
    assert code == 0 and rep["conclusion"] == "Unitary" and rep["k"] == 0
    flipped = json.loads(Path(EXAMPLE).read_text())
    flipped["matrix"]["data"][6] = [-0.75, 0.0]
    flipped["matrix"]["data"][8] = [-1.25, 0.0]
    code, out, _ = run("fixpoints", json.dumps(flipped))
    assert code == 0 and json.loads(out)["conclusion"] == "NotNormal"


def test_fixpoints_guard():
    code, _, err = run("--max-k", "0", "fixpoints", EXAMPLE)
    assert code == 4 and json.loads(err)["error"] == "KTooLarge"


def test_classify_identity_and_example():
    ident = io.dumps(io.isometry_to_json(identity(2, 1)))
    rep = json.loads(run("classify", "-", stdin=ident)[1])
    assert rep["unitary"] and rep["normal"]
    rep = json.loads(run("classify", EXAMPLE)[1])
    assert rep["non_unitary_normal"]


def test_classify_corrupted_matrix():
    bad = json.loads(Path(EXAMPLE).read_text())
    bad["matrix"]["data"][0] = [1.3, 0.0]
    code, out, _ = run("classify", json.dumps(bad))
    rep = json.loads(out)
    assert code == 3 and rep["error"] == "NotAMember" and not rep["member"]
    assert len(rep["residuals"]) == 6
    code, out, _ = run("verify", json.dumps(bad))
    assert code == 3 and len(json.loads(out)["residuals"]) == 6


def test_verify_generated():
    _, gen, _ = run("--seed", "7", "gen", "random", "3", "2")
    code, out, _ = run("verify", "-", stdin=gen)
    rep = json.loads(out)
    assert code == 0 and rep["member"] and max(rep["residuals"].values()) <= 1e-9


def test_distance_and_act():
    zero = io.dumps(io.matrix_to_json(np.zeros((2, 1))))
    a = io.dumps(io.matrix_to_json(np.array([[0.6], [0.0]])))
    assert json.loads(run("distance", zero, zero)[1])["distance"] == 0.0
    d = json.loads(run("distance", zero, a)[1])["distance"]
    assert abs(d - 0.693147) < 1e-6
    ident = io.dumps(io.isometry_to_json(identity(2, 1)))
    code, out, _ = run("act", ident, a)
    assert code == 0 and io.matrix_from_json(json.loads(out)).tolist() == [[0.6], [0.0]]


@pytest.mark.parametrize(
    "argv, code",
    [
        (["gen", "normal", "2", "2"], 2),
        (["classify", "/nonexistent/file.json"], 2),
        (["classify", "{broken"], 2),
        (["distance", '{"rows":1,"cols":1,"data":[[0,0]]}', '{"rows":2,"cols":1,"data":[[0,0],[0,0]]}'], 2),
        (["distance", '{"rows":1,"cols":1,"data":[[0,0]]}', '{"rows":1,"cols":1,"data":[[1,0]]}'], 2),
        (["--tol", "0", "classify", "x"], 2),
        (["nope"], 2),
    ],
)
def test_error_exit_codes(argv, code):
    assert run(*argv)[0] == code


def test_global_flags_after_subcommand():
    a = run("--seed", "3", "gen", "random", "3", "2")[1]
    b = run("gen", "random", "3", "2", "--seed", "3")[1]
    assert a == b


def test_config_invariants():
    with pytest.raises(ValueError):
        CliConfig(tol=-1)
    with pytest.raises(ValueError):
        CliConfig(max_k=-1)


@pytest.mark.parametrize("kind", KINDS)
def test_gen_classify_roundtrip(kind):
    flag = {"random": None, "unitary": "unitary", "normal": "non_unitary_normal", "selfadjoint": "self_adjoint"}[kind]
    for seed in range(20):
        _, gen, _ = run("--seed", str(seed), "gen", kind, "4", "3")
        code, out, _ = run("classify", "-", stdin=gen)
        rep = json.loads(out)
        assert code == 0 and rep["member"]
        if flag is None:
            assert not rep["normal"]
        else:
            assert rep[flag]


def test_determinism_across_processes():
    cmd = [sys.executable, "-m", "cartanball", "--seed", "11", "gen", "normal", "5", "3", "--k", "2"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first
    fp = [sys.executable, "-m", "cartanball", "fixpoints", "-"]
    r1 = subprocess.run(fp, input=first, capture_output=True, check=True).stdout
    r2 = subprocess.run(fp, input=first, capture_output=True, check=True).stdout
    assert r1 == r2 and json.loads(r1)["count"] == 4


def test_floats_roundtrip_through_output():
    _, gen, _ = run("--seed", "5", "gen", "random", "3", "2")
    T = io.isometry_from_json(json.loads(gen))
    again = io.dumps(io.isometry_to_json(T))
    assert again == gen.strip()
