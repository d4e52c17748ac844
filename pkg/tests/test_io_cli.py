import json
import random
import subprocess
import sys
from pathlib import Path

import pytest

from pnderived import cli, io
from pnderived.cli import EXIT_INTERNAL, EXIT_OK, EXIT_PARSE, EXIT_RESOURCE, EXIT_VALIDATION, Job, run
from pnderived.complex import LineBundleComplex
from pnderived.numerics import ChernPolynomial
from pnderived.randgen import random_complex

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def single(n, d):
    return {"n": n, "terms": {"0": [d]}, "diffs": {}}


BAD_SQUARE = {
    "n": 1,
    "terms": {"0": [0], "1": [1], "2": [2]},
    "diffs": {"0": [["x1"]], "1": [["x1"]]},
}


# documents


def test_complex_round_trip():
    rng = random.Random(1)
    for n in (1, 2, 3):
        for _ in range(5):
            c = random_complex(n, rng, (-n - 1, 1))
            assert io.load_complex(io.dump_complex(c)) == c


def test_rational_coefficients_round_trip():
    c = io.load_complex('{"n": 1, "terms": {"0": [-1], "1": [0]}, "diffs": {"0": [["1/2*x0 - 3*x1"]]}}')
    assert io.load_complex(io.dump_complex(c)) == c


def test_parse_error_cites_line():
    with pytest.raises(io.ParseError) as e:
        io.load_complex('{"n": 1,\n "terms": {"0": [0]} "diffs": {}}')
    assert e.value.line == 2 and str(e.value).startswith("line 2:")


@pytest.mark.parametrize(
    "doc, field",
    [
        ({"terms": {"0": [0]}}, "n"),
        ({"n": 1, "terms": {"0": ["a"]}}, "terms"),
        ({"n": 1, "terms": {"0": [0], "1": [1]}, "diffs": {"0": [["x0 +"]]}}, "diffs"),
        ({"n": 1, "terms": {"0": [0], "1": [1]}, "diffs": {"0": [["x0", "x1"]]}}, "diffs"),
    ],
)
def test_parse_error_cites_field(doc, field):
    with pytest.raises(io.ParseError) as e:
        io.load_complex(json.dumps(doc))
    assert field in str(e.value)


def test_float_coefficients_are_rejected():
    with pytest.raises(io.ParseError):
        io.load_chern('{"n": 1, "coeffs": [1, 0.5]}')


def test_auxiliary_documents():
    h = io.load_hodge_table((SAMPLES / "k3_hodge.json").read_text())
    assert h.h[1][1] == 20
    k = io.load_correspondence((SAMPLES / "kernel_p1_p2.json").read_text())
    assert (k.m, k.n) == (1, 2)
    x = io.load_chern((SAMPLES / "class_p1.json").read_text())
    assert x == ChernPolynomial(1, (2, 3))
    with pytest.raises(io.ParseError):
        io.load_hodge_table('{"h": [[1, 0], [0]]}')
    with pytest.raises(io.ParseError):
        io.load_correspondence('{"m": 1, "n": 1}')


def test_chain_map_document():
    f = io.load_chain_map((SAMPLES / "euler_map_p1.json").read_text())
    assert f.source == LineBundleComplex.single(1, -1)
    assert io.load_chain_map(json.dumps(io.chain_map_to_obj(f))) == f


# command line


def call(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cohomology_text(tmp_path, capsys):
    path = write(tmp_path, "c.json", single(2, -3))
    code, out, _ = call(["cohomology", path], capsys)
    assert code == EXIT_OK and out.strip() == "H^2 = 1"


def test_ext_text(capsys):
    code, out, _ = call(["ext", str(SAMPLES / "o_p2.json"), str(SAMPLES / "o_p2.json")], capsys)
    assert code == EXIT_OK and out.strip() == "Ext^0 = 1"


def test_fm_elliptic_text(capsys):
    code, out, _ = call(["fm-elliptic", "0", "1"], capsys)
    assert code == EXIT_OK and "(1, 0)" in out


def test_hochschild_pn_text(capsys):
    code, out, _ = call(["hochschild", "--pn", "2", "--mode", "cohomology"], capsys)
    assert code == EXIT_OK and "HH^• = 1, 8, 10" in out


def test_other_commands_succeed(capsys):
    s = str(SAMPLES)
    for argv in (
        ["validate", f"{s}/point_p2.json"],
        ["reduce", f"{s}/o1_p1.json"],
        ["cone", f"{s}/euler_map_p1.json"],
        ["serre-check", f"{s}/point_p2.json", f"{s}/o_p2.json"],
        ["hrr-check", f"{s}/point_p2.json", f"{s}/o_p2.json"],
        ["point-check", f"{s}/point_p2.json"],
        ["line-bundle-check", f"{s}/o1_p1.json", "--point", "1,0", "--point", "1,1"],
        ["beilinson", f"{s}/o1_p1.json"],
        ["hochschild", "--hodge", f"{s}/k3_hodge.json"],
        ["hochschild", "--genus", "2"],
        ["corr-apply", f"{s}/kernel_p1_p2.json", f"{s}/class_p1.json"],
        ["corr-compose", f"{s}/kernel_p1_p2.json", f"{s}/kernel_p2_p1.json"],
        ["canonical-ring", "--n", "2", "--range", "-1", "1"],
    ):
        code, out, err = call(argv, capsys)
        assert code == EXIT_OK, (argv, err)
        assert out.strip()


def test_serre_and_hrr_outcomes(capsys):
    s = str(SAMPLES)
    _, out, _ = call(["serre-check", f"{s}/point_p2.json", f"{s}/om3_p2.json"], capsys)
    assert "serre duality: holds" in out
    _, out, _ = call(["hrr-check", f"{s}/om3_p2.json", f"{s}/point_p2.json"], capsys)
    assert out.strip().endswith("equal")


def test_exit_code_parse(tmp_path, capsys):
    path = write(tmp_path, "bad.json", '{"n": 1,\n "terms": }')
    code, _, err = call(["ext", path, path], capsys)
    assert code == EXIT_PARSE and "line 2" in err
    code, _, _ = call(["cohomology", str(tmp_path / "missing.json")], capsys)
    assert code == EXIT_PARSE
    code, _, _ = call(["ext", path, path, "--field", "fp:4"], capsys)
    assert code == EXIT_PARSE


def test_exit_code_validation(tmp_path, capsys):
    path = write(tmp_path, "sq.json", BAD_SQUARE)
    for cmd in (["validate", path], ["cohomology", path]):
        code, _, err = call(cmd, capsys)
        assert code == EXIT_VALIDATION and "degree 0" in err


def test_exit_code_resource(tmp_path, capsys):
    path = write(tmp_path, "big.json", single(3, 6))
    code, _, _ = call(["reduce", path, "--max-terms", "1"], capsys)
    assert code == EXIT_RESOURCE
    path = write(tmp_path, "low.json", single(3, -6))
    code, _, _ = call(["ext", path, path, "--max-entries", "100"], capsys)
    assert code == EXIT_RESOURCE


def test_exit_code_internal(tmp_path, monkeypatch):
    from pnderived.errors import ReductionError

    def broken(*args, **kwargs):
        raise ReductionError("homotopy identity failed")

    monkeypatch.setattr(cli, "sheaf_cohomology", broken)
    path = write(tmp_path, "c.json", single(1, 0))
    code, report = run(Job("cohomology", [path], {}, output="structured"))
    assert code == EXIT_INTERNAL
    doc = json.loads(report)
    assert doc["status"] == "error" and doc["exit_code"] == EXIT_INTERNAL


def test_structured_output_echoes_inputs(capsys):
    p = str(SAMPLES / "point_p2.json")
    code, out, _ = call(["ext", p, p, "--output", "structured", "--field", "fp:32003", "--seed", "7"], capsys)
    doc = json.loads(out)
    assert code == EXIT_OK and doc["status"] == "ok"
    assert doc["operation"] == "ext" and doc["field"] == "fp:32003" and doc["seed"] == 7
    assert doc["inputs"]["A"]["path"] == p
    assert doc["inputs"]["A"]["value"]["terms"] == {"-2": [-2], "-1": [-1, -1], "0": [0]}
    assert doc["result"]["ext"] == {"0": 1, "1": 2, "2": 1}


def test_structured_output_is_reproducible():
    p = str(SAMPLES / "point_p2.json")
    argv = [sys.executable, "-m", "pnderived", "point-check", p, "--output", "structured", "--seed", "3"]
    runs = [subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(2)]
    assert runs[0] == runs[1] and runs[0]
