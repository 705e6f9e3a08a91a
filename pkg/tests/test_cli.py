"""
Tests for the command-line interface.
"""

import json

from kqlab.cli import main, named_complex
from kqlab.core import SimplicialMap, boundary, horn_inclusion, point, standard_simplex
from kqlab.serialize import SSXEncoder, load_complex, read_document, write_document


def run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr()


def test_homology_of_sphere(capsys):
    code, out = run(capsys, ["homology", "sphere:2"])
    assert code == 0
    doc = json.loads(out.out)
    assert doc["betti"] == [1, 0, 1]
    assert doc["groups"] == ["Z", "0", "Z"]
    assert doc["components"] == 1
    assert doc["euler_agrees"] is True


def test_build_writes_ssx(tmp_path, capsys):
    path = tmp_path / "horn.json"
    code, _ = run(capsys, ["-o", str(path), "build", "horn:2:1"])
    assert code == 0
    assert load_complex(str(path)).counts() == (3, 2)


def test_build_bisimplicial(capsys):
    code, out = run(capsys, ["build", "delta:1", "--bisimplicial", "diag"])
    assert code == 0
    assert json.loads(out.out)["schema"] == "BSSX v1"


def test_named_complex_accepts_files(tmp_path):
    path = tmp_path / "triangle.json"
    write_document(str(path), SSXEncoder.encode(standard_simplex(2)))
    assert named_complex(str(path)).counts() == (3, 3, 1)
    assert named_complex("Boundary:2").counts() == (3, 3)


def test_unknown_complex_is_input_error(capsys):
    code, _ = run(capsys, ["build", "nonsense"])
    assert code == 2
    code, _ = run(capsys, ["build", "horn:2"])
    assert code == 2


def test_config_errors_are_input_errors(tmp_path, capsys):
    code, out = run(capsys, ["--config", str(tmp_path / "absent.conf"), "homology", "point"])
    assert code == 2
    assert "config error" in out.err
    code, _ = run(capsys, ["--set", "trunc_dim", "homology", "point"])
    assert code == 2
    code, _ = run(capsys, ["--set", "horn_dim=zero", "homology", "point"])
    assert code == 2


def test_config_file_is_read(tmp_path, capsys):
    conf = tmp_path / "kqlab.conf"
    conf.write_text("small_horn_dim 1\n")
    code, out = run(capsys, ["-c", str(conf), "kan", "delta:1"])
    assert code == 0
    assert json.loads(out.out)["N"] == 1


def test_kan_report(capsys):
    code, out = run(capsys, ["kan", "delta:1", "--dim", "2"])
    assert code == 0
    doc = json.loads(out.out)
    assert doc["deficits"]["2,1"] == 0
    assert doc["deficits"]["2,0"] > 0


def test_last_vertex_map(capsys):
    code, out = run(capsys, ["map", "sd", "delta:1"])
    assert code == 0
    assert json.loads(out.out)["schema"] == "SSX-map v1"


def test_product_needs_two_inputs(capsys):
    code, _ = run(capsys, ["map", "product", "delta:1"])
    assert code == 2
    code, out = run(capsys, ["map", "product", "delta:1", "delta:1"])
    assert code == 0
    assert len(json.loads(out.out)["cells"]) == 3


def test_lift_command(tmp_path, capsys):
    paths = {}
    pieces = {
        "left": horn_inclusion(2, 1),
        "right": SimplicialMap.constant(standard_simplex(2), point(), (0,)),
        "top": horn_inclusion(2, 1),
        "bottom": SimplicialMap.constant(standard_simplex(2), point(), (0,)),
    }
    for name, f in pieces.items():
        paths[name] = str(tmp_path / f"{name}.json")
        write_document(paths[name], SSXEncoder.encode_map(f))
    code, out = run(capsys, ["lift", paths["left"], paths["right"], paths["top"],
                             paths["bottom"]])
    assert code == 0
    assert json.loads(out.out)["lift_exists"] is True


def test_soa_on_fibrant_map(tmp_path, capsys):
    path = tmp_path / "f.json"
    write_document(str(path), SSXEncoder.encode_map(
        SimplicialMap.constant(boundary(1), point(), (0,))))
    code, out = run(capsys, ["soa", str(path), "-g", "J", "--dim", "2"])
    assert code == 0
    assert json.loads(out.out)["factorization"]["fixed_point"] is True


def test_verify_one_scenario(tmp_path, capsys):
    report_path = tmp_path / "report.json"
    code, out = run(capsys, ["--profile", "small", "-o", str(report_path), "verify", "-s", "S8",
                             "--text"])
    assert code == 0
    assert "S8" in out.out
    doc = read_document(str(report_path))
    assert doc["schema"] == "KQR v1"
    assert [s["id"] for s in doc["scenarios"]] == ["S8"]


def test_top_dim_cap_is_a_resource_cap(capsys):
    capped = ["--set", "top_dim_cap=2", "--set", "trunc_dim=2"]
    code, _ = run(capsys, capped + ["build", "delta:3"])
    assert code == 3
    code, _ = run(capsys, capped + ["map", "product", "delta:1", "delta:2"])
    assert code == 3
    code, out = run(capsys, capped + ["map", "product", "delta:1", "delta:1"])
    assert code == 0
