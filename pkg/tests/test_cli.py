from __future__ import annotations

import json

import pytest

from geodex import cli
from geodex import graph as G


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_atlas_list(capsys):
    code, out, _ = run(capsys, "atlas", "list")
    assert code == 0
    assert "foster" in out and "biggs-smith" in out


def test_atlas_get_text(capsys):
    code, out, _ = run(capsys, "atlas", "get", "foster")
    assert code == 0
    assert "90 vertices" in out
    assert "LCF" in out


def test_atlas_get_graph6_round_trip(capsys, petersen):
    code, out, _ = run(capsys, "atlas", "get", "petersen", "--format", "graph6")
    assert code == 0
    assert G.graph6_decode(out.strip()).adjacency == petersen.adjacency


def test_analyze_foster_row(capsys):
    code, out, _ = run(capsys, "analyze", "--atlas", "foster", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["girth"] == 10
    assert payload["diameter"] == 8
    assert payload["intersection_array"] == "{3,2,2,2,2,1,1,1;1,1,1,1,2,2,2,3}"


def test_analyze_graph_file(capsys, tmp_path, petersen):
    path = tmp_path / "petersen.json"
    path.write_text(json.dumps(petersen.to_json()))
    code, out, _ = run(capsys, "analyze", "--graph", str(path), "--format", "json")
    assert code == 0
    assert json.loads(out)["girth"] == 5


def test_analyze_lcf_file(capsys, tmp_path):
    path = tmp_path / "heawood.lcf"
    path.write_text("[5,-5]^7")
    code, out, _ = run(capsys, "analyze", "--graph", str(path), "--format", "json")
    assert code == 0
    assert json.loads(out)["girth"] == 6


def test_analyze_graph6_file(capsys, tmp_path, petersen):
    path = tmp_path / "petersen.g6"
    path.write_text(G.graph6_encode(petersen) + "\n")
    code, out, _ = run(capsys, "analyze", "--graph", str(path), "--format", "json")
    assert code == 0
    assert json.loads(out)["girth"] == 5


def test_aut_json(capsys):
    code, out, _ = run(capsys, "aut", "--atlas", "petersen", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["order"] == 120


def test_transitivity_report(capsys):
    code, out, _ = run(capsys, "transitivity", "--atlas", "petersen", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["arc_degree"] == 3
    assert payload["geodesic_degree"] == 2
    assert payload["primitive"] is True
    assert payload["socle_tag"] == "simple"


def test_transitivity_with_group_file(capsys, tmp_path, c6):
    from geodex.symmetry import automorphism_group

    group = automorphism_group(c6)
    gpath = tmp_path / "dihedral.json"
    gpath.write_text(json.dumps(group.to_json()))
    path = tmp_path / "c6.json"
    path.write_text(json.dumps(c6.to_json()))
    code, out, _ = run(
        capsys, "transitivity", "--graph", str(path), "--group", str(gpath),
        "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["geodesic_degree"] == 3
    assert payload["biprimitive"] is True


def test_quotient_auto(capsys):
    code, out, _ = run(
        capsys, "quotient", "--atlas", "foster", "--normal", "auto", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["orbit_count"] == 30
    assert payload["is_cover"] is True
    assert payload["girth_pair"] == [10, 8]
    assert payload["girth_bound_check"]["verdict"] == "holds"


def test_quotient_normal_file(capsys, tmp_path, foster_n):
    npath = tmp_path / "n.json"
    npath.write_text(json.dumps(foster_n.to_json()))
    code, out, _ = run(
        capsys, "quotient", "--atlas", "foster", "--normal", str(npath),
        "--format", "json",
    )
    assert code == 0
    assert json.loads(out)["kernel_order"] == 3


def test_unknown_atlas_name_text(capsys):
    code, out, err = run(capsys, "atlas", "get", "nonesuch")
    assert code == 1
    assert "UnknownName" in err


def test_unknown_atlas_name_json(capsys):
    code, out, _ = run(capsys, "atlas", "get", "nonesuch", "--format", "json")
    assert code == 1
    payload = json.loads(out)
    assert payload["error"] == "UnknownName"


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as err:
        cli.main(["analyze"])  # missing graph source
    assert err.value.code == 2


def test_deterministic_output(capsys):
    _, first, _ = run(capsys, "transitivity", "--atlas", "heawood", "--format", "json")
    _, second, _ = run(capsys, "transitivity", "--atlas", "heawood", "--format", "json")
    assert first == second
