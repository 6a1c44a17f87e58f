import json
import pathlib

import pytest

from fincat import cli, corpus
from fincat.core import FinCategory, same_category
from fincat.corpus import GSet
from fincat.errors import (DuplicateName, InternalMismatch, ParseError,
                           UnresolvedReference)
from fincat.workspace import Workspace, load_workspace, serialize_workspace

FIXTURES = pathlib.Path(cli.default_fixture_paths()[0]).parent


def test_shipped_fixtures_are_byte_exact_serializations():
    for stem, ws in corpus.fixture_workspaces().items():
        path = FIXTURES / f"{stem}.json"
        assert path.read_text() == serialize_workspace(ws), stem


def test_load_serialize_fixpoint(tmp_path):
    ws1 = load_workspace(cli.default_fixture_paths())
    text = serialize_workspace(ws1)
    merged = tmp_path / "merged.json"
    merged.write_text(text)
    ws2 = load_workspace([merged])
    assert serialize_workspace(ws2) == text
    assert set(ws2.categories) == set(ws1.categories)
    assert set(ws2.presheaves) == set(ws1.presheaves)


def test_full_workspace_inventory():
    ws = load_workspace(cli.default_fixture_paths())
    assert len(ws.categories) == 15
    assert len(ws.presheaves) == 71
    assert set(ws.functors) == {"embedM", "orbit"}
    assert set(ws.profunctors) == {"example8.2"}
    assert len(ws.weight_classes) == 6


def test_monoid_fixture_stands_alone():
    ws = load_workspace([FIXTURES / "monoid_M.json"])
    assert set(ws.categories) == {"M", "QM"}
    assert "splitting" in ws.weight_classes
    assert cli.main(["-w", str(FIXTURES / "monoid_M.json"), "cauchy", "M"]) == 0


def test_covariant_fixtures_load_on_the_opposite():
    ws = load_workspace(cli.default_fixture_paths())
    p = ws.presheaves["cov.GSet.1"]
    assert same_category(p.base, GSet.op())
    assert ws.presheaf_meta["cov.GSet.1"] == ("GSet", "co")


def test_cauchy_command_output(capsys):
    assert cli.main(["cauchy", "M"]) == 0
    out = capsys.readouterr().out
    assert "2 objects" in out
    assert "hom sizes: 2/1/1/1" in out


def test_morita_command_output(capsys):
    assert cli.main(["morita", "M", "QM"]) == 0
    assert "morita equivalent: true" in capsys.readouterr().out
    assert cli.main(["morita", "Z2", "I"]) == 0
    assert "morita equivalent: false" in capsys.readouterr().out


def test_commute_command_output(capsys):
    assert cli.main(["commute", "example8.2"]) == 0
    assert "commutes: false (2 vs 1)" in capsys.readouterr().out


def test_output_is_deterministic(capsys):
    runs = []
    for _ in range(2):
        assert cli.main(["closure", "M", "splitting"]) == 0
        runs.append(capsys.readouterr().out)
    assert runs[0] == runs[1]
    for _ in range(2):
        assert cli.main(["--json", "cauchy", "QM"]) == 0
        runs.append(capsys.readouterr().out)
    assert runs[2] == runs[3]


def test_json_flag_emits_valid_json(capsys):
    assert cli.main(["--json", "smallproj", "E"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["ok"] is True
    assert payload["colimit_size"] == payload["nat_size"]


def test_validate_command_lists_entities(capsys):
    assert cli.main(["validate"]) == 0
    out = capsys.readouterr().out
    assert "ok category M" in out
    assert "ok profunctor example8.2" in out
    assert "INVALID" not in out


def test_validate_reports_invalid_entities():
    broken = FinCategory("K", ["a"], [("i", "a", "a"), ("f", "a", "a")],
                         {"a": "i"}, {("i", "i"): "i", ("i", "f"): "f",
                                      ("f", "i"): "f"})
    ws = Workspace()
    ws.categories["K"] = broken
    lines, payload, code = cli.run_command(ws, "validate", [], cli.Options())
    assert code == 3
    assert any(line.startswith("INVALID category K") for line in lines)
    assert payload["invalid"] == 1


def test_exit_2_on_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert cli.main(["-w", str(bad), "cauchy", "M"]) == 2
    err = capsys.readouterr().err
    assert "error:" in err
    assert f"{bad}:1:" in err   # line and column of the parse failure


def test_exit_2_on_wrong_argument_count(capsys):
    assert cli.main(["cauchy"]) == 2
    assert "usage: cauchy CATEGORY" in capsys.readouterr().err
    assert cli.main(["morita", "M"]) == 2


def test_unknown_command_is_rejected_by_the_parser():
    with pytest.raises(SystemExit):
        cli.main(["frobnicate"])


def test_exit_3_on_unresolved_name(capsys):
    assert cli.main(["cauchy", "nosuch"]) == 3
    assert "no category named 'nosuch'" in capsys.readouterr().err
    assert cli.main(["smallproj", "nosuch"]) == 3
    assert "no presheaf named" in capsys.readouterr().err


def test_exit_3_on_duplicate_definitions(tmp_path, capsys):
    src = (FIXTURES / "monoid_M.json").read_text()
    copy = tmp_path / "again.json"
    copy.write_text(src)
    code = cli.main(["-w", str(FIXTURES / "monoid_M.json"),
                     "-w", str(copy), "cauchy", "M"])
    assert code == 3
    assert "defined twice" in capsys.readouterr().err


def test_exit_3_on_invalid_workspace_entity(tmp_path, capsys):
    doc = {"categories": {"K": {
        "objects": ["a"],
        "morphisms": [{"id": "i", "src": "a", "tgt": "a"},
                      {"id": "f", "src": "a", "tgt": "a"}],
        "identities": {"a": "i"},
        "compose": [["i", "i", "i"], ["i", "f", "f"], ["f", "i", "f"]],
    }}}
    path = tmp_path / "invalid.json"
    path.write_text(json.dumps(doc))
    assert cli.main(["-w", str(path), "validate"]) == 3
    assert "error:" in capsys.readouterr().err


def test_exit_3_on_duplicate_key_within_a_file(tmp_path):
    path = tmp_path / "dupkey.json"
    path.write_text('{"categories": {"K": {}, "K": {}}}')
    assert cli.main(["-w", str(path), "validate"]) == 3


def test_exit_4_on_budget(capsys):
    assert cli.main(["--budget", "1", "cocomplete", "N5",
                     "finite-colimits"]) == 4
    assert "budget" in capsys.readouterr().err.lower()
    assert cli.main(["--budget", "1", "morita", "GSet", "GSet"]) == 4


def test_exit_4_on_round_cap(capsys):
    assert cli.main(["--cap-rounds", "0", "recognize", "embedM",
                     "splitting"]) == 4
    assert "still growing" in capsys.readouterr().err


def test_exit_5_on_internal_mismatch(monkeypatch, capsys):
    def boom(ws, args, opts):
        raise InternalMismatch("forced failure")
    monkeypatch.setitem(cli._HANDLERS, "cauchy", boom)
    assert cli.main(["cauchy", "M"]) == 5
    assert "forced failure" in capsys.readouterr().err


def test_wcolimit_requires_covariant_diagram(capsys):
    assert cli.main(["wcolimit", "one.Two", "collapse.Two"]) == 3
    assert "variance 'co'" in capsys.readouterr().err


def test_every_command_runs_on_the_bundled_fixtures(capsys):
    invocations = [
        ["validate", "M"], ["limit", "free.Z2"], ["colimit", "free.Z2"],
        ["wlimit", "one.Two", "collapse.Two"],
        ["wcolimit", "one.GSet", "cov.GSet.G"],
        ["kan", "orbit", "cov.GSet.G"], ["nerve", "embedM"],
        ["elements", "E"], ["filtered", "M"], ["connected", "Span"],
        ["lift", "example8.2", "example8.2"],
        ["extend", "example8.2", "example8.2"],
        ["adjoint", "example8.2"], ["smallproj", "one.Z2"],
        ["cauchy", "Z3"], ["isbell", "E"], ["duality", "I"],
        ["morita", "Two", "Two"], ["closure", "Two", "initial"],
        ["saturation", "zero.Two", "initial"],
        ["cocomplete", "Two", "initial"], ["atoms", "N5", "initial"],
        ["commute", "one.Z2", "one.Span", "example8.2"],
        ["flat", "one.Span"], ["continuous", "one.Z2", "pushouts"],
        ["recognize", "embedM", "splitting"],
        ["absolute-sample", "one.Z2", "orbit"],
    ]
    assert sorted(cli.COMMANDS) == sorted({v[0] for v in invocations})
    for argv in invocations:
        assert cli.main(argv) == 0, argv
        assert capsys.readouterr().out.strip(), argv


def test_absolute_sample_seed_reorders_but_keeps_content(capsys):
    assert cli.main(["--json", "absolute-sample", "one.Z2", "orbit"]) == 0
    base = json.loads(capsys.readouterr().out)
    assert cli.main(["--json", "--seed", "7", "absolute-sample",
                     "one.Z2", "orbit"]) == 0
    seeded = json.loads(capsys.readouterr().out)
    assert base["violations"] and seeded["violations"]
    assert base["small_projective"] is False
