"""Descriptor parsing, report handlers, and the CLI client."""

from __future__ import annotations

import json

import pytest

from burnside import cli, reports
from burnside.corpus import (
    DEFAULT_CORPUS,
    CorpusSpec,
    DescriptorError,
    corpus_from_payload,
    group_from_json,
    load_corpus,
    parse_descriptor,
)
from conftest import DEFAULT_CORPUS as TEST_CORPUS


def test_default_corpus_matches_spec_list():
    assert list(DEFAULT_CORPUS) == TEST_CORPUS


def test_parse_descriptor_compact():
    assert parse_descriptor("D16").order == 16
    assert parse_descriptor("sd16").order == 16
    assert parse_descriptor("C2xC4").order == 8
    assert parse_descriptor("E8").order == 8
    assert parse_descriptor("C2xC2xC2").order == 8


def test_parse_descriptor_family_form():
    assert parse_descriptor("dihedral:16").order == 16
    assert parse_descriptor("elementary-abelian:9").order == 9
    assert parse_descriptor("cyclic:1").order == 1


def test_parse_descriptor_errors():
    for bad in ("", "D6", "xyz", "klein:4", "frobenius:20", "C0", "x", "Q4"):
        with pytest.raises(DescriptorError):
            parse_descriptor(bad)


def test_group_from_json_family():
    g = group_from_json({"name": "d16", "family": {"kind": "dihedral", "order": 16}})
    assert g.order == 16 and g.name == "d16"


def test_group_from_json_cayley():
    table = [[0, 1], [1, 0]]
    g = group_from_json({"name": "swap", "order": 2, "cayley": table})
    assert g.order == 2
    with pytest.raises(DescriptorError):
        group_from_json({"name": "bad", "order": 3, "cayley": table})
    with pytest.raises(DescriptorError):
        group_from_json({"name": "bad", "cayley": [[1, 0], [0, 1]]})


def test_group_from_json_permutations():
    g = group_from_json({
        "name": "S3", "degree": 3,
        "permutation_generators": [[1, 2, 0], [1, 0, 2]],
    })
    assert g.order == 6
    with pytest.raises(DescriptorError):
        group_from_json({"name": "nope", "degree": 2,
                         "permutation_generators": [[0, 0]]})


def test_group_from_json_shape_errors():
    with pytest.raises(DescriptorError):
        group_from_json({"family": {"kind": "cyclic", "order": 2}})
    with pytest.raises(DescriptorError):
        group_from_json({"name": "empty"})


def test_load_corpus(tmp_path):
    path = tmp_path / "corpus.json"
    path.write_text(json.dumps({
        "groups": ["C2", {"name": "K", "family": {"kind": "cyclic", "order": 3}}],
        "budget": 4096,
        "checks": {"exp": False},
    }))
    spec = load_corpus(path)
    assert spec.budget == 4096
    assert not spec.check_exp and spec.check_faithful
    assert len(spec.groups) == 2
    with pytest.raises(DescriptorError):
        load_corpus(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"groups": ["D6"]}))
    with pytest.raises(DescriptorError):
        load_corpus(bad)


def test_describe_report_examples():
    assert reports.describe_report(parse_descriptor("dihedral:16"))["classes"] == 11
    assert reports.describe_report(parse_descriptor("cyclic:1"))["classes"] == 1


def test_marks_report_c2():
    rep = reports.marks_report(parse_descriptor("C2"))
    assert rep["matrix"] == [[2, 1], [0, 1]]
    rep = reports.marks_report(parse_descriptor("C2"), include_idempotents=True)
    assert rep["idempotents"][0]["coeffs"] == ["1/2", "0"]


def test_units_report_methods():
    g = parse_descriptor("C2")
    rep = reports.units_report(g, method="both")
    assert rep["rank"] == 2 and rep["order"] == 4 and rep["agreement"]
    rep = reports.units_report(g, method="brute")
    assert "agreement" not in rep
    rep = reports.units_report(g, method="genetic")
    assert rep["rank"] == 2
    with pytest.raises(ValueError):
        reports.units_report(g, method="magic")


def test_genetic_report_d16():
    rep = reports.genetic_report(parse_descriptor("dihedral:16"))
    assert rep["count"] == 6 and rep["agrees_with_oracle"]


def test_exp_report_d16():
    rep = reports.exp_report(parse_descriptor("D16"))
    assert not rep["surjective"]
    assert rep["image_rank"] == 5 and rep["unit_rank"] == 6


def test_lattice_report_shape():
    rep = reports.lattice_report(parse_descriptor("Q8"))
    assert len(rep["subgroups"]) == 6
    assert len(rep["class_representatives"]) == 6
    # mobius rows are (lower, upper, value) with containment
    masks = {s["index"]: s["mask"] for s in rep["subgroups"]}
    for i, j, _ in rep["mobius"]:
        assert masks[i] & ~masks[j] == 0


def test_verify_report_deterministic_across_jobs():
    corpus = CorpusSpec(groups=("C2", "C4", "C3"))
    one = json.dumps(reports.verify_report(corpus, jobs=1))
    again = json.dumps(reports.verify_report(corpus, jobs=1))
    parallel = json.dumps(reports.verify_report(corpus, jobs=2))
    assert one == again == parallel


def test_verify_report_timings_optional():
    corpus = CorpusSpec(groups=("C2",))
    plain = reports.verify_report(corpus)
    timed = reports.verify_report(corpus, include_timings=True)
    assert "time_ms" not in plain["groups"][0]
    assert "time_ms" in timed["groups"][0]


def test_verify_report_check_toggles():
    spec = corpus_from_payload({"groups": ["C2"], "checks": {"exp": False,
                                                             "faithful": False}})
    rep = reports.verify_report(spec)
    group = rep["groups"][0]
    assert "exp_image_rank" not in group and "faithful_order" not in group
    assert rep["passed"]


# -- CLI ---------------------------------------------------------------------------


def test_cli_describe_ok(capsys):
    assert cli.main(["describe", "Q8"]) == 0
    out = capsys.readouterr().out
    assert "quaternion(8)" in out


def test_cli_json_output(capsys):
    assert cli.main(["--json", "units", "C2", "--method", "brute"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["rank"] == 2


def test_cli_bad_descriptor_exit_2(capsys):
    assert cli.main(["describe", "dihedral:6"]) == 2
    assert "error" in capsys.readouterr().err


def test_cli_group_file(tmp_path, capsys):
    path = tmp_path / "group.json"
    path.write_text(json.dumps({"name": "perm-D8", "degree": 4,
                                "permutation_generators": [[1, 2, 3, 0],
                                                           [0, 3, 2, 1]]}))
    assert cli.main(["describe", f"@{path}"]) == 0
    assert "dihedral(8)" in capsys.readouterr().out
    assert cli.main(["describe", f"@{tmp_path / 'none.json'}"]) == 2


def test_cli_verify_small_corpus(tmp_path, capsys):
    path = tmp_path / "corpus.json"
    path.write_text(json.dumps({"groups": ["C2", "C3"]}))
    assert cli.main(["--json", "verify", "--corpus", str(path)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["passed"] and payload["corpus"] == ["C2", "C3"]
    c3 = payload["groups"][1]
    assert (c3["brute_rank"], c3["genetic_rank"], c3["formula_rank"]) == (1, 1, 1)


def test_cli_verify_d16_exp_flag(tmp_path, capsys):
    path = tmp_path / "corpus.json"
    path.write_text(json.dumps({"groups": ["D16"]}))
    assert cli.main(["--json", "verify", "--corpus", str(path)]) == 0
    payload = json.loads(capsys.readouterr().out)
    group = payload["groups"][0]
    assert group["exp_surjective"] is False and group["passed"]


def test_cli_verify_failure_exit_1(monkeypatch, capsys):
    monkeypatch.setattr(reports, "verify_report",
                        lambda *a, **k: {"passed": False, "groups": []})
    assert cli.main(["--json", "verify"]) == 1


def test_cli_verify_aborts_with_group_named(monkeypatch, capsys):
    def boom(spec, **kwargs):
        raise AssertionError("synthetic failure")
    monkeypatch.setattr(reports, "verify_group_report", boom)
    code = cli.main(["verify"])
    assert code == 1
    err = capsys.readouterr().err
    assert "C2" in err  # first corpus group is named


def test_cli_budget_exit_2(capsys):
    assert cli.main(["units", "D8", "--budget", "4"]) == 2
    assert "budget" in capsys.readouterr().err.lower()


def test_cli_marks_idempotents(capsys):
    assert cli.main(["--json", "marks", "C2", "--idempotents"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["idempotents"][0]["coeffs"] == ["1/2", "0"]


def test_cli_exp(capsys):
    assert cli.main(["--json", "exp", "D16"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["surjective"] is False and payload["image_rank"] == 5


def test_cli_lattice_and_genetic(capsys):
    assert cli.main(["--json", "lattice", "Q8"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["subgroups"]) == 6
    assert cli.main(["--json", "genetic", "C2xC2"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["count"] == 4
