import pathlib

import pytest

from measured_groupoids import cli
from measured_groupoids.cli import main

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def test_check_z2_fixture_passes(capsys):
    rc = main(["check", str(FIXTURES / "z2_cospan.json")])
    out = capsys.readouterr().out
    assert rc == 0
    assert out.count("PASS") == 10
    assert "FAIL" not in out
    assert "thm.haar_system" in out and "prop.quasi_invariance" in out


def test_check_strict_flag(capsys):
    rc = main(["check", "--strict", str(FIXTURES / "z2_cospan.json")])
    assert rc == 0


def test_check_bad_cospan_names_quasi_invariance(capsys):
    rc = main(["check", str(FIXTURES / "bad_cospan.json")])
    out = capsys.readouterr().out
    assert rc == 2
    assert "quasi-invariance" in out
    assert "1-2" in out


def test_validate_quasi_violation_fixture(capsys):
    rc = main(["validate", str(FIXTURES / "pair_quasi_violation.json")])
    out = capsys.readouterr().out
    assert rc == 2
    assert "quasi-invariance" in out and "1-2" in out


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    assert main(["validate", str(bad)]) == 1
    missing = tmp_path / "missing.json"
    with pytest.raises(SystemExit):
        main(["validate", str(missing)])


def test_float_literal_exit_code(tmp_path):
    doc = tmp_path / "f.json"
    doc.write_text('{"format_version": 1, "kind": "groupoid", "w": 0.5}', encoding="utf-8")
    assert main(["validate", str(doc)]) == 1


def test_pullback_then_validate_roundtrip(tmp_path, capsys):
    out = tmp_path / "pullback.json"
    assert main(["pullback", str(FIXTURES / "z2_cospan.json"), "--out", str(out)]) == 0
    assert main(["validate", str(out)]) == 0
    text = out.read_text(encoding="utf-8")
    from measured_groupoids.documents import parse_document, serialize

    assert serialize(parse_document(text)) == text


def test_example_cech(tmp_path, capsys):
    out = tmp_path / "cech.json"
    rc = main(["example", "cech", "--params", str(FIXTURES / "cech_params.json"), "--out", str(out)])
    assert rc == 0
    assert "isomorphism" in capsys.readouterr().out
    assert main(["validate", str(out)]) == 0


def test_example_transformation(tmp_path, capsys):
    out = tmp_path / "tr.json"
    rc = main(
        ["example", "transformation", "--params", str(FIXTURES / "transformation_params.json"), "--out", str(out)]
    )
    assert rc == 0
    assert main(["validate", str(out)]) == 0


def test_modular_prints_table(tmp_path, capsys):
    gout = tmp_path / "g.json"
    assert main(["gen", "groupoid", "--seed", "5", "--bounds", "3,12", "--out", str(gout)]) == 0
    capsys.readouterr()
    assert main(["modular", str(gout)]) == 0
    out = capsys.readouterr().out
    assert out.strip()
    for line in out.strip().splitlines():
        name, value = line.split("\t")
        assert name and value


def test_gen_cospan_roundtrip(tmp_path, capsys):
    cout = tmp_path / "c.json"
    assert main(["gen", "cospan", "--seed", "8", "--out", str(cout)]) == 0
    assert main(["validate", str(cout)]) == 0
    assert main(["check", str(cout)]) == 0


def test_gen_null_cospan(tmp_path, capsys):
    cout = tmp_path / "cn.json"
    assert main(["gen", "cospan", "--seed", "3", "--null", "--out", str(cout)]) == 0
    assert main(["check", str(cout)]) == 0


def test_check_exit_three_when_a_claim_fails(monkeypatch, capsys):
    # the structure theorems cannot fail on a valid cospan, so force one
    # claim down to exercise the exit-code contract
    def rigged(cospan, w, strict=False):
        results = cli_real(cospan, w, strict=strict)
        results["thm.haar_system"] = (False, "forced failure")
        return results

    cli_real = cli.run_claims
    monkeypatch.setattr(cli, "run_claims", rigged)
    rc = main(["check", str(FIXTURES / "z2_cospan.json")])
    out = capsys.readouterr().out
    assert rc == 3
    assert "FAIL thm.haar_system" in out


def test_verbose_env_adds_detail(monkeypatch, capsys):
    monkeypatch.setenv("MGPD_VERBOSE", "1")
    assert main(["check", str(FIXTURES / "z2_cospan.json")]) == 0
    out = capsys.readouterr().out
    assert "checked" in out  # modular claim detail becomes visible
