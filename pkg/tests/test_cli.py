import json

from gradcon.cli import FAILED, OK, USAGE, main


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_usage_errors(capsys):
    assert main([]) == USAGE
    assert main(["frobnicate"]) == USAGE
    assert main(["contract"]) == USAGE
    assert main(["contract", "--gns", "not a set"]) == USAGE
    assert main(["verify", "--suite", "other"]) == USAGE
    assert main(["export", "--algebra", "all"]) == USAGE


def test_help_exits_ok(capsys):
    assert main(["--help"]) == OK
    assert "gradcon" in capsys.readouterr().out


def test_contract_non_gns_is_input_error(capsys):
    assert main(["contract", "--gns", "12 35"]) == USAGE
    assert "not a generalised nice set" in capsys.readouterr().err


def test_contract_report(capsys):
    assert main(["contract", "--algebra", "F", "--gns", "S0"]) == OK
    d = _json(capsys)
    assert d["abelian"] and d["fingerprint"]["center_dim"] == 52
    assert main(["contract", "--algebra", "H", "--gns", "F_I"]) == OK
    d = _json(capsys)
    assert d["fingerprint"]["levi_dim"] == 21 and d["fingerprint"]["radical_dim"] == 112
    assert all(d["block_formulas"].values())


def test_contract_from_file(tmp_path, capsys):
    p = tmp_path / "t.txt"
    p.write_text("S7+E_124\n")
    out = tmp_path / "r.json"
    assert main(["contract", "--gns", f"@{p}", "--out", str(out)]) == OK
    assert json.loads(out.read_text())["listed_as"] == "S7+E_124"


def test_build_is_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    assert main(["build", "--algebra", "F", "--jacobi", "exhaustive", "--out", str(a)]) == OK
    assert main(["build", "--algebra", "F", "--out", str(b)]) == OK
    assert a.read_bytes() == b.read_bytes()


def test_export_matches_build(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    main(["build", "--out", str(a)])
    assert main(["export", "--out", str(b)]) == OK
    assert a.read_text() == b.read_text()
    assert main(["export", "--gns", "E_12"]) == OK
    assert capsys.readouterr().out.count("\n") < a.read_text().count("\n")


def test_gns_reports_the_extra_orbit(capsys):
    assert main(["gns"]) == FAILED
    captured = capsys.readouterr()
    d = json.loads(captured.out)
    assert d["raw_count"] == 16147 and d["orbit_count"] == 246
    assert d["cross_check"]["unlisted_orbits"] == ["11 17 22 33"]
    assert "245" in captured.err


def test_gns_nice(capsys):
    assert main(["gns", "--nice"]) == OK
    assert _json(capsys)["orbit_count"] == 24


def test_classify_f(capsys):
    assert main(["classify", "--algebra", "F"]) == OK
    d = _json(capsys)
    assert d["total_classes"] == 215
