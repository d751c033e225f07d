import pytest

from deforma import cli, verify


@pytest.fixture(scope="module")
def full():
    return verify.run(0)


def test_all_checks_pass(full):
    results, _ = full
    assert len(results) >= 40
    bad = [(r.module, r.name, r.max_error) for r in results if not r.passed]
    assert not bad


def test_every_module_is_covered(full):
    assert {r.module for r in full[0]} == set(verify.MODULES)


def test_info_records(full):
    _, infos = full
    names = {(i.module, i.name) for i in infos}
    assert names == {
        ("dcalc", "d-factorial closed form"),
        ("dcalc", "product-rule printed form"),
        ("spectral", "WKB bracket exponent"),
        ("qpotential", "D-derivative-square constant"),
    }
    text = {i.name: i.text for i in infos}
    assert "[0, 1, 6, 7, 8, 9, 10]" in text["d-factorial closed form"]
    assert "c=(D-1)(2D-1)/2=0.500000" in text["D-derivative-square constant"]


def test_seed_is_deterministic():
    a = verify.format_report(*verify.run(7, ["qcalc", "core"]))
    b = verify.format_report(*verify.run(7, ["qcalc", "core"]))
    assert a == b


def test_seed_changes_the_corpus():
    a = [r.max_error for r in verify.run(1, ["qcalc"])[0]]
    b = [r.max_error for r in verify.run(2, ["qcalc"])[0]]
    assert a != b


def test_only_filters():
    results, infos = verify.run(0, ["spectral"])
    assert {r.module for r in results} == {"spectral"}
    assert [i.name for i in infos] == ["WKB bracket exponent"]
    with pytest.raises(ValueError):
        verify.run(0, ["nope"])


def test_report_layout(full):
    lines = verify.format_report(*full).splitlines()
    assert lines[-1] == f"RESULT PASS  {len(full[0])} checks, 0 failed, 4 info"
    assert sum(l.startswith("INFO  ") for l in lines) == 4
    assert all(l.startswith(("PASS  ", "INFO  ")) for l in lines[:-1])


def test_failure_exit_code(monkeypatch, capsys):
    monkeypatch.setattr(verify, "_CHECKS", [("core", "always fails", lambda rng: (1.0, 1e-9))])
    monkeypatch.setattr(verify, "_INFOS", [])
    assert cli.main(["verify"]) == 1
    out = capsys.readouterr().out
    assert out.startswith("FAIL  core")
    assert out.splitlines()[-1] == "RESULT FAIL  1 checks, 1 failed, 0 info"
