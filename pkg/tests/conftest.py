import pytest

CRITERIA = {
    1: "q/Q identity suite at 1e-9, under 5 s",
    2: "Caputo power rule and Mittag-Leffler eigen-relation",
    3: "WKB energies at alpha = 1",
    4: "numeric fractional oscillator (N = 400)",
    5: "D-oscillator ladder spectrum and Wigner relations",
    6: "Dunkl eigenfunctions and weighted orthogonality",
    7: "free particle modulus and Hamiltonian residual",
    8: "quantum-potential suite",
    9: "verify INFO records, byte-identical",
}

_outcomes: dict[int, list[bool]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or not mark.args:
        return
    if rep.when == "call" or rep.failed:
        _outcomes.setdefault(mark.args[0], []).append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_outcomes):
        ok = all(_outcomes[n])
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {CRITERIA.get(n, '')}")
