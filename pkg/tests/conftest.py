import pytest

from slocc_pit import decider
from slocc_pit.linalg import lincomb, rank_exact

from oracles import naive_rank
from registry import ACCEPTANCE, YES_AUDIT


def audit_witness(psi, w):
    """Rank, probability range and conjugation reconstruction of a witness."""
    assert w.rank == rank_exact(w.pi_u) == naive_rank(w.pi_u)
    assert 0 < w.outcome_probability <= 1
    slices = [psi.slice(k) for k in range(psi.dims[2])]
    rebuilt = lincomb([x.conj() for x in w.measurement], slices)
    assert rebuilt == w.pi_u


@pytest.fixture(autouse=True)
def _audit_every_yes(monkeypatch):
    """Check every witness and every YES report the package builds during a test."""
    make_witness = decider.make_witness
    report = decider._report

    def checked_witness(psi, basis, u):
        w = make_witness(psi, basis, u)
        audit_witness(psi, w)
        YES_AUDIT["witnesses"] += 1
        return w

    def checked_report(answer, d, method, params, error=0, witness=None):
        r = report(answer, d, method, params, error, witness)
        if r.answer == "yes":
            assert r.witness is not None and r.witness.rank >= d
            assert r.error_bound == 0
            YES_AUDIT["reports"] += 1
        if r.method in ("oracle", "flanders", "dimension", "slice-shortcut"):
            assert r.error_bound == 0
        return r

    monkeypatch.setattr(decider, "make_witness", checked_witness)
    monkeypatch.setattr(decider, "_report", checked_report)
    yield


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        desc, ok = ACCEPTANCE[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {desc}")
    terminalreporter.write_line(
        f"witness audit: {YES_AUDIT['reports']} YES reports, {YES_AUDIT['witnesses']} witnesses checked")
