import pytest

from taubnut.crossref import display_report, mismatch_ledger
from taubnut.reference import claim


@pytest.fixture(scope="module", params=[1, -1], ids=["spacelike", "timelike"])
def report(request):
    return display_report(request.param)


def test_no_failures(report):
    assert report.passed


def test_connection_and_riemann_match(report):
    name = report.suite.split("-")[1]
    for a in range(4):
        for c in range(4):
            if a != c:
                assert report[f"{name}.omega{a}{c}"].status == "pass"
    for cid in report.ids():
        if ".R" in cid or ".G" in cid or ".Ric" in cid:
            assert report[cid].status == "pass", cid


def test_itemized_discrepancies():
    ledger = mismatch_ledger([display_report(1), display_report(-1)])
    assert [e["id"] for e in ledger] == ["timelike.Omega13"]
    assert "(0, 2)" in ledger[0]["residual"]


def test_claim_statuses():
    from taubnut.symcore import parse

    assert claim("x", "a", parse("r^2"), "r*r").status == "pass"
    assert claim("x", "a", parse("r^2"), "r").status == "mismatch-reported"
    assert claim("x", "a", parse("r^2"), "r", strict=True).status == "fail"
