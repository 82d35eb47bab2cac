import json
from importlib import resources

import pytest

from uqsl2.catalog import IdentityRecord, check_identity, load_catalog, run_catalog
from uqsl2.ncalgebra import NormalElement

# Coverage ledger: every identity group must be present with these exact ids.
GROUPS = {
    "equitable relations": [f"equit-{i}" for i in range(1, 6)],
    "Casimir, six equitable forms and the Chevalley form":
        [f"casequit-{i}" for i in range(1, 7)] + ["lambda-chevalley"],
    "conjugation by y": [f"yconj-{i}" for i in range(1, 5)],
    "tau on Chevalley generators": [f"tau-chev-{i}" for i in range(1, 5)],
    "q-Serre type cubics": [f"qsymrel-{i}" for i in range(1, 7)],
    "nu commutation": [f"qcom-{i}" for i in range(1, 7)],
    "product formulas": [f"six-{i}" for i in range(1, 7)],
    "squares": [f"x2y2z2-{i}" for i in range(1, 4)],
    "sigma on the nu elements": [f"sigmanu-{i}" for i in range(1, 4)],
    "generator recovery": [f"nugen-{i}" for i in range(1, 5)],
    "modified Chevalley relations": ["nxnzy-1", "nxnzy-2", "nxnzy-3"],
    "X, y, Z relations": ["XZ-1", "XZ-2", "XZ-3"],
    "y^-1 from X, x and z, Z": ["yi-1", "yi-2"],
    "A well defined": ["match-1", "match-2"],
    "Ay and yA": ["Ay-1", "Ay-2"],
    "nu from A, y": ["nxnz-1", "nxnz-2"],
    "conjugates of A": ["Ayconj-1", "Ayconj-2"],
    "y-A cubic type relations": ["yay-1", "cor-yAy"],
    "x, z from A, y": [f"genexpand-{i}" for i in range(1, 5)],
    "sigma and tau on A": ["sigmaA-1", "tauA-1", "tauA-2"],
    "Casimir from A, y": ["CasAy-1"],
    "Casimir from nu": ["Lamfromnxnz-1", "Lamfromnxnz-2"],
    "tridiagonal relations": ["tdrel-1", "tdrel-2"],
    "big quadratic": ["yAy-1"],
    "dagger images": ["dagger-1", "dagger-2", "dagger-3", "nxnzdag-1", "nxnzdag-2", "fixAy-1", "fixAy-2"],
    "X, Z from A, y": [f"XZAy-{i}" for i in range(1, 5)],
    "invariant presentation": ["invar-1", "invar-2"],
    "U^vee relations, x y^-1 z": [f"Uveepres-{i}" for i in range(1, 4)],
    "U^vee relations, X y^-1 Z": [f"uvpres2-{i}" for i in range(1, 4)],
    "U^vee relations, x X A": [f"uveepres3-{i}" for i in range(1, 4)],
    "U^vee relations, z Z A": [f"uveepres4-{i}" for i in range(1, 4)],
    "families in x, y^-1, z": [f"nxpres1-{i}" for i in range(1, 5)],
    "families in X, y^-1, Z": [f"nxpres2-{i}" for i in range(1, 5)],
    "families in x, X, A": [f"nxpres3-{i}" for i in range(1, 8)],
    "families in z, Z, A": [f"nxpres4-{i}" for i in range(1, 8)],
}

RECORDS = load_catalog()
IDS = {r.id for r in RECORDS}


@pytest.mark.parametrize("group", list(GROUPS))
def test_group_covered(group):
    missing = [i for i in GROUPS[group] if i not in IDS]
    assert not missing, missing


def test_ids_unique_and_complete_fields():
    raw = json.loads(resources.files("uqsl2").joinpath("data/catalog.json").read_text())
    assert len({r["id"] for r in raw}) == len(raw)
    for r in raw:
        assert r["lhs"] and r["rhs"] and r["anchor"]


@pytest.mark.parametrize("rec", RECORDS, ids=lambda r: r.id)
def test_record_passes(rec):
    res = check_identity(rec)
    assert res.passed, res.format()


def test_examples():
    assert check_identity(next(r for r in RECORDS if r.id == "casequit-1")).passed
    td = next(r for r in RECORDS if r.id == "tdrel-1")
    assert td.rhs == "0" and check_identity(td).passed


def test_perturbed_record_fails_with_residual_one():
    rec = IdentityRecord("neg", "q*x + q^-1*y + q*z - q*x*y*z", "Lambda + 1")
    res = check_identity(rec)
    assert res.status == "fail"
    assert res.residual == -NormalElement.one()


def test_parse_error_reported():
    res = check_identity(IdentityRecord("bad", "x +", "x"))
    assert res.status == "error" and "position" in res.message


def test_filters():
    rep = run_catalog("nxpres4")
    assert [r.id for r in rep.results] == [f"nxpres4-{i}" for i in range(1, 8)] and rep.ok
    empty = run_catalog("nonexistent-")
    assert empty.results == [] and empty.ok
    casequit = run_catalog("casequit")
    assert casequit.passed == 6 and casequit.failed == 0


def test_report_sorted():
    ids = [r.id for r in run_catalog().results]
    assert ids == sorted(ids)


def test_morphism_claim_records_apply_chain():
    tau_e = next(r for r in RECORDS if r.id == "tau-chev-1")
    assert tau_e.apply_lhs == ("tau",)
    wrong = IdentityRecord("w", tau_e.lhs, tau_e.rhs, "", ("sigma",), ())
    assert not check_identity(wrong).passed
