from __future__ import annotations

import json

import pytest

from skewberger import catalog


def _strip(text: str) -> dict:
    data = json.loads(text)
    data.pop("timestamp")
    return data


def test_tables_load_and_rows_are_well_formed():
    for k in catalog.TABLES:
        rows = catalog.load_table(k)["rows"]
        assert rows
        ids = [r["id"] for r in rows]
        assert len(ids) == len(set(ids))
        for r in rows:
            assert r["table"] == k
            assert r["status"] in ("constructible", "catalog-only", "bookkeeping", "descriptor ambiguous")
            assert r["cells"]
            if r["status"] == "catalog-only":
                assert r.get("reason")


def test_find_row_unknown():
    with pytest.raises(catalog.CatalogError):
        catalog.find_row(5, "no-such-row")


def test_row_instances_respect_constraints():
    row = catalog.find_row(5, "sl-sl-C")
    insts = catalog.row_instances(row, 4)
    assert insts and all(p["n"] != p["m"] and min(p["n"], p["m"]) >= 2 for p in insts)
    sizes = [catalog.row_size(row, p) for p in insts]
    assert sizes == sorted(sizes) and max(sizes) <= 4
    row = catalog.find_row(5, "sl-sl-equal")
    assert all(p["n"] == p["m"] for p in catalog.row_instances(row, 5))


def test_osp_3_4_bookkeeping():
    row = catalog.find_row(1, "osp")
    inst = catalog._bookkeeping_instance(row, "C", {"n": 3, "m": 2}, {"odd": row["odd"]})
    assert inst["got"] == {"even": 13, "odd": 12} and inst["pass"]


def test_pe_is_flagged_ambiguous():
    report = catalog.verify([2, 4], 4)
    flagged = {e["row"] for e in report.entries if e["status"] == "ambiguous"}
    assert flagged == {"pe", "pe-real", "pe-H"}


def test_verify_is_deterministic_modulo_timestamp():
    a = catalog.verify([1, 5, 7], 3)
    b = catalog.verify([1, 5, 7], 3)
    assert _strip(a.dumps()) == _strip(b.dumps())


def test_parallel_matches_serial():
    serial = catalog.verify([3, 5, 6, 8], 3, jobs=1)
    parallel = catalog.verify([3, 5, 6, 8], 3, jobs=3)
    assert _strip(serial.dumps()) == _strip(parallel.dumps())


def test_every_row_reported():
    report = catalog.verify(catalog.TABLES, 3)
    for k in catalog.TABLES:
        assert set(report.rows(k)) == {r["id"] for r in catalog.load_table(k)["rows"]}


def test_table7_examples():
    report = catalog.verify([7], 4)
    assert report.passed
    by = {(e["row"], tuple(sorted(e["params"].items())), e["check"]): e for e in report.entries}
    assert by[("sl2-so", (("m", 3),), "is_skew_berger")]["got"] is True
    sym = by[("so-sp", (("n", 3), ("q", 2)), "is_symmetric")]
    assert sym["got"] is True
    assert by[("so-sp", (("n", 3), ("q", 2)), "curvature_dim")]["got"] == 1
    skipped = {e["row"] for e in report.entries if e["status"] == "skipped"}
    assert "G2-sl2" in skipped


def test_table8_records_small_symmetric_cases():
    report = catalog.verify([8], 2)
    fails = {e["row"] for e in report.entries if e["status"] == "fail"}
    assert "sp-R" in fails  # sp(2,R) is symmetric
    assert not report.passed
    text = report.text()
    assert "failed" in text.splitlines()[-1]


def test_refuses_to_extrapolate():
    report = catalog.verify([7], 4)
    spin = [e for e in report.entries if e["row"] == "spin12"]
    assert spin and spin[0]["status"] == "skipped" and "exceeds max-size 4" in spin[0]["reason"]


def test_table_text_lists_rows():
    text = catalog.table_text(5)
    for r in catalog.load_table(5)["rows"]:
        assert r["id"] in text
