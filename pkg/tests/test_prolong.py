from __future__ import annotations

import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from skewberger import catalog
from skewberger.exactlin import Mat, det
from skewberger.liealg import complexify, conjugate, construct, derived_rep, random_subalgebra
from skewberger.prolong import (
    check_prolongation,
    check_prolongation_row,
    contained,
    module_dim,
    prolongation,
    verify_prolongation_table,
)


def _reps():
    return {
        "so3": construct("so", 3),
        "so4": construct("so", 4),
        "sl3": construct("sl", 3),
        "gl2": construct("gl", 2),
        "gl3": construct("gl", 3),
        "sp2": construct("sp", 1),
        "sp4": construct("sp", 2),
        "ad_sl2": derived_rep("adjoint", construct("sl", 2)),
        "sl3_sym2": derived_rep("sym_power", construct("sl", 3), k=2),
        "u2": construct("u", p=2),
        "trivial2": construct("trivial", 2),
    }


@pytest.mark.parametrize("name", sorted(_reps()))
@pytest.mark.parametrize("kind,sign", [("skew", -1), ("symmetric", 1)])
def test_first_prolongation_matches_dense_oracle(name, kind, sign):
    rep = _reps()[name]
    space = prolongation(rep, kind, 1)
    assert space.dim == oracles.prolongation_dim(rep, sign)
    assert check_prolongation(rep, space)


def test_examples():
    assert prolongation(construct("so", 4), "skew", 1).dim == comb(4, 3) == 4
    assert prolongation(derived_rep("adjoint", construct("sl", 2)), "skew", 1).dim == 1
    # g^(1) of sl(3): the traceless part of sym^2 (C^3)* (x) C^3, 18 - 3
    sym = prolongation(construct("sl", 3), "symmetric", 1).dim
    assert sym == 15 == oracles.prolongation_dim(construct("sl", 3), 1)
    assert prolongation(construct("trivial", 3), "skew", 1).dim == 0
    assert prolongation(construct("trivial", 3), "skew", 2).dim == 0


def test_so3_zero_test():
    rep = construct("so", 3)
    assert prolongation(rep, "skew", 1).dim == comb(3, 3) == 1
    assert prolongation(rep, "skew", 2).dim == comb(3, 4) == 0


@pytest.mark.parametrize("n", [3, 4, 5])
def test_so_second_prolongation_binomial(n):
    rep = construct("so", n)
    first = prolongation(rep, "skew", 1)
    second = prolongation(rep, "skew", 2)
    assert (first.dim, second.dim) == (comb(n, 3), comb(n, 4))
    assert check_prolongation(rep, second)


def test_table_examples():
    row = catalog.find_row(5, "gl-std")
    got = {e["quantity"]: (e["expected"], e["got"]) for e in check_prolongation_row(row, {"n": 2})}
    assert got == {"g[1]": (2, 2), "g[2]": (0, 0)}
    row = catalog.find_row(5, "sp-C-std")
    got = {e["quantity"]: e["got"] for e in check_prolongation_row(row, {"n": 2})}
    assert got == {"g[1]": 4, "g[2]": 0}
    row = catalog.find_row(5, "sl-sl-C")
    got = {e["quantity"]: e["got"] for e in check_prolongation_row(row, {"n": 3, "m": 2})}
    assert got == {"g[1]": 6, "g[2]": 0}


def test_module_dim_functorial():
    rep = construct("sl", 4)
    assert module_dim(["ext", 3, ["dual", "V"]], rep, 4) == 4
    assert module_dim(["tensor", "Vstd", ["ext", 2, ["dual", "Vstd"]]], rep, 4) == 24
    assert module_dim(["traceless", ["tensor", "Vstd", ["ext", 2, ["dual", "Vstd"]]]], rep, 4) == 20
    assert module_dim(["trivial"], rep, 4) == 1
    assert module_dim(["zero"], rep, 4) == 0


@pytest.mark.parametrize("small,big", [
    (construct("sp", 2), construct("sl", 4)),
    (construct("so", 4), construct("gl", 4)),
    (construct("sl", 3), construct("gl", 3)),
])
def test_containment(small, big):
    assert contained(prolongation(small), prolongation(big), small, big)


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 500))
def test_containment_random_subalgebra(seed):
    small = random_subalgebra(seed)
    big = construct("gl", 3)
    assert contained(prolongation(small), prolongation(big), small, big)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(["so3", "sl3", "sp4", "gl2", "ad_sl2"]))
def test_conjugation_invariance(seed, name):
    rep = _reps()[name]
    rnd = random.Random(seed)
    n = rep.dim_v
    while True:
        p = Mat.from_dense([[rnd.randint(-2, 2) for _ in range(n)] for _ in range(n)])
        if det(p):
            break
    conj = conjugate(rep, p)
    for order in (1, 2):
        assert prolongation(conj, "skew", order).dim == prolongation(rep, "skew", order).dim


@pytest.mark.parametrize("name", ["so4", "sl3", "sp4", "u2", "ad_sl2"])
def test_complexification_compatibility(name):
    rep = _reps()[name]
    cx = complexify(rep)
    for order in (1, 2):
        assert prolongation(cx, "skew", order).dim == prolongation(rep, "skew", order).dim


def test_order_two_is_zero_when_order_one_is():
    rep = construct("sp", 2)
    assert prolongation(rep, "skew", 1).dim == 0
    assert prolongation(rep, "skew", 2).dim == 0


def test_table5_all_rows_small():
    report = verify_prolongation_table(5, tables=(5,))
    assert report.passed
    rows = {e["row"] for e in report.entries}
    assert rows == {r["id"] for r in catalog.load_table(5)["rows"]}


def test_table6_every_center_choice():
    report = verify_prolongation_table(4, tables=(6,))
    assert report.passed
    z_rows = [e for e in report.entries if "z" in e.get("params", {})]
    assert {e["params"]["z"] for e in z_rows} == {0, 1}
    skipped = [e for e in report.entries if e.get("status") == "skipped"]
    assert all(e["reason"].startswith("catalog-only") or "admissible" in e["reason"] for e in skipped)
