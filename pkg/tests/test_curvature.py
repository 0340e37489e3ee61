from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from skewberger.curvature import (
    InvalidCurvature,
    PreconditionError,
    act_on_curvature,
    annihilated_subspace,
    bianchi_holds,
    block_holonomy_matches,
    build_symmetric_pair,
    curvature_element,
    curvature_space,
    derivative_space,
    is_equivariant,
    lagrangian_pair_analysis,
    skew_berger_test,
    wu_decompose,
)
from skewberger.descriptors import instantiate
from skewberger.exactlin import Mat, det
from skewberger.liealg import (
    InvariantForm,
    MatrixRep,
    complex_unit,
    conjugate,
    construct,
    derived_rep,
    is_irreducible,
    random_subalgebra,
    standard_symplectic,
)


def _so3_sp4():
    return instantiate({"family": "so+sp", "field": "rational"}, "tensor", {"n": 3, "q": 2})


def _sl2_so3():
    return instantiate({"family": "sl2+so", "field": "rational"}, "tensor", {"m": 3})


ORACLE_CASES = {
    "sp2": (lambda: construct("sp", 1), 1, 0),
    "sp4": (lambda: construct("sp", 2), 20, 20),
    "u2": (lambda: construct("u", p=2), 1, 0),
    "so4": (lambda: construct("so", 4), 15, 24),
    "sl2so3": (_sl2_so3, 1, 0),
}


@pytest.mark.parametrize("name", sorted(ORACLE_CASES))
def test_dims_against_dense_oracle(name):
    build, curv, deriv = ORACLE_CASES[name]
    rep = build()
    cs = curvature_space(rep, "odd")
    ds = derivative_space(rep, cs)
    assert (cs.dim, ds.dim) == (curv, deriv)
    assert cs.dim == oracles.curvature_dim(rep)
    assert ds.dim == oracles.derivative_dim(rep)


@pytest.mark.parametrize("build", [lambda: construct("sl", 2), lambda: construct("so", 3), lambda: construct("sp", 1)])
def test_even_kind_against_dense_oracle(build):
    rep = build()
    assert curvature_space(rep, "even").dim == oracles.curvature_dim(rep, sym=-1)


def test_examples():
    trivial = construct("trivial", 2)
    cs = curvature_space(trivial, "odd")
    assert cs.dim == 0 and derivative_space(trivial, cs).dim == 0
    res = skew_berger_test(trivial)
    assert res.is_skew_berger and res.span_dim == 0
    rep = _so3_sp4()
    cs = curvature_space(rep, "odd")
    assert cs.dim == 1 and derivative_space(rep, cs).dim == 0
    assert skew_berger_test(construct("sp", 2)).is_skew_berger
    assert curvature_space(construct("so_H", 2), "odd").dim == 1


def test_sp2_is_symmetric():
    # the heading row of the non-symmetric list, at its smallest size, has no derivative space
    res = skew_berger_test(construct("sp", 1))
    assert res.is_skew_berger and res.is_symmetric
    assert (res.curvature_dim, res.derivative_dim) == (1, 0)


def test_sp4_and_u3_are_not_symmetric():
    assert not skew_berger_test(construct("sp", 2)).is_symmetric
    res = skew_berger_test(construct("u", p=3))
    assert res.is_skew_berger and not res.is_symmetric and res.curvature_dim == 9


@pytest.mark.parametrize("build", [lambda: construct("sp", 2), lambda: construct("u", p=2), _so3_sp4,
                                   lambda: construct("so_H", 2)])
def test_equivariance(build):
    rep = build()
    assert is_equivariant(rep, curvature_space(rep, "odd"))


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(["sp2", "sp4", "u2"]))
def test_bianchi_under_random_order(seed, name):
    rep = ORACLE_CASES[name][0]()
    cs = curvature_space(rep, "odd")
    order = list(range(rep.dim_v))
    random.Random(seed).shuffle(order)
    assert bianchi_holds(rep, cs, order)


def test_direct_sum_adds_curvature_dims():
    for a, b in ((construct("sp", 1), construct("sp", 1)), (construct("sp", 2), construct("sp", 1)),
                 (construct("u", p=2), construct("sp", 1))):
        s = derived_rep("outer_sum", a, b)
        assert curvature_space(s, "odd").dim == curvature_space(a, "odd").dim + curvature_space(b, "odd").dim


@pytest.mark.parametrize("build", [lambda: construct("sl", 3), lambda: construct("so", 4), lambda: construct("sl", 2),
                                   lambda: random_subalgebra(11), lambda: construct("so", 3)])
def test_lagrangian_curvature_vanishes(build):
    rep = build()
    report = lagrangian_pair_analysis(rep)
    assert report.vanishes_on_lagrangians and report.implication_holds


def test_lagrangian_examples():
    assert lagrangian_pair_analysis(construct("sl", 3)).dim_first_prolongation == 6
    assert lagrangian_pair_analysis(construct("so", 3)).dim_first_prolongation == 1
    with pytest.raises(PreconditionError):
        lagrangian_pair_analysis(construct("trivial", 2))


@settings(max_examples=6, deadline=None)
@given(st.integers(0, 10_000))
def test_skew_berger_conjugation_invariance(seed):
    rep = construct("u", p=2)
    rnd = random.Random(seed)
    while True:
        p = Mat.from_dense([[rnd.randint(-1, 1) for _ in range(4)] for _ in range(4)])
        if det(p):
            break
    a, b = skew_berger_test(rep), skew_berger_test(conjugate(rep, p))
    assert (a.is_skew_berger, a.is_symmetric, a.span_dim, a.curvature_dim, a.derivative_dim) == \
        (b.is_skew_berger, b.is_symmetric, b.span_dim, b.curvature_dim, b.derivative_dim)


def test_so_h_plus_i_not_skew_berger():
    base = construct("so_H", 2)
    assert not skew_berger_test(derived_rep("with_center", base, extra=[complex_unit(4)])).is_skew_berger
    assert skew_berger_test(base).is_skew_berger


@pytest.mark.parametrize("m", [1, 2, 3])
def test_symmetric_pair_for_sp(m):
    rep = construct("sp", m)
    pair = build_symmetric_pair(rep)
    assert (pair.even_dim, pair.odd_dim) == (m * (2 * m + 1), 2 * m)
    assert pair.jacobi_ok and pair.spans


def test_symmetric_pair_so3_sp4():
    pair = build_symmetric_pair(_so3_sp4())
    assert (pair.even_dim, pair.odd_dim) == (13, 12)
    assert pair.jacobi_ok and pair.spans and pair.span_dim == 13


def test_zero_curvature_pair():
    pair = build_symmetric_pair(construct("sp", 1), curvature={})
    assert pair.jacobi_ok and not pair.spans and pair.span_dim == 0


def test_non_annihilated_curvature_rejected():
    rep = construct("sp", 2)
    cs = curvature_space(rep, "odd")
    ann = annihilated_subspace(rep, cs)
    assert len(ann) == 1
    # a basis element moved by the action is not invariant
    k = next(k for k in range(cs.dim) if any(act_on_curvature(rep, a, cs, k) for a in range(rep.dim)))
    with pytest.raises(InvalidCurvature):
        build_symmetric_pair(rep, curvature_element(cs, k), cs=cs)
    with pytest.raises(InvalidCurvature):
        build_symmetric_pair(rep, {0: 1}, cs=cs)


def _skew(rep, n):
    return MatrixRep(rep.name, rep.field, rep.dim_v, rep.basis, InvariantForm("skew", standard_symplectic(n)))


def test_wu_examples():
    sp2 = construct("sp", 1)
    blocks = wu_decompose(derived_rep("outer_sum", sp2, sp2))
    nontrivial = [b for b in blocks if not b.trivial]
    assert len(nontrivial) == 2
    assert all(is_irreducible(b.rep) and b.rep.dim_v == 2 for b in nontrivial)
    trivial = wu_decompose(_skew(construct("trivial", 4), 2))
    assert len(trivial) == 1 and trivial[0].trivial and len(trivial[0].subspace) == 4
    single = wu_decompose(construct("sp", 2))
    assert len(single) == 1 and not single[0].trivial and single[0].rep.dim == 10
    with pytest.raises(PreconditionError):
        wu_decompose(construct("so", 4))


def test_wu_block_matching():
    a, b = construct("sp", 2), construct("sp", 1)
    s = derived_rep("outer_sum", a, b)
    assert block_holonomy_matches(s, wu_decompose(s), [a, b])
    assert not block_holonomy_matches(s, wu_decompose(s), [a])
