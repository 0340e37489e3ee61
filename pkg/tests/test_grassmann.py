from __future__ import annotations

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from skewberger.grassmann import GeneratorMismatch, GrassmannElement, body, derivation, mul

GENS = 4


def elements(parity=None):
    masks = [k for k in range(1 << GENS) if parity is None or bin(k).count("1") % 2 == parity]
    return st.dictionaries(st.sampled_from(masks), st.integers(-4, 4).filter(bool), max_size=6).map(
        lambda d: GrassmannElement(GENS, {k: mpq(v) for k, v in d.items()}))


def xi(i):
    return GrassmannElement.generator(GENS, i)


def test_examples():
    assert xi(1) * xi(2) == -(xi(2) * xi(1))
    assert (xi(1) * xi(1)).is_zero()
    two = GrassmannElement(2, {0: mpq(3), 0b11: mpq(5)})
    assert body(two) == 3
    x1x2 = GrassmannElement.generator(2, 1) * GrassmannElement.generator(2, 2)
    assert derivation(x1x2, 1) == GrassmannElement.generator(2, 2)
    assert derivation(x1x2, 2) == -GrassmannElement.generator(2, 1)


def test_generator_mismatch():
    with pytest.raises(GeneratorMismatch):
        mul(GrassmannElement.generator(2, 1), GrassmannElement.generator(4, 1))
    with pytest.raises(GeneratorMismatch):
        GrassmannElement.generator(2, 3)


@given(elements(), elements(), elements())
def test_associative_and_distributive(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@given(st.integers(0, 1), st.integers(0, 1), st.data())
def test_graded_commutativity(pf, ph, data):
    f = data.draw(elements(pf))
    h = data.draw(elements(ph))
    sign = -1 if pf and ph else 1
    assert f * h == (h * f).scale(sign)


@given(st.integers(0, 1), st.integers(1, GENS), st.data())
def test_leibniz(pf, i, data):
    f = data.draw(elements(pf))
    h = data.draw(elements())
    sign = -1 if pf else 1
    assert derivation(f * h, i) == derivation(f, i) * h + (f * derivation(h, i)).scale(sign)


@given(elements(), st.integers(1, GENS), st.integers(1, GENS))
def test_derivations_anticommute(f, i, j):
    assert derivation(derivation(f, i), j) == -derivation(derivation(f, j), i)
