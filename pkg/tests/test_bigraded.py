import logging
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from kstab.bigraded import (
    AmbientShape,
    Monomial,
    OneParameterSubgroup,
    compositions,
    count_monomials,
    dim_bigraded,
    dual_weight,
    enumerate_monomials,
    restricted_dim,
    restricted_weight,
    total_weight,
)

DESTAB_12 = OneParameterSubgroup((0, 0), (-1, -1, 2))


# shapes and subgroups ----------------------------------------------------

def test_shape_requires_positive_dimensions():
    with pytest.raises(ValueError):
        AmbientShape(0, 2)
    with pytest.raises(ValueError):
        AmbientShape(1, 0)


def test_subgroup_sl_check():
    assert DESTAB_12.is_special_linear()
    bad = OneParameterSubgroup((0, 0), (-1, -1, 1))
    assert not bad.is_special_linear()
    with pytest.raises(ValueError, match=r"sum\(v\) = -1"):
        bad.require_special_linear()


def test_subgroup_addition():
    twice = DESTAB_12 + DESTAB_12
    assert twice.u == (0, 0) and twice.v == (-2, -2, 4)
    with pytest.raises(ValueError):
        DESTAB_12 + OneParameterSubgroup((0, 0, 0), (0, 0, 0))


# dimensions and enumeration ----------------------------------------------

def test_dim_examples():
    assert dim_bigraded(AmbientShape(1, 2), 1, 1) == 6
    assert dim_bigraded(AmbientShape(3, 2), 0, 0) == 1
    assert dim_bigraded(AmbientShape(2, 2), 1, 1) == 9


def test_enumeration_order_is_descending_lex():
    monos = list(enumerate_monomials(AmbientShape(1, 1), 1, 0))
    assert [mono.x_exp for mono in monos] == [(1, 0), (0, 1)]
    assert all(mono.y_exp == (0, 0) for mono in monos)
    quadratics = [mono.x_exp for mono in enumerate_monomials(AmbientShape(1, 1), 2, 0)]
    assert quadratics == [(2, 0), (1, 1), (0, 2)]


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_enumeration_count_matches_dimension(m, n):
    shape = AmbientShape(m, n)
    for a in range(5):
        for b in range(5):
            monos = list(enumerate_monomials(shape, a, b))
            assert len(monos) == dim_bigraded(shape, a, b) == oracles.dim(m, n, a, b)
            assert len(set(monos)) == len(monos)
            assert all(mono.bidegree() == (a, b) for mono in monos)
            assert count_monomials(shape, a, b) == len(monos)


def test_compositions_requires_parts():
    with pytest.raises(ValueError):
        list(compositions(2, 0))


# weights ------------------------------------------------------------------

def test_dual_weight_examples():
    x0y0 = Monomial((1, 0), (1, 0, 0))
    assert dual_weight(x0y0, DESTAB_12) == 1
    assert dual_weight(x0y0, OneParameterSubgroup.trivial(AmbientShape(1, 2))) == 0
    x1y2 = Monomial((0, 1), (0, 0, 1))
    assert dual_weight(x1y2, DESTAB_12) == -2


def test_dual_weight_length_mismatch():
    with pytest.raises(ValueError, match="mismatch"):
        dual_weight(Monomial((1, 0, 0), (1, 0, 0)), DESTAB_12)


@given(
    st.lists(st.integers(-4, 4), min_size=2, max_size=4),
    st.lists(st.integers(-4, 4), min_size=2, max_size=4),
    st.data(),
)
def test_dual_weight_additive_under_multiplication(u, v, data):
    lam = OneParameterSubgroup(tuple(u), tuple(v))
    exps = st.integers(0, 3)
    a1 = data.draw(st.lists(exps, min_size=len(u), max_size=len(u)))
    a2 = data.draw(st.lists(exps, min_size=len(u), max_size=len(u)))
    b1 = data.draw(st.lists(exps, min_size=len(v), max_size=len(v)))
    b2 = data.draw(st.lists(exps, min_size=len(v), max_size=len(v)))
    m1 = Monomial(tuple(a1), tuple(b1))
    m2 = Monomial(tuple(a2), tuple(b2))
    product = Monomial(
        tuple(x + y for x, y in zip(a1, a2)), tuple(x + y for x, y in zip(b1, b2))
    )
    assert dual_weight(product, lam) == dual_weight(m1, lam) + dual_weight(m2, lam)


def test_total_weight_is_sum_over_enumeration():
    # definitional identity, including a non-SL subgroup
    shape = AmbientShape(2, 1)
    for lam in (DESTAB_12, OneParameterSubgroup((1, 0, -1), (2, 0)), OneParameterSubgroup((3, 1, 2), (1, 1))):
        if len(lam.u) != shape.m + 1 or len(lam.v) != shape.n + 1:
            continue
        for a, b in [(0, 0), (1, 2), (3, 1), (2, 2)]:
            explicit = sum(dual_weight(mono, lam) for mono in enumerate_monomials(shape, a, b))
            assert total_weight(shape, a, b, lam) == explicit


def test_total_weight_vanishes_for_sl_subgroups():
    rng = random.Random(20260810)
    for m in range(1, 4):
        for n in range(1, 4):
            shape = AmbientShape(m, n)
            for _ in range(20):
                lam = OneParameterSubgroup(
                    oracles.random_sl_weights(rng, m + 1),
                    oracles.random_sl_weights(rng, n + 1),
                )
                for a in range(5):
                    for b in range(5):
                        assert total_weight(shape, a, b, lam) == 0


def test_total_weight_matches_oracle_for_non_sl_subgroups():
    shape = AmbientShape(1, 2)
    lam = OneParameterSubgroup((2, 1), (0, -1, 3))
    for a in range(4):
        for b in range(4):
            assert total_weight(shape, a, b, lam) == oracles.total_weight(1, 2, a, b, lam.u, lam.v)


def test_total_weight_examples():
    shape = AmbientShape(1, 2)
    assert total_weight(shape, 1, 1, DESTAB_12) == 0
    assert total_weight(shape, 2, 3, OneParameterSubgroup.trivial(shape)) == 0
    assert total_weight(AmbientShape(1, 1), 1, 0, OneParameterSubgroup((1, -1), (0, 0))) == 0


def test_total_weight_shape_mismatch():
    with pytest.raises(ValueError, match="shape"):
        total_weight(AmbientShape(2, 2), 1, 1, DESTAB_12)


# restriction ring ----------------------------------------------------------

def test_restricted_dim_examples():
    assert restricted_dim(AmbientShape(1, 2), 1, 1, 1) == 5
    assert restricted_dim(AmbientShape(1, 2), 1, 1, 2) == 12
    assert restricted_dim(AmbientShape(1, 1), 1, 1, 1) == 3


def test_restricted_dim_validates_arguments():
    with pytest.raises(ValueError):
        restricted_dim(AmbientShape(1, 1), 0, 1, 1)
    with pytest.raises(ValueError):
        restricted_dim(AmbientShape(1, 1), 1, 1, 0)


def test_restricted_dim_exact_sequence_identity():
    for m, n in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)]:
        shape = AmbientShape(m, n)
        for d in range(1, 4):
            for e in range(1, 4):
                for k in range(1, 7):
                    expected = dim_bigraded(shape, d * k, e * k) - dim_bigraded(
                        shape, d * k - 1, e * k - 1
                    )
                    assert restricted_dim(shape, d, e, k) == expected
                    assert expected >= 0


def test_restricted_dim_matches_oracle():
    for m, n in [(1, 2), (2, 2), (1, 1)]:
        for k in range(1, 4):
            assert restricted_dim(AmbientShape(m, n), 1, 1, k) == oracles.restricted_dim(m, n, 1, 1, k)


def test_restricted_weight_examples():
    shape = AmbientShape(1, 2)
    assert restricted_weight(shape, 1, 1, 1, DESTAB_12, 1) == -1
    assert restricted_weight(shape, 1, 1, 2, DESTAB_12, 1) == -6
    assert restricted_weight(shape, 1, 1, 3, DESTAB_12, 0) == 0


def test_restricted_weight_reduces_to_dimension_multiple_for_sl():
    rng = random.Random(7)
    for m, n in [(1, 2), (2, 2), (2, 3)]:
        shape = AmbientShape(m, n)
        for _ in range(5):
            lam = OneParameterSubgroup(
                oracles.random_sl_weights(rng, m + 1),
                oracles.random_sl_weights(rng, n + 1),
            )
            for alpha in (-2, 0, 1, 3):
                for k in range(1, 4):
                    full = restricted_weight(shape, 1, 2, k, lam, alpha)
                    shortcut = -alpha * dim_bigraded(shape, k - 1, 2 * k - 1)
                    assert full == shortcut


def test_restricted_weight_matches_oracle():
    shape = AmbientShape(1, 2)
    for k in range(1, 4):
        assert restricted_weight(shape, 1, 1, k, DESTAB_12, 1) == oracles.restricted_weight(
            1, 2, 1, 1, k, DESTAB_12.u, DESTAB_12.v, 1
        )


# enumeration cap ------------------------------------------------------------

def test_cap_falls_back_to_closed_forms(caplog):
    shape = AmbientShape(2, 2)
    with caplog.at_level(logging.INFO, logger="kstab.bigraded"):
        assert count_monomials(shape, 3, 3, cap=10) == dim_bigraded(shape, 3, 3)
        assert total_weight(shape, 3, 3, OneParameterSubgroup((1, -1, 0), (2, 0, -2)), cap=10) == 0
    assert any("cap" in record.message for record in caplog.records)


def test_cap_refuses_non_sl_weight_sum():
    shape = AmbientShape(2, 2)
    lam = OneParameterSubgroup((1, 0, 0), (0, 0, 0))
    with pytest.raises(ValueError, match="cap"):
        total_weight(shape, 3, 3, lam, cap=10)


def test_cap_environment_override(monkeypatch):
    from kstab.bigraded import resolve_cap

    assert resolve_cap(123) == 123
    monkeypatch.setenv("KSTAB_ENUM_CAP", "77")
    assert resolve_cap(None) == 77
    monkeypatch.delenv("KSTAB_ENUM_CAP")
    assert resolve_cap(None) == 2_000_000
