"""Exact half-integer labels and the dense spin operator algebra."""

import math

import numpy as np
import pytest
from scipy.linalg import expm

from spinqec.spin_core import (
    HalfInt,
    Operator,
    StateVec,
    axis_operator,
    l3_operator,
    ladder_operators,
    m_index,
    m_values,
    matexp_antihermitian,
)


def test_halfint_coercion():
    assert HalfInt.of(3).twice == 6
    assert HalfInt.of(0.5).twice == 1
    assert HalfInt.of(-1.5).twice == -3
    assert HalfInt.of(HalfInt(7)).twice == 7
    assert HalfInt.of(np.int64(2)).twice == 4
    with pytest.raises(ValueError):
        HalfInt.of(0.3)
    with pytest.raises(TypeError):
        HalfInt(1.5)
    with pytest.raises(TypeError):
        HalfInt(True)


def test_halfint_value_dim_parity():
    j = HalfInt(5)
    assert j.value == 2.5
    assert j.dim == 6
    assert not j.is_integer
    assert HalfInt(4).is_integer
    assert HalfInt(0).dim == 1


def test_m_values_descending():
    j = HalfInt(3)
    assert list(m_values(j)) == [1.5, 0.5, -0.5, -1.5]
    assert m_index(j, HalfInt(3)) == 0
    assert m_index(j, HalfInt(-3)) == 3
    assert m_index(j, 0.5) == 1


def test_spin_label_must_be_nonnegative():
    with pytest.raises(ValueError):
        l3_operator(HalfInt(-2))
    with pytest.raises(ValueError):
        StateVec.basis_state(HalfInt(-1), HalfInt(-1))


def test_l3_and_ladder_actions():
    j = HalfInt(3)  # j = 3/2
    l3 = l3_operator(j)
    assert np.array_equal(l3.mat, np.diag([1.5, 0.5, -0.5, -1.5]))
    lp, lm = ladder_operators(j)
    # L+|3/2, 1/2> = sqrt(j(j+1) - m(m+1)) |3/2, 3/2> = sqrt(3) e0
    vec = StateVec.basis_state(j, HalfInt(1))
    raised = lp.apply(vec)
    assert abs(raised.amps[0] - math.sqrt(3.0)) < 1e-15
    assert np.max(np.abs(raised.amps[1:])) == 0.0
    # top of the ladder annihilates
    assert lp.apply(StateVec.basis_state(j, j)).norm == 0.0


@pytest.mark.parametrize("twice", [1, 2, 3, 4, 8])
def test_commutation_relations(twice):
    j = HalfInt(twice)
    l3 = l3_operator(j).mat
    lp, lm = (op.mat for op in ladder_operators(j))
    assert np.max(np.abs(l3 @ lp - lp @ l3 - lp)) < 1e-12
    assert np.max(np.abs(l3 @ lm - lm @ l3 + lm)) < 1e-12
    assert np.max(np.abs(lp @ lm - lm @ lp - 2.0 * l3)) < 1e-12


@pytest.mark.parametrize("twice", [1, 3, 6])
def test_casimir(twice):
    j = HalfInt(twice)
    lx = axis_operator(j, (1.0, 0.0, 0.0)).mat
    ly = axis_operator(j, (0.0, 1.0, 0.0)).mat
    lz = axis_operator(j, (0.0, 0.0, 1.0)).mat
    casimir = lx @ lx + ly @ ly + lz @ lz
    target = j.value * (j.value + 1.0) * np.eye(j.dim)
    assert np.max(np.abs(casimir - target)) < 1e-12


def test_axis_operator_validation():
    j = HalfInt(2)
    assert np.array_equal(axis_operator(j, (0.0, 0.0, 1.0)).mat, l3_operator(j).mat)
    assert axis_operator(j, (0.6, 0.0, 0.8)).is_hermitian()
    with pytest.raises(ValueError):
        axis_operator(j, (1.0, 1.0, 0.0))
    with pytest.raises(ValueError):
        axis_operator(j, (1.0, 0.0))


def test_matexp_diagonal_case():
    j = HalfInt(4)
    t = 0.7310
    u = matexp_antihermitian(l3_operator(j), t)
    target = np.diag(np.exp(-1j * t * m_values(j)))
    assert np.max(np.abs(u.mat - target)) < 1e-13
    assert u.is_unitary()


def test_matexp_matches_dense_expm():
    # scipy expm as the independent oracle on a random Hermitian matrix
    rng = np.random.default_rng(11)
    j = HalfInt(5)
    a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    a = a + a.conj().T
    op = Operator(j, a)
    for t in (0.2, -1.3):
        mine = matexp_antihermitian(op, t).mat
        ref = expm(-1j * t * a)
        assert np.max(np.abs(mine - ref)) < 1e-12


def test_matexp_rejects_non_hermitian():
    j = HalfInt(1)
    bad = Operator(j, np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        matexp_antihermitian(bad, 1.0)


@pytest.mark.parametrize("twice,sign", [(1, -1.0), (2, 1.0), (3, -1.0), (4, 1.0)])
def test_full_turn_double_cover(twice, sign):
    u = matexp_antihermitian(l3_operator(HalfInt(twice)), 2.0 * math.pi)
    assert np.max(np.abs(u.mat - sign * np.eye(twice + 1))) < 1e-12


def test_statevec_basics():
    j = HalfInt(2)
    e1 = StateVec.basis_state(j, HalfInt(2))
    e2 = StateVec.basis_state(j, HalfInt(0))
    assert e1.norm == 1.0
    assert e1.inner(e2) == 0.0
    mixed = StateVec(j, [1.0, 1.0j, 0.0])
    assert abs(mixed.norm - math.sqrt(2.0)) < 1e-15
    unit = mixed.normalized()
    assert abs(unit.norm - 1.0) < 1e-15
    # bra side conjugated
    assert abs(e2.inner(mixed) - 1.0j) < 1e-15
    assert abs(mixed.inner(e2) + 1.0j) < 1e-15
    assert abs(unit.fidelity(e2) - 0.5) < 1e-15
    with pytest.raises(ValueError):
        StateVec(j, [1.0, 0.0])
    with pytest.raises(ValueError):
        StateVec(j, np.zeros(3)).normalized()


def test_statevec_amps_read_only():
    vec = StateVec.basis_state(HalfInt(2), HalfInt(2))
    with pytest.raises(ValueError):
        vec.amps[0] = 2.0


def test_operator_algebra():
    j = HalfInt(1)
    ident = Operator.identity(j)
    assert np.array_equal(ident.mat, np.eye(2))
    op = Operator(j, [[0.0, 1.0], [0.0, 0.0]])
    assert np.array_equal(op.dagger().mat, [[0.0, 0.0], [1.0, 0.0]])
    prod = op @ op.dagger()
    assert np.array_equal(prod.mat, [[1.0, 0.0], [0.0, 0.0]])
    vec = StateVec(j, [0.0, 1.0])
    assert np.array_equal((op @ vec).amps, [1.0, 0.0])
    assert abs(op.sandwich(StateVec(j, [1.0, 0.0]), vec) - 1.0) < 1e-15
    assert not op.is_hermitian()
    assert not op.is_unitary()
    with pytest.raises(ValueError):
        Operator(j, np.eye(3))
    with pytest.raises(ValueError):
        op @ Operator.identity(HalfInt(2))
    assert ident.max_diff(prod) == 1.0
