from qsinglet.errors import DimensionMismatch
from qsinglet.hopf import Generator
from qsinglet.linalg import TWO_SITE, StateVector
from qsinglet.scalar import Q, S
from qsinglet.states import (
    bell_singlet,
    casimir_residual,
    dual_singlet,
    invariance_residuals,
    q_singlet,
    stacked_coproducts,
)
from qsinglet.linalg import kernel

import pytest
from fractions import Fraction


def e(i):
    return StateVector([1 if k == i else 0 for k in range(4)], TWO_SITE)


def test_singlet_vector_and_norm():
    st = q_singlet()
    assert st.vector == StateVector([0, 1, -(Q**-1), 0], TWO_SITE)
    assert st.norm_squared == 1 + Q**-2
    assert st.vector.evaluate(1) == [0, 1, -1, 0]


def test_singlet_kernel_dimension_at_sampled_q():
    m = stacked_coproducts()
    for q0 in (Fraction(1, 4), Fraction(1), Fraction(9, 4), Fraction(4)):
        s0 = {Fraction(1, 4): Fraction(1, 2), Fraction(1): 1, Fraction(9, 4): Fraction(3, 2), Fraction(4): 2}[q0]
        from qsinglet.linalg import Matrix

        numeric = Matrix(m.evaluate(s0))
        assert len(kernel(numeric)) == 1


def test_invariance():
    for g, r in invariance_residuals(q_singlet()).items():
        assert r.is_zero(), g
    bell = invariance_residuals(bell_singlet())
    assert bell[Generator.JPLUS] == StateVector([S**-1 - S, 0, 0, 0], TWO_SITE)
    assert not bell[Generator.JMINUS].is_zero()
    assert invariance_residuals(e(0))[Generator.JZ] == e(0)


def test_casimir_residuals():
    assert casimir_residual(q_singlet()).is_zero()
    assert casimir_residual(e(0)).evaluate(1) == [2, 0, 0, 0]
    r4 = casimir_residual(e(3))
    assert not r4.is_zero()


def test_dual_singlet():
    u = dual_singlet()
    assert u == StateVector([0, 1, -(Q**-1), 0], TWO_SITE)
    assert u.evaluate(1) == [0, 1, -1, 0]
    assert u.dot(q_singlet().vector) == 1 + Q**-2


def test_bad_length():
    with pytest.raises(DimensionMismatch):
        invariance_residuals(StateVector([1, 0], TWO_SITE))
