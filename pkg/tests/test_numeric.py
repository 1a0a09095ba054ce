import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsinglet.braiding import RSource, Site, dress
from qsinglet.errors import NonpositiveParameter
from qsinglet.hopf import Generator, coproduct_matrix, generator_matrix
from qsinglet.measurement import all_conventions, dressed_joint, naive_joint
from qsinglet.numeric import FloatModel
from qsinglet.states import q_singlet

TOL = 1e-12


def close(exact, approx):
    return np.max(np.abs(np.asarray(exact) - np.asarray(approx))) <= TOL


def test_rejects_nonpositive_q():
    with pytest.raises(NonpositiveParameter):
        FloatModel(0.0)
    with pytest.raises(NonpositiveParameter):
        FloatModel(-2.0)


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=0.2, max_value=5.0))
def test_matrices_agree(q):
    fm = FloatModel(q)
    assert close(coproduct_matrix(Generator.JPLUS).to_float(q), fm.d_jp)
    assert close(coproduct_matrix(Generator.JMINUS).to_float(q), fm.d_jm)
    assert close(RSource.paper().matrix().to_float(q), fm.r_paper)
    assert close(RSource.solved().matrix().to_float(q), fm.r_solved)
    assert close([x.to_float(q) for x in q_singlet().vector], fm.singlet)
    jz = generator_matrix(Generator.JZ)
    assert close(dress(jz, Site.A, RSource.paper()).to_float(q), fm.dressed(fm.jz, "A"))


@settings(max_examples=15, deadline=None)
@given(st.floats(min_value=0.2, max_value=5.0), st.sampled_from(all_conventions()))
def test_joint_agrees(q, conv):
    fm = FloatModel(q)
    exact = dressed_joint(conv=conv).to_float(q)
    approx = fm.dressed_joint(str(conv.r_source), conv.bob_rule.value, conv.bra.value, conv.ordering.value, conv.born.value)
    assert np.max(np.abs(np.array(exact) - approx.ravel())) <= 1e-11


def test_naive_joint_values():
    fm = FloatModel(2.0)
    assert np.allclose(fm.naive_joint(), [[0, 0.8], [0.2, 0]], atol=TOL)
    assert close(naive_joint().to_float(2.0), fm.naive_joint().ravel())


def test_default_dressed_at_two():
    assert abs(FloatModel(2.0).dressed_joint()[0, 1] - 0.7) <= TOL
