from fractions import Fraction

import pytest
import sympy as sp

from qsinglet.hopf import (
    Generator,
    coproduct_matrix,
    flip,
    generator_matrix,
    inline_coproduct_matrix,
    opposite_coproduct_matrix,
    total_casimir,
    verify_algebra_relations,
)
from qsinglet.linalg import SINGLE_SITE, TWO_SITE, Matrix, charpoly, commutator, kron
from qsinglet.scalar import Q, S

import oracle

H = Fraction(1, 2)
I2 = Matrix.identity(2, SINGLE_SITE)
I4 = Matrix.identity(4, TWO_SITE)
ALL = list(Generator)


def test_single_site_generators():
    assert generator_matrix(Generator.JZ) == Matrix.diag([H, -H])
    assert generator_matrix(Generator.K) @ generator_matrix(Generator.KINV) == I2
    assert (generator_matrix(Generator.JPLUS) @ generator_matrix(Generator.JPLUS)).is_zero()
    assert generator_matrix(Generator.JPLUS)[0, 1] == 1
    assert generator_matrix(Generator.JMINUS)[1, 0] == 1
    assert generator_matrix(Generator.K) == Matrix.diag([S, S**-1])


def test_coproduct_examples():
    assert coproduct_matrix(Generator.JZ) == Matrix.diag([1, 0, 0, -1])
    dp = coproduct_matrix(Generator.JPLUS)
    assert dp[0, 1] == S**-1 and dp[0, 2] == S
    dm = coproduct_matrix(Generator.JMINUS)
    assert dm[3, 1] == S**-1 and dm[3, 2] == S


def test_inline_lowering_variant_swaps_factors():
    dm = inline_coproduct_matrix(Generator.JMINUS)
    assert dm[3, 1] == S and dm[3, 2] == S**-1
    assert inline_coproduct_matrix(Generator.JPLUS) == coproduct_matrix(Generator.JPLUS)


@pytest.mark.parametrize("g", ALL)
def test_coproducts_match_sympy(g):
    sym = {
        Generator.JZ: oracle.d_jz,
        Generator.JPLUS: oracle.d_jp,
        Generator.JMINUS: oracle.d_jm,
        Generator.K: oracle.kron(oracle.k, oracle.k),
        Generator.KINV: oracle.kron(oracle.kinv, oracle.kinv),
    }[g]
    assert oracle.is_zero(oracle.to_sympy(coproduct_matrix(g)) - sym)


def test_opposite_coproduct_examples():
    assert opposite_coproduct_matrix(Generator.JZ) == Matrix.diag([1, 0, 0, -1])
    op = opposite_coproduct_matrix(Generator.JPLUS)
    assert op[0, 1] == S and op[0, 2] == S**-1
    for g in ALL:
        assert opposite_coproduct_matrix(g).evaluate(1) == coproduct_matrix(g).evaluate(1)
        assert opposite_coproduct_matrix(g) == flip() @ coproduct_matrix(g) @ flip()


def test_casimir_examples():
    c = total_casimir()
    assert (c @ oracle_singlet()).is_zero()
    at_one = sp.Matrix(c.evaluate(1))
    assert sorted(at_one.eigenvals(multiple=True)) == [0, 2, 2, 2]
    assert commutator(c, coproduct_matrix(Generator.JZ)).is_zero()


def oracle_singlet():
    from qsinglet.linalg import StateVector

    return StateVector([0, 1, -(Q**-1), 0], TWO_SITE)


def test_algebra_relations():
    rel = verify_algebra_relations()
    assert set(rel) >= {"[Jz,J+] - J+", "[J+,J-] - 2 Jz"}
    for m in rel.values():
        assert m.is_zero()
        assert all(x == 0 for row in m.evaluate(Fraction(7, 3)) for x in row)


def test_coproduct_is_algebra_map():
    dk = coproduct_matrix(Generator.K)
    dki = coproduct_matrix(Generator.KINV)
    assert dk @ dki == I4
    assert coproduct_matrix(Generator.JZ) == kron(generator_matrix(Generator.JZ), I2) + kron(I2, generator_matrix(Generator.JZ))
    lhs = commutator(coproduct_matrix(Generator.JPLUS), coproduct_matrix(Generator.JMINUS))
    rhs = (dk @ dk - dki @ dki) / (S**2 - S**-2)
    assert lhs == rhs


def test_casimir_spectrum_invariant_under_flip():
    c = total_casimir()
    assert charpoly(flip() @ c @ flip()) == charpoly(c)
