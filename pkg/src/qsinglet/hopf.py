"""Spin-1/2 representation of the deformed su(2) algebra and its coproduct.

Single-site basis is ``(up, down)``; two-site basis is the ordered product
basis ``(upup, updown, downup, downdown)``.  The Cartan factors ``q**(+-Jz)``
are the exact diagonal matrices ``diag(s**+-1, s**-+1)``.

The coproduct used throughout is::

    Delta(Jz) = Jz x 1 + 1 x Jz
    Delta(J+) = J+ x K + Kinv x J+
    Delta(J-) = J- x K + Kinv x J-
    Delta(K)  = K x K

Every two-site matrix is assembled from these formulas with :func:`kron`.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from functools import lru_cache

from .linalg import SINGLE_SITE, TWO_SITE, Matrix, commutator, kron
from .scalar import S, FieldScalar

__all__ = [
    "Generator",
    "SINGLE_BASIS",
    "PAIR_BASIS",
    "generator_matrix",
    "coproduct_matrix",
    "opposite_coproduct_matrix",
    "inline_coproduct_matrix",
    "flip",
    "total_casimir",
    "verify_algebra_relations",
]

SINGLE_BASIS = ("up", "down")
PAIR_BASIS = ("upup", "updown", "downup", "downdown")

HALF = Fraction(1, 2)


class Generator(enum.Enum):
    JZ = "Jz"
    JPLUS = "Jplus"
    JMINUS = "Jminus"
    K = "K"
    KINV = "Kinv"

    def __str__(self):
        return self.value


@lru_cache(maxsize=None)
def generator_matrix(g: Generator) -> Matrix:
    """2x2 matrix of ``g`` in the basis ``(up, down)``."""
    g = Generator(g)
    if g is Generator.JZ:
        return Matrix.diag([HALF, -HALF], SINGLE_SITE)
    if g is Generator.JPLUS:
        return Matrix([[0, 1], [0, 0]], SINGLE_SITE)
    if g is Generator.JMINUS:
        return Matrix([[0, 0], [1, 0]], SINGLE_SITE)
    if g is Generator.K:
        return Matrix.diag([S, S**-1], SINGLE_SITE)
    return Matrix.diag([S**-1, S], SINGLE_SITE)


def _one() -> Matrix:
    return Matrix.identity(2, SINGLE_SITE)


@lru_cache(maxsize=None)
def coproduct_matrix(g: Generator) -> Matrix:
    """4x4 matrix of ``(rho x rho)(Delta(g))`` in the ordered product basis."""
    g = Generator(g)
    one = _one()
    k, kinv = generator_matrix(Generator.K), generator_matrix(Generator.KINV)
    x = generator_matrix(g)
    if g is Generator.JZ:
        return kron(x, one) + kron(one, x)
    if g in (Generator.JPLUS, Generator.JMINUS):
        return kron(x, k) + kron(kinv, x)
    return kron(x, x)


@lru_cache(maxsize=None)
def inline_coproduct_matrix(g: Generator) -> Matrix:
    """Two-site lowering action with the Cartan factors swapped.

    ``J- x Kinv + K x J-``, the action for which
    ``Delta(J-)|updown> = q^(1/2)|downdown>`` and
    ``Delta(J-)|downup> = q^(-1/2)|downdown>`` hold.  Kept only so the audit
    can compare it against :func:`coproduct_matrix`.
    """
    g = Generator(g)
    if g is not Generator.JMINUS:
        return coproduct_matrix(g)
    k, kinv = generator_matrix(Generator.K), generator_matrix(Generator.KINV)
    x = generator_matrix(g)
    return kron(x, kinv) + kron(k, x)


@lru_cache(maxsize=None)
def flip() -> Matrix:
    """Tensor flip ``P(v x w) = w x v``."""
    return Matrix([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], TWO_SITE)


@lru_cache(maxsize=None)
def opposite_coproduct_matrix(g: Generator) -> Matrix:
    p = flip()
    return p @ coproduct_matrix(g) @ p


@lru_cache(maxsize=None)
def total_casimir() -> Matrix:
    """``(Delta Jz)^2 + (Delta J+ Delta J- + Delta J- Delta J+) / 2``."""
    jz = coproduct_matrix(Generator.JZ)
    jp = coproduct_matrix(Generator.JPLUS)
    jm = coproduct_matrix(Generator.JMINUS)
    return jz @ jz + (jp @ jm + jm @ jp) * HALF


def q_bracket_cartan(k: Matrix, kinv: Matrix) -> Matrix:
    """``(K^2 - Kinv^2) / (s^2 - s^-2)``, the deformed right-hand side of ``[J+, J-]``."""
    return (k @ k - kinv @ kinv) / (S**2 - S**-2)


def verify_algebra_relations() -> dict[str, Matrix]:
    """Residual matrices of the defining relations on a single spin-1/2 site.

    All entries of the returned dict are exactly zero.
    """
    jz = generator_matrix(Generator.JZ)
    jp = generator_matrix(Generator.JPLUS)
    jm = generator_matrix(Generator.JMINUS)
    k = generator_matrix(Generator.K)
    kinv = generator_matrix(Generator.KINV)
    return {
        "[Jz,J+] - J+": commutator(jz, jp) - jp,
        "[Jz,J-] + J-": commutator(jz, jm) + jm,
        "[J+,J-] - (K^2 - Kinv^2)/(q - q^-1)": commutator(jp, jm) - q_bracket_cartan(k, kinv),
        "[J+,J-] - 2 Jz": commutator(jp, jm) - jz * FieldScalar(2),
        "K Kinv - 1": k @ kinv - _one(),
    }
