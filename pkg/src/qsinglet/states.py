"""The invariant two-qubit state, derived as a kernel rather than typed in."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DimensionMismatch, UnexpectedKernelDimension
from .hopf import Generator, coproduct_matrix, total_casimir
from .linalg import TWO_SITE, Matrix, StateVector, kernel, left_kernel
from .scalar import FieldScalar

__all__ = [
    "QSinglet",
    "q_singlet",
    "dual_singlet",
    "bell_singlet",
    "invariance_residuals",
    "casimir_residual",
    "stacked_coproducts",
]

_GENERATORS = (Generator.JPLUS, Generator.JMINUS, Generator.JZ)


@dataclass(frozen=True)
class QSinglet:
    """Unnormalized invariant vector with its squared norm and dual covector.

    The normalization constant ``(1 + q^-2)^(-1/2)`` is not in the field, so
    probabilities divide by ``norm_squared`` instead.
    """

    vector: StateVector
    norm_squared: FieldScalar
    dual_covector: StateVector

    def evaluate(self, s0):
        return self.vector.evaluate(s0)


def stacked_coproducts() -> Matrix:
    """The 12x4 matrix ``[Delta(J+); Delta(J-); Delta(Jz)]``."""
    rows = []
    for g in _GENERATORS:
        m = coproduct_matrix(g)
        rows.extend(m.row(i) for i in range(m.rows))
    return Matrix(rows, TWO_SITE)


def _side_by_side() -> Matrix:
    mats = [coproduct_matrix(g) for g in _GENERATORS]
    return Matrix([sum((m.row(i) for m in mats), ()) for i in range(4)], TWO_SITE)


def _one_dim(vectors: list[StateVector], what: str) -> StateVector:
    if len(vectors) != 1:
        raise UnexpectedKernelDimension(f"{what} has dimension {len(vectors)}, expected 1")
    return vectors[0].normalized_to_first()


@lru_cache(maxsize=None)
def dual_singlet() -> StateVector:
    """Row vector ``u`` with ``u Delta(g) = 0`` for all three generators."""
    return _one_dim(left_kernel(_side_by_side()), "simultaneous left kernel")


@lru_cache(maxsize=None)
def q_singlet() -> QSinglet:
    """Kernel of the stacked coproduct matrices, scaled so its first nonzero entry is 1."""
    v = _one_dim(kernel(stacked_coproducts()), "singlet kernel")
    v = StateVector(v.entries, TWO_SITE)
    return QSinglet(v, v.norm_squared, dual_singlet())


def bell_singlet() -> StateVector:
    """The undeformed antisymmetric combination ``|updown> - |downup>``."""
    return StateVector([0, 1, -1, 0], TWO_SITE)


def _four(v) -> StateVector:
    if isinstance(v, QSinglet):
        v = v.vector
    if len(v) != 4:
        raise DimensionMismatch(f"expected a two-qubit vector, got length {len(v)}")
    return v


def invariance_residuals(v) -> dict[Generator, StateVector]:
    """``Delta(g) v`` for ``g`` in Jz, J+, J-."""
    v = _four(v)
    return {g: coproduct_matrix(g) @ v for g in (Generator.JZ, Generator.JPLUS, Generator.JMINUS)}


def casimir_residual(v) -> StateVector:
    return total_casimir() @ _four(v)
