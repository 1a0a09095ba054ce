"""R-matrices, the flip, R-matrix dressing of local operators, and the
consistency checks built on them (quasitriangularity, Yang-Baxter, adjoint
covariance of dressed operators).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .errors import NoSolution, SingularMatrix
from .hopf import Generator, coproduct_matrix, flip, generator_matrix, opposite_coproduct_matrix
from .linalg import SINGLE_SITE, TWO_SITE, Matrix, commutator, invert, kernel, kron, unit
from .scalar import ONE, Q, S, ZERO, FieldScalar

__all__ = [
    "RSource",
    "BobRule",
    "Site",
    "RSolution",
    "DEFAULT_SUPPORT",
    "r_paper",
    "flip",
    "r21",
    "dress",
    "covariance_check",
    "check_quasitriangularity",
    "solve_r",
    "check_yang_baxter",
]

LAMBDA = S - S**-1

#: six-vertex pattern, 1-based (row, col)
DEFAULT_SUPPORT = ((1, 1), (2, 2), (3, 3), (4, 4), (2, 3))


@lru_cache(maxsize=None)
def r_paper() -> Matrix:
    """``diag(s, 1, 1, s) + (s - s^-1) E_23`` in the ordered product basis."""
    return Matrix.diag([S, 1, 1, S], TWO_SITE) + unit(4, 2, 3, TWO_SITE) * LAMBDA


def r21(r: Matrix) -> Matrix:
    p = flip()
    return p @ r @ p


class BobRule(enum.Enum):
    """Which matrix conjugates ``1 x X`` for the second site."""

    R = "r"
    R21 = "r21"
    RINV = "rinv"

    def __str__(self):
        return self.value


class Site(enum.Enum):
    A = "A"
    B = "B"


@dataclass(frozen=True)
class RSource:
    """Where the 4x4 R-matrix comes from.

    ``kind`` is ``"paper"`` (the displayed six-vertex matrix with ``q**(1/2)``),
    ``"solved"`` (the intertwiner solved from the coproduct, scaled so the
    lower-right entry equals ``normalization``) or ``"custom"``.
    """

    kind: str = "paper"
    normalization: Optional[FieldScalar] = None
    custom: Optional[Matrix] = None

    @classmethod
    def paper(cls) -> "RSource":
        return cls("paper")

    @classmethod
    def solved(cls, normalization=None) -> "RSource":
        return cls("solved", FieldScalar.coerce(Q if normalization is None else normalization))

    @classmethod
    def from_matrix(cls, m: Matrix) -> "RSource":
        invert(m)
        return cls("custom", None, m.with_basis(TWO_SITE))

    def matrix(self) -> Matrix:
        if self.kind == "paper":
            return r_paper()
        if self.kind == "solved":
            return _solved_matrix(self.normalization)
        if self.kind == "custom":
            return self.custom
        raise ValueError(f"unknown R source {self.kind!r}")

    def __str__(self):
        return self.kind


@lru_cache(maxsize=None)
def _solved_matrix(normalization: FieldScalar) -> Matrix:
    sol = solve_r()
    m = sol.normalized
    corner = m[3, 3]
    return m * (normalization / corner)


@lru_cache(maxsize=None)
def _inverse(m: Matrix) -> Matrix:
    return invert(m)


def _as_r(r) -> Matrix:
    if r is None:
        return r_paper()
    if isinstance(r, RSource):
        return r.matrix()
    return r


def dress(x: Matrix, site: Site | str = Site.A, r: RSource | Matrix | None = None, bob_rule: BobRule | str = BobRule.R) -> Matrix:
    """Braided embedding of a single-site operator ``x``.

    Site A: ``R21 (x x 1) R21^-1``.  Site B: ``G (1 x x) G^-1`` with ``G``
    chosen by ``bob_rule`` among ``R``, ``R21`` and ``R^-1``.
    """
    site, bob_rule = Site(site), BobRule(bob_rule)
    rm = _as_r(r)
    one = Matrix.identity(2, SINGLE_SITE)
    if site is Site.A:
        g = r21(rm)
        return g @ kron(x, one) @ _inverse(g)
    g = {BobRule.R: rm, BobRule.R21: r21(rm), BobRule.RINV: _inverse(rm)}[bob_rule]
    return g @ kron(one, x) @ _inverse(g)


def covariance_check(r: RSource | Matrix | None = None, coproduct=coproduct_matrix) -> dict[str, Matrix]:
    """Residuals of the adjoint covariance of Alice's dressed ``Jz``.

    ``"Jplus"``: ``[Delta(J+), ~Jz] + ~J+``; ``"Jminus"``: ``[Delta(J-), ~Jz] - ~J-``.
    Both vanish exactly when the dressed operator transforms like the
    z-component of a vector operator.
    """
    jz_t = dress(generator_matrix(Generator.JZ), Site.A, r)
    jp_t = dress(generator_matrix(Generator.JPLUS), Site.A, r)
    jm_t = dress(generator_matrix(Generator.JMINUS), Site.A, r)
    return {
        "Jplus": commutator(coproduct(Generator.JPLUS), jz_t) + jp_t,
        "Jminus": commutator(coproduct(Generator.JMINUS), jz_t) - jm_t,
    }


def check_quasitriangularity(r: RSource | Matrix | None = None) -> dict[Generator, Matrix]:
    """``Delta_op(g) - R Delta(g) R^-1`` for ``g`` in Jz, J+, J-."""
    rm = _as_r(r)
    rinv = _inverse(rm)
    return {
        g: opposite_coproduct_matrix(g) - rm @ coproduct_matrix(g) @ rinv
        for g in (Generator.JZ, Generator.JPLUS, Generator.JMINUS)
    }


@dataclass(frozen=True)
class RSolution:
    """Solution space of the intertwiner equations on a fixed support.

    ``basis`` spans all R with ``R Delta(g) = Delta_op(g) R`` for the three
    generators; ``normalized`` is the representative used by
    ``RSource.solved`` when the space is one-dimensional.
    """

    support: tuple[tuple[int, int], ...]
    basis: tuple[Matrix, ...]
    normalized: Optional[Matrix]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def _intertwiner_system(support: tuple[tuple[int, int], ...]) -> Matrix:
    index = {(i - 1, j - 1): n for n, (i, j) in enumerate(support)}
    rows = []
    for g in (Generator.JZ, Generator.JPLUS, Generator.JMINUS):
        d, dop = coproduct_matrix(g), opposite_coproduct_matrix(g)
        for i in range(4):
            for k in range(4):
                row = [ZERO] * len(support)
                # (Dop R)_{ik} = sum_j Dop_ij R_jk
                for j in range(4):
                    n = index.get((j, k))
                    if n is not None:
                        row[n] = row[n] + dop[i, j]
                # (R D)_{ik} = sum_j R_ij D_jk
                for j in range(4):
                    n = index.get((i, j))
                    if n is not None:
                        row[n] = row[n] - d[j, k]
                if any(not x.is_zero() for x in row):
                    rows.append(row)
    return Matrix(rows) if rows else Matrix.zeros(1, len(support))


@lru_cache(maxsize=None)
def _solve_r_cached(support: tuple[tuple[int, int], ...]) -> RSolution:
    system = _intertwiner_system(support)
    vecs = kernel(system)
    basis = []
    for v in vecs:
        entries = [[ZERO] * 4 for _ in range(4)]
        for (i, j), x in zip(support, v):
            entries[i - 1][j - 1] = x
        basis.append(Matrix(entries, TWO_SITE))
    if not basis:
        raise NoSolution(f"no nonzero intertwiner supported on {list(support)}")
    generic = basis[0]
    for n, b in enumerate(basis[1:], start=2):
        generic = generic + b * n
    try:
        invert(generic)
    except SingularMatrix:
        raise NoSolution(f"every intertwiner supported on {list(support)} is singular") from None
    normalized = None
    if len(basis) == 1:
        m = basis[0]
        pivot = m[3, 3] if not m[3, 3].is_zero() else next(x for _, _, x in m.entries() if not x.is_zero())
        target = Q if not m[3, 3].is_zero() else ONE
        normalized = m * (target / pivot)
    return RSolution(support, tuple(basis), normalized)


def solve_r(support: Optional[Iterable[tuple[int, int]]] = None) -> RSolution:
    """Solve ``R Delta(g) R^-1 = Delta_op(g)`` for R supported on ``support``.

    ``support`` holds 1-based ``(row, col)`` positions of the free entries and
    defaults to the six-vertex pattern.  The equations are linear in the
    entries, so the solution set is the kernel of an exact linear system.
    Raises :class:`NoSolution` when no invertible solution exists.
    """
    sup = DEFAULT_SUPPORT if support is None else tuple(sorted(set(tuple(p) for p in support)))
    for i, j in sup:
        if not (1 <= i <= 4 and 1 <= j <= 4):
            raise ValueError(f"support position {(i, j)} outside a 4x4 matrix")
    return _solve_r_cached(sup)


def check_yang_baxter(r: RSource | Matrix | None = None) -> Matrix:
    """``R12 R13 R23 - R23 R13 R12`` on three spin-1/2 sites (8x8)."""
    rm = _as_r(r)
    one = Matrix.identity(2, SINGLE_SITE)
    r12 = kron(rm, one)
    r23 = kron(one, rm)
    p23 = kron(one, flip())
    r13 = p23 @ r12 @ p23
    return r12 @ r13 @ r23 - r23 @ r13 @ r12
