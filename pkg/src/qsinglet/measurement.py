"""Local spin measurements on the invariant state.

Two families of observables are compared: the naive tensor-factor
embeddings ``Jz x 1`` / ``1 x Jz`` and their R-matrix dressed versions.  The
dressed projectors are neither self-adjoint nor mutually commuting once
``q != 1``, so a joint "probability" depends on choices that the naive case
never has to make.  :class:`Convention` records all of them, and every
quantity is computed exactly in the rational-function field.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from .braiding import BobRule, RSource, Site, dress
from .errors import DegeneratePairing, DimensionMismatch, NotInvolutory
from .hopf import Generator, generator_matrix
from .linalg import SINGLE_SITE, Matrix, StateVector, kernel, kron
from .scalar import ONE, ZERO, FieldScalar
from .states import QSinglet, q_singlet

__all__ = [
    "BraChoice",
    "Ordering",
    "BornRule",
    "Convention",
    "JointDistribution",
    "MarginalReport",
    "MetricSpace",
    "SAMPLE_Q",
    "OUTCOMES",
    "spectral_projectors",
    "naive_observables",
    "dressed_observables",
    "naive_joint",
    "dressed_joint",
    "marginals",
    "expectation",
    "hermitizing_metric",
    "standard_conventions",
    "all_conventions",
]

#: sample points for the quasi-probability flag and metric positivity
SAMPLE_Q = (Fraction(1, 2), Fraction(2, 3), Fraction(3, 2), Fraction(2))

#: outcome labels in the order used for the 2x2 tables: +1/2 first
OUTCOMES = (1, -1)

HALF = Fraction(1, 2)


class BraChoice(enum.Enum):
    STATE = "state"
    DUAL = "dual"

    def __str__(self):
        return self.value


class Ordering(enum.Enum):
    """Which projector hits the ket first: Bob then Alice is ``Pi_A (Pi_B v)``."""

    BOB_THEN_ALICE = "ba"
    ALICE_THEN_BOB = "ab"

    def __str__(self):
        return self.value


class BornRule(enum.Enum):
    SANDWICH = "sandwich"
    NORM = "norm"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Convention:
    """Every choice needed to turn dressed projectors into outcome weights.

    The default reproduces the literal recipe ``w = Pi_A+ (Pi_B- v)``,
    ``p = <v, w> / <v, v>`` with the displayed R-matrix and Bob's operator
    conjugated by R.  Under ``BornRule.NORM`` the bra choice is irrelevant.
    """

    r_source: RSource = field(default_factory=RSource.paper)
    bob_rule: BobRule = BobRule.R
    bra: BraChoice = BraChoice.STATE
    ordering: Ordering = Ordering.BOB_THEN_ALICE
    born: BornRule = BornRule.SANDWICH

    def __post_init__(self):
        object.__setattr__(self, "bob_rule", BobRule(self.bob_rule))
        object.__setattr__(self, "bra", BraChoice(self.bra))
        object.__setattr__(self, "ordering", Ordering(self.ordering))
        object.__setattr__(self, "born", BornRule(self.born))
        if isinstance(self.r_source, str):
            object.__setattr__(self, "r_source", _r_source_from_name(self.r_source))

    @property
    def key(self) -> str:
        return f"r={self.r_source},bob={self.bob_rule},bra={self.bra},ord={self.ordering},born={self.born}"

    @classmethod
    def from_key(cls, key: str) -> "Convention":
        """Inverse of :attr:`key`; missing fields take their defaults."""
        names = {"r": "r_source", "bob": "bob_rule", "bra": "bra", "ord": "ordering", "born": "born"}
        kwargs = {}
        for part in filter(None, (p.strip() for p in key.split(","))):
            name, _, value = part.partition("=")
            if name not in names or not value:
                raise ValueError(f"bad convention field {part!r}")
            kwargs[names[name]] = value
        return cls(**kwargs)

    def __str__(self):
        return self.key


def _r_source_from_name(name: str) -> RSource:
    if name == "paper":
        return RSource.paper()
    if name == "solved":
        return RSource.solved()
    raise ValueError(f"unknown R source {name!r}; expected 'paper' or 'solved'")


def standard_conventions(r_source: Optional[RSource] = None, bob_rule: BobRule = BobRule.R) -> list[Convention]:
    """The four sandwich variants (bra x ordering) plus the norm rule in both orderings."""
    r_source = r_source or RSource.paper()
    out = [
        Convention(r_source, bob_rule, bra, order, BornRule.SANDWICH)
        for bra in BraChoice
        for order in Ordering
    ]
    out += [Convention(r_source, bob_rule, BraChoice.STATE, order, BornRule.NORM) for order in Ordering]
    return out


def all_conventions() -> list[Convention]:
    """Full product of R sources, Bob rules, bras, orderings and Born rules."""
    return [
        Convention(r, b, bra, o, born)
        for r, b, bra, o, born in itertools.product(
            (RSource.paper(), RSource.solved()), BobRule, BraChoice, Ordering, BornRule
        )
    ]


# ---------------------------------------------------------------------------
# observables and projectors
# ---------------------------------------------------------------------------

def spectral_projectors(j: Matrix) -> tuple[Matrix, Matrix]:
    """``(Pi_+, Pi_-) = (1/2 + J, 1/2 - J)`` for an observable with ``J^2 = 1/4``.

    Raises :class:`NotInvolutory` if ``J @ J`` is not a quarter of the identity.
    """
    if not j.is_square():
        raise DimensionMismatch(f"observable must be square, got {j.shape}")
    ident = Matrix.identity(j.rows, j.basis)
    if j @ j != ident * HALF * HALF:
        raise NotInvolutory("observable does not square to 1/4")
    return ident * HALF + j, ident * HALF - j


def naive_observables() -> tuple[Matrix, Matrix]:
    """``(Jz x 1, 1 x Jz)``."""
    one = Matrix.identity(2, SINGLE_SITE)
    jz = generator_matrix(Generator.JZ)
    return kron(jz, one), kron(one, jz)


@lru_cache(maxsize=None)
def dressed_observables(r_source: RSource = RSource.paper(), bob_rule: BobRule = BobRule.R) -> tuple[Matrix, Matrix]:
    jz = generator_matrix(Generator.JZ)
    return dress(jz, Site.A, r_source), dress(jz, Site.B, r_source, bob_rule)


@lru_cache(maxsize=None)
def _dressed_projectors(r_source: RSource, bob_rule: BobRule):
    a, b = dressed_observables(r_source, bob_rule)
    return spectral_projectors(a), spectral_projectors(b)


# ---------------------------------------------------------------------------
# distributions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JointDistribution:
    """Outcome weights ``p[a][b]`` for Alice ``a`` and Bob ``b``, ``+1/2`` first.

    ``quasi_probability`` is set when some entry is negative at one of the
    sample points in :data:`SAMPLE_Q`.  Entries are never clamped.
    """

    p: tuple[tuple[FieldScalar, FieldScalar], tuple[FieldScalar, FieldScalar]]
    convention: Optional[Convention] = None
    quasi_probability: bool = False

    def __getitem__(self, outcome) -> FieldScalar:
        a, b = outcome
        return self.p[_idx(a)][_idx(b)]

    def flat(self) -> tuple[FieldScalar, ...]:
        """``(p(+,+), p(+,-), p(-,+), p(-,-))``."""
        return self.p[0] + self.p[1]

    def total(self) -> FieldScalar:
        acc = ZERO
        for x in self.flat():
            acc = acc + x
        return acc

    def evaluate(self, s0) -> list[Fraction]:
        return [x.evaluate(s0) for x in self.flat()]

    def to_float(self, q: float) -> list[float]:
        return [x.to_float(q) for x in self.flat()]


def _idx(outcome) -> int:
    if outcome in (1, "+", "+1/2", HALF):
        return 0
    if outcome in (-1, "-", "-1/2", -HALF):
        return 1
    raise KeyError(f"unknown outcome {outcome!r}")


@dataclass(frozen=True)
class MarginalReport:
    p_alice_plus: FieldScalar
    p_alice_minus: FieldScalar
    p_bob_plus: FieldScalar
    p_bob_minus: FieldScalar

    @property
    def bias(self) -> FieldScalar:
        """Alice's ``P(+1/2) - P(-1/2)``."""
        return self.p_alice_plus - self.p_alice_minus

    @property
    def bob_bias(self) -> FieldScalar:
        return self.p_bob_plus - self.p_bob_minus


def _any_negative(values: Iterable[FieldScalar], samples: Sequence = SAMPLE_Q) -> bool:
    for q in samples:
        for x in values:
            if x.to_float(float(q)) < -1e-12:
                return True
    return False


def _state(state) -> QSinglet:
    return q_singlet() if state is None else state


def naive_joint(state: Optional[QSinglet] = None) -> JointDistribution:
    """``p(a, b) = <a b|psi>^2 / <psi|psi>`` in the product eigenbasis."""
    st = _state(state)
    v = st.vector
    n2 = st.norm_squared
    vals = [x * x / n2 for x in v.entries]
    p = ((vals[0], vals[1]), (vals[2], vals[3]))
    return JointDistribution(p, None, _any_negative(vals))


def dressed_joint(state: Optional[QSinglet] = None, conv: Optional[Convention] = None) -> JointDistribution:
    """Joint outcome weights for the dressed observables under ``conv``."""
    st = _state(state)
    conv = conv or Convention()
    (a_plus, a_minus), (b_plus, b_minus) = _dressed_projectors(conv.r_source, conv.bob_rule)
    pa = {1: a_plus, -1: a_minus}
    pb = {1: b_plus, -1: b_minus}
    v = st.vector
    if conv.born is BornRule.SANDWICH:
        bra = v if conv.bra is BraChoice.STATE else st.dual_covector
        pairing = bra.dot(v)
        if pairing.is_zero():
            raise DegeneratePairing("bra and ket pair to zero")
    table = []
    for a in OUTCOMES:
        row = []
        for b in OUTCOMES:
            if conv.ordering is Ordering.BOB_THEN_ALICE:
                w = pa[a] @ (pb[b] @ v)
            else:
                w = pb[b] @ (pa[a] @ v)
            if conv.born is BornRule.SANDWICH:
                row.append(bra.dot(w) / pairing)
            else:
                row.append(w.norm_squared / st.norm_squared)
        table.append(tuple(row))
    p = (table[0], table[1])
    flat = table[0] + table[1]
    return JointDistribution(p, conv, _any_negative(flat))


def marginals(jd: JointDistribution) -> MarginalReport:
    return MarginalReport(
        p_alice_plus=jd[1, 1] + jd[1, -1],
        p_alice_minus=jd[-1, 1] + jd[-1, -1],
        p_bob_plus=jd[1, 1] + jd[-1, 1],
        p_bob_minus=jd[1, -1] + jd[-1, -1],
    )


def expectation(op: Matrix, state: Optional[QSinglet] = None, bra: BraChoice = BraChoice.STATE) -> FieldScalar:
    """``<bra|op|psi> / <bra|psi>``; raises :class:`DegeneratePairing` if the pairing is 0."""
    st = _state(state)
    b = st.vector if BraChoice(bra) is BraChoice.STATE else st.dual_covector
    pairing = b.dot(st.vector)
    if pairing.is_zero():
        raise DegeneratePairing("bra and ket pair to zero")
    return b.dot(op @ st.vector) / pairing


# ---------------------------------------------------------------------------
# metric search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MetricSpace:
    """Symmetric ``M`` with ``M X = X^T M`` for every supplied ``X``.

    ``positivity`` maps each sampled ``q`` to whether some member of the
    space is positive definite there (found numerically by maximizing the
    smallest eigenvalue over unit coefficient vectors).
    """

    dimension: int
    basis: tuple[Matrix, ...]
    positivity: dict

    def member(self, coeffs: Sequence) -> Matrix:
        if len(coeffs) != self.dimension:
            raise DimensionMismatch("one coefficient per basis element")
        out = self.basis[0] * coeffs[0]
        for c, b in zip(coeffs[1:], self.basis[1:]):
            out = out + b * c
        return out


def _sym_index(n: int) -> dict[tuple[int, int], int]:
    idx, k = {}, 0
    for i in range(n):
        for j in range(i, n):
            idx[(i, j)] = idx[(j, i)] = k
            k += 1
    return idx


def _max_min_eig(mats: list[np.ndarray]) -> float:
    from scipy.optimize import minimize

    k = len(mats)

    def neg_min_eig(c):
        nrm = np.linalg.norm(c)
        if nrm == 0:
            return 0.0
        m = sum(ci * mi for ci, mi in zip(c, mats)) / nrm
        return -float(np.linalg.eigvalsh(m)[0])

    starts = [np.eye(k)[i] for i in range(k)] + [np.ones(k)]
    best = -np.inf
    for x0 in starts:
        res = minimize(neg_min_eig, x0, method="Nelder-Mead", options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 4000})
        best = max(best, -res.fun, -neg_min_eig(x0))
    return best


def hermitizing_metric(ops: Sequence[Matrix], samples: Sequence = SAMPLE_Q) -> MetricSpace:
    """Space of symmetric metrics making every operator in ``ops`` self-adjoint."""
    if not ops:
        raise ValueError("need at least one operator")
    n = ops[0].rows
    for x in ops:
        if x.shape != (n, n):
            raise DimensionMismatch("operators must be square and of equal size")
    idx = _sym_index(n)
    nvar = n * (n + 1) // 2
    rows = []
    for x in ops:
        for i in range(n):
            for k in range(n):
                row = [ZERO] * nvar
                for j in range(n):
                    # (M X)_ik - (X^T M)_ik = sum_j M_ij X_jk - X_ji M_jk
                    row[idx[(i, j)]] = row[idx[(i, j)]] + x[j, k]
                    row[idx[(j, k)]] = row[idx[(j, k)]] - x[j, i]
                if any(not c.is_zero() for c in row):
                    rows.append(row)
    if rows:
        vecs = kernel(Matrix(rows))
    else:
        vecs = [StateVector([ONE if t == u else ZERO for u in range(nvar)]) for t in range(nvar)]
    basis = []
    for v in vecs:
        basis.append(Matrix([[v[idx[(i, j)]] for j in range(n)] for i in range(n)], ops[0].basis))
    positivity = {}
    for q in samples:
        if not basis:
            positivity[Fraction(q)] = False
            continue
        mats = [b.to_float(float(q)) for b in basis]
        positivity[Fraction(q)] = bool(_max_min_eig(mats) > 1e-9)
    return MetricSpace(len(basis), tuple(basis), positivity)
