"""Claim registry, verification runner, q-sweeps and report rendering.

Each registered claim computes an exact residual (a scalar, vector, matrix
or list of them).  The verdict follows from the residual alone:

``CONFIRMED``
    residual is exactly zero in the rational-function field;
``Q1_ONLY``
    nonzero, but every entry vanishes at ``q = 1``;
``REFUTED_UNDER_CONVENTION``
    nonzero under the convention used.  Claims about measurement statistics
    always land here when nonzero, because another convention might still
    reproduce them;
``CONVENTION_DEPENDENT``
    assigned by :func:`run_all` to a non-confirmed result when the same
    claim is confirmed under some other requested convention.

A refuted claim is data, not an error.
"""
from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import __version__
from .braiding import (
    check_quasitriangularity,
    check_yang_baxter,
    covariance_check,
    r21,
    r_paper,
    solve_r,
)
from .errors import NonpositiveParameter, PoleAtPoint, UnknownClaim, UnsupportedFormat
from .hopf import Generator, coproduct_matrix, flip, generator_matrix, inline_coproduct_matrix, verify_algebra_relations
from .linalg import TWO_SITE, Matrix, StateVector, invert, kernel, kron
from .measurement import (
    Convention,
    dressed_joint,
    dressed_observables,
    expectation,
    hermitizing_metric,
    marginals,
    naive_joint,
    naive_observables,
    spectral_projectors,
)
from .scalar import ONE, Q, S, ZERO, FieldScalar, rational_sqrt, to_float
from .states import bell_singlet, casimir_residual, invariance_residuals, q_singlet, stacked_coproducts

__all__ = [
    "Verdict",
    "Claim",
    "ClaimResult",
    "AuditReport",
    "SweepRow",
    "CLAIMS",
    "claim_ids",
    "run_claim",
    "run_all",
    "sweep",
    "render",
    "render_sweep",
    "SCHEMA_VERSION",
]

SCHEMA_VERSION = 1


class Verdict:
    CONFIRMED = "CONFIRMED"
    REFUTED_UNDER_CONVENTION = "REFUTED_UNDER_CONVENTION"
    CONVENTION_DEPENDENT = "CONVENTION_DEPENDENT"
    Q1_ONLY = "Q1_ONLY"


LAMBDA = S - S**-1
HALF = FieldScalar(Fraction(1, 2))


@dataclass(frozen=True)
class Claim:
    claim_id: str
    ref: tuple[str, str]
    statement: str
    check: Callable[[Convention], tuple[object, object, object]]
    statistical: bool = False
    note: str = ""


@dataclass(frozen=True)
class ClaimResult:
    claim_id: str
    ref: tuple[str, str]
    statement: str
    convention: str
    expected: str
    computed: str
    residual: str
    verdict: str
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "claimId": self.claim_id,
            "ref": {"label": self.ref[0], "anchor": self.ref[1]},
            "statement": self.statement,
            "convention": self.convention,
            "expected": self.expected,
            "computed": self.computed,
            "residual": self.residual,
            "verdict": self.verdict,
            "note": self.note,
        }


@dataclass
class AuditReport:
    claims: list[ClaimResult]
    conventions: list[Convention]
    tool_version: str = __version__
    elapsed: float = 0.0
    notes: list[str] = field(default_factory=list)

    def by_id(self, claim_id: str) -> list[ClaimResult]:
        return [c for c in self.claims if c.claim_id == claim_id]

    def verdicts(self) -> dict[tuple[str, str], str]:
        return {(c.claim_id, c.convention): c.verdict for c in self.claims}


# ---------------------------------------------------------------------------
# residual helpers
# ---------------------------------------------------------------------------

def _scalars(obj) -> list[FieldScalar]:
    if isinstance(obj, FieldScalar):
        return [obj]
    if isinstance(obj, Matrix):
        return [x for _, _, x in obj.entries()]
    if isinstance(obj, StateVector):
        return list(obj.entries)
    if isinstance(obj, dict):
        return [x for v in obj.values() for x in _scalars(v)]
    if isinstance(obj, (list, tuple)):
        return [x for v in obj for x in _scalars(v)]
    return [FieldScalar.coerce(obj)]


def _is_zero(obj) -> bool:
    return all(x.is_zero() for x in _scalars(obj))


def _zero_at_q1(obj) -> bool:
    try:
        return all(x.evaluate(1) == 0 for x in _scalars(obj))
    except PoleAtPoint:
        return False


def _fmt(obj) -> str:
    """Deterministic text for scalars, vectors, matrices and containers (q-notation)."""
    if isinstance(obj, str):
        return obj
    if isinstance(obj, FieldScalar):
        return obj.to_q_string()
    if isinstance(obj, Matrix):
        return "[" + "; ".join(", ".join(x.to_q_string() for x in obj.row(i)) for i in range(obj.rows)) + "]"
    if isinstance(obj, StateVector):
        return "(" + ", ".join(x.to_q_string() for x in obj.entries) + ")"
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{k}: {_fmt(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in obj) + "]"
    return str(obj)


def _fmt_residual(obj) -> str:
    return "0" if _is_zero(obj) else _fmt(obj)


def _verdict(residual, statistical: bool) -> str:
    if _is_zero(residual):
        return Verdict.CONFIRMED
    if statistical:
        return Verdict.REFUTED_UNDER_CONVENTION
    if _zero_at_q1(residual):
        return Verdict.Q1_ONLY
    return Verdict.REFUTED_UNDER_CONVENTION


# ---------------------------------------------------------------------------
# displayed matrices used as expectations
# ---------------------------------------------------------------------------

def _m(rows) -> Matrix:
    return Matrix(rows, TWO_SITE)


H = Fraction(1, 2)
DISPLAYED = {
    "R21": _m([[S, 0, 0, 0], [0, 1, 0, 0], [0, LAMBDA, 1, 0], [0, 0, 0, S]]),
    "R21inv": _m([[S**-1, 0, 0, 0], [0, 1, 0, 0], [0, -LAMBDA, 1, 0], [0, 0, 0, S**-1]]),
    "JzA": _m([[H, 0, 0, 0], [0, H, 0, 0], [0, LAMBDA, -H, 0], [0, 0, 0, -H]]),
    "JzB": _m([[H, 0, 0, 0], [0, -H, LAMBDA, 0], [0, 0, H, 0], [0, 0, 0, -H]]),
    "PiA+": _m([[1, 0, 0, 0], [0, 1, 0, 0], [0, LAMBDA, 0, 0], [0, 0, 0, 0]]),
    "PiA-": _m([[0, 0, 0, 0], [0, 0, 0, 0], [0, -LAMBDA, 1, 0], [0, 0, 0, 1]]),
    "PiB+": _m([[1, 0, 0, 0], [0, 0, LAMBDA, 0], [0, 0, 1, 0], [0, 0, 0, 0]]),
    "PiB-": _m([[0, 0, 0, 0], [0, 1, -LAMBDA, 0], [0, 0, 0, 0], [0, 0, 0, 1]]),
}


def _e(i: int) -> StateVector:
    return StateVector([ONE if k == i else ZERO for k in range(4)], TWO_SITE)


# ---------------------------------------------------------------------------
# claim checks: each returns (expected, computed, residual)
# ---------------------------------------------------------------------------

def _c_alg_cartan(conv):
    rel = verify_algebra_relations()
    res = [rel["[Jz,J+] - J+"], rel["[Jz,J-] + J-"]]
    return "[Jz,J+] = J+, [Jz,J-] = -J-", "residual matrices", res


def _c_alg_deformed(conv):
    res = verify_algebra_relations()["[J+,J-] - (K^2 - Kinv^2)/(q - q^-1)"]
    return "[J+,J-] = (q^(2Jz) - q^(-2Jz))/(q - q^-1)", _fmt(generator_matrix(Generator.JPLUS) @ generator_matrix(Generator.JMINUS) - generator_matrix(Generator.JMINUS) @ generator_matrix(Generator.JPLUS)), res


def _c_alg_undeformed(conv):
    res = verify_algebra_relations()["[J+,J-] - 2 Jz"]
    return "[J+,J-] = 2 Jz on spin 1/2", "[1, 0; 0, -1]", res


def _c_copro_jz(conv):
    d = coproduct_matrix(Generator.JZ)
    res = [d @ _e(1), d @ _e(2)]
    return "Delta(Jz)|updown> = Delta(Jz)|downup> = 0", _fmt(res), res


def _c_copro_jplus(conv):
    d = coproduct_matrix(Generator.JPLUS)
    got = [d @ _e(1), d @ _e(2)]
    want = [_e(0).scaled(S**-1), _e(0).scaled(S)]
    return _fmt(want), _fmt(got), [g - w for g, w in zip(got, want)]


def _c_copro_jminus(conv):
    d = coproduct_matrix(Generator.JMINUS)
    got = [d @ _e(1), d @ _e(2)]
    want = [_e(3).scaled(S), _e(3).scaled(S**-1)]
    return _fmt(want), _fmt(got), [g - w for g, w in zip(got, want)]


def _c_singlet(conv):
    want = StateVector([0, 1, -(Q**-1), 0], TWO_SITE)
    ker = kernel(stacked_coproducts())
    if len(ker) != 1:
        return _fmt(want), f"kernel of dimension {len(ker)}", [ONE]
    got = ker[0].normalized_to_first()
    return _fmt(want), _fmt(got), got - want


def _c_singlet_norm(conv):
    st = q_singlet()
    want = Q**2 / (1 + Q**2)
    got = ONE / st.norm_squared
    return _fmt(want), _fmt(got), got - want


def _c_bell_q1(conv):
    res = invariance_residuals(bell_singlet())
    return "annihilated by Delta(J+-) only when q = 1", _fmt(res), res


def _c_inline_lowering(conv):
    v = q_singlet().vector
    ann = inline_coproduct_matrix(Generator.JMINUS) @ v
    return "swapped-factor Delta(J-) annihilates the singlet", _fmt(ann), ann


def _c_casimir(conv):
    res = casimir_residual(q_singlet())
    return "0", _fmt(res), res


def _c_local_jz(conv):
    a, _ = naive_observables()
    want = Matrix.diag([H, H, -H, -H], TWO_SITE)
    return _fmt(want), _fmt(a), a - want


def _c_flip(conv):
    p = flip()
    want = [_e(0), _e(2), _e(1), _e(3)]
    got = [p @ _e(i) for i in range(4)]
    return _fmt(want), _fmt(got), [g - w for g, w in zip(got, want)]


def _c_r21(conv):
    got = r21(r_paper())
    return _fmt(DISPLAYED["R21"]), _fmt(got), got - DISPLAYED["R21"]


def _c_r21_inv(conv):
    got = invert(r21(r_paper()))
    return _fmt(DISPLAYED["R21inv"]), _fmt(got), got - DISPLAYED["R21inv"]


def _c_quasitri(conv):
    res = check_quasitriangularity(conv.r_source)
    res = {str(g): m for g, m in res.items()}
    return "Delta_op(g) = R Delta(g) R^-1 for Jz, J+, J-", f"R = {_fmt(conv.r_source.matrix())}", res


def _c_quasitri_exists(conv):
    sol = solve_r()
    want = _m([[Q, 0, 0, 0], [0, 1, Q - Q**-1, 0], [0, 0, 1, 0], [0, 0, 0, Q]])
    got = sol.normalized
    res = [got - want, check_quasitriangularity(got)]
    return _fmt(want), f"dimension {sol.dimension}; {_fmt(got)}", res


def _c_ybe(conv):
    res = check_yang_baxter(conv.r_source)
    return "R12 R13 R23 = R23 R13 R12", f"R = {_fmt(conv.r_source.matrix())}", res


def _jz_a(conv):
    return dressed_observables(conv.r_source, conv.bob_rule)[0]


def _jz_b(conv):
    return dressed_observables(conv.r_source, conv.bob_rule)[1]


def _c_dressed_a(conv):
    got = _jz_a(conv)
    return _fmt(DISPLAYED["JzA"]), _fmt(got), got - DISPLAYED["JzA"]


def _c_dressed_opform(conv):
    a, _ = naive_observables()
    sm = generator_matrix(Generator.JMINUS)
    sp = generator_matrix(Generator.JPLUS)
    compact = a + kron(sm, sp) * LAMBDA
    got = _jz_a(conv)
    return _fmt(compact), _fmt(got), got - compact


def _c_dressed_b(conv):
    got = _jz_b(conv)
    return _fmt(DISPLAYED["JzB"]), _fmt(got), got - DISPLAYED["JzB"]


def _c_cov(which):
    def check(conv):
        res = covariance_check(conv.r_source)[which]
        sign = "-" if which == "Jplus" else "+"
        lbl = "J+" if which == "Jplus" else "J-"
        return f"[Delta({lbl}), ~Jz_A] = {sign}~{lbl}_A", "residual matrix", res

    return check


def _c_projector(name):
    def check(conv):
        j = _jz_a(conv) if name.startswith("PiA") else _jz_b(conv)
        plus, minus = spectral_projectors(j)
        got = plus if name.endswith("+") else minus
        return _fmt(DISPLAYED[name]), _fmt(got), got - DISPLAYED[name]

    return check


def _c_projector_algebra(conv):
    res = []
    for j in (_jz_a(conv), _jz_b(conv), *naive_observables()):
        ident = Matrix.identity(4, j.basis)
        res.append(j @ j - ident * HALF * HALF)
        p, m = spectral_projectors(j)
        res += [p @ p - p, m @ m - m, p @ m, p + m - ident]
    return "Pi^2 = Pi, Pi+ Pi- = 0, Pi+ + Pi- = 1, J^2 = 1/4", "residual matrices", res


def _c_dressed_half(conv):
    jd = dressed_joint(conv=conv)
    got = jd[1, -1]
    return "1/2", _fmt(got), got - HALF


def _c_dressed_joint(conv):
    jd = dressed_joint(conv=conv)
    want = [ZERO, HALF, HALF, ZERO]
    return "[0, 1/2; 1/2, 0]", _fmt(list(jd.flat())), [a - b for a, b in zip(jd.flat(), want)]


def _c_dressed_unbiased(conv):
    e = expectation(_jz_a(conv), q_singlet(), conv.bra)
    mr = marginals(dressed_joint(conv=conv))
    return "<~Jz_A> = 0 and P_A(+1/2) = P_A(-1/2) = 1/2", f"<~Jz_A> = {_fmt(e)}; P_A(+1/2) = {_fmt(mr.p_alice_plus)}", [e, mr.p_alice_plus - HALF, mr.p_alice_minus - HALF]


def _c_dressed_completeness(conv):
    jd = dressed_joint(conv=conv)
    return "sum of p(s,t) = 1", _fmt(jd.total()), jd.total() - ONE


def _c_naive_joint(conv):
    jd = naive_joint()
    want = [ZERO, Q**2 / (1 + Q**2), ONE / (1 + Q**2), ZERO]
    return _fmt(want), _fmt(list(jd.flat())), [a - b for a, b in zip(jd.flat(), want)]


def _c_naive_marginals(conv):
    mr = marginals(naive_joint())
    want = [Q**2 / (1 + Q**2), ONE / (1 + Q**2)]
    got = [mr.p_alice_plus, mr.p_alice_minus]
    return _fmt(want), _fmt(got), [a - b for a, b in zip(got, want)]


def _c_naive_anticorr(conv):
    jd = naive_joint()
    got = [jd[1, 1], jd[-1, -1]]
    return "p(+,+) = p(-,-) = 0", _fmt(got), got


def _c_naive_bias(conv):
    mr = marginals(naive_joint())
    want = (Q**2 - 1) / (Q**2 + 1)
    return _fmt(want), _fmt(mr.bias), mr.bias - want


def _ref(label, anchor):
    return (label, anchor)


_CLAIM_LIST = [
    Claim("C-ALG-CARTAN", _ref("commutation relations", "[J_z,J_\\pm] = \\pm J_\\pm"),
          "Cartan relations hold on spin 1/2", _c_alg_cartan),
    Claim("C-ALG-DEFORMED", _ref("commutation relations", "subject to the commutation relations"),
          "Deformed [J+,J-] relation holds on spin 1/2", _c_alg_deformed),
    Claim("C-ALG-UNDEFORMED", _ref("spin-1/2 actions", "the algebra becomes undeformed"),
          "On spin 1/2, [J+,J-] acts as 2 Jz", _c_alg_undeformed),
    Claim("C-COPRO-JZ", _ref("copro1", "acting on the two-particle state"),
          "Delta(Jz) kills |updown> and |downup>", _c_copro_jz),
    Claim("C-COPRO-JPLUS", _ref("copro1", "Delta(J_+)\\ket{\\uparrow\\downarrow} = q^{-1/2}\\ket{\\uparrow\\uparrow}"),
          "Raising actions on |updown>, |downup>", _c_copro_jplus),
    Claim("C-COPRO-JMINUS", _ref("copro1", "Delta(J_-)\\ket{\\uparrow\\downarrow} = q^{1/2}\\ket{\\downarrow\\downarrow}"),
          "Displayed lowering actions on |updown>, |downup>", _c_copro_jminus,
          note="The displayed lowering actions swap the q^(+-1/2) factors relative to the coproduct formula "
               "J- x q^Jz + q^-Jz x J-; the formula gives q^(-1/2) on |updown> and q^(1/2) on |downup>."),
    Claim("C-COPRO-JMINUS-SWAPPED", _ref("copro1", "The same relation follows from imposing"),
          "The swapped-factor lowering action also annihilates the singlet", _c_inline_lowering,
          note="Only the coproduct-formula version of Delta(J-) annihilates the singlet; the swapped version "
               "leaves (q^(1/2) - q^(-3/2)) on |downdown>."),
    Claim("C-SINGLET", _ref("qsingl", "upon appropriate normalization, the state"),
          "Invariant kernel is span{(0, 1, -q^-1, 0)}", _c_singlet),
    Claim("C-SINGLET-NORM", _ref("qsingl", "N^2 = 1/(1+q^{-2})"),
          "Squared normalization is q^2/(1+q^2)", _c_singlet_norm),
    Claim("C-BELL-Q1", _ref("singlet", "invariant only in the undeformed limit"),
          "The antisymmetric Bell state is invariant only at q = 1", _c_bell_q1,
          note="Expected Q1_ONLY: the residual is nonzero for q != 1 and vanishes at q = 1."),
    Claim("C-CASIMIR", _ref("Casimir", "total Casimir operator on a two-qubit"),
          "Total Casimir annihilates the singlet", _c_casimir),
    Claim("C-LOCAL-JZ", _ref("loc1m", "local spin measurement performed by Alice"),
          "Jz x 1 = diag(1/2, 1/2, -1/2, -1/2)", _c_local_jz),
    Claim("C-FLIP", _ref("flip", "P(v\\otimes w)=w\\otimes v"),
          "P swaps tensor factors on basis vectors", _c_flip),
    Claim("C-R21", _ref("eq:R21", "R_{21}=PRP"),
          "P R P equals the displayed R21", _c_r21),
    Claim("C-R21-INVERSE", _ref("eq:R21", "its inverse is"),
          "Displayed inverse of R21", _c_r21_inv),
    Claim("C-QUASITRI", _ref("quasitid", "\\Delta^{\\mathrm{op}} := P \\circ \\Delta"),
          "R intertwines Delta and Delta_op", _c_quasitri,
          note="The displayed R is the six-vertex R-matrix with q replaced by q^(1/2). Against the coproduct "
               "with q^(+-Jz) factors it intertwines Delta and Delta_op only at q = 1; the intertwiner on the "
               "same support has alpha = q, beta = q - q^-1 (see C-QUASITRI-EXISTS)."),
    Claim("C-QUASITRI-EXISTS", _ref("quasitid", "\\Delta^{\\mathrm{op}} := P \\circ \\Delta"),
          "A six-vertex R solving the intertwiner equations exists", _c_quasitri_exists),
    Claim("C-YBE", _ref("eq:Rfundsqrt", "In the ordered basis"),
          "R satisfies the Yang-Baxter equation", _c_ybe),
    Claim("C-DRESSED-A", _ref("eq:dressedmatrixA", "A direct matrix multiplication"),
          "R21 (Jz x 1) R21^-1 equals the displayed matrix", _c_dressed_a),
    Claim("C-DRESSED-OPFORM", _ref("eq:dressedopform", "in more compact form"),
          "Dressed Jz_A = Jz x 1 + (q^(1/2) - q^(-1/2)) sigma- x sigma+", _c_dressed_opform),
    Claim("C-DRESSED-B", _ref("eq:dressedJzB-matrix", "Analogously, for the dressed local Bob observable"),
          "Dressed Jz_B equals the displayed matrix", _c_dressed_b,
          note="The defining conjugation of Bob's dressed operator is not written out; conjugation by R "
               "reproduces the displayed matrix, conjugation by R21 or R^-1 does not."),
    Claim("C-COV-JPLUS", _ref("eq:cov-Jplus", "the covariance condition becomes the concrete"),
          "[Delta(J+), ~Jz_A] = -~J+_A", _c_cov("Jplus")),
    Claim("C-COV-JMINUS", _ref("eq:cov-Jminus", "extension to J_- is completely analogous"),
          "[Delta(J-), ~Jz_A] = +~J-_A", _c_cov("Jminus"),
          note="With the coproduct formula for Delta(J-) and the displayed R, the residual has entries "
               "q^(1/2) - 1 - q^(-1/2) + q^-1 at (downup, upup) and q - q^(1/2) - 1 + q^(-1/2) at "
               "(downdown, updown); it vanishes only at q = 1. The swapped-factor Delta(J-) does not repair it."),
    Claim("C-PI-A-PLUS", _ref("eq:PiAplus", "spectral projectors for Alice's dressed"),
          "Alice's dressed Pi_+", _c_projector("PiA+")),
    Claim("C-PI-A-MINUS", _ref("eq:PiAminus", "spectral projectors for Alice's dressed"),
          "Alice's dressed Pi_-", _c_projector("PiA-")),
    Claim("C-PI-B-PLUS", _ref("Pi^(B)_{+1/2} display", "Analogously, for the dressed local Bob observable"),
          "Bob's dressed Pi_+", _c_projector("PiB+")),
    Claim("C-PI-B-MINUS", _ref("eq:PiBminus", "Analogously, for the dressed local Bob observable"),
          "Bob's dressed Pi_-", _c_projector("PiB-")),
    Claim("C-PROJECTOR-ALGEBRA", _ref("eq:PiAplus", "spectral projectors for Alice's dressed"),
          "Projector identities for dressed and naive observables", _c_projector_algebra),
    Claim("C-DRESSED-HALF", _ref("dressed statistics", "After simplification one obtains"),
          "Dressed P(+1/2, -1/2) = 1/2", _c_dressed_half, statistical=True,
          note="Claimed value 1/2. The literal recipe w = Pi_A+ (Pi_B- v), p = <v, w>/<v, v> gives "
               "(q^3 - q^2 + 2q - 1)/(q^3 + q), which is 1/2 only at q = 1 (7/10 at q = 2)."),
    Claim("C-DRESSED-JOINT", _ref("dressed statistics", "After simplification one obtains"),
          "Dressed joint table is [0, 1/2; 1/2, 0]", _c_dressed_joint, statistical=True,
          note="Same-outcome entries are nonzero for q != 1 under every implemented convention, and some "
               "entries are negative at sampled q (quasi-probabilities)."),
    Claim("C-DRESSED-UNBIASED", _ref("dressed marginals", "forces the marginal expectations to vanish"),
          "Dressed marginals are unbiased", _c_dressed_unbiased, statistical=True,
          note="<psi|~Jz_A|psi>/<psi|psi> = (q^(1/2) - 1)^3 (q^(1/2) + 1) / (2 (q^2 + 1)), nonzero for q != 1."),
    Claim("C-DRESSED-COMPLETENESS", _ref("joint probability", "The joint probability that Alice obtains"),
          "Dressed outcome weights sum to 1", _c_dressed_completeness, statistical=True,
          note="Under the norm rule the projectors are not orthogonal, so the weights need not sum to 1."),
    Claim("C-NAIVE-JOINT", _ref("naive statistics", "the joint probability matrix is"),
          "Naive joint table [0, q^2/(1+q^2); 1/(1+q^2), 0]", _c_naive_joint),
    Claim("C-NAIVE-MARGINALS", _ref("naive statistics", "Alice's marginal probabilities are obtained by summing"),
          "Naive marginals q^2/(1+q^2), 1/(1+q^2)", _c_naive_marginals),
    Claim("C-NAIVE-ANTICORRELATION", _ref("naive statistics", "the spins are perfectly anticorrelated"),
          "Naive same-outcome probabilities vanish", _c_naive_anticorr),
    Claim("C-NAIVE-BIAS", _ref("naive statistics", "the marginal distributions are biased"),
          "Naive marginal bias is (q^2 - 1)/(q^2 + 1)", _c_naive_bias),
]

CLAIMS: dict[str, Claim] = {c.claim_id: c for c in _CLAIM_LIST}


def claim_ids() -> list[str]:
    return sorted(CLAIMS)


def run_claim(claim_id: str, conv: Optional[Convention] = None) -> ClaimResult:
    """Run one registered claim under ``conv`` (default convention if ``None``)."""
    try:
        claim = CLAIMS[claim_id]
    except KeyError:
        raise UnknownClaim(claim_id) from None
    conv = conv or Convention()
    expected, computed, residual = claim.check(conv)
    verdict = _verdict(residual, claim.statistical)
    return ClaimResult(
        claim_id=claim.claim_id,
        ref=claim.ref,
        statement=claim.statement,
        convention=conv.key,
        expected=_fmt(expected),
        computed=_fmt(computed),
        residual=_fmt_residual(residual),
        verdict=verdict,
        note=claim.note if verdict != Verdict.CONFIRMED else "",
    )


def _metric_note(conv: Convention) -> str:
    a, b = dressed_observables(conv.r_source, conv.bob_rule)
    ms = hermitizing_metric([a, b])
    pos = ", ".join(f"q={q}: {'yes' if ok else 'no'}" for q, ok in sorted(ms.positivity.items()))
    return (
        f"[{conv.key}] symmetric metrics making both dressed Jz self-adjoint: dimension {ms.dimension}; "
        f"positive-definite member at {pos}"
    )


def run_all(conventions: Sequence[Convention] = ()) -> AuditReport:
    """Run every claim once per convention; results ordered by claim id then convention."""
    t0 = time.perf_counter()
    convs = list(conventions) or [Convention()]
    seen, unique = set(), []
    for c in convs:
        if c.key not in seen:
            seen.add(c.key)
            unique.append(c)
    results = []
    for cid in claim_ids():
        batch = [run_claim(cid, c) for c in sorted(unique, key=lambda c: c.key)]
        if any(r.verdict == Verdict.CONFIRMED for r in batch):
            batch = [
                r if r.verdict == Verdict.CONFIRMED else _replace_verdict(r, Verdict.CONVENTION_DEPENDENT)
                for r in batch
            ]
        results.extend(batch)
    notes = [_metric_note(c) for c in sorted({(c.r_source, c.bob_rule): c for c in unique}.values(), key=lambda c: c.key)]
    return AuditReport(results, sorted(unique, key=lambda c: c.key), __version__, time.perf_counter() - t0, notes)


def _replace_verdict(r: ClaimResult, verdict: str) -> ClaimResult:
    d = dict(r.__dict__)
    d["verdict"] = verdict
    return ClaimResult(**d)


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepRow:
    q: Fraction
    exact: bool
    p_naive_pm: object
    p_naive_mp: object
    bias_naive: object
    p_dressed_pm: object
    p_dressed_mp: object
    bias_dressed: object

    def values(self) -> tuple:
        return (self.p_naive_pm, self.p_naive_mp, self.bias_naive, self.p_dressed_pm, self.p_dressed_mp, self.bias_dressed)


def _grid(q_min: Fraction, q_max: Fraction, steps: int) -> list[Fraction]:
    if steps == 1:
        return [q_min]
    return [q_min + (q_max - q_min) * k / (steps - 1) for k in range(steps)]


def sweep(q_min, q_max, steps: int, conv: Optional[Convention] = None) -> list[SweepRow]:
    """Naive and dressed statistics on a linear grid of rational ``q`` values.

    Values are exact rationals when ``q`` is the square of a rational (so
    ``s = sqrt(q)`` is rational), and floats otherwise.
    """
    from .scalar import as_rational

    q_min, q_max = as_rational(q_min), as_rational(q_max)
    if q_min <= 0:
        raise NonpositiveParameter(f"q_min = {q_min} is not positive")
    if q_max < q_min:
        raise ValueError("q_max must be at least q_min")
    if steps < 1:
        raise ValueError("steps must be at least 1")
    conv = conv or Convention()
    naive = naive_joint()
    dressed = dressed_joint(conv=conv)
    nm, dm = marginals(naive), marginals(dressed)
    exprs = (naive[1, -1], naive[-1, 1], nm.bias, dressed[1, -1], dressed[-1, 1], dm.bias)
    rows = []
    for q in _grid(q_min, q_max, steps):
        s0 = rational_sqrt(q)
        if s0 is not None:
            vals = [x.evaluate(s0, physical=True) for x in exprs]
        else:
            vals = [to_float(x, float(q)) for x in exprs]
        rows.append(SweepRow(q, s0 is not None, *vals))
    return rows


def _dec(x) -> str:
    return f"{float(x):.12f}"


SWEEP_HEADER = ("q", "exact", "pNaive(+,-)", "pNaive(-,+)", "biasNaive", "pDressed(+,-)", "pDressed(-,+)", "biasDressed")


def render_sweep(rows: Sequence[SweepRow], fmt: str = "csv") -> str:
    table = [[str(r.q), "yes" if r.exact else "no", *(_dec(v) for v in r.values())] for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(SWEEP_HEADER)
        w.writerows(table)
        return buf.getvalue()
    if fmt == "markdown":
        lines = ["| " + " | ".join(SWEEP_HEADER) + " |", "|" + "---|" * len(SWEEP_HEADER)]
        lines += ["| " + " | ".join(r) + " |" for r in table]
        return "\n".join(lines) + "\n"
    if fmt == "json":
        return json.dumps([dict(zip(SWEEP_HEADER, r)) for r in table], indent=2, sort_keys=True) + "\n"
    raise UnsupportedFormat(fmt)


# ---------------------------------------------------------------------------
# report rendering
# ---------------------------------------------------------------------------

_CONVENTION_LEGEND = [
    ("r", "R-matrix: paper = displayed six-vertex matrix in q^(1/2); solved = intertwiner with alpha = q"),
    ("bob", "conjugation for Bob's operator: r = R, r21 = R21, rinv = R^-1 (Alice always uses R21)"),
    ("bra", "state = <psi| ; dual = invariant left null covector of the coproduct matrices"),
    ("ord", "ba = Pi_A (Pi_B v) ; ab = Pi_B (Pi_A v)"),
    ("born", "sandwich = <bra| Pi Pi |v> / <bra|v> ; norm = |Pi Pi v|^2 / |v|^2"),
]


def render(report: AuditReport, fmt: str = "json") -> bytes:
    """Serialize a report as ``json``, ``csv`` or ``markdown``.

    Output depends only on the claims and conventions, never on timing, so
    identical inputs give identical bytes.
    """
    if fmt == "json":
        doc = {
            "schemaVersion": SCHEMA_VERSION,
            "toolVersion": report.tool_version,
            "conventions": [c.key for c in report.conventions],
            "claims": [c.as_dict() for c in report.claims],
            "notes": list(report.notes),
        }
        return (json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(["claimId", "convention", "verdict", "residual"])
        for c in report.claims:
            w.writerow([c.claim_id, c.convention, c.verdict, c.residual])
        return buf.getvalue().encode("utf-8")
    if fmt == "markdown":
        return _render_markdown(report).encode("utf-8")
    raise UnsupportedFormat(f"unsupported format {fmt!r}")


def _md_cell(text: str) -> str:
    return text.replace("|", "\\|").replace("\n", " ")


def _render_markdown(report: AuditReport) -> str:
    out = [f"# Claim audit (tool {report.tool_version}, schema {SCHEMA_VERSION})", ""]
    out += ["## Conventions", ""]
    out += [f"- `{c.key}`" for c in report.conventions]
    out += ["", "Field meanings:", ""]
    out += [f"- `{k}`: {v}" for k, v in _CONVENTION_LEGEND]
    out += ["", "## Results", ""]
    out += ["| claim | convention | verdict | expected | computed | residual |", "|---|---|---|---|---|---|"]
    for c in report.claims:
        out.append(
            "| " + " | ".join(_md_cell(x) for x in (c.claim_id, c.convention, c.verdict, c.expected, c.computed, c.residual)) + " |"
        )
    out += ["", "## Discrepancy notes", ""]
    seen = set()
    for c in report.claims:
        if c.note and (c.claim_id, c.note) not in seen:
            seen.add((c.claim_id, c.note))
            out.append(f"- **{c.claim_id}** ({c.ref[0]}, \"{c.ref[1]}\"): {c.note}")
    if report.notes:
        out += ["", "## Metric probe", ""]
        out += [f"- {n}" for n in report.notes]
    return "\n".join(out) + "\n"
