import csv
import io
import json
from fractions import Fraction

import pytest

from qsinglet.audit import (
    CLAIMS,
    SWEEP_HEADER,
    Verdict,
    claim_ids,
    render,
    render_sweep,
    run_all,
    run_claim,
    sweep,
)
from qsinglet.errors import NonpositiveParameter, UnknownClaim, UnsupportedFormat
from qsinglet.measurement import BornRule, Convention, standard_conventions

CONFIRMED_BY_DEFAULT = {
    "C-ALG-CARTAN", "C-ALG-DEFORMED", "C-ALG-UNDEFORMED", "C-COPRO-JZ", "C-COPRO-JPLUS",
    "C-SINGLET", "C-SINGLET-NORM", "C-CASIMIR", "C-LOCAL-JZ", "C-FLIP", "C-R21", "C-R21-INVERSE",
    "C-QUASITRI-EXISTS", "C-YBE", "C-DRESSED-A", "C-DRESSED-OPFORM", "C-DRESSED-B", "C-COV-JPLUS",
    "C-PI-A-PLUS", "C-PI-A-MINUS", "C-PI-B-PLUS", "C-PI-B-MINUS", "C-PROJECTOR-ALGEBRA",
    "C-DRESSED-COMPLETENESS", "C-NAIVE-JOINT", "C-NAIVE-MARGINALS", "C-NAIVE-ANTICORRELATION",
    "C-NAIVE-BIAS",
}
Q1_ONLY_BY_DEFAULT = {"C-COPRO-JMINUS", "C-COPRO-JMINUS-SWAPPED", "C-BELL-Q1", "C-QUASITRI", "C-COV-JMINUS"}
REFUTED_BY_DEFAULT = {"C-DRESSED-HALF", "C-DRESSED-JOINT", "C-DRESSED-UNBIASED"}


@pytest.fixture(scope="module")
def default_report():
    return run_all()


@pytest.fixture(scope="module")
def standard_report():
    return run_all(standard_conventions())


def test_registry_is_partitioned():
    assert set(claim_ids()) == CONFIRMED_BY_DEFAULT | Q1_ONLY_BY_DEFAULT | REFUTED_BY_DEFAULT
    assert len(claim_ids()) >= 14


def test_default_verdicts(default_report):
    v = {c.claim_id: c.verdict for c in default_report.claims}
    assert {k for k, x in v.items() if x == Verdict.CONFIRMED} == CONFIRMED_BY_DEFAULT
    assert {k for k, x in v.items() if x == Verdict.Q1_ONLY} == Q1_ONLY_BY_DEFAULT
    assert {k for k, x in v.items() if x == Verdict.REFUTED_UNDER_CONVENTION} == REFUTED_BY_DEFAULT


def test_run_claim_examples():
    r = run_claim("C-COV-JPLUS")
    assert r.verdict == Verdict.CONFIRMED and r.residual == "0"
    assert run_claim("C-QUASITRI").verdict == Verdict.Q1_ONLY
    naive = run_claim("C-NAIVE-JOINT")
    assert naive.verdict == Verdict.CONFIRMED
    assert "q^2/(q^2 + 1)" in naive.computed
    with pytest.raises(UnknownClaim):
        run_claim("C-NOPE")


def test_dressed_half_rendered_side_by_side():
    r = run_claim("C-DRESSED-HALF")
    assert r.expected == "1/2"
    assert r.computed == "(q^2 - q + 2 - q^-1)/(q^2 + 1)"
    assert r.verdict in (Verdict.REFUTED_UNDER_CONVENTION, Verdict.CONVENTION_DEPENDENT)


def test_every_result_has_a_quote_anchor(standard_report):
    for c in standard_report.claims:
        assert c.ref[0] and c.ref[1]


def test_coverage_once_per_convention(standard_report):
    convs = standard_conventions()
    assert len(standard_report.claims) == len(CLAIMS) * len(convs)
    keys = [(c.claim_id, c.convention) for c in standard_report.claims]
    assert len(set(keys)) == len(keys)
    assert keys == sorted(keys)


def test_convention_dependent_merge(standard_report):
    # completeness holds under sandwich but not under the norm rule
    res = {c.convention: c.verdict for c in standard_report.by_id("C-DRESSED-COMPLETENESS")}
    for conv in standard_conventions():
        want = Verdict.CONFIRMED if conv.born is BornRule.SANDWICH else Verdict.CONVENTION_DEPENDENT
        assert res[conv.key] == want


def test_empty_convention_list_uses_default():
    rep = run_all([])
    assert [c.key for c in rep.conventions] == [Convention().key]


def test_duplicate_conventions_collapse():
    rep = run_all([Convention(), Convention()])
    assert len(rep.claims) == len(CLAIMS)


def test_render_json_deterministic(default_report):
    a = render(default_report, "json")
    b = render(run_all(), "json")
    assert a == b
    doc = json.loads(a)
    assert doc["schemaVersion"] == 1
    assert {"claimId", "ref", "expected", "computed", "residual", "verdict"} <= set(doc["claims"][0])


def test_render_csv(default_report):
    text = render(default_report, "csv").decode()
    assert text.startswith("claimId,convention,verdict,residual\r\n")
    rows = list(csv.reader(io.StringIO(text)))
    assert len(rows) == len(CLAIMS) + 1
    assert all(len(r) == 4 for r in rows)


def test_render_markdown(default_report):
    text = render(default_report, "markdown").decode()
    assert "## Conventions" in text and "## Discrepancy notes" in text
    assert "C-DRESSED-HALF" in text and "1/2" in text


def test_render_rejects_unknown_format(default_report):
    with pytest.raises(UnsupportedFormat):
        render(default_report, "xml")
    with pytest.raises(UnsupportedFormat):
        render_sweep([], "xml")


def test_sweep_single_point_at_one():
    (row,) = sweep(1, 1, 1)
    assert row.exact
    assert row.values() == (Fraction(1, 2), Fraction(1, 2), 0, Fraction(1, 2), Fraction(1, 2), 0)


def test_sweep_naive_bias_at_two():
    (row,) = sweep(2, 2, 1)
    assert row.bias_naive == pytest.approx(0.6, abs=1e-12)
    (row,) = sweep(4, 4, 1)
    assert row.bias_naive == Fraction(15, 17)


def test_sweep_inversion_symmetry():
    rows = {r.q: r for r in sweep(Fraction(1, 2), 2, 4)}
    assert sorted(rows) == [Fraction(1, 2), 1, Fraction(3, 2), 2]
    lo, hi = rows[Fraction(1, 2)], rows[Fraction(2)]
    assert lo.p_naive_pm == pytest.approx(hi.p_naive_mp, abs=1e-12)
    assert lo.p_naive_mp == pytest.approx(hi.p_naive_pm, abs=1e-12)
    assert lo.bias_naive == pytest.approx(-hi.bias_naive, abs=1e-12)


def test_sweep_errors():
    with pytest.raises(NonpositiveParameter):
        sweep(0, 1, 3)
    with pytest.raises(ValueError):
        sweep(2, 1, 3)
    with pytest.raises(ValueError):
        sweep(1, 2, 0)


def test_render_sweep_formats():
    rows = sweep(1, 4, 4)
    text = render_sweep(rows, "csv")
    assert text.splitlines()[0].split(",")[0] == "q"
    assert len(list(csv.reader(io.StringIO(text)))) == 5
    assert len(json.loads(render_sweep(rows, "json"))) == 4
    assert render_sweep(rows, "markdown").count("\n") == 6
    assert tuple(next(csv.reader(io.StringIO(text)))) == SWEEP_HEADER
