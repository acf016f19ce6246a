import csv
import io
import json

import pytest

from trirep import verify
from trirep.qseries import Series, phi
from trirep.verify import (
    Report,
    check_conjecture,
    check_identity,
    reports_to_csv,
    run_suite,
    small_sum_forms,
    verify_n_formulas,
    verify_relations,
    verify_series_identities,
    verify_t_formulas,
)


def test_t_suite_at_zero():
    r = verify_t_formulas(0)
    assert r.passed and r.range == (0, 0)
    assert len(r.cases) == 13 and set(r.cases.values()) == {1}


def test_t_suite_small_with_findings():
    r = verify_t_formulas(50)
    assert r.passed
    assert [f.key for f in r.findings] == ["t1133-even-branch"]
    assert "published 4, oracle 16" in r.findings[0].evidence


def test_n_suite_small():
    r = verify_n_formulas(50)
    assert r.passed
    assert len(r.cases) == len(verify.formulas.N_FORMULAS)


def test_n_suite_records_empty_domains_as_zero():
    r = verify_n_formulas(1)
    assert r.passed
    assert 0 in r.cases.values()


def test_series_suite_small():
    r = verify_series_identities(8)
    assert r.passed
    with pytest.raises(ValueError):
        verify_series_identities(7)


def test_perturbed_series_reports_first_index():
    r = Report("self-test", (0, 20))
    good = phi(1, 20)
    bad = Series.of(good.to_list()[:11] + [good[11] + 1] + good.to_list()[12:])
    check_identity(r, "perturbed", good, bad)
    r.finish(0.0)
    assert r.status == "fail"
    (c,) = r.counterexamples
    assert c.input == "perturbed @ q^11" and (c.oracle, c.formula) == (0, 1)


def test_relations_suite_small():
    r = verify_relations(10)
    assert r.passed
    assert [(f.key, f.evidence) for f in r.findings] == [("capacity-1111", "published formula 16, oracle ratio 24")]


def test_small_sum_forms():
    forms = small_sum_forms()
    assert all(f.total <= 8 for f in forms)
    assert (1, 1, 1, 1) in forms and (2, 2, 2, 2) in forms and (1, 1, 1, 5) in forms
    assert len(forms) == len(set(forms)) == 12


def test_conjecture_small():
    r = check_conjecture(1)
    assert r.passed and r.cases == {"t(1,1,3,4)": 2}


def test_reports_are_deterministic_across_jobs():
    a = verify_t_formulas(40, jobs=1, record=True)
    b = verify_t_formulas(40, jobs=3, record=True)
    assert a.values == b.values
    da, db = a.to_dict(), b.to_dict()
    da.pop("elapsed_ms"), db.pop("elapsed_ms")
    assert da == db
    assert check_conjecture(60, jobs=1, record=True).values == check_conjecture(60, jobs=4, record=True).values


def test_counterexamples_sorted_and_fail_status():
    r = Report("x", (0, 5))
    for k in (3, 1, 2):
        r.counterexamples.append(verify.Counterexample((k,), f"n={k}", k, -k))
    r.finish(0.0)
    assert [c.input for c in r.counterexamples] == ["n=1", "n=2", "n=3"]
    assert r.status == "fail" and not r.passed


def test_budget_exceeded_status():
    r = verify_t_formulas(30, budget=50)
    assert r.status == "budget-exceeded"
    assert not r.counterexamples and r.budget_hits
    r = check_conjecture(30, budget=50)
    assert r.status == "budget-exceeded"


def test_json_schema():
    d = json.loads(run_suite("t", 5).to_json())
    assert {"suite", "range", "status", "counterexamples", "elapsed_ms"} <= set(d)
    assert d["suite"] == "t" and d["range"] == [0, 5] and d["status"] == "pass"
    assert isinstance(d["elapsed_ms"], int) and d["counterexamples"] == []


def test_csv_output():
    rows = list(csv.reader(io.StringIO(reports_to_csv([run_suite("t", 2), run_suite("n", 10)]))))
    assert rows[0] == ["suite", "status", "lo", "hi", "input", "oracle", "formula"]
    assert rows[1][:4] == ["t", "pass", "0", "2"] and rows[2][:4] == ["n", "pass", "1", "10"]


def test_dump_values(tmp_path):
    r = verify_t_formulas(3, record=True)
    path = tmp_path / "values.csv"
    verify.dump_values_csv([r], str(path))
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["suite", "input", "oracle", "formula"]
    assert len(rows) == 1 + 13 * 4
    assert ["t", "t(1,1,1,1;0)", "16", "16"] in rows


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope")
