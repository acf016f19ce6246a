"""Batch verification: closed forms against brute force over whole ranges.

Each suite returns a :class:`Report`. Reports are deterministic for a given
(suite, range, budget): work may be split across processes with ``jobs``, but
chunks are merged in input order and counterexamples are sorted.
"""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations_with_replacement
from typing import Callable, Iterable, Sequence

import numpy as np

from . import formulas, qseries
from .arith import c_coeff
from .errors import BudgetExceeded
from .oracle import (
    Form,
    count_n,
    count_n_table,
    count_t_direct_table,
    count_t_prime,
    count_t_table,
)

PASS, FAIL, BUDGET = "pass", "fail", "budget-exceeded"

DEFAULT_T_MAX = 300
DEFAULT_M_MAX = 2000
DEFAULT_ORDER = 512
DEFAULT_RELATIONS_MAX = 100
DEFAULT_CONJECTURE_MAX = 1000
GENERATING_FUNCTION_ORDER = 50
INCLUSION_EXCLUSION_FORMS = 20
INCLUSION_EXCLUSION_N_MAX = 30


@dataclass(order=True)
class Counterexample:
    key: tuple
    input: str = field(compare=False)
    oracle: int = field(compare=False)
    formula: int = field(compare=False)

    def to_dict(self) -> dict:
        return {"input": self.input, "oracle": self.oracle, "formula": self.formula}


@dataclass
class Finding:
    """A published statement that brute force contradicts, reported but not failed."""

    key: str
    description: str
    evidence: str


@dataclass
class Report:
    suite: str
    range: tuple[int, int]
    status: str = PASS
    counterexamples: list[Counterexample] = field(default_factory=list)
    elapsed_ms: int = 0
    findings: list[Finding] = field(default_factory=list)
    cases: dict[str, int] = field(default_factory=dict)
    values: list[tuple[str, int, int]] = field(default_factory=list)
    budget_hits: list[str] = field(default_factory=list)

    def finish(self, started: float) -> Report:
        self.counterexamples.sort()
        self.elapsed_ms = int((time.perf_counter() - started) * 1000)
        if self.counterexamples:
            self.status = FAIL
        elif self.budget_hits:
            self.status = BUDGET
        else:
            self.status = PASS
        return self

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "range": list(self.range),
            "status": self.status,
            "counterexamples": [c.to_dict() for c in self.counterexamples],
            "elapsed_ms": self.elapsed_ms,
            "findings": [asdict(f) for f in self.findings],
            "cases": dict(self.cases),
            "budget_exceeded": list(self.budget_hits),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def csv_rows(self) -> list[list]:
        rows = [[self.suite, c.input, c.oracle, c.formula] for c in self.counterexamples]
        return rows or [[self.suite, "", "", ""]]


def reports_to_csv(reports: Sequence[Report]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["suite", "status", "lo", "hi", "input", "oracle", "formula"])
    for r in reports:
        if not r.counterexamples:
            w.writerow([r.suite, r.status, r.range[0], r.range[1], "", "", ""])
        for c in r.counterexamples:
            w.writerow([r.suite, r.status, r.range[0], r.range[1], c.input, c.oracle, c.formula])
    return buf.getvalue()


def dump_values_csv(reports: Sequence[Report], path: str) -> None:
    """Write every recorded (input, oracle, formula) triple to ``path``."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["suite", "input", "oracle", "formula"])
        for r in reports:
            for inp, o, f in r.values:
                w.writerow([r.suite, inp, o, f])


# ---------------------------------------------------------------------------
# Parallel evaluation
# ---------------------------------------------------------------------------


def _t_chunk(form: tuple[int, ...], lo: int, hi: int, conjecture: bool) -> list[int]:
    entry = formulas.lookup_t(form, include_conjectures=conjecture)
    return [entry(n) for n in range(lo, hi + 1)]


def _n_chunk(index: int, ms: list[int]) -> list[int]:
    entry = formulas.N_FORMULAS[index]
    return [entry(m) for m in ms]


def _chunks(lo: int, hi: int, jobs: int) -> list[tuple[int, int]]:
    if hi < lo:
        return []
    size = max(1, -(-(hi - lo + 1) // max(jobs, 1)))
    return [(s, min(s + size - 1, hi)) for s in range(lo, hi + 1, size)]


def _run_tasks(fn: Callable, tasks: list[tuple], jobs: int) -> list:
    """Apply ``fn`` to each argument tuple, preserving task order."""
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(*t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(fn, *t) for t in tasks]
        return [f.result() for f in futures]


def _t_values(form: Form, n_max: int, jobs: int, conjecture: bool = False) -> list[int]:
    tasks = [(tuple(form), lo, hi, conjecture) for lo, hi in _chunks(0, n_max, jobs)]
    out: list[int] = []
    for part in _run_tasks(_t_chunk, tasks, jobs):
        out.extend(part)
    return out


def _compare(report: Report, label: str, key_prefix: tuple, inputs: Iterable[int],
             oracle: Sequence[int], formula: Sequence[int], fmt: str, record: bool) -> None:
    count = 0
    for x, o, f in zip(inputs, oracle, formula):
        o, f = int(o), int(f)
        count += 1
        text = fmt.format(x)
        if record:
            report.values.append((text, o, f))
        if o != f:
            report.counterexamples.append(Counterexample(key_prefix + (x,), text, o, f))
    report.cases[label] = report.cases.get(label, 0) + count


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def verify_t_formulas(n_max: int = DEFAULT_T_MAX, jobs: int = 1, budget: int | None = None,
                      record: bool = False) -> Report:
    """Every registered t closed form against the N_0 oracle for n in [0, n_max]."""
    started = time.perf_counter()
    report = Report("t", (0, n_max))
    for form, entry in formulas.T_FORMULAS.items():
        try:
            oracle = count_t_table(form, n_max, budget)
        except BudgetExceeded as exc:
            report.budget_hits.append(f"t({form}): {exc}")
            continue
        values = _t_values(form, n_max, jobs)
        _compare(report, f"t({form})", ("t", tuple(form)), range(n_max + 1), oracle, values,
                 f"t({form};{{}})", record)
        for err in formulas.ERRATA.values():
            if err.form == form and callable(err.published):
                _check_erratum(report, err, oracle, values)
    return report.finish(started)


def _check_erratum(report: Report, err: formulas.Erratum, oracle: Sequence[int], corrected: Sequence[int]) -> None:
    if any(int(o) != c for o, c in zip(oracle, corrected)):
        return
    for n, o in enumerate(oracle):
        published = err.published(n)
        if published != int(o):
            evidence = f"first deviation at n={n}: published {published}, oracle {int(o)}"
            report.findings.append(Finding(err.key, err.description, evidence))
            return


def verify_n_formulas(m_max: int = DEFAULT_M_MAX, jobs: int = 1, budget: int | None = None,
                      record: bool = False) -> Report:
    """Every registered N closed form against brute force on its domain, m in [1, m_max]."""
    started = time.perf_counter()
    report = Report("n", (1, m_max))
    for index, entry in enumerate(formulas.N_FORMULAS):
        label = f"N({entry.form}) [{entry.source}]"
        ms = [m for m in range(1, m_max + 1) if entry.domain(m)]
        report.cases.setdefault(label, 0)
        if not ms:
            continue
        try:
            oracle = count_n_table(entry.form, m_max, budget)
        except BudgetExceeded as exc:
            report.budget_hits.append(f"N({entry.form}): {exc}")
            continue
        tasks = [(index, ms[i::max(jobs, 1)]) for i in range(max(jobs, 1))]
        tasks = [t for t in tasks if t[1]]
        merged: dict[int, int] = {}
        for (_, chunk), vals in zip(tasks, _run_tasks(_n_chunk, tasks, jobs)):
            merged.update(zip(chunk, vals))
        _compare(report, label, ("N", tuple(entry.form)), ms, [oracle[m] for m in ms],
                 [merged[m] for m in ms], f"N({entry.form};{{}})", record)
    return report.finish(started)


def check_identity(report: Report, name: str, lhs: qseries.Series, rhs: qseries.Series) -> None:
    """Record a counterexample at the first index where two series differ."""
    t = min(lhs.truncation, rhs.truncation)
    report.cases[name] = t + 1
    i = qseries.first_difference(lhs, rhs)
    if i is not None:
        report.counterexamples.append(Counterexample(("series", name, i), f"{name} @ q^{i}", lhs[i], rhs[i]))


def series_identities(T: int) -> list[tuple[str, qseries.Series, qseries.Series]]:
    """(name, left side, right side) for each theta-function identity, to order T."""
    from .qseries import divide_exact, extract, gen_n, mul, phi, product, psi, shift

    ids = [
        ("phi(q) = phi(q^4) + 2q psi(q^8)", phi(1, T), phi(4, T) + 2 * shift(psi(8, T), 1)),
        (
            "psi(q)psi(q^3) = phi(q^6)psi(q^4) + q psi(q^12)phi(q^2)",
            mul(psi(1, T), psi(3, T)),
            mul(phi(6, T), psi(4, T)) + shift(mul(psi(12, T), phi(2, T)), 1),
        ),
    ]
    big = 8 * T + 22
    lhs = divide_exact(extract(gen_n((1, 3, 9, 9), big), 8, 22), 8)
    ids.append((
        "1/8 sum N(1,3,9,9;8n+22) q^n = 5 psi(q)psi(q^3)psi(q^9)^2",
        lhs.truncate(T),
        5 * product([psi(1, T), psi(3, T), psi(9, T), psi(9, T)]),
    ))
    lhs = divide_exact(extract(gen_n((1, 1, 3, 9), 8 * T + 14), 8, 14), 8)
    ids.append((
        "1/8 sum N(1,1,3,9;8n+14) q^n = 5 psi(q)^2 psi(q^3)psi(q^9)",
        lhs.truncate(T),
        5 * product([psi(1, T), psi(1, T), psi(3, T), psi(9, T)]),
    ))
    return ids


def c_coefficient_check(report: Report, n_max: int) -> None:
    """q E_6^4 from the eta product against the lattice-sum c(n), n in [1, n_max]."""
    eta = qseries.shift(qseries.eta_pow(6, 4, n_max), 1)
    ns = range(1, n_max + 1)
    _compare(report, "q E_6^4 = sum c(n) q^n", ("c",), ns, [eta[n] for n in ns],
             [c_coeff(n) for n in ns], "c({})", False)


def generating_function_check(report: Report, order: int = GENERATING_FUNCTION_ORDER,
                              budget: int | None = None) -> None:
    """gen_n / gen_t_prime coefficients against scalar brute-force counts."""
    forms = list(formulas.T_FORMULAS) + list(formulas.CONJECTURES)
    for form in forms:
        gn = qseries.gen_n(form, order)
        gt = qseries.gen_t_prime(form, order)
        ms = range(order + 1)
        _compare(report, f"gen_n({form})", ("gen_n", tuple(form)), ms,
                 [count_n(form, m, budget) for m in ms], [gn[m] for m in ms], f"gen_n({form})[{{}}]", False)
        _compare(report, f"gen_t_prime({form})", ("gen_t", tuple(form)), ms,
                 [count_t_prime(form, m, budget) for m in ms], [gt[m] for m in ms],
                 f"gen_t_prime({form})[{{}}]", False)


def verify_series_identities(T: int = DEFAULT_ORDER, budget: int | None = None) -> Report:
    """Theta identities, the two 5-psi endpoints and c(n) to order T; generating functions to order 50."""
    started = time.perf_counter()
    if T < 8:
        raise ValueError(f"series suite needs T >= 8, got {T}")
    report = Report("series", (0, T))
    for name, lhs, rhs in series_identities(T):
        check_identity(report, name, lhs, rhs)
    c_coefficient_check(report, T)
    try:
        generating_function_check(report, min(T, GENERATING_FUNCTION_ORDER), budget)
    except BudgetExceeded as exc:
        report.budget_hits.append(f"generating functions: {exc}")
    return report.finish(started)


def small_sum_forms(max_total: int = 8) -> list[Form]:
    """Every sorted form with a + b + c + d <= max_total."""
    return [Form(*f) for f in combinations_with_replacement(range(1, max_total - 2), 4) if sum(f) <= max_total]


def verify_relations(n_max: int = DEFAULT_RELATIONS_MAX, budget: int | None = None,
                     seed: int = 2024) -> Report:
    """Structural relations between N, N_0, t and t' over n in [0, n_max]."""
    started = time.perf_counter()
    report = Report("relations", (0, n_max))
    try:
        _relations_body(report, n_max, budget, seed)
    except BudgetExceeded as exc:
        report.budget_hits.append(str(exc))
    return report.finish(started)


def _relations_body(report: Report, n_max: int, budget: int | None, seed: int) -> None:
    ns = range(n_max + 1)

    # N_0 route and triangular route agree, and 16 divides t.
    for form in list(formulas.T_FORMULAS) + list(formulas.CONJECTURES):
        via_n0 = count_t_table(form, n_max, budget)
        direct = count_t_direct_table(form, n_max, budget)
        _compare(report, f"t via N_0 vs direct ({form})", ("t-routes", tuple(form)), ns, direct, via_n0,
                 f"t({form};{{}}) N_0 vs direct", False)
        _compare(report, f"16 | t({form})", ("t-mod16", tuple(form)), ns, [0] * len(ns), via_n0 % 16,
                 f"t({form};{{}}) mod 16", False)

    # Capacity constants: N(8n + s) = C t'(n) for s <= 7, and the 2n + 2 correction at s = 8.
    for form in small_sum_forms():
        s = form.total
        ratio = formulas.capacity_ratio(form, budget)
        printed = formulas.capacity_constant(form)
        if printed != ratio:
            known = next((e for e in formulas.ERRATA.values() if e.form == form and e.published == printed), None)
            report.findings.append(Finding(
                known.key if known else f"capacity-{''.join(map(str, form))}",
                known.description if known else f"capacity constant C({form}) deviates from brute force",
                f"published formula {printed}, oracle ratio {ratio}",
            ))
        n_tab = count_n_table(form, 8 * n_max + s, budget)
        t_prime = count_t_table(form, n_max, budget) // 16
        lhs = [int(n_tab[8 * n + s]) - (int(n_tab[2 * n + 2]) if s == 8 else 0) for n in ns]
        _compare(report, f"capacity relation ({form})", ("capacity", tuple(form)), ns, lhs,
                 [ratio * int(v) for v in t_prime], f"C*t'({form};{{}})", False)

    # The 16-term inclusion-exclusion on random small forms.
    n_ie = min(n_max, INCLUSION_EXCLUSION_N_MAX)
    for form in formulas.random_small_forms(INCLUSION_EXCLUSION_FORMS, seed):
        m_max = 8 * n_ie + form.total
        total = np.zeros(m_max + 1, dtype=np.int64)
        for sign, g in formulas.inclusion_exclusion_terms(form):
            total += sign * count_n_table(g, m_max, budget)
        combo = [int(total[8 * n + form.total]) for n in range(n_ie + 1)]
        _compare(report, f"inclusion-exclusion ({form})", ("incl-excl", tuple(form)), range(n_ie + 1),
                 count_t_table(form, n_ie, budget), combo, f"16-term sum ({form};{{}})", False)

    # N at 8n + 22 (resp. 8n + 14) is 40 t' for (1,3,9,9) (resp. (1,1,3,9)).
    for form, offset in ((Form(1, 3, 9, 9), 22), (Form(1, 1, 3, 9), 14)):
        n_tab = count_n_table(form, 8 * n_max + offset, budget)
        t_prime = count_t_table(form, n_max, budget) // 16
        _compare(report, f"N({form};8n+{offset}) = 40 t'", ("forty", tuple(form)), ns,
                 [int(n_tab[8 * n + offset]) for n in ns], [40 * int(v) for v in t_prime],
                 f"N({form};8*{{}}+{offset})", False)


def check_conjecture(n_max: int = DEFAULT_CONJECTURE_MAX, jobs: int = 1, budget: int | None = None,
                     record: bool = False) -> Report:
    """Conjectured t(1,1,3,4;n) closed form against brute force for n in [0, n_max]."""
    started = time.perf_counter()
    report = Report("conjecture", (0, n_max))
    form = Form(1, 1, 3, 4)
    try:
        oracle = count_t_table(form, n_max, budget)
    except BudgetExceeded as exc:
        report.budget_hits.append(str(exc))
        return report.finish(started)
    values = _t_values(form, n_max, jobs, conjecture=True)
    _compare(report, "t(1,1,3,4)", ("t", tuple(form)), range(n_max + 1), oracle, values, "t(1,1,3,4;{})", record)
    return report.finish(started)


SUITES = ("t", "n", "series", "relations")


def run_suite(name: str, limit: int | None = None, jobs: int = 1, budget: int | None = None,
              record: bool = False) -> Report:
    if name == "t":
        return verify_t_formulas(DEFAULT_T_MAX if limit is None else limit, jobs, budget, record)
    if name == "n":
        return verify_n_formulas(DEFAULT_M_MAX if limit is None else limit, jobs, budget, record)
    if name == "series":
        return verify_series_identities(DEFAULT_ORDER if limit is None else limit, budget)
    if name == "relations":
        return verify_relations(DEFAULT_RELATIONS_MAX if limit is None else limit, budget)
    if name == "conjecture":
        return check_conjecture(DEFAULT_CONJECTURE_MAX if limit is None else limit, jobs, budget, record)
    raise ValueError(f"unknown suite {name!r}")
