from itertools import combinations

import pytest

from trirep.arith import sigma
from trirep.errors import DomainError, UnsupportedForm
from trirep.formulas import (
    CONJECTURES,
    ERRATA,
    N_FORMULAS,
    T_FORMULAS,
    capacity_constant,
    capacity_ratio,
    inclusion_exclusion_terms,
    lookup_t,
    n_entries,
    n_formula,
    random_small_forms,
    supported_forms,
    t_1133,
    t_conjectured_1134,
    t_formula,
    t_inclusion_exclusion,
)
from trirep.oracle import Form, count_n, count_n_table, count_t, count_t_prime, count_t_table

THIRTEEN = {
    (1, 1, 1, 1), (1, 1, 2, 2), (1, 1, 3, 3), (1, 3, 3, 9), (1, 3, 9, 9), (1, 1, 3, 9), (1, 1, 4, 4),
    (1, 4, 4, 4), (1, 2, 2, 4), (1, 2, 4, 4), (1, 1, 9, 9), (1, 9, 9, 9), (1, 1, 1, 9),
}


def test_registry_has_the_thirteen_forms():
    assert {tuple(f) for f in supported_forms()} == THIRTEEN
    assert all(e.status == "theorem" and e.quantity == "t" for e in T_FORMULAS.values())
    assert [e.status for e in CONJECTURES.values()] == ["conjecture"]
    assert all(e.status == "cited-lemma" and e.quantity == "N" for e in N_FORMULAS)


@pytest.mark.parametrize(
    "form, n, expected",
    [
        ((1, 3, 9, 9), 3, 32),
        ((1, 3, 9, 9), 2, 0),
        ((1, 1, 4, 4), 1, 32),
        ((1, 4, 4, 4), 0, 16),
        ((1, 2, 4, 4), 1, 16),
        ((1, 1, 9, 9), 1, 32),
        ((1, 9, 9, 9), 3, 16),
        ((1, 1, 1, 9), 3, 64),
        ((1, 1, 1, 9), 2, 48),
        ((1, 3, 3, 9), 4, 32),
        ((1, 1, 3, 9), 2, 16),
    ],
)
def test_t_formula_examples(form, n, expected):
    assert t_formula(form, n) == expected
    assert count_t(form, n) == expected


def test_t_formula_is_order_insensitive():
    assert t_formula((9, 3, 9, 1), 3) == t_formula((1, 3, 9, 9), 3) == 32


@pytest.mark.parametrize("form", sorted(THIRTEEN))
def test_t_formula_matches_oracle_small(form):
    oracle = count_t_table(form, 60)
    assert [t_formula(form, n) for n in range(61)] == oracle.tolist()


def test_unsupported_form():
    with pytest.raises(UnsupportedForm, match="unsupported form"):
        t_formula((2, 2, 2, 2), 1)
    with pytest.raises(UnsupportedForm):
        t_formula((1, 1, 3, 4), 1)
    with pytest.raises(UnsupportedForm):
        n_formula((2, 2, 2, 2), 8)


def test_negative_n_rejected():
    with pytest.raises(DomainError):
        t_formula((1, 1, 1, 1), -1)


# --- N formulas ----------------------------------------------------------------


@pytest.mark.parametrize(
    "form, m, expected",
    [((1, 1, 4, 4), 10, 24), ((1, 4, 4, 4), 13, 28), ((1, 3, 9, 9), 22, 40), ((1, 1, 9, 9), 5, 8)],
)
def test_n_formula_examples(form, m, expected):
    assert n_formula(form, m) == expected
    assert count_n(form, m) == expected


def test_n_formula_outside_domain():
    with pytest.raises(DomainError):
        n_formula((1, 1, 4, 4), 11)
    with pytest.raises(DomainError):
        n_formula((1, 1, 9, 9), 1)
    with pytest.raises(DomainError):
        n_entries((1, 4, 4, 4))[0](3)


@pytest.mark.parametrize("index", range(len(N_FORMULAS)))
def test_n_entry_matches_oracle_small(index):
    e = N_FORMULAS[index]
    tab = count_n_table(e.form, 400)
    ms = [m for m in range(1, 401) if e.domain(m)]
    assert ms, "every entry has a nonempty domain below 400"
    assert [e(m) for m in ms] == [int(tab[m]) for m in ms]


def test_n_entries_per_form_have_disjoint_domains():
    forms = {e.form for e in N_FORMULAS}
    for f in forms:
        for e1, e2 in combinations(n_entries(f), 2):
            assert not any(e1.domain(m) and e2.domain(m) for m in range(1, 2000))


# --- branch coverage -------------------------------------------------------------

# Residue classes of n selecting each branch of the piecewise t-formulas.
BRANCHES = {
    (1, 1, 3, 3): (2, [{0}, {1}]),
    (1, 3, 3, 9): (6, [{2, 5}, {1}, {4}, {3}, {0}]),
    (1, 3, 9, 9): (3, [{2}, {0}, {1}]),
    (1, 1, 3, 9): (3, [{0}, {1}, {2}]),
    (1, 1, 9, 9): (9, [{0, 3, 6}, {2}, {5, 8}, {1, 4, 7}]),
    (1, 9, 9, 9): (9, [{1}, {2, 4, 5, 7, 8}, {0, 3, 6}]),
    (1, 1, 1, 9): (3, [{0}, {1}, {2}]),
}


@pytest.mark.parametrize("form", sorted(BRANCHES))
def test_branches_partition_residues(form):
    modulus, classes = BRANCHES[form]
    seen = [r for c in classes for r in c]
    assert sorted(seen) == list(range(modulus))
    # Each class is exercised against the oracle somewhere below 4 * modulus.
    oracle = count_t_table(form, 4 * modulus)
    for c in classes:
        ns = [n for n in range(4 * modulus + 1) if n % modulus in c]
        assert all(t_formula(form, n) == oracle[n] for n in ns)


def test_n_domains_partition_where_piecewise():
    one_nine = [e for e in N_FORMULAS if e.form == Form(1, 1, 9, 9)][0]
    assert [r for r in range(6) if one_nine.domain(6 + r)] == [0, 2, 4, 5]


# --- relations -------------------------------------------------------------------


@pytest.mark.parametrize(
    "form, printed", [((1, 1, 2, 2), 32), ((1, 1, 1, 3), 40), ((1, 1, 3, 3), 48), ((1, 1, 1, 1), 16)]
)
def test_capacity_constant_examples(form, printed):
    assert capacity_constant(form) == printed


def test_capacity_ratio_examples():
    assert capacity_ratio((1, 1, 2, 2)) == 32
    assert capacity_ratio((1, 1, 1, 3)) == 40
    assert capacity_ratio((1, 1, 3, 3)) == 52 - 4 == 48
    assert capacity_ratio((1, 1, 1, 1)) == 24


def test_capacity_sum_too_large():
    with pytest.raises(DomainError):
        capacity_constant((1, 2, 3, 3))
    with pytest.raises(DomainError):
        capacity_ratio((1, 2, 3, 3))


def test_inclusion_exclusion_terms_shape():
    terms = inclusion_exclusion_terms((1, 2, 3, 4))
    assert len(terms) == 16
    assert sum(s for s, _ in terms) == 0
    assert (1, Form(1, 2, 3, 4)) in terms and (1, Form(4, 8, 12, 16)) in terms
    assert (-1, Form(4, 2, 3, 4)) in terms


@pytest.mark.parametrize("form, n, expected", [((1, 1, 4, 4), 0, 16), ((1, 2, 2, 4), 1, 16), ((1, 1, 1, 1), 0, 16)])
def test_t_inclusion_exclusion_examples(form, n, expected):
    assert t_inclusion_exclusion(form, n) == expected == count_t(form, n)


def test_random_small_forms_are_reproducible():
    a, b = random_small_forms(20), random_small_forms(20)
    assert a == b and len(a) == 20
    assert all(1 <= k <= 4 for f in a for k in f)
    assert random_small_forms(20, seed=1) != a
    assert len(set(a)) == 20
    with pytest.raises(DomainError):
        random_small_forms(17, max_coeff=1)


def test_forty_relation_small():
    for n in range(8):
        assert count_n((1, 3, 9, 9), 8 * n + 22) == 40 * count_t_prime((1, 3, 9, 9), n)


# --- conjecture --------------------------------------------------------------------


@pytest.mark.parametrize("n, expected", [(0, 16), (1, 32)])
def test_conjecture_examples(n, expected):
    assert t_conjectured_1134(n) == expected


def test_conjecture_matches_oracle_small():
    oracle = count_t_table((1, 1, 3, 4), 50)
    assert [t_conjectured_1134(n) for n in range(51)] == oracle.tolist()
    assert lookup_t((1, 1, 3, 4), include_conjectures=True)(3) == count_t((1, 1, 3, 4), 3)


# --- errata ------------------------------------------------------------------------


def test_exactly_two_errata():
    assert set(ERRATA) == {"t1133-even-branch", "capacity-1111"}


def test_t1133_even_branch_constant():
    # n = 0: 16 points, the published constant would give 4.
    assert count_t((1, 1, 3, 3), 0) == 16 == t_1133(0)
    assert t_1133(0, even_constant=4) == 4
    err = ERRATA["t1133-even-branch"]
    assert err.published(4) == 4 * sigma(5) != count_t((1, 1, 3, 3), 4) == err.corrected(4) == 96
    # Odd n are untouched by the correction.
    assert all(err.published(n) == err.corrected(n) for n in range(1, 40, 2))


def test_capacity_1111_erratum():
    err = ERRATA["capacity-1111"]
    assert err.published == capacity_constant(err.form) == 16
    assert err.corrected == capacity_ratio(err.form) == 24
    for n in range(20):
        assert count_n((1, 1, 1, 1), 8 * n + 4) == 24 * count_t_prime((1, 1, 1, 1), n)
