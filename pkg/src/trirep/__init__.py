"""Closed forms and brute-force checks for t(a,b,c,d;n), the number of ways to
write n as a x(x-1)/2 + b y(y-1)/2 + c z(z-1)/2 + d w(w-1)/2 over integers."""

from .errors import BudgetExceeded, DomainError, InvariantViolation, UnsupportedForm
from .formulas import n_formula, t_formula
from .oracle import Form, count_n, count_n0, count_t, count_t_prime

__all__ = [
    "BudgetExceeded",
    "DomainError",
    "Form",
    "InvariantViolation",
    "UnsupportedForm",
    "count_n",
    "count_n0",
    "count_t",
    "count_t_prime",
    "n_formula",
    "t_formula",
]

__version__ = "0.1.0"
