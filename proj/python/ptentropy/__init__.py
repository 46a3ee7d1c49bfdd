"""Shannon entropies of Pöschl-Teller bound states, BBM checks and entropy carpets."""

import json as _json

from ._core import (
    BBM_BOUND,
    ConvergenceError,
    DomainError,
    __version__,
    analytic_ground_entropy,
    bbm_check,
    coherent_coefficients,
    entropy_carpet,
    excited_entropies,
    ground_entropies,
    revival_period,
    table1,
)
from ._core import _selftest_json


def selftest(inject_fault=None):
    """Run acceptance criteria and invariants; returns the JSON summary as a dict."""
    return _json.loads(_selftest_json(inject_fault or ""))


__all__ = [
    "BBM_BOUND",
    "ConvergenceError",
    "DomainError",
    "__version__",
    "analytic_ground_entropy",
    "bbm_check",
    "coherent_coefficients",
    "entropy_carpet",
    "excited_entropies",
    "ground_entropies",
    "revival_period",
    "selftest",
    "table1",
]
