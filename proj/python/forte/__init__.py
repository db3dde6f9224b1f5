"""Out-of-distribution detection on embedding features.

Thin wrapper over the native module: report-producing calls return parsed
dictionaries instead of JSON strings.
"""

import json

from ._forte import (
    DataError,
    NumericError,
    auroc,
    expected_prdc,
    fpr_at_tpr,
    isolation_forest,
    lof,
    prdc_features,
    sample_gaussian,
)
from ._forte import detect as _detect
from ._forte import simulate as _simulate

__all__ = [
    "DataError",
    "NumericError",
    "auroc",
    "detect",
    "expected_prdc",
    "fpr_at_tpr",
    "isolation_forest",
    "lof",
    "prdc_features",
    "sample_gaussian",
    "simulate",
]


def detect(id_spaces, ood_spaces, **kwargs):
    """Run the full pipeline and return the evaluation report as a dict."""
    return json.loads(_detect(id_spaces, ood_spaces, **kwargs))


def simulate(**kwargs):
    """Monte Carlo verification of the closed-form PRDC moments, as a dict."""
    return json.loads(_simulate(**kwargs))
