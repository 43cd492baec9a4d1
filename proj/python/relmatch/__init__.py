"""Streaming sliding-window pattern matching toolkit.

Thin python surface over the C++ core: relation classification,
baseline and sublinear matching engines, one-way protocol reductions
and engine state metering.
"""

import json as _json

from relmatch._core import (  # noqa: F401
    DeltaMatrix,
    ParseError,
    RelationError,
    StateError,
    SymbolError,
    __version__,
    classify_json,
    fit_growth,
    load_matrix,
    match_edit,
    match_stream,
    match_swap,
    measure,
    meter_engine_ids,
    run_disjointness,
    run_equality,
    run_indexing_via_edit,
    run_indexing_via_sum,
    run_indexing_via_wildcard,
    run_parity_indexing,
    validity,
)


def classify(matrix, op):
    """Classification report as a dict."""
    return _json.loads(classify_json(matrix, op))


def load_matrix_file(path):
    with open(path, "r", encoding="utf-8") as f:
        return load_matrix(f.read())
