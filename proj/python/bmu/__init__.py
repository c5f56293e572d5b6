"""Finite-dimensional braided multiplicative unitaries."""

import json

from ._bmu import (  # noqa: F401
    Braiding,
    Error,
    FiniteGroup,
    MultUnitary,
    ParseError,
    SchemaError,
    Space,
    __version__,
    braiding,
    canonical_statement,
    cyclic_group,
    dual,
    goodness,
    kac_takesaki,
    pentagon_residual,
    regularity,
    run_cli,
    semidirect_z2,
    sign_module_braiding,
    span_ranks,
    statement_residual,
    symmetric_group,
)
from . import _bmu


def certificate(unitary, tol=1e-9):
    """Full certificate as a dict (checks, regularity, all_pass)."""
    return json.loads(_bmu._certificate_json(unitary, tol))


def search(space, braiding="flip", modulus=2, degree_modulus=0, seed=0, restarts=16,
           max_iter=200, target_residual=1e-10):
    """Multi-restart search; returns the same document as `bmu search -o`."""
    return json.loads(_bmu._search_json(space, braiding, modulus, degree_modulus, seed,
                                        restarts, max_iter, target_residual))
