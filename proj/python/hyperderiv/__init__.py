"""Moment functions, higher-order derivations and Fourier transforms on
commutative hypergroups.

Reports are returned as dictionaries with the same layout as the CLI's JSON
output. Families, measures and sample sets accept either Python objects or
JSON text in the CLI's literal formats.
"""

import json as _json

from ._hyperderiv import (
    DomainError,
    Error,
    EvaluationError,
    Hypergroup,
    HypergroupError,
    ParseError,
    PreconditionError,
    derivative_moments as _derivative_moments,
    lower_indices,
    multi_binomial,
    run_cli,
    taylor_reconstruct,
    transform as _transform,
)
from . import _hyperderiv

__all__ = [
    "DomainError",
    "Error",
    "EvaluationError",
    "Hypergroup",
    "HypergroupError",
    "ParseError",
    "PreconditionError",
    "check_axioms",
    "derivative_moments",
    "extend",
    "leibniz",
    "lower_indices",
    "multi_binomial",
    "run_cli",
    "taylor_reconstruct",
    "transform",
    "verify_moments",
]


def _text(value):
    if value is None:
        return ""
    return value if isinstance(value, str) else _json.dumps(value)


def _hypergroup(h):
    return h if isinstance(h, Hypergroup) else Hypergroup(h)


def check_axioms(hypergroup, bound=8):
    return _json.loads(_hypergroup(hypergroup).check_axioms(bound))


def verify_moments(hypergroup, family, pairs=None, order=0, rank=0, tol=0.0):
    """Checks the moment identity for every alpha up to the family's order."""
    return _json.loads(
        _hyperderiv._verify_moments(_hypergroup(hypergroup), _text(family), _text(pairs), order, rank, tol)
    )


def leibniz(hypergroup, family, samples=None, order=0, rank=0, seed=1, tol=0.0):
    """Checks the generalized Leibniz rule for the family's multiplication operators."""
    return _json.loads(
        _hyperderiv._leibniz(_hypergroup(hypergroup), _text(family), _text(samples), order, rank, seed, tol)
    )


def transform(hypergroup, measure):
    return _transform(_hypergroup(hypergroup), _text(measure))


def derivative_moments(hypergroup, measure, z, count):
    return _derivative_moments(_hypergroup(hypergroup), _text(measure), z, count)


def extend(hypergroup, exponential, rank=1, order=3):
    """Iterated extension from the given exponential of a finite hypergroup.

    Yields (alpha, consistent, zero_only, null_dimension) per step.
    """
    return _hyperderiv._extend(_hypergroup(hypergroup), exponential, rank, order)
