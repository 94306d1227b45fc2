"""Balanced pair algorithm for substitutions: exact spectral data, pair closure and verdicts."""

import json

from ._core import (
    Error,
    InvalidLength,
    InvalidPrefix,
    NotBalanced,
    NotPrimitive,
    Outcome,
    ParseError,
    Relation,
    Substitution,
    __version__,
    letter_classes,
    run_bpa,
)
from . import _core

__all__ = [
    "Error",
    "InvalidLength",
    "InvalidPrefix",
    "NotBalanced",
    "NotPrimitive",
    "Outcome",
    "ParseError",
    "Relation",
    "Substitution",
    "__version__",
    "analyze",
    "describe",
    "letter_classes",
    "load",
    "run_bpa",
]


def load(path):
    """Reads a rule file."""
    with open(path, encoding="utf-8") as f:
        return Substitution.parse(f.read())


def describe(substitution):
    """Spectrum, Perron data and letter classes as a dict."""
    return json.loads(_core.describe_json(substitution))


def analyze(substitution, prefix=None, lengths=(), mode=None, **budgets):
    """Runs every requested cell and returns the report as a dict.

    Without lengths or mode the letter-class relation is used; with lengths the
    generalized relation runs once per length ("ones", "lambda" or "a,b,c").
    """
    return json.loads(_core.analyze_json(substitution, prefix, list(lengths), mode, **budgets))
