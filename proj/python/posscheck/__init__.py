"""Possibility distributions, conditional T-independence and Markov properties."""

from ._core import (
    Model,
    PosscheckError,
    TNorm,
    check_axiom,
    example_ids,
    example_model,
    factorize,
    independent,
    markov,
    run_cli,
    scan_axioms,
)

__all__ = [
    "Model",
    "PosscheckError",
    "TNorm",
    "check_axiom",
    "example_ids",
    "example_model",
    "factorize",
    "independent",
    "markov",
    "run_cli",
    "scan_axioms",
]
