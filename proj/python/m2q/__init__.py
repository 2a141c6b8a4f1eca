"""Certified bounds for hypercontractive 2->q matrix norms.

All functions take a float64 array of shape (n, d) whose rows are the data
points; reports come back as plain dicts with the same keys as the CLI JSON.
"""

from ._m2q import (
    CapacityError,
    DegenerateInputError,
    certify,
    certify_p_to_q,
    expectation_norm,
    gamma_p,
    generate,
    oracle,
)

__all__ = [
    "CapacityError",
    "DegenerateInputError",
    "certify",
    "certify_p_to_q",
    "expectation_norm",
    "gamma_p",
    "generate",
    "oracle",
]
