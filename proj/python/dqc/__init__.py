"""Distributed quantum circuit toolkit.

Circuits cross the Python boundary as canonical JSON text (see
docs/circuit_schema.md); resource and verification reports come back as
plain dicts.
"""

from ._core import (
    DqcError,
    build_parity,
    build_pauli_exp,
    build_qaoa,
    build_qft,
    compare_qft,
    count,
    depth,
    expand,
    group_fanouts,
    verify,
)

__all__ = [
    "DqcError",
    "build_parity",
    "build_pauli_exp",
    "build_qaoa",
    "build_qft",
    "compare_qft",
    "count",
    "depth",
    "expand",
    "group_fanouts",
    "verify",
]
