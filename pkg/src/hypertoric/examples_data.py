"""Shipped example arrangements.

The stability vectors are written in the coordinates of the package's
canonical Gale dual basis; the lift psi is recorded explicitly so the
hyperplane geometry is reproducible bit for bit.
"""

from __future__ import annotations

SCHEMA_VERSION = "hypertoric-arrangement/1"

EXAMPLES = {
    "cotangent-p1": {
        "schema_version": SCHEMA_VERSION,
        "name": "cotangent-p1",
        "rank": 1,
        "torsion": [],
        "beta": [[-1], [1]],
        "theta": [-1],
        "psi": [1, 0],
    },
    "cotangent-p12": {
        "schema_version": SCHEMA_VERSION,
        "name": "cotangent-p12",
        "rank": 1,
        "torsion": [],
        "beta": [[-2], [1]],
        "theta": [-1],
        "psi": [1, 0],
    },
    "hirzebruch": {
        "schema_version": SCHEMA_VERSION,
        "name": "hirzebruch",
        "rank": 2,
        "torsion": [],
        "beta": [[1, 0], [0, -1], [0, 1], [-1, -1]],
        "theta": [-2, -1],
        "psi": [0, 1, 0, 2],
    },
    "hirzebruch-weighted": {
        "schema_version": SCHEMA_VERSION,
        "name": "hirzebruch-weighted",
        "rank": 2,
        "torsion": [],
        "beta": [[1, 0], [0, -1], [0, 1], [-1, -2]],
        "theta": [-3, -1],
        "psi": [0, 1, 0, 3],
    },
}


def example_names():
    return tuple(sorted(EXAMPLES))


def example_document(name: str) -> dict:
    import copy

    if name not in EXAMPLES:
        raise KeyError(f"unknown example {name!r}; known: {', '.join(example_names())}")
    return copy.deepcopy(EXAMPLES[name])
