from __future__ import annotations

import pytest

from hypertoric.arrangement import StackyArrangement
from hypertoric.examples_data import example_document, example_names


@pytest.fixture(scope="session")
def shipped():
    """All shipped example arrangements, keyed by catalog name."""
    return {
        name: StackyArrangement.from_data(example_document(name))
        for name in example_names()
    }


@pytest.fixture(scope="session")
def tp1(shipped):
    return shipped["cotangent-p1"]


@pytest.fixture(scope="session")
def tp12(shipped):
    return shipped["cotangent-p12"]


@pytest.fixture(scope="session")
def hirzebruch(shipped):
    return shipped["hirzebruch"]


@pytest.fixture(scope="session")
def hirzebruch_weighted(shipped):
    return shipped["hirzebruch-weighted"]
