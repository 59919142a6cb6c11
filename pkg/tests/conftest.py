from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from centra.catalog import data_path, load_corpus, load_group_file  # noqa: E402
from centra.constructors import from_spec  # noqa: E402


@pytest.fixture(scope="session")
def corpus():
    items = load_corpus("builtin")
    assert all(it.group is not None for it in items), [it.error for it in items if it.error]
    return items


@pytest.fixture(scope="session")
def groups(corpus):
    return {it.name: it.group for it in corpus}


@pytest.fixture(scope="session")
def spec():
    cache = {}

    def build(s: str):
        if s not in cache:
            G = from_spec(s)
            G.name = s
            cache[s] = G
        return cache[s]

    return build


@pytest.fixture(scope="session")
def fixture_group():
    def load(name: str):
        return load_group_file(data_path(f"{name}.permgrp"))

    return load
