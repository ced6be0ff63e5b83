import json
import os
import pathlib

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]
SCHEMAS = ROOT / "docs" / "schemas"


@pytest.fixture(scope="session")
def schema():
    cache = {}

    def load(name):
        if name not in cache:
            cache[name] = json.loads((SCHEMAS / f"{name}.schema.json").read_text())
        return cache[name]

    return load


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("ANAGRAM_FORGE_CLI")
    if not path:
        pytest.skip("ANAGRAM_FORGE_CLI is not set")
    return path
