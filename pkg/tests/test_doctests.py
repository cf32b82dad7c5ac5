import doctest
import importlib

import pytest

MODULES = ["graph", "minsep", "pmc", "dp", "iso", "matching", "oracle", "validation"]


@pytest.mark.parametrize("name", MODULES)
def test_docstring_examples(name):
    module = importlib.import_module(f"triangulex.{name}")
    failures, _ = doctest.testmod(module)
    assert failures == 0
