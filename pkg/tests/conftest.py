"""Shared fixtures: the space catalog and acceptance-line reporting."""

import numpy as np
import pytest

from envkit.spaces import (
    Box,
    Discrete,
    Graph,
    Mapping,
    MultiBinary,
    MultiDiscrete,
    OneOf,
    Product,
    Sequence,
    Text,
)


def space_catalog():
    """One representative space per kind plus nesting/bound variants.

    Keys are stable so parametrized tests read well; every one of the ten
    kinds appears at least once.
    """
    return {
        "box_bounded": Box([-1.0, -1.0], [1.0, 1.0]),
        "box_matrix": Box(-5.0, 5.0, shape=(2, 3)),
        "box_unbounded": Box(-np.inf, np.inf, shape=(3,)),
        "box_half_bounded": Box([0.0, -np.inf], [np.inf, 5.0]),
        "box_int": Box(0, 9, shape=(4,), dtype=np.int64),
        "discrete": Discrete(4),
        "discrete_start": Discrete(3, start=-2),
        "multi_discrete": MultiDiscrete([3, 5, 2]),
        "multi_binary": MultiBinary(5),
        "text": Text(8, min_length=1),
        "product": Product((Discrete(2), Box(0.0, 1.0, shape=(1,)))),
        "mapping": Mapping({"a": Box(-1.0, 1.0, shape=(2,)), "b": Discrete(3)}),
        "sequence": Sequence(Discrete(4)),
        "graph": Graph(Box(-1.0, 1.0, shape=(2,)), Discrete(3)),
        "graph_no_edges": Graph(Discrete(5)),
        "one_of": OneOf((Discrete(2), Box(0.0, 1.0, shape=(1,)))),
        "nested": Mapping(
            {"pair": Product((Discrete(2), MultiBinary(3))), "word": Text(4)}
        ),
    }


FLATTENABLE = (
    "box_bounded",
    "box_matrix",
    "box_unbounded",
    "box_half_bounded",
    "box_int",
    "discrete",
    "discrete_start",
    "multi_discrete",
    "multi_binary",
    "product",
    "mapping",
    "one_of",
)


@pytest.fixture
def catalog():
    return space_catalog()


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    outcome = "PASS" if report.passed else "FAIL"
    print(f"\n[ACCEPTANCE] {name}: {outcome}", flush=True)
