"""Observation/action space algebra: kinds, sampling, flattening, batching."""

from .core import (
    DEFAULT_TEXT_CHARSET,
    Box,
    Discrete,
    Graph,
    GraphValue,
    Mapping,
    MultiBinary,
    MultiDiscrete,
    OneOf,
    Product,
    Sequence,
    Space,
    Text,
)
from .serde import (
    space_from_json,
    space_from_jsonable,
    space_to_json,
    space_to_jsonable,
    value_from_jsonable,
    value_to_jsonable,
)
from .utils import (
    batch_space,
    concatenate,
    flatdim,
    flatten,
    iterate,
    unflatten,
    values_equal,
)

__all__ = [
    "DEFAULT_TEXT_CHARSET",
    "Box",
    "Discrete",
    "Graph",
    "GraphValue",
    "Mapping",
    "MultiBinary",
    "MultiDiscrete",
    "OneOf",
    "Product",
    "Sequence",
    "Space",
    "Text",
    "batch_space",
    "concatenate",
    "flatdim",
    "flatten",
    "iterate",
    "space_from_json",
    "space_from_jsonable",
    "space_to_json",
    "space_to_jsonable",
    "unflatten",
    "value_from_jsonable",
    "value_to_jsonable",
    "values_equal",
]
