"""JSON round-tripping for space descriptions and their samples.

Space schema: ``{"kind": "box" | "discrete" | ..., <kind-specific fields>}``.
Bounds are bit-exact: finite real64 values survive as JSON numbers
(shortest-round-trip encoding) and infinities are spelled as the strings
"inf" / "-inf".  Sample payloads need the space for context, so the value
codec is a pair of functions over (space, value).
"""

from __future__ import annotations

import json
import math

import numpy as np

from ..errors import MalformedDocument
from .core import (
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


def _encode_float(x: float):
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(x)


def _decode_float(obj) -> float:
    if obj == "inf":
        return math.inf
    if obj == "-inf":
        return -math.inf
    if isinstance(obj, bool) or not isinstance(obj, (int, float)):
        raise MalformedDocument(f"expected a number or 'inf'/'-inf', got {obj!r}")
    return float(obj)


def _encode_bounds(arr: np.ndarray):
    if arr.ndim == 0:
        return _encode_float(float(arr))
    return [_encode_bounds(sub) for sub in arr]


def _decode_bounds(obj):
    if isinstance(obj, list):
        return [_decode_bounds(sub) for sub in obj]
    return _decode_float(obj)


def space_to_jsonable(space: Space) -> dict:
    """Encode a space description as a JSON-compatible dict."""
    if isinstance(space, Box):
        return {
            "kind": "box",
            "low": _encode_bounds(space.low),
            "high": _encode_bounds(space.high),
            "shape": list(space.shape),
            "dtype": "int64" if space.dtype == np.int64 else "real64",
        }
    if isinstance(space, Discrete):
        return {"kind": "discrete", "n": space.n, "start": space.start}
    if isinstance(space, MultiDiscrete):
        return {"kind": "multi_discrete", "nvec": space.nvec.tolist()}
    if isinstance(space, MultiBinary):
        return {"kind": "multi_binary", "n": space.n}
    if isinstance(space, Text):
        return {
            "kind": "text",
            "min_length": space.min_length,
            "max_length": space.max_length,
            "charset": space.charset,
        }
    if isinstance(space, Product):
        return {"kind": "product", "subspaces": [space_to_jsonable(s) for s in space.subspaces]}
    if isinstance(space, Mapping):
        return {
            "kind": "mapping",
            "entries": [[k, space_to_jsonable(s)] for k, s in space.entries],
        }
    if isinstance(space, Sequence):
        return {"kind": "sequence", "element": space_to_jsonable(space.element)}
    if isinstance(space, Graph):
        return {
            "kind": "graph",
            "node_space": space_to_jsonable(space.node_space),
            "edge_space": None if space.edge_space is None else space_to_jsonable(space.edge_space),
        }
    if isinstance(space, OneOf):
        return {"kind": "one_of", "alternatives": [space_to_jsonable(s) for s in space.alternatives]}
    raise TypeError(f"not a space: {space!r}")


def space_from_jsonable(obj) -> Space:
    """Decode a space description; raises MalformedDocument on bad input."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise MalformedDocument(f"space document must be an object with a 'kind', got {obj!r}")
    kind = obj["kind"]
    try:
        if kind == "box":
            dtype = np.int64 if obj.get("dtype") == "int64" else np.float64
            return Box(
                np.asarray(_decode_bounds(obj["low"]), dtype=np.float64),
                np.asarray(_decode_bounds(obj["high"]), dtype=np.float64),
                shape=tuple(obj["shape"]),
                dtype=dtype,
            )
        if kind == "discrete":
            return Discrete(obj["n"], start=obj.get("start", 0))
        if kind == "multi_discrete":
            return MultiDiscrete(obj["nvec"])
        if kind == "multi_binary":
            return MultiBinary(obj["n"])
        if kind == "text":
            return Text(obj["max_length"], obj.get("min_length", 0), obj["charset"])
        if kind == "product":
            return Product(space_from_jsonable(s) for s in obj["subspaces"])
        if kind == "mapping":
            return Mapping((k, space_from_jsonable(s)) for k, s in obj["entries"])
        if kind == "sequence":
            return Sequence(space_from_jsonable(obj["element"]))
        if kind == "graph":
            edge = obj.get("edge_space")
            return Graph(
                space_from_jsonable(obj["node_space"]),
                None if edge is None else space_from_jsonable(edge),
            )
        if kind == "one_of":
            return OneOf(space_from_jsonable(s) for s in obj["alternatives"])
    except MalformedDocument:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDocument(f"bad {kind} space document: {exc}") from exc
    raise MalformedDocument(f"unknown space kind {kind!r}")


def space_to_json(space: Space) -> str:
    """Canonical (sorted keys, compact) JSON text for a space."""
    return json.dumps(space_to_jsonable(space), sort_keys=True, separators=(",", ":"))


def space_from_json(text: str) -> Space:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"invalid JSON: {exc}") from exc
    return space_from_jsonable(obj)


# --- sample payloads --------------------------------------------------------

def value_to_jsonable(space: Space, value):
    """Encode a member of ``space`` for transport (arrays as nested lists)."""
    if isinstance(space, Box):
        if space.dtype == np.int64:
            return np.asarray(value, dtype=np.int64).tolist()
        return _encode_bounds(np.asarray(value, dtype=np.float64))
    if isinstance(space, Discrete):
        return int(value)
    if isinstance(space, (MultiDiscrete, MultiBinary)):
        return np.asarray(value, dtype=np.int64).tolist()
    if isinstance(space, Text):
        return str(value)
    if isinstance(space, Product):
        return [value_to_jsonable(s, v) for s, v in zip(space.subspaces, value)]
    if isinstance(space, Mapping):
        return {k: value_to_jsonable(s, value[k]) for k, s in space.entries}
    if isinstance(space, Sequence):
        return [value_to_jsonable(space.element, v) for v in value]
    if isinstance(space, Graph):
        assert isinstance(value, GraphValue)
        nodes = _stacked_to_jsonable(space.node_space, value.nodes)
        edges = None if value.edges is None else _stacked_to_jsonable(space.edge_space, value.edges)
        return {"nodes": nodes, "edges": edges, "edge_links": np.asarray(value.edge_links).tolist()}
    if isinstance(space, OneOf):
        index = int(value[0])
        return [index, value_to_jsonable(space.alternatives[index], value[1])]
    raise TypeError(f"not a space: {space!r}")


def value_from_jsonable(space: Space, obj):
    """Decode a transported sample back into its native representation."""
    if isinstance(space, Box):
        if space.dtype == np.int64:
            return np.asarray(obj, dtype=np.int64).reshape(space.shape)
        return np.asarray(_decode_bounds(obj), dtype=np.float64).reshape(space.shape)
    if isinstance(space, Discrete):
        return int(obj)
    if isinstance(space, (MultiDiscrete, MultiBinary)):
        return np.asarray(obj, dtype=np.int64)
    if isinstance(space, Text):
        return str(obj)
    if isinstance(space, Product):
        return tuple(value_from_jsonable(s, v) for s, v in zip(space.subspaces, obj))
    if isinstance(space, Mapping):
        return {k: value_from_jsonable(s, obj[k]) for k, s in space.entries}
    if isinstance(space, Sequence):
        return tuple(value_from_jsonable(space.element, v) for v in obj)
    if isinstance(space, Graph):
        n_edges = len(obj["edge_links"])
        return GraphValue(
            nodes=_stacked_from_jsonable(space.node_space, obj["nodes"]),
            edges=(
                None
                if obj.get("edges") is None
                else _stacked_from_jsonable(space.edge_space, obj["edges"])
            ),
            edge_links=np.asarray(obj["edge_links"], dtype=np.int64).reshape(n_edges, 2),
        )
    if isinstance(space, OneOf):
        index = int(obj[0])
        return (index, value_from_jsonable(space.alternatives[index], obj[1]))
    raise TypeError(f"not a space: {space!r}")


def _stacked_to_jsonable(space, stacked):
    arr = np.asarray(stacked)
    if isinstance(space, Discrete) or (isinstance(space, Box) and space.dtype == np.int64):
        return arr.astype(np.int64).tolist()
    return _encode_bounds(arr.astype(np.float64))


def _stacked_from_jsonable(space, obj):
    if isinstance(space, Discrete) or (isinstance(space, Box) and space.dtype == np.int64):
        return np.asarray(obj, dtype=np.int64)
    arr = np.asarray(_decode_bounds(obj), dtype=np.float64)
    if isinstance(space, Box):
        return arr.reshape((-1,) + space.shape)
    return arr
