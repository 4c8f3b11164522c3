"""The ten space kinds: structural membership and seeded sampling.

Fundamental kinds (Box, Discrete, MultiDiscrete, MultiBinary, Text) are
leaves; composite kinds (Product, Mapping, Sequence, Graph, OneOf) nest
arbitrary subspaces.  Space descriptions are immutable after construction
and safe to share across concurrent readers; sampling takes an explicit
:class:`~envkit.seeding.Rng` so the module holds no hidden state.

contains() never raises: a structurally mismatched value is simply not a
member.  sample() always returns a member and consumes the generator
deterministically, so equal seeds give equal samples.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Any, Iterable, Optional

import numpy as np

from ..seeding import Rng

DEFAULT_TEXT_CHARSET = string.digits + string.ascii_uppercase + string.ascii_lowercase

_INT_KINDS = "iu"
_NUMERIC_KINDS = "iuf"


def _is_int_scalar(value: Any) -> bool:
    return isinstance(value, (int, np.integer)) and not isinstance(value, bool)


class Space:
    """Base class for all space kinds."""

    def contains(self, value: Any) -> bool:
        """True iff ``value`` is a member of this space.  Never raises."""
        raise NotImplementedError

    def sample(self, rng: Rng) -> Any:
        """Draw one member of this space from ``rng``."""
        raise NotImplementedError


class Box(Space):
    """Bounded or unbounded arrays of real64 or int64 elements.

    ``low`` and ``high`` may be scalars (broadcast over ``shape``) or arrays
    (shape inferred).  Bounds must be NaN-free with ``low <= high``
    elementwise; infinities are allowed for the real64 dtype only.
    """

    def __init__(self, low, high, shape: Optional[tuple[int, ...]] = None, dtype=np.float64):
        dtype = np.dtype(dtype)
        if dtype not in (np.dtype(np.float64), np.dtype(np.int64)):
            raise ValueError(f"Box dtype must be float64 or int64, got {dtype}")
        self.dtype = dtype

        low = np.asarray(low, dtype=np.float64)
        high = np.asarray(high, dtype=np.float64)
        if shape is not None:
            shape = tuple(int(d) for d in shape)
        elif low.shape != ():
            shape = low.shape
        elif high.shape != ():
            shape = high.shape
        else:
            raise ValueError("Box needs an explicit shape when both bounds are scalars")
        try:
            low = np.broadcast_to(low, shape).astype(np.float64)
            high = np.broadcast_to(high, shape).astype(np.float64)
        except ValueError:
            raise ValueError(f"Box bounds are not broadcastable to shape {shape}") from None

        if np.isnan(low).any() or np.isnan(high).any():
            raise ValueError("Box bounds must not contain NaN")
        if not (low <= high).all():
            raise ValueError("Box requires low <= high elementwise")
        if self.dtype == np.int64:
            if not (np.isfinite(low).all() and np.isfinite(high).all()):
                raise ValueError("int64 Box bounds must be finite")
            low = low.astype(np.int64).astype(np.float64)
            high = high.astype(np.int64).astype(np.float64)

        self.shape = shape
        self.low = low.copy()
        self.high = high.copy()
        self.low.flags.writeable = False
        self.high.flags.writeable = False

    def contains(self, value):
        try:
            arr = np.asarray(value)
        except Exception:
            return False
        if arr.shape != self.shape:
            return False
        kinds = _INT_KINDS if self.dtype == np.int64 else _NUMERIC_KINDS
        if arr.dtype.kind not in kinds:
            return False
        arr = arr.astype(np.float64)
        return bool(np.all(arr >= self.low) and np.all(arr <= self.high))

    def sample(self, rng):
        low = self.low.reshape(-1)
        high = self.high.reshape(-1)
        if self.dtype == np.int64:
            out = np.empty(low.size, dtype=np.int64)
            for i in range(low.size):
                span = int(high[i]) - int(low[i]) + 1
                out[i] = int(low[i]) + rng.below(span)
            return out.reshape(self.shape)
        # Per-element rule: uniform on a finite interval, standard normal when
        # unbounded on both sides, bound + standard exponential offset when
        # half-bounded.  Elements are drawn in row-major order.
        out = np.empty(low.size, dtype=np.float64)
        for i in range(low.size):
            lo, hi = low[i], high[i]
            lo_finite, hi_finite = np.isfinite(lo), np.isfinite(hi)
            if lo_finite and hi_finite:
                out[i] = lo + (hi - lo) * rng.next_double()
            elif not lo_finite and not hi_finite:
                out[i] = rng.normal()
            elif lo_finite:
                out[i] = lo + rng.exponential()
            else:
                out[i] = hi - rng.exponential()
        return out.reshape(self.shape)

    def __eq__(self, other):
        return (
            isinstance(other, Box)
            and self.dtype == other.dtype
            and self.shape == other.shape
            and np.array_equal(self.low, other.low)
            and np.array_equal(self.high, other.high)
        )

    def __repr__(self):
        return f"Box(shape={self.shape}, dtype={self.dtype.name})"


class Discrete(Space):
    """Integers ``start, start + 1, ..., start + n - 1``."""

    def __init__(self, n: int, start: int = 0):
        n = int(n)
        if n < 1:
            raise ValueError(f"Discrete requires n >= 1, got {n}")
        self.n = n
        self.start = int(start)

    def contains(self, value):
        if not _is_int_scalar(value):
            return False
        return self.start <= int(value) < self.start + self.n

    def sample(self, rng):
        return self.start + rng.below(self.n)

    def __eq__(self, other):
        return isinstance(other, Discrete) and (self.n, self.start) == (other.n, other.start)

    def __repr__(self):
        return f"Discrete({self.n})" if self.start == 0 else f"Discrete({self.n}, start={self.start})"


class MultiDiscrete(Space):
    """A vector of independent counters; entry ``i`` ranges over [0, nvec[i])."""

    def __init__(self, nvec: Iterable[int]):
        nvec = np.asarray(list(nvec), dtype=np.int64)
        if nvec.ndim != 1 or nvec.size == 0:
            raise ValueError("MultiDiscrete requires a non-empty 1-D list of counts")
        if (nvec < 1).any():
            raise ValueError("MultiDiscrete counts must all be >= 1")
        self.nvec = nvec
        self.nvec.flags.writeable = False

    def contains(self, value):
        try:
            arr = np.asarray(value)
        except Exception:
            return False
        if arr.shape != self.nvec.shape or arr.dtype.kind not in _INT_KINDS:
            return False
        return bool(np.all(arr >= 0) and np.all(arr < self.nvec))

    def sample(self, rng):
        return np.array([rng.below(int(n)) for n in self.nvec], dtype=np.int64)

    def __eq__(self, other):
        return isinstance(other, MultiDiscrete) and np.array_equal(self.nvec, other.nvec)

    def __repr__(self):
        return f"MultiDiscrete({self.nvec.tolist()})"


class MultiBinary(Space):
    """Fixed-length bit vectors."""

    def __init__(self, n: int):
        n = int(n)
        if n < 1:
            raise ValueError(f"MultiBinary requires n >= 1, got {n}")
        self.n = n

    def contains(self, value):
        try:
            arr = np.asarray(value)
        except Exception:
            return False
        if arr.shape != (self.n,) or arr.dtype.kind not in _INT_KINDS:
            return False
        return bool(np.all((arr == 0) | (arr == 1)))

    def sample(self, rng):
        return np.array([rng.below(2) for _ in range(self.n)], dtype=np.int64)

    def __eq__(self, other):
        return isinstance(other, MultiBinary) and self.n == other.n

    def __repr__(self):
        return f"MultiBinary({self.n})"


class Text(Space):
    """Strings over a fixed character set with bounded length.

    Samples draw the length uniformly from [min_length, max_length] and the
    characters i.i.d. uniformly over the charset.
    """

    def __init__(self, max_length: int, min_length: int = 0, charset: str = DEFAULT_TEXT_CHARSET):
        max_length, min_length = int(max_length), int(min_length)
        if min_length < 0:
            raise ValueError("Text min_length must be >= 0")
        if max_length < min_length:
            raise ValueError("Text requires min_length <= max_length")
        if not charset:
            raise ValueError("Text charset must be non-empty")
        if len(set(charset)) != len(charset):
            raise ValueError("Text charset characters must be unique")
        self.min_length = min_length
        self.max_length = max_length
        self.charset = charset
        self._charset_index = frozenset(charset)

    def contains(self, value):
        if not isinstance(value, str):
            return False
        if not self.min_length <= len(value) <= self.max_length:
            return False
        return all(ch in self._charset_index for ch in value)

    def sample(self, rng):
        length = self.min_length + rng.below(self.max_length - self.min_length + 1)
        return "".join(self.charset[rng.below(len(self.charset))] for _ in range(length))

    def __eq__(self, other):
        return isinstance(other, Text) and (
            (self.min_length, self.max_length, self.charset)
            == (other.min_length, other.max_length, other.charset)
        )

    def __repr__(self):
        return f"Text({self.min_length}..{self.max_length})"


class Product(Space):
    """A fixed-length heterogeneous tuple of subspaces."""

    def __init__(self, subspaces: Iterable[Space]):
        subspaces = tuple(subspaces)
        if not subspaces:
            raise ValueError("Product requires at least one subspace")
        if not all(isinstance(s, Space) for s in subspaces):
            raise ValueError("Product subspaces must all be Space instances")
        self.subspaces = subspaces

    def contains(self, value):
        if not isinstance(value, (tuple, list)) or len(value) != len(self.subspaces):
            return False
        return all(s.contains(v) for s, v in zip(self.subspaces, value))

    def sample(self, rng):
        return tuple(s.sample(rng) for s in self.subspaces)

    def __eq__(self, other):
        return isinstance(other, Product) and self.subspaces == other.subspaces

    def __repr__(self):
        return f"Product({', '.join(map(repr, self.subspaces))})"


class Mapping(Space):
    """String-keyed subspaces with a fixed, significant entry order."""

    def __init__(self, entries):
        if isinstance(entries, dict):
            entries = tuple(entries.items())
        else:
            entries = tuple((k, s) for k, s in entries)
        keys = [k for k, _ in entries]
        if len(set(keys)) != len(keys):
            raise ValueError("Mapping keys must be unique")
        for key, sub in entries:
            if not isinstance(key, str):
                raise ValueError(f"Mapping keys must be strings, got {type(key).__name__}")
            if not isinstance(sub, Space):
                raise ValueError(f"Mapping entry {key!r} is not a Space")
        self.entries = entries

    def keys(self):
        return tuple(k for k, _ in self.entries)

    def contains(self, value):
        if not isinstance(value, dict):
            return False
        if set(value.keys()) != set(self.keys()):
            return False
        return all(sub.contains(value[key]) for key, sub in self.entries)

    def sample(self, rng):
        return {key: sub.sample(rng) for key, sub in self.entries}

    def __eq__(self, other):
        return isinstance(other, Mapping) and self.entries == other.entries

    def __repr__(self):
        inner = ", ".join(f"{k}: {s!r}" for k, s in self.entries)
        return f"Mapping({inner})"


class Sequence(Space):
    """Variable-length homogeneous tuples of one element space.

    Sampled lengths follow a geometric law with stop probability 0.25,
    capped at 16 elements; membership accepts any length.
    """

    STOP_PROBABILITY = 0.25
    MAX_SAMPLED_LENGTH = 16

    def __init__(self, element: Space):
        if not isinstance(element, Space):
            raise ValueError("Sequence element must be a Space")
        self.element = element

    def contains(self, value):
        if not isinstance(value, (tuple, list)):
            return False
        return all(self.element.contains(v) for v in value)

    def sample(self, rng):
        length = 0
        while length < self.MAX_SAMPLED_LENGTH:
            if rng.next_double() < self.STOP_PROBABILITY:
                break
            length += 1
        return tuple(self.element.sample(rng) for _ in range(length))

    def __eq__(self, other):
        return isinstance(other, Sequence) and self.element == other.element

    def __repr__(self):
        return f"Sequence({self.element!r})"


@dataclass
class GraphValue:
    """A graph sample: stacked node values, optional edge values, edge links.

    ``edge_links`` has shape (num_edges, 2); each row references node indices.
    Duplicate edges are permitted and insertion order is preserved.
    """

    nodes: np.ndarray
    edges: Optional[np.ndarray]
    edge_links: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, GraphValue):
            return NotImplemented
        if (self.edges is None) != (other.edges is None):
            return False
        return (
            np.array_equal(self.nodes, other.nodes)
            and (self.edges is None or np.array_equal(self.edges, other.edges))
            and np.array_equal(self.edge_links, other.edge_links)
        )


class Graph(Space):
    """Graphs with per-node and optional per-edge values.

    Node and edge spaces are restricted to Box and Discrete.  Samples have
    1..10 nodes and 0..2*nodes edges with uniformly drawn endpoints.
    """

    MAX_SAMPLED_NODES = 10

    def __init__(self, node_space: Space, edge_space: Optional[Space] = None):
        for name, sub in (("node_space", node_space), ("edge_space", edge_space)):
            if sub is not None and not isinstance(sub, (Box, Discrete)):
                raise ValueError(f"Graph {name} must be Box or Discrete, got {type(sub).__name__}")
        self.node_space = node_space
        self.edge_space = edge_space

    @staticmethod
    def _stacked_ok(space, stacked, count=None):
        """Check ``stacked`` holds ``count`` (or any >= 0) members of ``space``."""
        arr = np.asarray(stacked)
        if isinstance(space, Discrete):
            if arr.ndim != 1 or arr.dtype.kind not in _INT_KINDS:
                return None
        else:
            if arr.shape[1:] != space.shape or arr.ndim != len(space.shape) + 1:
                return None
        n = arr.shape[0]
        if count is not None and n != count:
            return None
        for i in range(n):
            member = int(arr[i]) if isinstance(space, Discrete) else arr[i]
            if not space.contains(member):
                return None
        return n

    def contains(self, value):
        if not isinstance(value, GraphValue):
            return False
        try:
            n_nodes = self._stacked_ok(self.node_space, value.nodes)
        except Exception:
            return False
        if n_nodes is None or n_nodes < 1:
            return False
        links = np.asarray(value.edge_links)
        if links.ndim != 2 or links.shape[1] != 2 or links.dtype.kind not in _INT_KINDS:
            return False
        n_edges = links.shape[0]
        if not (n_edges == 0 or (bool((links >= 0).all()) and bool((links < n_nodes).all()))):
            return False
        if self.edge_space is None:
            return value.edges is None
        if value.edges is None:
            return False
        try:
            return self._stacked_ok(self.edge_space, value.edges, count=n_edges) is not None
        except Exception:
            return False

    def _stack(self, space, samples, count):
        if isinstance(space, Discrete):
            return np.array(samples, dtype=np.int64).reshape(count)
        return np.array(samples, dtype=space.dtype).reshape((count,) + space.shape)

    def sample(self, rng):
        # Draw order: node count, node values, edge count, edge values, links.
        n_nodes = 1 + rng.below(self.MAX_SAMPLED_NODES)
        nodes = self._stack(self.node_space, [self.node_space.sample(rng) for _ in range(n_nodes)], n_nodes)
        n_edges = rng.below(2 * n_nodes + 1)
        edges = None
        if self.edge_space is not None:
            edges = self._stack(self.edge_space, [self.edge_space.sample(rng) for _ in range(n_edges)], n_edges)
        links = np.array(
            [[rng.below(n_nodes), rng.below(n_nodes)] for _ in range(n_edges)], dtype=np.int64
        ).reshape(n_edges, 2)
        return GraphValue(nodes=nodes, edges=edges, edge_links=links)

    def __eq__(self, other):
        return isinstance(other, Graph) and (
            self.node_space == other.node_space and self.edge_space == other.edge_space
        )

    def __repr__(self):
        return f"Graph(nodes={self.node_space!r}, edges={self.edge_space!r})"


class OneOf(Space):
    """Exactly one of several alternative subspaces per sample.

    Values are ``(alternative_index, member_of_that_alternative)`` pairs.
    """

    def __init__(self, alternatives: Iterable[Space]):
        alternatives = tuple(alternatives)
        if not alternatives:
            raise ValueError("OneOf requires at least one alternative")
        if not all(isinstance(s, Space) for s in alternatives):
            raise ValueError("OneOf alternatives must all be Space instances")
        self.alternatives = alternatives

    def contains(self, value):
        if not isinstance(value, (tuple, list)) or len(value) != 2:
            return False
        index, inner = value
        if not _is_int_scalar(index) or not 0 <= int(index) < len(self.alternatives):
            return False
        return self.alternatives[int(index)].contains(inner)

    def sample(self, rng):
        index = rng.below(len(self.alternatives))
        return (index, self.alternatives[index].sample(rng))

    def __eq__(self, other):
        return isinstance(other, OneOf) and self.alternatives == other.alternatives

    def __repr__(self):
        return f"OneOf({', '.join(map(repr, self.alternatives))})"
