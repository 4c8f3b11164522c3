"""Flattening and batching algebra over spaces and their samples.

flatdim/flatten/unflatten map fixed-size samples to contiguous real64
vectors (one-hot for Discrete tags).  batch_space lifts a space to the
space of n stacked samples; concatenate/iterate convert between lists of
samples and one batched sample and are exact inverses of each other.
"""

from __future__ import annotations

from functools import singledispatch

import numpy as np

from ..errors import (
    DimensionMismatch,
    EmptyBatch,
    MalformedEncoding,
    NotABatch,
    UnflattenableSpace,
    ValueNotInSpace,
)
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

_FALLBACK_BATCHED = (Text, Sequence, Graph, OneOf)


# --- flat dimension -------------------------------------------------------

@singledispatch
def flatdim(space: Space) -> int:
    """Width of the flat encoding of one sample of ``space``."""
    raise TypeError(f"not a space: {space!r}")


@flatdim.register
def _(space: Box) -> int:
    return int(np.prod(space.shape, dtype=np.int64)) if space.shape else 1


@flatdim.register
def _(space: Discrete) -> int:
    return space.n


@flatdim.register
def _(space: MultiDiscrete) -> int:
    return int(space.nvec.sum())


@flatdim.register
def _(space: MultiBinary) -> int:
    return space.n


@flatdim.register
def _(space: Product) -> int:
    return sum(flatdim(s) for s in space.subspaces)


@flatdim.register
def _(space: Mapping) -> int:
    return sum(flatdim(s) for _, s in space.entries)


@flatdim.register
def _(space: OneOf) -> int:
    return 1 + sum(flatdim(s) for s in space.alternatives)


@flatdim.register(Text)
@flatdim.register(Sequence)
@flatdim.register(Graph)
def _(space) -> int:
    raise UnflattenableSpace(
        f"{type(space).__name__} has variable-size samples and no fixed flat dimension"
    )


# --- flatten --------------------------------------------------------------

def flatten(space: Space, value) -> np.ndarray:
    """Encode ``value`` as a real64 vector of length ``flatdim(space)``."""
    width = flatdim(space)  # raises UnflattenableSpace first
    if not space.contains(value):
        raise ValueNotInSpace(f"value is not a member of {space!r}")
    out = _flatten(space, value)
    assert out.size == width
    return out


def _one_hot(width: int, index: int) -> np.ndarray:
    out = np.zeros(width, dtype=np.float64)
    out[index] = 1.0
    return out


@singledispatch
def _flatten(space: Space, value) -> np.ndarray:
    raise TypeError(f"not a flattenable space: {space!r}")


@_flatten.register
def _(space: Box, value):
    return np.asarray(value, dtype=np.float64).reshape(-1).copy()


@_flatten.register
def _(space: Discrete, value):
    return _one_hot(space.n, int(value) - space.start)


@_flatten.register
def _(space: MultiDiscrete, value):
    arr = np.asarray(value, dtype=np.int64)
    return np.concatenate([_one_hot(int(n), int(v)) for n, v in zip(space.nvec, arr)])


@_flatten.register
def _(space: MultiBinary, value):
    return np.asarray(value, dtype=np.float64).copy()


@_flatten.register
def _(space: Product, value):
    return np.concatenate([_flatten(s, v) for s, v in zip(space.subspaces, value)])


@_flatten.register
def _(space: Mapping, value):
    return np.concatenate([_flatten(s, value[k]) for k, s in space.entries])


@_flatten.register
def _(space: OneOf, value):
    index, inner = int(value[0]), value[1]
    out = np.zeros(flatdim(space), dtype=np.float64)
    out[0] = float(index)
    offset = 1
    for i, alt in enumerate(space.alternatives):
        width = flatdim(alt)
        if i == index:
            out[offset : offset + width] = _flatten(alt, inner)
        offset += width
    return out


# --- unflatten ------------------------------------------------------------

def unflatten(space: Space, flat) -> object:
    """Decode a flat vector; exact inverse of :func:`flatten` on its image."""
    width = flatdim(space)
    arr = np.asarray(flat, dtype=np.float64).reshape(-1)
    if arr.size != width:
        raise DimensionMismatch(f"expected a flat vector of length {width}, got {arr.size}")
    return _unflatten(space, arr)


def _decode_one_hot(block: np.ndarray, what: str) -> int:
    if not block.any():
        raise MalformedEncoding(f"all-zero one-hot block for {what}")
    return int(np.argmax(block))  # lowest index wins ties


@singledispatch
def _unflatten(space: Space, arr: np.ndarray):
    raise TypeError(f"not a flattenable space: {space!r}")


@_unflatten.register
def _(space: Box, arr):
    out = arr.reshape(space.shape).copy()
    if space.dtype == np.int64:
        return np.rint(out).astype(np.int64)
    return out


@_unflatten.register
def _(space: Discrete, arr):
    return space.start + _decode_one_hot(arr, "Discrete")


@_unflatten.register
def _(space: MultiDiscrete, arr):
    values = []
    offset = 0
    for n in space.nvec:
        values.append(_decode_one_hot(arr[offset : offset + int(n)], "MultiDiscrete"))
        offset += int(n)
    return np.array(values, dtype=np.int64)


@_unflatten.register
def _(space: MultiBinary, arr):
    return np.rint(arr).astype(np.int64)


@_unflatten.register
def _(space: Product, arr):
    values = []
    offset = 0
    for sub in space.subspaces:
        width = flatdim(sub)
        values.append(_unflatten(sub, arr[offset : offset + width]))
        offset += width
    return tuple(values)


@_unflatten.register
def _(space: Mapping, arr):
    values = {}
    offset = 0
    for key, sub in space.entries:
        width = flatdim(sub)
        values[key] = _unflatten(sub, arr[offset : offset + width])
        offset += width
    return values


@_unflatten.register
def _(space: OneOf, arr):
    index = int(round(float(arr[0])))
    if not 0 <= index < len(space.alternatives):
        raise MalformedEncoding(f"OneOf tag {arr[0]!r} is out of range")
    offset = 1
    for i, alt in enumerate(space.alternatives):
        width = flatdim(alt)
        if i == index:
            return (index, _unflatten(alt, arr[offset : offset + width]))
        offset += width
    raise AssertionError("unreachable")


# --- batching -------------------------------------------------------------

@singledispatch
def batch_space(space: Space, n: int) -> Space:
    """The space of ``n`` stacked samples of ``space``.

    Box stacks along a new leading axis; Discrete becomes MultiDiscrete (or
    an int64 Box when a start offset must be preserved); MultiDiscrete and
    MultiBinary become int64 Boxes; Product/Mapping batch their children.
    Kinds with no dense stacking (Text, Sequence, Graph, OneOf) fall back to
    a Product of n copies so concatenate/iterate stay total.
    """
    raise TypeError(f"not a space: {space!r}")


def _check_batch_count(n: int) -> int:
    n = int(n)
    if n < 1:
        raise ValueError(f"batch size must be >= 1, got {n}")
    return n


@batch_space.register
def _(space: Box, n: int):
    n = _check_batch_count(n)
    shape = (n,) + space.shape
    return Box(
        np.broadcast_to(space.low, shape).copy(),
        np.broadcast_to(space.high, shape).copy(),
        dtype=space.dtype,
    )


@batch_space.register
def _(space: Discrete, n: int):
    n = _check_batch_count(n)
    if space.start == 0:
        return MultiDiscrete([space.n] * n)
    # MultiDiscrete cannot carry an offset; use the int64-Box equivalent.
    return Box(np.full(n, space.start), np.full(n, space.start + space.n - 1), dtype=np.int64)


@batch_space.register
def _(space: MultiDiscrete, n: int):
    n = _check_batch_count(n)
    shape = (n, space.nvec.size)
    return Box(np.zeros(shape), np.broadcast_to(space.nvec - 1, shape).copy(), dtype=np.int64)


@batch_space.register
def _(space: MultiBinary, n: int):
    n = _check_batch_count(n)
    return Box(0, 1, shape=(n, space.n), dtype=np.int64)


@batch_space.register
def _(space: Product, n: int):
    n = _check_batch_count(n)
    return Product(batch_space(s, n) for s in space.subspaces)


@batch_space.register
def _(space: Mapping, n: int):
    n = _check_batch_count(n)
    return Mapping((k, batch_space(s, n)) for k, s in space.entries)


@batch_space.register(Text)
@batch_space.register(Sequence)
@batch_space.register(Graph)
@batch_space.register(OneOf)
def _(space, n: int):
    n = _check_batch_count(n)
    return Product((space,) * n)


# --- concatenate / iterate --------------------------------------------------

def concatenate(space: Space, samples) -> object:
    """Stack ``samples`` (each a member of ``space``) into one batched value.

    The result is a member of ``batch_space(space, len(samples))`` and
    :func:`iterate` recovers the original list exactly.
    """
    samples = list(samples)
    if not samples:
        raise EmptyBatch("concatenate() requires at least one sample")
    for sample in samples:
        if not space.contains(sample):
            raise ValueNotInSpace(f"sample {sample!r} is not a member of {space!r}")
    return _concatenate(space, samples)


@singledispatch
def _concatenate(space: Space, samples):
    raise TypeError(f"not a space: {space!r}")


@_concatenate.register
def _(space: Box, samples):
    return np.stack([np.asarray(s, dtype=space.dtype) for s in samples])


@_concatenate.register
def _(space: Discrete, samples):
    return np.array([int(s) for s in samples], dtype=np.int64)


@_concatenate.register(MultiDiscrete)
@_concatenate.register(MultiBinary)
def _(space, samples):
    return np.stack([np.asarray(s, dtype=np.int64) for s in samples])


@_concatenate.register
def _(space: Product, samples):
    return tuple(
        _concatenate(sub, [s[i] for s in samples]) for i, sub in enumerate(space.subspaces)
    )


@_concatenate.register
def _(space: Mapping, samples):
    return {key: _concatenate(sub, [s[key] for s in samples]) for key, sub in space.entries}


@_concatenate.register(Text)
@_concatenate.register(Sequence)
@_concatenate.register(Graph)
@_concatenate.register(OneOf)
def _(space, samples):
    return tuple(samples)


def _batch_count(space: Space, batched) -> int | None:
    """Infer n such that ``batched`` could belong to batch_space(space, n)."""
    if isinstance(space, Box):
        arr = np.asarray(batched)
        ok = arr.ndim == len(space.shape) + 1 and arr.shape[1:] == space.shape
        return arr.shape[0] if ok and arr.shape[0] > 0 else None
    if isinstance(space, Discrete):
        arr = np.asarray(batched)
        return arr.shape[0] if arr.ndim == 1 and arr.shape[0] > 0 else None
    if isinstance(space, (MultiDiscrete, MultiBinary)):
        width = space.nvec.size if isinstance(space, MultiDiscrete) else space.n
        arr = np.asarray(batched)
        ok = arr.ndim == 2 and arr.shape[1] == width
        return arr.shape[0] if ok and arr.shape[0] > 0 else None
    if isinstance(space, Product):
        if not isinstance(batched, (tuple, list)) or len(batched) != len(space.subspaces):
            return None
        counts = {_batch_count(s, b) for s, b in zip(space.subspaces, batched)}
        return counts.pop() if len(counts) == 1 else None
    if isinstance(space, Mapping):
        if not isinstance(batched, dict) or set(batched) != set(space.keys()):
            return None
        counts = {_batch_count(s, batched[k]) for k, s in space.entries}
        return counts.pop() if len(counts) == 1 else None
    if isinstance(space, _FALLBACK_BATCHED):
        if not isinstance(batched, (tuple, list)) or not batched:
            return None
        return len(batched)
    return None


def iterate(space: Space, batched) -> list:
    """Split a batched value back into its per-sample members.

    Exact left inverse of :func:`concatenate`.
    """
    try:
        n = _batch_count(space, batched)
    except Exception:
        n = None
    if n is None or not batch_space(space, n).contains(batched):
        raise NotABatch(f"value is not a batch of samples of {space!r}")
    return _iterate(space, batched, n)


@singledispatch
def _iterate(space: Space, batched, n: int):
    raise TypeError(f"not a space: {space!r}")


@_iterate.register
def _(space: Box, batched, n):
    arr = np.asarray(batched, dtype=space.dtype)
    return [arr[i].copy() for i in range(n)]


@_iterate.register
def _(space: Discrete, batched, n):
    return [int(v) for v in np.asarray(batched)]


@_iterate.register(MultiDiscrete)
@_iterate.register(MultiBinary)
def _(space, batched, n):
    arr = np.asarray(batched, dtype=np.int64)
    return [arr[i].copy() for i in range(n)]


@_iterate.register
def _(space: Product, batched, n):
    columns = [_iterate(sub, col, n) for sub, col in zip(space.subspaces, batched)]
    return [tuple(col[i] for col in columns) for i in range(n)]


@_iterate.register
def _(space: Mapping, batched, n):
    columns = {key: _iterate(sub, batched[key], n) for key, sub in space.entries}
    return [{key: columns[key][i] for key, _ in space.entries} for i in range(n)]


@_iterate.register(Text)
@_iterate.register(Sequence)
@_iterate.register(Graph)
@_iterate.register(OneOf)
def _(space, batched, n):
    return list(batched)


# --- exact sample equality --------------------------------------------------

def values_equal(a, b) -> bool:
    """Exact (bit-level for arrays) equality over sample trees.

    Used by round-trip and trajectory-determinism checks; NaNs compare
    unequal, matching IEEE semantics.
    """
    if isinstance(a, GraphValue) or isinstance(b, GraphValue):
        return isinstance(a, GraphValue) and isinstance(b, GraphValue) and a == b
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        a_arr, b_arr = np.asarray(a), np.asarray(b)
        return a_arr.shape == b_arr.shape and bool(np.array_equal(a_arr, b_arr))
    if isinstance(a, dict) and isinstance(b, dict):
        return set(a) == set(b) and all(values_equal(a[k], b[k]) for k in a)
    if isinstance(a, (tuple, list)) and isinstance(b, (tuple, list)):
        return len(a) == len(b) and all(values_equal(x, y) for x, y in zip(a, b))
    if isinstance(a, str) or isinstance(b, str):
        return a == b
    if isinstance(a, (int, float, np.integer, np.floating)) and isinstance(
        b, (int, float, np.integer, np.floating)
    ):
        return bool(a == b)
    return a == b
