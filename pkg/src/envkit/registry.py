"""Versioned environment ids, registration, creation, and spec round trips.

Ids follow ``[namespace/]name[-vN]``.  A spec is the complete, serializable
recipe for one environment instantiation: constructor key, kwargs, wrapper
settings, render mode.  ``make(env.spec)`` therefore recreates an
identically initialized copy, and specs survive JSON round trips
byte-stably (canonical form: sorted keys, no insignificant whitespace).

The constructor table maps entry-point strings to callables and is
populated at startup; specs never carry code references, so they stay
portable and safe to load.
"""

from __future__ import annotations

import json
import re
import threading
from dataclasses import dataclass, field, replace
from typing import Optional, Union

from .env import RENDER_MODES, Env
from .errors import (
    DuplicateRegistration,
    InvalidKwargs,
    MalformedDocument,
    MalformedId,
    MissingVersion,
    UnknownEnvironment,
    UnserializableKwargs,
    VersionNotFound,
)
from .wrappers import OrderEnforcing, TimeLimit

_NAME_PATTERN = re.compile(r"^[A-Za-z0-9_]([A-Za-z0-9_:.\-]*[A-Za-z0-9_])?$")
_VERSION_SUFFIX = re.compile(r"-v(\d+)$")
_VERSIONISH_TAIL = re.compile(r"-v([0-9A-Za-z_.:\-]*)$")

_UNSET = object()


@dataclass(frozen=True)
class EnvId:
    """A parsed ``[namespace/]name[-vN]`` identifier."""

    name: str
    namespace: Optional[str] = None
    version: Optional[int] = None

    def __str__(self) -> str:
        text = self.name
        if self.namespace is not None:
            text = f"{self.namespace}/{text}"
        if self.version is not None:
            text = f"{text}-v{self.version}"
        return text


def _parse_name_and_version(text: str) -> tuple[str, Optional[int]]:
    match = _VERSION_SUFFIX.search(text)
    if match:
        token = match.group(1)
        if len(token) > 1 and token[0] == "0":
            raise MalformedId(f"version token in {text!r} has a leading zero")
        name = text[: match.start()]
        version = int(token)
    else:
        tail = _VERSIONISH_TAIL.search(text)
        if tail and (not tail.group(1) or any(ch.isdigit() for ch in tail.group(1))):
            raise MalformedId(f"bad version token in {text!r}")
        name, version = text, None
    if not name or not _NAME_PATTERN.match(name):
        raise MalformedId(f"bad environment name in {text!r}")
    return name, version


def parse_env_id(text: str) -> EnvId:
    """Parse an id string; raises MalformedId on grammar violations."""
    if not isinstance(text, str) or not text:
        raise MalformedId(f"environment id must be a non-empty string, got {text!r}")
    namespace = None
    rest = text
    if "/" in text:
        namespace, _, rest = text.partition("/")
        if "/" in rest:
            raise MalformedId(f"multiple slashes in {text!r}")
        if not namespace or not _NAME_PATTERN.match(namespace):
            raise MalformedId(f"bad namespace in {text!r}")
    name, version = _parse_name_and_version(rest)
    return EnvId(name=name, namespace=namespace, version=version)


@dataclass(eq=False)
class EnvSpec:
    """Complete recipe to recreate an environment instance.

    ``default_kwargs`` come from registration, ``applied_kwargs`` from make
    time; construction merges them with applied winning.  Two specs are
    equal when their serialized forms are, so the split is invisible to
    equality and round trips.
    """

    id: EnvId
    entry_point: str
    max_episode_steps: Optional[int] = None
    default_kwargs: dict = field(default_factory=dict)
    applied_kwargs: dict = field(default_factory=dict)
    order_enforcing: bool = True
    render_mode: Optional[str] = None

    @property
    def kwargs(self) -> dict:
        return {**self.default_kwargs, **self.applied_kwargs}

    def _identity(self):
        return (
            str(self.id),
            self.entry_point,
            self.max_episode_steps,
            self.kwargs,
            self.order_enforcing,
            self.render_mode,
        )

    def __eq__(self, other):
        if not isinstance(other, EnvSpec):
            return NotImplemented
        return self._identity() == other._identity()


def _check_serializable(value, path: str) -> None:
    if isinstance(value, bool) or isinstance(value, (int, float, str)):
        return
    if isinstance(value, dict):
        for key, sub in value.items():
            if not isinstance(key, str):
                raise UnserializableKwargs(f"{path}: map keys must be strings, got {key!r}")
            _check_serializable(sub, f"{path}.{key}")
        return
    if isinstance(value, (list, tuple)):
        for i, sub in enumerate(value):
            _check_serializable(sub, f"{path}[{i}]")
        return
    raise UnserializableKwargs(
        f"{path}: {type(value).__name__} is outside the serializable kind set"
    )


def serialize_spec(spec: EnvSpec) -> str:
    """Canonical JSON for a spec; raises UnserializableKwargs on bad kwargs."""
    kwargs = spec.kwargs
    _check_serializable(kwargs, "kwargs")
    payload = {
        "id": str(spec.id),
        "entry_point": spec.entry_point,
        "max_episode_steps": spec.max_episode_steps,
        "kwargs": kwargs,
        "order_enforcing": spec.order_enforcing,
        "render_mode": spec.render_mode,
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def deserialize_spec(text: str) -> EnvSpec:
    """Inverse of serialize_spec; raises MalformedDocument on bad input."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"invalid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise MalformedDocument("spec document must be a JSON object")
    for key in ("id", "entry_point"):
        if key not in payload:
            raise MalformedDocument(f"spec document is missing {key!r}")
    try:
        env_id = parse_env_id(payload["id"])
    except MalformedId as exc:
        raise MalformedDocument(str(exc)) from exc
    entry_point = payload["entry_point"]
    if not isinstance(entry_point, str) or not entry_point:
        raise MalformedDocument("entry_point must be a non-empty string")
    steps = payload.get("max_episode_steps")
    if steps is not None and (isinstance(steps, bool) or not isinstance(steps, int) or steps < 1):
        raise MalformedDocument(f"max_episode_steps must be a positive integer or null, got {steps!r}")
    kwargs = payload.get("kwargs", {})
    if not isinstance(kwargs, dict):
        raise MalformedDocument("kwargs must be an object")
    try:
        _check_serializable(kwargs, "kwargs")
    except UnserializableKwargs as exc:
        raise MalformedDocument(str(exc)) from exc
    order_enforcing = payload.get("order_enforcing", True)
    if not isinstance(order_enforcing, bool):
        raise MalformedDocument("order_enforcing must be a boolean")
    render_mode = payload.get("render_mode")
    if render_mode is not None and render_mode not in RENDER_MODES:
        raise MalformedDocument(f"unknown render mode {render_mode!r}")
    return EnvSpec(
        id=env_id,
        entry_point=entry_point,
        max_episode_steps=steps,
        default_kwargs=dict(kwargs),
        applied_kwargs={},
        order_enforcing=order_enforcing,
        render_mode=render_mode,
    )


class Registry:
    """Versioned spec table plus the entry-point constructor table.

    Reads are lock-free; registrations are serialized.  ``make`` is safe to
    call concurrently.
    """

    def __init__(self):
        self._specs: dict[tuple, EnvSpec] = {}
        self._constructors: dict[str, callable] = {}
        self._lock = threading.Lock()

    # -- registration ---------------------------------------------------------

    def register_constructor(self, entry_point: str, constructor) -> None:
        """Bind an entry-point key to an environment constructor."""
        if not entry_point or not isinstance(entry_point, str):
            raise ValueError("entry_point must be a non-empty string")
        with self._lock:
            self._constructors[entry_point] = constructor

    def register(self, spec: EnvSpec) -> None:
        """Add a spec; its id must carry an explicit version and be new."""
        if parse_env_id(str(spec.id)) != spec.id:
            raise MalformedId(f"spec id {spec.id!r} does not round-trip the id grammar")
        if spec.id.version is None:
            raise MissingVersion(f"registration requires an explicit version: {spec.id}")
        key = (spec.id.namespace, spec.id.name, spec.id.version)
        with self._lock:
            if key in self._specs:
                raise DuplicateRegistration(f"{spec.id} is already registered")
            self._specs[key] = replace(
                spec,
                default_kwargs=dict(spec.default_kwargs),
                applied_kwargs=dict(spec.applied_kwargs),
            )

    # -- lookup ----------------------------------------------------------------

    def _versions_of(self, namespace, name) -> list[int]:
        return sorted(
            version
            for (ns, nm, version) in self._specs
            if ns == namespace and nm == name
        )

    def spec_for(self, id_text: str) -> EnvSpec:
        """Resolve an id string to its registered spec.

        An unversioned id resolves to the highest registered version.
        """
        env_id = parse_env_id(id_text)
        versions = self._versions_of(env_id.namespace, env_id.name)
        if not versions:
            prefix = f"{env_id.namespace}/" if env_id.namespace else ""
            raise UnknownEnvironment(f"unknown environment {prefix}{env_id.name}")
        version = env_id.version if env_id.version is not None else versions[-1]
        key = (env_id.namespace, env_id.name, version)
        if key not in self._specs:
            available = ", ".join(f"v{v}" for v in versions)
            raise VersionNotFound(
                f"{env_id.name} has no version v{version}; available: {available}"
            )
        return self._specs[key]

    def list_registered(self, namespace: Optional[str] = None) -> list[EnvSpec]:
        """All specs, ordered by (namespace, name, version) ascending."""
        keys = sorted(self._specs, key=lambda k: (k[0] or "", k[1], k[2]))
        return [self._specs[k] for k in keys if namespace is None or k[0] == namespace]

    # -- construction ------------------------------------------------------------

    def make(
        self,
        id_or_spec: Union[str, EnvSpec],
        *,
        render_mode=_UNSET,
        max_episode_steps=_UNSET,
        **kwargs,
    ) -> Env:
        """Create an environment with its fully resolved spec attached.

        Applies the order-enforcement wrapper (unless the spec disables it)
        and the time-limit wrapper (when max_episode_steps is set).  Pass
        ``max_episode_steps=None`` explicitly to strip a registered limit.
        """
        if isinstance(id_or_spec, EnvSpec):
            base = id_or_spec
        else:
            base = self.spec_for(id_or_spec)
        resolved = EnvSpec(
            id=base.id,
            entry_point=base.entry_point,
            max_episode_steps=(
                base.max_episode_steps if max_episode_steps is _UNSET else max_episode_steps
            ),
            default_kwargs=dict(base.default_kwargs),
            applied_kwargs={**base.applied_kwargs, **kwargs},
            order_enforcing=base.order_enforcing,
            render_mode=base.render_mode if render_mode is _UNSET else render_mode,
        )
        constructor = self._constructors.get(resolved.entry_point)
        if constructor is None:
            raise UnknownEnvironment(f"no constructor registered for {resolved.entry_point!r}")
        try:
            env = constructor(render_mode=resolved.render_mode, **resolved.kwargs)
        except TypeError as exc:
            raise InvalidKwargs(f"constructor rejected kwargs: {exc}") from exc
        env.spec = resolved
        if resolved.order_enforcing:
            env = OrderEnforcing(env)
        if resolved.max_episode_steps is not None:
            env = TimeLimit(env, resolved.max_episode_steps)
        return env


default_registry = Registry()


def register(spec: EnvSpec) -> None:
    default_registry.register(spec)


def register_constructor(entry_point: str, constructor) -> None:
    default_registry.register_constructor(entry_point, constructor)


def make(id_or_spec, **overrides) -> Env:
    return default_registry.make(id_or_spec, **overrides)


def spec_for(id_text: str) -> EnvSpec:
    return default_registry.spec_for(id_text)


def list_registered(namespace: Optional[str] = None) -> list[EnvSpec]:
    return default_registry.list_registered(namespace)
