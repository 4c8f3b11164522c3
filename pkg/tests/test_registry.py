"""Id grammar, registration, creation, and spec round trips."""

import json

import pytest

import envkit
from envkit.errors import (
    DuplicateRegistration,
    InvalidKwargs,
    MalformedDocument,
    MalformedId,
    MissingVersion,
    UnknownEnvironment,
    UnserializableKwargs,
    VersionNotFound,
)
from envkit.registry import (
    EnvId,
    EnvSpec,
    Registry,
    deserialize_spec,
    parse_env_id,
    serialize_spec,
)
from envkit.seeding import Rng
from envkit.spaces import values_equal

from .stubs import CountingEnv


# --- id grammar ---------------------------------------------------------------

def test_parse_versioned_ids():
    assert parse_env_id("CartPole-v1") == EnvId(name="CartPole", version=1)
    assert parse_env_id("CarRacing-v2") == EnvId(name="CarRacing", version=2)
    assert parse_env_id("MyLab/Maze-v0") == EnvId(name="Maze", namespace="MyLab", version=0)
    assert parse_env_id("Maze") == EnvId(name="Maze")
    assert parse_env_id("conv2d-v2") == EnvId(name="conv2d", version=2)
    assert parse_env_id("Foo.Bar_baz-v0") == EnvId(name="Foo.Bar_baz", version=0)


@pytest.mark.parametrize(
    "bad",
    ["", "Maze-vv2", "Maze-v", "Maze-v01", "-v1", "A/B/C-v0", "/Maze-v0", "Maze-v0/", "Maze-"],
)
def test_malformed_ids_rejected(bad):
    with pytest.raises(MalformedId):
        parse_env_id(bad)


def test_parse_print_inversion():
    for text in ["CartPole-v1", "MyLab/Maze-v0", "Maze", "a/b-v0", "X_1.y-v10"]:
        assert str(parse_env_id(text)) == text


# --- registration ---------------------------------------------------------------

def _spec(id_text, **over):
    return EnvSpec(id=parse_env_id(id_text), entry_point="counting", **over)


@pytest.fixture
def registry():
    reg = Registry()
    reg.register_constructor("counting", CountingEnv)
    return reg


def test_register_multiple_versions(registry):
    registry.register(_spec("Count-v0"))
    registry.register(_spec("Count-v1"))
    ids = [str(s.id) for s in registry.list_registered()]
    assert ids == ["Count-v0", "Count-v1"]


def test_register_duplicate_rejected(registry):
    registry.register(_spec("Count-v0"))
    with pytest.raises(DuplicateRegistration):
        registry.register(_spec("Count-v0"))


def test_register_requires_version(registry):
    with pytest.raises(MissingVersion):
        registry.register(_spec("Count"))


def test_listing_is_ordered_and_filterable(registry):
    registry.register(EnvSpec(id=parse_env_id("zz/Last-v0"), entry_point="counting"))
    registry.register(_spec("B-v1"))
    registry.register(_spec("B-v0"))
    registry.register(_spec("A-v2"))
    ids = [str(s.id) for s in registry.list_registered()]
    assert ids == ["A-v2", "B-v0", "B-v1", "zz/Last-v0"]
    assert [str(s.id) for s in registry.list_registered(namespace="zz")] == ["zz/Last-v0"]
    assert Registry().list_registered() == []


# --- make -------------------------------------------------------------------------

def test_make_resolves_and_attaches_spec():
    env = envkit.make("CartPole-v1")
    assert str(env.spec.id) == "CartPole-v1"
    assert env.spec.max_episode_steps == 500


def test_make_unversioned_takes_highest_version(registry):
    registry.register(_spec("Count-v0"))
    registry.register(_spec("Count-v3"))
    env = registry.make("Count")
    assert str(env.spec.id) == "Count-v3"


def test_make_unknown_and_missing_version_errors(registry):
    with pytest.raises(UnknownEnvironment):
        registry.make("Nope-v0")
    registry.register(_spec("Count-v0"))
    registry.register(_spec("Count-v2"))
    with pytest.raises(VersionNotFound) as err:
        registry.make("Count-v9")
    assert "v0" in str(err.value) and "v2" in str(err.value)


def test_make_rejects_unknown_kwargs():
    with pytest.raises(InvalidKwargs):
        envkit.make("CartPole-v1", not_a_real_kwarg=3)


def test_make_from_spec_recreates_trajectories():
    first = envkit.make("CartPole-v1")
    second = envkit.make(first.spec)
    assert second.spec == first.spec
    obs_a, _ = first.reset(seed=11)
    obs_b, _ = second.reset(seed=11)
    action_rng = Rng(5)
    assert values_equal(obs_a, obs_b)
    for _ in range(100):
        action = first.action_space.sample(action_rng)
        step_a = first.step(action)
        step_b = second.step(action)
        assert values_equal(step_a[0], step_b[0])
        assert step_a[1:4] == step_b[1:4]
        if step_a[2] or step_a[3]:
            first.reset(seed=99)
            second.reset(seed=99)


def test_make_applies_kwargs_and_overrides():
    env = envkit.make("FrozenLake-v1", is_slippery=False, max_episode_steps=7)
    assert env.spec.kwargs["is_slippery"] is False
    assert env.spec.max_episode_steps == 7
    env.reset(seed=0)
    for _ in range(7):
        observation, reward, terminated, truncated, info = env.step(0)
    assert truncated  # bumping the left wall forever only ends via the limit


# --- serialization ------------------------------------------------------------------

def test_spec_round_trip_is_identity():
    spec = envkit.spec_for("CartPole-v1")
    text = serialize_spec(spec)
    assert deserialize_spec(text) == spec
    assert serialize_spec(deserialize_spec(text)) == text


def test_serialize_is_canonical_and_stable():
    spec = envkit.spec_for("FrozenLake-v1")
    first = serialize_spec(spec)
    assert first == serialize_spec(spec)
    assert json.loads(first)["kwargs"] == {"is_slippery": True}
    assert first.find('"entry_point"') < first.find('"id"') < first.find('"kwargs"')


def test_deserialize_rejects_bad_documents():
    with pytest.raises(MalformedDocument):
        deserialize_spec("{}")
    with pytest.raises(MalformedDocument):
        deserialize_spec("not json")
    with pytest.raises(MalformedDocument):
        deserialize_spec('{"id": "Maze-vv2", "entry_point": "x"}')
    with pytest.raises(MalformedDocument):
        deserialize_spec('{"id": "A-v0", "entry_point": ""}')
    with pytest.raises(MalformedDocument):
        deserialize_spec('{"id": "A-v0", "entry_point": "x", "max_episode_steps": -3}')
    with pytest.raises(MalformedDocument):
        deserialize_spec('{"id": "A-v0", "entry_point": "x", "kwargs": {"v": null}}')
    with pytest.raises(MalformedDocument):
        deserialize_spec('{"id": "A-v0", "entry_point": "x", "render_mode": "window"}')


def test_unserializable_kwargs_rejected():
    spec = EnvSpec(id=parse_env_id("A-v0"), entry_point="x", default_kwargs={"f": object()})
    with pytest.raises(UnserializableKwargs):
        serialize_spec(spec)


def test_version_isolation(registry):
    # Registering a new version must not disturb an existing version's behavior.
    registry.register(_spec("Count-v0", max_episode_steps=2))
    env = registry.make("Count-v0")
    env.reset(seed=0)
    env.step(0)
    before = env.step(0)
    registry.register(_spec("Count-v1", max_episode_steps=5))
    env2 = registry.make("Count-v0")
    env2.reset(seed=0)
    env2.step(0)
    after = env2.step(0)
    assert values_equal(before[0], after[0]) and before[1:4] == after[1:4]
    assert before[3] is True  # truncated by the v0 limit either way
