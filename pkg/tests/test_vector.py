"""Vectorization: batched spaces, child seeding, autoreset, backend equality."""

import numpy as np
import pytest

import envkit
from envkit.errors import EnvClosed, InvalidAction, WorkerSpawnFailure
from envkit.registry import EnvSpec, Registry, parse_env_id
from envkit.seeding import Rng, derive_child_seeds
from envkit.spaces import Box, concatenate, values_equal
from envkit.vector import VectorRecordEpisodeStatistics, make_vec
from envkit.wrappers import RecordEpisodeStatistics

from .stubs import CountingEnv


def make_action_script(env_id, num_envs, steps, seed):
    """Per-step lists of per-env actions, drawn deterministically."""
    space = envkit.make(env_id).action_space
    rng = Rng(seed)
    return [[space.sample(rng) for _ in range(num_envs)] for _ in range(steps)]


def independent_rollout(env_id, num_envs, seed, action_script):
    """Oracle: N independent single environments with derived child seeds,
    resetting a finished environment one step later with reward 0."""
    envs = [envkit.make(env_id) for _ in range(num_envs)]
    child_seeds = derive_child_seeds(seed, num_envs)
    first = [env.reset(seed=s) for env, s in zip(envs, child_seeds)]
    pending = [False] * num_envs
    steps = []
    for row in action_script:
        outcome = []
        for i, env in enumerate(envs):
            if pending[i]:
                pending[i] = False
                observation, info = env.reset()
                outcome.append((observation, 0.0, False, False, info))
            else:
                observation, reward, terminated, truncated, info = env.step(row[i])
                pending[i] = terminated or truncated
                outcome.append((observation, reward, terminated, truncated, info))
        steps.append(outcome)
    return [f[0] for f in first], steps


def run_vector(env_id, num_envs, backend, seed, action_script):
    venv = make_vec(env_id, num_envs, backend=backend)
    try:
        first_obs, first_infos = venv.reset(seed=seed)
        steps = []
        for row in action_script:
            actions = concatenate(venv.single_action_space, row)
            steps.append(venv.step(actions))
        return first_obs, first_infos, steps
    finally:
        venv.close()


# --- construction ------------------------------------------------------------

def test_batched_spaces_follow_batch_space():
    venv = make_vec("CartPole-v1", 4)
    assert isinstance(venv.observation_space, Box)
    assert venv.observation_space.shape == (4, 4)
    assert venv.single_observation_space.shape == (4,)
    assert venv.num_envs == 4 and venv.backend == "sequential"
    venv.close()


def test_zero_envs_rejected():
    with pytest.raises(ValueError):
        make_vec("CartPole-v1", 0)
    with pytest.raises(ValueError):
        make_vec("CartPole-v1", 2, backend="turbo")


def test_reset_is_deterministic_across_instances():
    a = make_vec("CartPole-v1", 3)
    b = make_vec("CartPole-v1", 3)
    obs_a, _ = a.reset(seed=42)
    obs_b, _ = b.reset(seed=42)
    assert values_equal(obs_a, obs_b)
    a.close()
    b.close()


def test_sub_envs_use_derived_child_seeds():
    venv = make_vec("CartPole-v1", 4)
    batched, _ = venv.reset(seed=42)
    child_seeds = derive_child_seeds(42, 4)
    for i, child in enumerate(child_seeds):
        single = envkit.make("CartPole-v1")
        observation, _ = single.reset(seed=child)
        assert values_equal(batched[i], observation)
    assert venv.observation_space.contains(batched)
    venv.close()


# --- autoreset -----------------------------------------------------------------

def test_next_step_autoreset_semantics():
    registry = envkit.default_registry
    registry_key = "counting_vec_test"
    if registry_key not in registry._constructors:
        registry.register_constructor(registry_key, CountingEnv)
        registry.register(
            EnvSpec(
                id=parse_env_id("CountingVec-v0"),
                entry_point=registry_key,
                max_episode_steps=None,
                default_kwargs={"terminate_at": 2},
            )
        )
    venv = make_vec("CountingVec-v0", 2)
    venv.reset(seed=0)
    obs, rewards, terms, truncs, infos = venv.step(np.array([0, 0]))
    assert not terms.any()
    obs, rewards, terms, truncs, infos = venv.step(np.array([0, 0]))
    assert terms.all()  # final observation of the ending episode
    assert obs[:, 0].tolist() == [2.0, 2.0]
    obs, rewards, terms, truncs, infos = venv.step(np.array([1, 1]))
    assert rewards.tolist() == [0.0, 0.0]  # action ignored, reset step
    assert not terms.any() and not truncs.any()
    assert obs[:, 0].tolist() == [0.0, 0.0]  # fresh reset observations
    venv.close()


@pytest.mark.parametrize("env_id", ["CartPole-v1", "FrozenLake-v1"])
@pytest.mark.parametrize("num_envs", [1, 3])
def test_sequential_matches_independent_envs_oracle(env_id, num_envs):
    script = make_action_script(env_id, num_envs, 120, seed=555)
    first_obs, _, steps = run_vector(env_id, num_envs, "sequential", 99, script)
    oracle_first, oracle_steps = independent_rollout(env_id, num_envs, 99, script)
    for i in range(num_envs):
        assert values_equal(first_obs[i], oracle_first[i])
    for (obs, rewards, terms, truncs, infos), expected in zip(steps, oracle_steps):
        for i, (o_obs, o_reward, o_term, o_trunc, o_info) in enumerate(expected):
            assert values_equal(obs[i], o_obs)
            assert rewards[i] == o_reward
            assert bool(terms[i]) == o_term and bool(truncs[i]) == o_trunc
            assert infos[i] == o_info


@pytest.mark.parametrize("env_id", ["CartPole-v1", "FrozenLake-v1", "Pendulum-v1"])
def test_parallel_equals_sequential(env_id):
    script = make_action_script(env_id, 2, 100, seed=777)
    seq = run_vector(env_id, 2, "sequential", 1234, script)
    par = run_vector(env_id, 2, "parallel", 1234, script)
    assert values_equal(seq[0], par[0])
    assert seq[1] == par[1]
    for (s_obs, s_r, s_t, s_tr, s_i), (p_obs, p_r, p_t, p_tr, p_i) in zip(seq[2], par[2]):
        assert values_equal(s_obs, p_obs)
        assert s_r.tobytes() == p_r.tobytes()
        assert (s_t == p_t).all() and (s_tr == p_tr).all()
        assert s_i == p_i


# --- errors and lifecycle ---------------------------------------------------------

def test_invalid_batched_actions_rejected():
    venv = make_vec("CartPole-v1", 2)
    venv.reset(seed=0)
    with pytest.raises(InvalidAction):
        venv.step(np.array([0, 5]))
    with pytest.raises(InvalidAction):
        venv.step(np.array([0]))
    venv.close()


@pytest.mark.parametrize("backend", ["sequential", "parallel"])
def test_step_before_first_reset_is_an_error(backend):
    from envkit.errors import ResetNeeded

    venv = make_vec("CartPole-v1", 2, backend=backend)
    with pytest.raises(ResetNeeded):
        venv.step(np.array([0, 0]))
    venv.reset(seed=0)
    venv.step(np.array([0, 0]))  # usable after the failed call
    venv.close()


def test_close_is_idempotent_and_blocks_interaction():
    venv = make_vec("CartPole-v1", 2)
    venv.reset(seed=0)
    venv.close()
    venv.close()
    with pytest.raises(EnvClosed):
        venv.step(np.array([0, 0]))
    with pytest.raises(EnvClosed):
        venv.reset(seed=0)


def test_parallel_close_leaves_no_live_workers():
    venv = make_vec("CartPole-v1", 2, backend="parallel")
    venv.reset(seed=0)
    procs = list(venv._procs)
    venv.close()
    assert all(not proc.is_alive() for proc in procs)
    with pytest.raises(EnvClosed):
        venv.step(np.array([0, 0]))


def test_parallel_spawn_failure_surfaces():
    local = Registry()
    local.register_constructor("counting_local", CountingEnv)
    spec = EnvSpec(id=parse_env_id("LocalOnly-v0"), entry_point="counting_local")
    local.register(spec)
    with pytest.raises(WorkerSpawnFailure):
        # workers rebuild from the default registry, which lacks the entry point
        make_vec(spec, 2, backend="parallel", registry=local)


def test_vector_render_returns_per_sub_env_outputs():
    from dataclasses import replace

    spec = replace(envkit.spec_for("FrozenLake-v1"), render_mode="ansi")
    venv = make_vec(spec, 2)
    venv.reset(seed=0)
    outputs = venv.render()
    assert len(outputs) == 2 and all(text.startswith("[S]") for text in outputs)
    venv.close()


# --- vector statistics wrapper -------------------------------------------------------

def test_vector_statistics_match_single_env_wrapper():
    num_envs, steps, seed = 3, 200, 4242
    script = make_action_script("CartPole-v1", num_envs, steps, seed=31)

    venv = VectorRecordEpisodeStatistics(make_vec("CartPole-v1", num_envs))
    venv.reset(seed=seed)
    vector_episodes = [[] for _ in range(num_envs)]
    for row in script:
        actions = concatenate(venv.single_action_space, row)
        *_, infos = venv.step(actions)
        for i, info in enumerate(infos):
            if "episode" in info:
                vector_episodes[i].append((info["episode"]["r"], info["episode"]["l"]))
                assert info["episode"]["t"] >= 0.0
    venv.close()

    child_seeds = derive_child_seeds(seed, num_envs)
    for i in range(num_envs):
        env = RecordEpisodeStatistics(envkit.make("CartPole-v1"))
        env.reset(seed=child_seeds[i])
        single_episodes = []
        pending = False
        for row in script:
            if pending:
                pending = False
                env.reset()
                continue  # the vector env burned this step on its autoreset
            *_, terminated, truncated, info = env.step(row[i])
            if terminated or truncated:
                single_episodes.append((info["episode"]["r"], info["episode"]["l"]))
                pending = True
        env.close()
        assert vector_episodes[i] == single_episodes
