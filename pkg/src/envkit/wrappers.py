"""Wrappers: delegation base plus time-limit, order-enforcement, transform,
and episode-statistics wrappers.

A wrapper forwards everything it does not override, so a bare
:class:`Wrapper` is trajectory-identical to its inner environment.  Calls
travel outermost-first, returns innermost-first; ``unwrapped`` walks the
whole chain down to the raw environment.
"""

from __future__ import annotations

import time
from functools import partial
from typing import Callable, Optional

import numpy as np

from .env import Env, Metadata
from .errors import (
    InvalidAction,
    ResetNeeded,
    TransformedValueNotInSpace,
)
from .seeding import Rng
from .spaces import Box, Space, flatdim, flatten

_SPOT_CHECK_SEED = 0
_SPOT_CHECK_SAMPLES = 100


class Wrapper(Env):
    """Delegates the full environment surface to ``env`` unless overridden."""

    def __init__(self, env: Env):
        self.env = env
        self._observation_space: Optional[Space] = None
        self._action_space: Optional[Space] = None
        self._metadata: Optional[Metadata] = None

    @property
    def observation_space(self) -> Space:
        if self._observation_space is not None:
            return self._observation_space
        return self.env.observation_space

    @property
    def action_space(self) -> Space:
        if self._action_space is not None:
            return self._action_space
        return self.env.action_space

    @property
    def metadata(self) -> Metadata:
        if self._metadata is not None:
            return self._metadata
        return self.env.metadata

    @property
    def render_mode(self):
        return self.env.render_mode

    @property
    def spec(self):
        return self.env.spec

    @property
    def unwrapped(self) -> Env:
        return self.env.unwrapped

    def reset(self, *, seed=None, options=None):
        return self.env.reset(seed=seed, options=options)

    def step(self, action):
        return self.env.step(action)

    def render(self):
        return self.env.render()

    def close(self):
        self.env.close()

    def __repr__(self):
        return f"<{type(self).__name__}{self.env!r}>"


class TimeLimit(Wrapper):
    """Forces ``truncated=True`` on step number ``max_episode_steps``.

    Earlier steps pass through unmodified; a terminal state reached exactly
    at the limit reports both flags true.
    """

    def __init__(self, env: Env, max_episode_steps: int):
        super().__init__(env)
        max_episode_steps = int(max_episode_steps)
        if max_episode_steps < 1:
            raise ValueError(f"max_episode_steps must be >= 1, got {max_episode_steps}")
        self.max_episode_steps = max_episode_steps
        self._elapsed_steps = None

    def reset(self, *, seed=None, options=None):
        self._elapsed_steps = 0
        return self.env.reset(seed=seed, options=options)

    def step(self, action):
        observation, reward, terminated, truncated, info = self.env.step(action)
        if self._elapsed_steps is not None:
            self._elapsed_steps += 1
            if self._elapsed_steps >= self.max_episode_steps:
                truncated = True
        return observation, reward, terminated, truncated, info


class OrderEnforcing(Wrapper):
    """Raises ResetNeeded when the reset-before-step discipline is violated.

    Stepping before the first reset, or stepping past an ended episode
    without an intervening reset, is an error.  render() before reset is
    allowed only for the static "ansi" mode.
    """

    def __init__(self, env: Env):
        super().__init__(env)
        self._has_reset = False
        self._episode_over = False

    def reset(self, *, seed=None, options=None):
        self._has_reset = True
        self._episode_over = False
        return self.env.reset(seed=seed, options=options)

    def step(self, action):
        if not self._has_reset:
            raise ResetNeeded("step() called before the first reset()")
        if self._episode_over:
            raise ResetNeeded("the episode has ended; call reset() before step()")
        observation, reward, terminated, truncated, info = self.env.step(action)
        self._episode_over = terminated or truncated
        return observation, reward, terminated, truncated, info

    def render(self):
        if not self._has_reset and self.env.render_mode in ("human", "rgb_array"):
            raise ResetNeeded("render() in a visual mode requires a prior reset()")
        return self.env.render()


class TransformObservation(Wrapper):
    """Passes observations through ``fn`` and reports ``observation_space``.

    The transform is spot-checked at construction (100 samples of the inner
    space, drawn from a fixed seed, must land in the new space) and every
    transformed observation is validated per call.
    """

    def __init__(self, env: Env, fn: Callable, observation_space: Space):
        super().__init__(env)
        self.fn = fn
        self._observation_space = observation_space
        spot_rng = Rng(_SPOT_CHECK_SEED)
        for _ in range(_SPOT_CHECK_SAMPLES):
            if not observation_space.contains(fn(env.observation_space.sample(spot_rng))):
                raise TransformedValueNotInSpace(
                    "transform sends inner observations outside the declared space"
                )

    def _apply(self, observation):
        transformed = self.fn(observation)
        if not self._observation_space.contains(transformed):
            raise TransformedValueNotInSpace(
                f"transformed observation {transformed!r} is outside the declared space"
            )
        return transformed

    def reset(self, *, seed=None, options=None):
        observation, info = self.env.reset(seed=seed, options=options)
        return self._apply(observation), info

    def step(self, action):
        observation, reward, terminated, truncated, info = self.env.step(action)
        return self._apply(observation), reward, terminated, truncated, info


def flatten_observation(env: Env) -> TransformObservation:
    """Flatten every observation to a real64 vector of width flatdim."""
    inner = env.observation_space
    flat_space = Box(-np.inf, np.inf, shape=(flatdim(inner),))
    return TransformObservation(env, partial(flatten, inner), flat_space)


class TransformAction(Wrapper):
    """Exposes ``action_space`` to callers and feeds ``fn(action)`` inside."""

    def __init__(self, env: Env, fn: Callable, action_space: Space):
        super().__init__(env)
        self.fn = fn
        self._action_space = action_space

    def step(self, action):
        if not self._action_space.contains(action):
            raise InvalidAction(f"action {action!r} is not in {self._action_space!r}")
        return self.env.step(self.fn(action))


def clip_action(env: Env) -> TransformAction:
    """Accept any real vector and clip it into the inner Box bounds."""
    inner = env.action_space
    if not isinstance(inner, Box) or inner.dtype != np.float64:
        raise ValueError("clip_action requires a real64 Box action space")
    outer = Box(-np.inf, np.inf, shape=inner.shape)

    def clip(action):
        return np.clip(np.asarray(action, dtype=np.float64), inner.low, inner.high)

    return TransformAction(env, clip, outer)


def rescale_action(env: Env, low: float = -1.0, high: float = 1.0) -> TransformAction:
    """Affinely map actions from [low, high] onto the inner Box bounds."""
    inner = env.action_space
    if not isinstance(inner, Box) or inner.dtype != np.float64:
        raise ValueError("rescale_action requires a real64 Box action space")
    if not (np.isfinite(inner.low).all() and np.isfinite(inner.high).all()):
        raise ValueError("rescale_action requires finite inner bounds")
    outer = Box(np.broadcast_to(low, inner.shape).copy(),
                np.broadcast_to(high, inner.shape).copy())

    def rescale(action):
        action = np.asarray(action, dtype=np.float64)
        fraction = (action - outer.low) / (outer.high - outer.low)
        return inner.low + fraction * (inner.high - inner.low)

    return TransformAction(env, rescale, outer)


class TransformReward(Wrapper):
    """Passes each reward through ``fn``; everything else is untouched."""

    def __init__(self, env: Env, fn: Callable[[float], float]):
        super().__init__(env)
        self.fn = fn

    def step(self, action):
        observation, reward, terminated, truncated, info = self.env.step(action)
        return observation, float(self.fn(reward)), terminated, truncated, info


def clip_reward(env: Env, min_reward: float = -1.0, max_reward: float = 1.0) -> TransformReward:
    return TransformReward(env, lambda r: min(max(r, min_reward), max_reward))


class RecordEpisodeStatistics(Wrapper):
    """Adds an "episode" info entry ``{"r", "l", "t"}`` when an episode ends.

    r is the accumulated return, l the episode length in steps, t the
    elapsed seconds on a monotonic clock.  Counters restart at reset; the
    entry is emitted exactly once per episode.
    """

    def __init__(self, env: Env):
        super().__init__(env)
        self._episode_return = 0.0
        self._episode_length = 0
        self._episode_start = None
        self._emitted = False

    def reset(self, *, seed=None, options=None):
        result = self.env.reset(seed=seed, options=options)
        self._episode_return = 0.0
        self._episode_length = 0
        self._episode_start = time.perf_counter()
        self._emitted = False
        return result

    def step(self, action):
        observation, reward, terminated, truncated, info = self.env.step(action)
        self._episode_return += reward
        self._episode_length += 1
        if (terminated or truncated) and not self._emitted:
            self._emitted = True
            elapsed = time.perf_counter() - (self._episode_start or time.perf_counter())
            info = dict(info)
            info["episode"] = {
                "r": self._episode_return,
                "l": self._episode_length,
                "t": elapsed,
            }
        return observation, reward, terminated, truncated, info
