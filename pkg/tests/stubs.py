"""Scripted stub environments for wrapper and vector tests."""

import numpy as np

from envkit.env import Env, Metadata
from envkit.errors import InvalidAction
from envkit.spaces import Box, Discrete, Mapping


class CountingEnv(Env):
    """Observation = steps taken this episode; terminates at ``terminate_at``.

    With ``terminate_at=None`` the episode never ends on its own, which is
    what time-limit exactness tests need.
    """

    metadata = Metadata()

    def __init__(self, render_mode=None, terminate_at=None, reward=1.0):
        super().__init__(render_mode)
        self.observation_space = Box(-np.inf, np.inf, shape=(1,))
        self.action_space = Discrete(2)
        self.terminate_at = terminate_at
        self.reward = reward
        self._steps = None

    def reset(self, *, seed=None, options=None):
        self._reset_preamble(seed)
        self._steps = 0
        return np.array([0.0]), {}

    def step(self, action):
        self._ensure_open()
        self._require_episode(self._steps)
        if not self.action_space.contains(action):
            raise InvalidAction(f"bad action {action!r}")
        self._steps += 1
        terminated = self.terminate_at is not None and self._steps == self.terminate_at
        return np.array([float(self._steps)]), float(self.reward), terminated, False, {}


class MappingObsEnv(Env):
    """Composite (Mapping) observations for transform/flatten tests."""

    metadata = Metadata()

    def __init__(self, render_mode=None):
        super().__init__(render_mode)
        self.observation_space = Mapping(
            {"a": Box(-1.0, 1.0, shape=(2,)), "b": Discrete(3)}
        )
        self.action_space = Discrete(2)
        self._live = None

    def _observe(self):
        return {"a": np.array([self.rng.uniform(-1, 1), self.rng.uniform(-1, 1)]),
                "b": self.rng.below(3)}

    def reset(self, *, seed=None, options=None):
        self._reset_preamble(seed)
        self._live = True
        return self._observe(), {}

    def step(self, action):
        self._ensure_open()
        self._require_episode(self._live)
        return self._observe(), 0.5, False, False, {}
