"""Torque-controlled pendulum swing-up: Box observations and actions.

The observation is (cos theta, sin theta, theta_dot); the action is a
single torque in [-2, 2].  Reward penalizes angle, velocity, and effort:
``-(wrap(theta)^2 + 0.1*theta_dot^2 + 0.001*u^2)``, so an upright, resting,
uncontrolled pendulum scores 0.  The task never terminates on its own;
episodes end through the registered 200-step time limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..env import Env, Metadata
from ..errors import InvalidAction
from ..spaces import Box
from . import rendering


@dataclass(frozen=True)
class PendulumParams:
    gravity: float = 10.0
    mass: float = 1.0
    length: float = 1.0
    dt: float = 0.05
    max_speed: float = 8.0
    max_torque: float = 2.0


def wrap_angle(theta: float) -> float:
    """Wrap to (-pi, pi]."""
    wrapped = (theta + math.pi) % (2 * math.pi) - math.pi
    return math.pi if wrapped == -math.pi else wrapped


def transition(state, torque: float, params: PendulumParams):
    """Advance (theta, theta_dot) one step; returns (next_state, reward).

    Velocity integrates first and is clipped to +/-max_speed; the angle then
    advances with the new velocity and wraps to (-pi, pi].  The reward is
    computed from the pre-step state and the applied torque.
    """
    theta, theta_dot = float(state[0]), float(state[1])
    u = float(torque)
    cost = wrap_angle(theta) ** 2 + 0.1 * theta_dot**2 + 0.001 * u**2
    accel = (
        3.0 * params.gravity / (2.0 * params.length) * math.sin(theta)
        + 3.0 / (params.mass * params.length**2) * u
    )
    new_theta_dot = theta_dot + accel * params.dt
    new_theta_dot = min(max(new_theta_dot, -params.max_speed), params.max_speed)
    new_theta = wrap_angle(theta + new_theta_dot * params.dt)
    return (new_theta, new_theta_dot), -cost


class PendulumEnv(Env):
    metadata = Metadata(render_modes=("human", "rgb_array"), render_fps=30)

    SCREEN_SIZE = 500

    def __init__(self, render_mode: Optional[str] = None, params: Optional[PendulumParams] = None):
        super().__init__(render_mode)
        self.params = params or PendulumParams()
        limit = np.array([1.0, 1.0, self.params.max_speed], dtype=np.float64)
        self.observation_space = Box(-limit, limit)
        self.action_space = Box(-self.params.max_torque, self.params.max_torque, shape=(1,))
        self._state = None

    def _observation(self):
        theta, theta_dot = self._state
        return np.array([math.cos(theta), math.sin(theta), theta_dot], dtype=np.float64)

    def reset(self, *, seed=None, options=None):
        self._reset_preamble(seed)
        theta = self.rng.uniform(-math.pi, math.pi)
        theta_dot = self.rng.uniform(-1.0, 1.0)
        self._state = (theta, theta_dot)
        return self._observation(), {}

    def step(self, action):
        self._ensure_open()
        self._require_episode(self._state)
        if not self.action_space.contains(action):
            raise InvalidAction(
                f"pendulum actions are length-1 arrays within +/-{self.params.max_torque}, got {action!r}"
            )
        torque = float(np.asarray(action).reshape(-1)[0])
        self._state, reward = transition(self._state, torque, self.params)
        return self._observation(), float(reward), False, False, {}

    def _render_frame(self):
        self._require_episode(self._state)
        size = self.SCREEN_SIZE
        frame = rendering.blank_frame(size, size)
        center = size / 2.0
        rod_len = size * 0.35
        theta, _ = self._state
        # theta = 0 is upright; screen y grows downward.
        tip_x = center + rod_len * math.sin(theta)
        tip_y = center - rod_len * math.cos(theta)
        rendering.draw_thick_line(frame, center, center, tip_x, tip_y, 8.0, (204, 77, 77))
        rendering.fill_disc(frame, center, center, 6.0, (0, 0, 0))
        return frame
