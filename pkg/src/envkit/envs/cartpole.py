"""Cart-pole balancing: Box observations, Discrete(2) actions.

A pole is hinged to a cart on a frictionless track; each step applies a
fixed horizontal force left or right.  The episode terminates when the cart
leaves +/-2.4 m or the pole tips past 12 degrees.  Reward is 1.0 per step,
including the terminal one.  Integration is explicit Euler with a 0.02 s
time step; all constants live in :class:`CartPoleParams` so future versions
can revise them without touching the dynamics code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..env import Env, Metadata
from ..errors import InvalidAction
from ..spaces import Box, Discrete
from . import rendering


@dataclass(frozen=True)
class CartPoleParams:
    gravity: float = 9.8
    cart_mass: float = 1.0
    pole_mass: float = 0.1
    pole_half_length: float = 0.5
    force_mag: float = 10.0
    tau: float = 0.02
    theta_threshold: float = 12 * 2 * math.pi / 360
    x_threshold: float = 2.4
    init_bound: float = 0.05

    @property
    def total_mass(self) -> float:
        return self.cart_mass + self.pole_mass

    @property
    def polemass_length(self) -> float:
        return self.pole_mass * self.pole_half_length


def transition(state, action: int, params: CartPoleParams):
    """One explicit-Euler step of the cart-pole equations.

    ``state`` is (x, x_dot, theta, theta_dot); action 1 pushes +force,
    action 0 pushes -force.  Returns the next state as a float64 array.
    """
    x, x_dot, theta, theta_dot = (float(v) for v in state)
    force = params.force_mag if action == 1 else -params.force_mag
    cos_theta = math.cos(theta)
    sin_theta = math.sin(theta)
    temp = (force + params.polemass_length * theta_dot**2 * sin_theta) / params.total_mass
    theta_acc = (params.gravity * sin_theta - cos_theta * temp) / (
        params.pole_half_length
        * (4.0 / 3.0 - params.pole_mass * cos_theta**2 / params.total_mass)
    )
    x_acc = temp - params.polemass_length * theta_acc * cos_theta / params.total_mass
    return np.array(
        [
            x + params.tau * x_dot,
            x_dot + params.tau * x_acc,
            theta + params.tau * theta_dot,
            theta_dot + params.tau * theta_acc,
        ],
        dtype=np.float64,
    )


class CartPoleEnv(Env):
    metadata = Metadata(render_modes=("human", "rgb_array"), render_fps=50)

    SCREEN_HEIGHT = 400
    SCREEN_WIDTH = 600

    def __init__(self, render_mode: Optional[str] = None, params: Optional[CartPoleParams] = None):
        super().__init__(render_mode)
        self.params = params or CartPoleParams()
        high = np.array(
            [
                self.params.x_threshold * 2,
                np.inf,
                self.params.theta_threshold * 2,
                np.inf,
            ],
            dtype=np.float64,
        )
        self.observation_space = Box(-high, high)
        self.action_space = Discrete(2)
        self._state = None

    def reset(self, *, seed=None, options=None):
        self._reset_preamble(seed)
        bound = self.params.init_bound
        self._state = np.array(
            [self.rng.uniform(-bound, bound) for _ in range(4)], dtype=np.float64
        )
        return self._state.copy(), {}

    def step(self, action):
        self._ensure_open()
        self._require_episode(self._state)
        if not self.action_space.contains(action):
            raise InvalidAction(f"cart-pole actions are 0 or 1, got {action!r}")
        self._state = transition(self._state, int(action), self.params)
        x, _, theta, _ = self._state
        terminated = bool(
            abs(x) > self.params.x_threshold or abs(theta) > self.params.theta_threshold
        )
        return self._state.copy(), 1.0, terminated, False, {}

    def _render_frame(self):
        self._require_episode(self._state)
        p = self.params
        frame = rendering.blank_frame(self.SCREEN_HEIGHT, self.SCREEN_WIDTH)
        world_width = p.x_threshold * 2
        scale = self.SCREEN_WIDTH / world_width
        cart_y = self.SCREEN_HEIGHT * 0.6
        cart_w, cart_h = 50.0, 30.0
        pole_len = scale * 2 * p.pole_half_length

        x, _, theta, _ = self._state
        cart_x = x * scale + self.SCREEN_WIDTH / 2.0

        rendering.fill_rect(frame, 0, cart_y + cart_h / 2, self.SCREEN_WIDTH, cart_y + cart_h / 2 + 2, (0, 0, 0))
        rendering.fill_rect(
            frame, cart_x - cart_w / 2, cart_y - cart_h / 2, cart_x + cart_w / 2, cart_y + cart_h / 2, (0, 0, 0)
        )
        tip_x = cart_x + pole_len * math.sin(theta)
        tip_y = cart_y - cart_h / 4 - pole_len * math.cos(theta)
        rendering.draw_thick_line(frame, cart_x, cart_y - cart_h / 4, tip_x, tip_y, 5.0, (202, 152, 101))
        rendering.fill_disc(frame, cart_x, cart_y - cart_h / 4, 4.0, (129, 132, 203))
        return frame
