"""Stand-alone integration oracle for the cart-pole and pendulum dynamics.

Single file, no library imports: constants and equations are written out
here from scratch so trajectory agreement with the package is a genuine
cross-check rather than a tautology.  Run as a script for a quick printout.
"""

from __future__ import annotations

import math

# cart-pole constants
CP_GRAVITY = 9.8
CP_CART_MASS = 1.0
CP_POLE_MASS = 0.1
CP_HALF_LENGTH = 0.5
CP_FORCE = 10.0
CP_TAU = 0.02
CP_X_LIMIT = 2.4
CP_THETA_LIMIT = 12 * 2 * math.pi / 360

# pendulum constants
PD_GRAVITY = 10.0
PD_MASS = 1.0
PD_LENGTH = 1.0
PD_DT = 0.05
PD_MAX_SPEED = 8.0


def cartpole_step(state, action):
    """Explicit Euler over the standard cart-pole equations."""
    x, x_dot, theta, theta_dot = state
    force = CP_FORCE if action == 1 else -CP_FORCE
    cos_t = math.cos(theta)
    sin_t = math.sin(theta)
    total_mass = CP_CART_MASS + CP_POLE_MASS
    pm_length = CP_POLE_MASS * CP_HALF_LENGTH
    temp = (force + pm_length * theta_dot**2 * sin_t) / total_mass
    theta_acc = (CP_GRAVITY * sin_t - cos_t * temp) / (
        CP_HALF_LENGTH * (4.0 / 3.0 - CP_POLE_MASS * cos_t**2 / total_mass)
    )
    x_acc = temp - pm_length * theta_acc * cos_t / total_mass
    return (
        x + CP_TAU * x_dot,
        x_dot + CP_TAU * x_acc,
        theta + CP_TAU * theta_dot,
        theta_dot + CP_TAU * theta_acc,
    )


def cartpole_done(state) -> bool:
    x, _, theta, _ = state
    return abs(x) > CP_X_LIMIT or abs(theta) > CP_THETA_LIMIT


def cartpole_trajectory(initial_state, actions):
    """States visited after each action, stopping after a terminal state."""
    state = tuple(initial_state)
    states = []
    for action in actions:
        state = cartpole_step(state, action)
        states.append(state)
        if cartpole_done(state):
            break
    return states


def _wrap(angle):
    wrapped = (angle + math.pi) % (2 * math.pi) - math.pi
    return math.pi if wrapped == -math.pi else wrapped


def pendulum_step(state, torque):
    """One pendulum step; returns ((theta, theta_dot), reward)."""
    theta, theta_dot = state
    cost = _wrap(theta) ** 2 + 0.1 * theta_dot**2 + 0.001 * torque**2
    theta_dot = theta_dot + (
        3.0 * PD_GRAVITY / (2.0 * PD_LENGTH) * math.sin(theta)
        + 3.0 / (PD_MASS * PD_LENGTH**2) * torque
    ) * PD_DT
    theta_dot = max(-PD_MAX_SPEED, min(PD_MAX_SPEED, theta_dot))
    theta = _wrap(theta + theta_dot * PD_DT)
    return (theta, theta_dot), -cost


def pendulum_trajectory(initial_state, torques):
    state = tuple(initial_state)
    out = []
    for torque in torques:
        state, reward = pendulum_step(state, torque)
        out.append((state, reward))
    return out


def pendulum_observation(state):
    theta, theta_dot = state
    return (math.cos(theta), math.sin(theta), theta_dot)


if __name__ == "__main__":
    print("cart-pole from rest, push right:", cartpole_step((0.0, 0.0, 0.0, 0.0), 1))
    print("pendulum from (pi/4, 0), no torque:", pendulum_step((math.pi / 4, 0.0), 0.0))
