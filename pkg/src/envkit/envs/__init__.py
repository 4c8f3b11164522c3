"""Built-in reference environments covering every space pairing:
CartPole (Box/Discrete), Pendulum (Box/Box), FrozenLake (Discrete/Discrete,
stochastic)."""

from ..registry import EnvSpec, Registry, parse_env_id
from .cartpole import CartPoleEnv, CartPoleParams
from .frozen_lake import FrozenLakeEnv
from .pendulum import PendulumEnv, PendulumParams

BUILTIN_SPECS = (
    EnvSpec(id=parse_env_id("CartPole-v1"), entry_point="cartpole", max_episode_steps=500),
    EnvSpec(id=parse_env_id("Pendulum-v1"), entry_point="pendulum", max_episode_steps=200),
    EnvSpec(
        id=parse_env_id("FrozenLake-v1"),
        entry_point="frozen_lake",
        max_episode_steps=100,
        default_kwargs={"is_slippery": True},
    ),
)

BUILTIN_CONSTRUCTORS = {
    "cartpole": CartPoleEnv,
    "pendulum": PendulumEnv,
    "frozen_lake": FrozenLakeEnv,
}


def register_all(registry: Registry) -> None:
    """Install the built-in constructor table and spec table into a registry."""
    for entry_point, constructor in BUILTIN_CONSTRUCTORS.items():
        registry.register_constructor(entry_point, constructor)
    for spec in BUILTIN_SPECS:
        registry.register(spec)


__all__ = [
    "BUILTIN_CONSTRUCTORS",
    "BUILTIN_SPECS",
    "CartPoleEnv",
    "CartPoleParams",
    "FrozenLakeEnv",
    "PendulumEnv",
    "PendulumParams",
    "register_all",
]
