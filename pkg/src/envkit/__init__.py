"""envkit: a reinforcement-learning environment kernel.

A space type algebra, a reset/step environment contract, deterministic
seeding, a versioned registry with reproducible recreation, a wrapper
stack, and a vectorization engine, validated by built-in classic-control
and toy-text environments and driven by a rollout/benchmark CLI.
"""

from . import errors, spaces, wrappers
from .env import Env, FrameDirectorySink, FrameSink, Metadata, RENDER_MODES, TerminalSink, write_ppm
from .envs import register_all
from .registry import (
    EnvId,
    EnvSpec,
    Registry,
    default_registry,
    deserialize_spec,
    list_registered,
    make,
    parse_env_id,
    register,
    register_constructor,
    serialize_spec,
    spec_for,
)
from .seeding import Rng, derive_child_seeds, entropy_seed, rng_from_seed
from .vector import VectorEnv, VectorRecordEpisodeStatistics, make_vec

__version__ = "0.1.0"

register_all(default_registry)

__all__ = [
    "Env",
    "EnvId",
    "EnvSpec",
    "FrameDirectorySink",
    "FrameSink",
    "Metadata",
    "RENDER_MODES",
    "Registry",
    "Rng",
    "TerminalSink",
    "VectorEnv",
    "VectorRecordEpisodeStatistics",
    "default_registry",
    "derive_child_seeds",
    "deserialize_spec",
    "entropy_seed",
    "errors",
    "list_registered",
    "make",
    "make_vec",
    "parse_env_id",
    "register",
    "register_all",
    "register_constructor",
    "rng_from_seed",
    "serialize_spec",
    "spaces",
    "spec_for",
    "wrappers",
    "write_ppm",
]
