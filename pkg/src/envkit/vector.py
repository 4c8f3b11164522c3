"""N concurrent copies of one environment behind a batched step/reset API.

Both backends drive each sub-environment through the same autoreset state
machine, so for equal seeds and actions the sequential and parallel
backends return bit-identical results; concurrency may only change latency,
never values.

Autoreset is *next-step*: the step on which a sub-episode ends reports its
true final observation and flags, and the following call ignores that
sub-environment's action, resets it, and reports (reset observation,
reward 0.0, both flags false, reset info).  This keeps the final
observation available for bootstrapping and makes the N-independent-envs
oracle statement exact.  The choice is this library's own; nothing forces
it, so code that consumes the flags must account for the one-step offset.
"""

from __future__ import annotations

import logging
import multiprocessing as mp
from typing import Optional, Union

import numpy as np

from .errors import (
    EnvClosed,
    InvalidAction,
    ResetNeeded,
    WorkerFailure,
    WorkerSpawnFailure,
)
from .registry import EnvSpec, Registry, default_registry, deserialize_spec, serialize_spec
from .seeding import derive_child_seeds
from .spaces import batch_space, concatenate, iterate

logger = logging.getLogger(__name__)

_WORKER_READY_TIMEOUT = 60.0
_WORKER_JOIN_DEADLINE = 5.0

BACKENDS = ("sequential", "parallel")


class _AutoresetDriver:
    """Per-sub-environment stepping logic shared by both backends."""

    __slots__ = ("env", "_pending_reset")

    def __init__(self, env):
        self.env = env
        self._pending_reset = False

    def reset(self, seed=None):
        self._pending_reset = False
        return self.env.reset(seed=seed)

    def step(self, action):
        if self._pending_reset:
            # The previous step ended the episode: ignore the action,
            # reset on the continuing stream, report a zero-reward step.
            self._pending_reset = False
            observation, info = self.env.reset()
            return observation, 0.0, False, False, info
        observation, reward, terminated, truncated, info = self.env.step(action)
        self._pending_reset = bool(terminated or truncated)
        return observation, reward, terminated, truncated, info


class VectorEnv:
    """Batched interface over ``num_envs`` identically specified copies."""

    backend: str = "abstract"

    def __init__(self, single_observation_space, single_action_space, num_envs: int):
        num_envs = int(num_envs)
        if num_envs < 1:
            raise ValueError(f"num_envs must be >= 1, got {num_envs}")
        self.num_envs = num_envs
        self.single_observation_space = single_observation_space
        self.single_action_space = single_action_space
        self.observation_space = batch_space(single_observation_space, num_envs)
        self.action_space = batch_space(single_action_space, num_envs)
        self._closed = False
        self._needs_first_reset = True

    def _ensure_open(self):
        if self._closed:
            raise EnvClosed(f"{type(self).__name__} has been closed")

    def _check_actions(self, actions):
        if self._needs_first_reset:
            raise ResetNeeded("step() called before the vector environment's first reset()")
        if not self.action_space.contains(actions):
            raise InvalidAction(f"actions are not a member of {self.action_space!r}")
        return iterate(self.single_action_space, actions)

    def _child_seeds(self, seed) -> list:
        if seed is None:
            return [None] * self.num_envs
        return derive_child_seeds(seed, self.num_envs)

    def _assemble(self, results):
        observations = concatenate(self.single_observation_space, [r[0] for r in results])
        rewards = np.array([r[1] for r in results], dtype=np.float64)
        terminateds = np.array([r[2] for r in results], dtype=bool)
        truncateds = np.array([r[3] for r in results], dtype=bool)
        infos = [r[4] for r in results]
        return observations, rewards, terminateds, truncateds, infos

    def reset(self, *, seed: Optional[int] = None):
        raise NotImplementedError

    def step(self, actions):
        raise NotImplementedError

    def render(self):
        raise NotImplementedError

    def close(self):
        raise NotImplementedError


class SequentialVectorEnv(VectorEnv):
    """All sub-environments live in the calling process and step in a loop."""

    backend = "sequential"

    def __init__(self, spec: EnvSpec, num_envs: int, registry: Registry = default_registry):
        self.spec = spec
        self._drivers = [_AutoresetDriver(registry.make(spec)) for _ in range(num_envs)]
        template = self._drivers[0].env
        super().__init__(template.observation_space, template.action_space, num_envs)

    def reset(self, *, seed=None):
        self._ensure_open()
        results = [
            driver.reset(child_seed)
            for driver, child_seed in zip(self._drivers, self._child_seeds(seed))
        ]
        self._needs_first_reset = False
        observations = concatenate(self.single_observation_space, [r[0] for r in results])
        return observations, [r[1] for r in results]

    def step(self, actions):
        self._ensure_open()
        per_env = self._check_actions(actions)
        return self._assemble(
            [driver.step(action) for driver, action in zip(self._drivers, per_env)]
        )

    def render(self):
        self._ensure_open()
        return tuple(driver.env.render() for driver in self._drivers)

    def close(self):
        if self._closed:
            return
        self._closed = True
        for driver in self._drivers:
            driver.env.close()


def _worker_main(index: int, spec_json: str, conn) -> None:
    """Entry point of one parallel worker: serve commands for one sub-env."""
    try:
        spec = deserialize_spec(spec_json)
        driver = _AutoresetDriver(default_registry.make(spec))
        conn.send((index, "ready", None))
    except Exception as exc:  # construction failed; report and bail
        conn.send((index, "error", (type(exc).__name__, str(exc))))
        conn.close()
        return
    try:
        while True:
            try:
                command, payload = conn.recv()
            except EOFError:
                break
            try:
                if command == "reset":
                    conn.send((index, "ok", driver.reset(payload)))
                elif command == "step":
                    conn.send((index, "ok", driver.step(payload)))
                elif command == "render":
                    conn.send((index, "ok", driver.env.render()))
                elif command == "close":
                    driver.env.close()
                    conn.send((index, "ok", None))
                    break
                else:
                    conn.send((index, "error", ("ValueError", f"unknown command {command!r}")))
            except Exception as exc:
                conn.send((index, "error", (type(exc).__name__, str(exc))))
    finally:
        conn.close()


class ParallelVectorEnv(VectorEnv):
    """One spawned process per sub-environment, command/reply over pipes.

    Replies are gathered in sub-env index order, so output ordering never
    depends on completion order.  A worker failure poisons the whole vector
    environment rather than silently restarting, because restarts would
    break reproducibility.
    """

    backend = "parallel"

    def __init__(self, spec: EnvSpec, num_envs: int, registry: Registry = default_registry):
        self.spec = spec
        template = registry.make(spec)
        super().__init__(template.observation_space, template.action_space, num_envs)
        template.close()

        spec_json = serialize_spec(spec)
        ctx = mp.get_context("spawn")
        self._conns = []
        self._procs = []
        self._broken = False
        try:
            for index in range(num_envs):
                parent_conn, child_conn = ctx.Pipe()
                proc = ctx.Process(
                    target=_worker_main,
                    args=(index, spec_json, child_conn),
                    daemon=True,
                    name=f"envkit-worker-{index}",
                )
                proc.start()
                child_conn.close()
                self._conns.append(parent_conn)
                self._procs.append(proc)
            for index, conn in enumerate(self._conns):
                if not conn.poll(_WORKER_READY_TIMEOUT):
                    raise WorkerSpawnFailure(f"worker {index} did not report ready")
                _, status, payload = conn.recv()
                if status != "ready":
                    name, message = payload
                    raise WorkerSpawnFailure(f"worker {index} failed to start ({name}): {message}")
        except WorkerSpawnFailure:
            self._teardown()
            raise
        except Exception as exc:
            self._teardown()
            raise WorkerSpawnFailure(f"could not spawn workers: {exc}") from exc

    # -- protocol ------------------------------------------------------------

    def _ensure_usable(self):
        self._ensure_open()
        if self._broken:
            raise WorkerFailure("a previous worker failure poisoned this vector environment")

    def _call_all(self, command: str, payloads) -> list:
        try:
            for conn, payload in zip(self._conns, payloads):
                conn.send((command, payload))
            replies = []
            for index, conn in enumerate(self._conns):
                reply_index, status, payload = conn.recv()
                if status != "ok":
                    name, message = payload
                    self._broken = True
                    raise WorkerFailure(f"sub-env {reply_index} ({name}): {message}")
                assert reply_index == index
                replies.append(payload)
            return replies
        except (EOFError, OSError) as exc:
            self._broken = True
            raise WorkerFailure(f"lost a worker connection: {exc}") from exc

    def reset(self, *, seed=None):
        self._ensure_usable()
        results = self._call_all("reset", self._child_seeds(seed))
        self._needs_first_reset = False
        observations = concatenate(self.single_observation_space, [r[0] for r in results])
        return observations, [r[1] for r in results]

    def step(self, actions):
        self._ensure_usable()
        per_env = self._check_actions(actions)
        return self._assemble(self._call_all("step", per_env))

    def render(self):
        self._ensure_usable()
        return tuple(self._call_all("render", [None] * self.num_envs))

    def close(self):
        if self._closed:
            return
        self._closed = True
        if not self._broken:
            for conn in self._conns:
                try:
                    conn.send(("close", None))
                except (OSError, BrokenPipeError):
                    pass
            for conn in self._conns:
                try:
                    if conn.poll(_WORKER_JOIN_DEADLINE):
                        conn.recv()
                except (EOFError, OSError):
                    pass
        self._teardown()

    def _teardown(self):
        for conn in getattr(self, "_conns", []):
            try:
                conn.close()
            except OSError:
                pass
        for proc in getattr(self, "_procs", []):
            proc.join(_WORKER_JOIN_DEADLINE)
            if proc.is_alive():
                logger.warning("terminating unresponsive vector worker %s", proc.name)
                proc.terminate()
                proc.join(1.0)

    def __del__(self):
        try:
            if not self._closed:
                self.close()
        except Exception:
            pass


def make_vec(
    id_or_spec: Union[str, EnvSpec],
    num_envs: int,
    backend: str = "sequential",
    registry: Registry = default_registry,
) -> VectorEnv:
    """Create ``num_envs`` identically specified copies behind one interface.

    The backend never affects returned values, only how sub-environments
    are scheduled.  The parallel backend requires the spec's entry point to
    be registered in the default registry, since workers rebuild it from
    its serialized form.
    """
    if int(num_envs) < 1:
        raise ValueError(f"num_envs must be >= 1, got {num_envs}")
    if backend not in BACKENDS:
        raise ValueError(f"backend must be one of {BACKENDS}, got {backend!r}")
    if isinstance(id_or_spec, EnvSpec):
        spec = id_or_spec
    else:
        spec = registry.spec_for(id_or_spec)
    if backend == "sequential":
        return SequentialVectorEnv(spec, num_envs, registry)
    return ParallelVectorEnv(spec, num_envs, registry)


class VectorWrapper:
    """Delegation base for wrappers over vector environments."""

    def __init__(self, venv: VectorEnv):
        self.venv = venv

    def __getattr__(self, name):
        return getattr(self.venv, name)

    def reset(self, *, seed=None):
        return self.venv.reset(seed=seed)

    def step(self, actions):
        return self.venv.step(actions)

    def close(self):
        self.venv.close()


class VectorRecordEpisodeStatistics(VectorWrapper):
    """Per-sub-episode "episode" info entries over a vector environment.

    Reports the same return/length per finished sub-episode as the
    single-environment statistics wrapper would, accounting for the
    next-step autoreset offset (the zero-reward reset step starts the next
    episode's counters instead of being counted).
    """

    def __init__(self, venv: VectorEnv):
        super().__init__(venv)
        self._returns = np.zeros(venv.num_envs, dtype=np.float64)
        self._lengths = np.zeros(venv.num_envs, dtype=np.int64)
        self._starts = np.zeros(venv.num_envs, dtype=np.float64)
        self._pending = np.zeros(venv.num_envs, dtype=bool)

    def reset(self, *, seed=None):
        import time

        result = self.venv.reset(seed=seed)
        self._returns[:] = 0.0
        self._lengths[:] = 0
        self._starts[:] = time.perf_counter()
        self._pending[:] = False
        return result

    def step(self, actions):
        import time

        observations, rewards, terminateds, truncateds, infos = self.venv.step(actions)
        now = time.perf_counter()
        infos = list(infos)
        for i in range(self.venv.num_envs):
            if self._pending[i]:
                self._pending[i] = False
                self._returns[i] = 0.0
                self._lengths[i] = 0
                self._starts[i] = now
                continue
            self._returns[i] += rewards[i]
            self._lengths[i] += 1
            if terminateds[i] or truncateds[i]:
                infos[i] = dict(infos[i])
                infos[i]["episode"] = {
                    "r": float(self._returns[i]),
                    "l": int(self._lengths[i]),
                    "t": now - self._starts[i],
                }
                self._pending[i] = True
        return observations, rewards, terminateds, truncateds, infos
