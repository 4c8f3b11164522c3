"""JSON-lines stdio bridge: the kernel's surface for foreign-language hosts.

Run as ``python -m envkit.bridge``.  Each request is one JSON object per
line, ``{"id": n, "op": "...", ...}``; each reply is one line,
``{"id": n, "ok": true, "result": {...}}`` or ``{"id": n, "ok": false,
"error": {"name": "...", "message": "..."}}`` where ``name`` is the kernel
error class name.  Every op delegates 1:1 to the kernel: no logic lives on
the wire.

Values cross by copy in the space-aware JSON form of
:mod:`envkit.spaces.serde` (real64 survives exactly; JSON numbers are IEEE
doubles).  Seeds may be sent as decimal strings so hosts without native
64-bit integers stay lossless.

Ops: make, reset, step, render, close, rng, sample, contains, make_vec,
vec_reset, vec_step, vec_close, shutdown.
"""

from __future__ import annotations

import base64
import json
import sys

import numpy as np

from .errors import EnvKitError
from .registry import default_registry, serialize_spec
from .seeding import Rng
from .spaces import (
    space_from_jsonable,
    space_to_jsonable,
    value_from_jsonable,
    value_to_jsonable,
)
from .vector import make_vec


def _parse_seed(value):
    if value is None:
        return None
    if isinstance(value, str):
        return int(value, 10)
    if isinstance(value, int) and not isinstance(value, bool):
        return value
    raise ValueError(f"seed must be an integer or decimal string, got {value!r}")


class _Session:
    """Handle tables for the objects a bridge client owns."""

    def __init__(self):
        self._next_handle = 0
        self.envs = {}
        self.rngs = {}
        self.venvs = {}

    def put(self, table, obj) -> int:
        handle = self._next_handle
        self._next_handle += 1
        table[handle] = obj
        return handle

    @staticmethod
    def get(table, handle, what):
        try:
            return table[handle]
        except KeyError:
            raise ValueError(f"unknown {what} handle {handle!r}") from None

    # -- environment ops ------------------------------------------------------

    def op_make(self, params):
        env = default_registry.make(params["env_id"], render_mode=params.get("render_mode"))
        return {
            "env": self.put(self.envs, env),
            "spec": json.loads(serialize_spec(env.spec)),
            "observation_space": space_to_jsonable(env.observation_space),
            "action_space": space_to_jsonable(env.action_space),
        }

    def op_reset(self, params):
        env = self.get(self.envs, params["env"], "env")
        observation, info = env.reset(
            seed=_parse_seed(params.get("seed")), options=params.get("options")
        )
        return {
            "observation": value_to_jsonable(env.observation_space, observation),
            "info": info,
        }

    def op_step(self, params):
        env = self.get(self.envs, params["env"], "env")
        action = value_from_jsonable(env.action_space, params["action"])
        observation, reward, terminated, truncated, info = env.step(action)
        return {
            "observation": value_to_jsonable(env.observation_space, observation),
            "reward": reward,
            "terminated": terminated,
            "truncated": truncated,
            "info": info,
        }

    def op_render(self, params):
        env = self.get(self.envs, params["env"], "env")
        output = env.render()
        if output is None:
            return {"output": None}
        if isinstance(output, str):
            return {"output": output}
        frame = np.ascontiguousarray(output, dtype=np.uint8)
        return {
            "output": {
                "shape": list(frame.shape),
                "data_base64": base64.b64encode(frame.tobytes()).decode("ascii"),
            }
        }

    def op_close(self, params):
        env = self.envs.pop(params["env"], None)
        if env is not None:
            env.close()
        return {}

    # -- spaces and sampling -----------------------------------------------------

    def op_rng(self, params):
        return {"rng": self.put(self.rngs, Rng(_parse_seed(params["seed"])))}

    def op_sample(self, params):
        rng = self.get(self.rngs, params["rng"], "rng")
        space = space_from_jsonable(params["space"])
        return {"value": value_to_jsonable(space, space.sample(rng))}

    def op_contains(self, params):
        space = space_from_jsonable(params["space"])
        try:
            value = value_from_jsonable(space, params["value"])
        except Exception:
            return {"member": False}
        return {"member": bool(space.contains(value))}

    # -- vector ops -----------------------------------------------------------------

    def op_make_vec(self, params):
        venv = make_vec(
            params["env_id"],
            int(params["num_envs"]),
            backend=params.get("backend", "sequential"),
        )
        return {
            "venv": self.put(self.venvs, venv),
            "num_envs": venv.num_envs,
            "single_observation_space": space_to_jsonable(venv.single_observation_space),
            "single_action_space": space_to_jsonable(venv.single_action_space),
            "observation_space": space_to_jsonable(venv.observation_space),
            "action_space": space_to_jsonable(venv.action_space),
        }

    def op_vec_reset(self, params):
        venv = self.get(self.venvs, params["venv"], "venv")
        observations, infos = venv.reset(seed=_parse_seed(params.get("seed")))
        return {
            "observations": value_to_jsonable(venv.observation_space, observations),
            "infos": infos,
        }

    def op_vec_step(self, params):
        venv = self.get(self.venvs, params["venv"], "venv")
        actions = value_from_jsonable(venv.action_space, params["actions"])
        observations, rewards, terminateds, truncateds, infos = venv.step(actions)
        return {
            "observations": value_to_jsonable(venv.observation_space, observations),
            "rewards": rewards.tolist(),
            "terminateds": terminateds.tolist(),
            "truncateds": truncateds.tolist(),
            "infos": infos,
        }

    def op_vec_close(self, params):
        venv = self.venvs.pop(params["venv"], None)
        if venv is not None:
            venv.close()
        return {}

    def shutdown(self):
        for env in self.envs.values():
            env.close()
        for venv in self.venvs.values():
            venv.close()
        self.envs.clear()
        self.venvs.clear()
        self.rngs.clear()


def handle_request(session: _Session, request: dict) -> tuple[dict, bool]:
    """Dispatch one request; returns (reply, keep_serving)."""
    request_id = request.get("id")
    op = request.get("op")
    try:
        if op == "shutdown":
            session.shutdown()
            return {"id": request_id, "ok": True, "result": {}}, False
        handler = getattr(session, f"op_{op}", None)
        if handler is None or not isinstance(op, str):
            raise ValueError(f"unknown op {op!r}")
        return {"id": request_id, "ok": True, "result": handler(request)}, True
    except EnvKitError as exc:
        error = {"name": type(exc).__name__, "message": str(exc)}
        return {"id": request_id, "ok": False, "error": error}, True
    except Exception as exc:
        error = {"name": type(exc).__name__, "message": str(exc)}
        return {"id": request_id, "ok": False, "error": error}, True


def serve(stdin=None, stdout=None) -> None:
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    session = _Session()
    for line in stdin:
        line = line.strip()
        if not line:
            continue
        try:
            request = json.loads(line)
        except json.JSONDecodeError as exc:
            reply = {"id": None, "ok": False,
                     "error": {"name": "MalformedDocument", "message": str(exc)}}
            keep = True
        else:
            reply, keep = handle_request(session, request)
        print(json.dumps(reply, separators=(",", ":")), file=stdout, flush=True)
        if not keep:
            break
    session.shutdown()


def main() -> int:
    serve()
    return 0


if __name__ == "__main__":
    sys.exit(main())
